#pragma once
// Unit group (F_q[t]/t^m)^x, its character group, and fast evaluation
// through a discrete-log table.

#include "ffvar/poly.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace ffvar {

// Cyclic decomposition of (F_q[t]/t^m)^x with a dense dlog table.
// Residues are packed base-q codes of their m low coefficients.
struct UnitGroupTable {
    const FieldSpec* F = nullptr;
    int m = 0;
    int64_t qm = 0;        // q^m, the code space size
    int64_t order = 0;     // (q-1)·q^{m-1}
    int64_t phase_lcm = 1; // lcm of generator orders; phases live in Z/phase_lcm

    std::vector<uint32_t> generators; // unit codes g_1..g_r
    std::vector<int64_t> orders;      // o_1..o_r, prod = order

    std::vector<int32_t> unit_index;   // code -> dense index, -1 for non-units
    std::vector<uint32_t> unit_codes;  // dense index -> code
    std::vector<uint32_t> dlog;        // [idx*rank + i] = exponent of g_i

    int rank() const { return int(generators.size()); }
    bool is_unit(uint32_t code) const { return unit_index[code] >= 0; }
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t pow(uint32_t a, int64_t e) const;
    uint32_t inverse(uint32_t a) const;
    uint32_t reduce(const Poly& f) const; // code of f mod t^m
    // phase in [0, phase_lcm) of chi_e at a unit code: sum e_i·d_i·(L/o_i) mod L
    int64_t phase_of(uint32_t code, const std::vector<int64_t>& exponents) const;
};

// pre: m >= 1 and (q-1)·q^{m-1} <= 10^7
UnitGroupTable build_unit_group(const FieldSpec& F, int m);

struct DirichletCharacter {
    const UnitGroupTable* G = nullptr;
    std::vector<int64_t> e; // exponent per generator, e_i mod o_i
    bool even = false;      // chi(c) = 1 on all constants

    bool is_trivial() const;
    // 0 on non-units (t | f), otherwise a root of unity
    std::complex<double> value_at(uint32_t code) const;
    std::complex<double> operator()(const Poly& f) const;
    int64_t phase_at(uint32_t code) const; // pre: unit code
    // smallest c in [0, m] with chi trivial on {u ≡ 1 mod t^c}
    int conductor_exponent() const;
    std::string serialize() const; // "e_1/o_1,...,e_r/o_r"
};

DirichletCharacter trivial_character(const UnitGroupTable& G);
DirichletCharacter make_character(const UnitGroupTable& G, std::vector<int64_t> exponents);
DirichletCharacter parse_character(const UnitGroupTable& G, const std::string& text);
std::vector<DirichletCharacter> enumerate_characters(const UnitGroupTable& G, bool even_only,
                                                     bool exclude_trivial);

// Exhaustive checks of the three orthogonality relations:
//   (1/|Phi|)  sum_chi chi(f)·conj(chi(g))            = [f = g]     over unit pairs
//   (1/|Gamma|) sum_f  chi1(f)·conj(chi2(f))          = [chi1=chi2] over char pairs
//   (1/|Phi_ev|) sum_{f unit, f(0)=1} chi1·conj(chi2) = [chi1=chi2] over even pairs
struct OrthogonalityReport {
    double residual_residue_pairs = 0; // relation 1
    double residual_char_pairs = 0;    // relation 2
    double residual_even_pairs = 0;    // relation 3
    double max_residual() const;
    bool pass(double tol) const { return max_residual() <= tol; }
};
OrthogonalityReport orthogonality_check(const UnitGroupTable& G);

} // namespace ffvar
