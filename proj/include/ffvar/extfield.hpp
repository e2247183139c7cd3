#pragma once
// Extension fields F_{q^d} used by the bulk kernels.  Elements are packed
// codes: sum digit_i * q^i with digits in F_q (themselves gf codes), so the
// additive group is (Z/p)^{kd} acting digitwise.  Unlike the base-field
// layer this one is free to precompute small op tables; q stays tiny while
// q^d runs into the tens of millions.

#include "ffvar/gf.hpp"
#include "ffvar/poly.hpp"

#include <cstdint>
#include <vector>

namespace ffvar {

struct ExtField {
    const FieldSpec* base = nullptr;
    int d = 0;        // degree over F_q
    int64_t N = 0;    // q^d
    int64_t q = 0;
    std::vector<uint32_t> modulus;   // monic irreducible over F_q, d+1 codes
    std::vector<uint64_t> qpow;      // q^0 .. q^d

    // base-field op tables (q is small)
    std::vector<uint16_t> addt, mult, negt;
    // t^(d+i) mod modulus for i in [0, d-2], flattened d codes per row
    std::vector<uint16_t> red;
    // scaled Frobenius images: simg[(i*q + c)] = c * (t^i)^q, packed code
    std::vector<uint32_t> simg;

    uint32_t add(uint32_t a, uint32_t b) const;
    uint32_t sub(uint32_t a, uint32_t b) const;
    uint32_t neg(uint32_t a) const;
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t pow(uint32_t a, int64_t e) const;
    uint32_t frob(uint32_t a) const;       // x -> x^q, no table needed
    uint32_t scalar_mul(uint32_t c, uint32_t a) const;  // c in F_q
    bool is_base(uint32_t a) const { return a < uint32_t(q); }

    // trace down to F_q as a linear functional on digits
    std::vector<uint16_t> trace_basis;     // Tr(t^i), i < d
    uint16_t trace(uint32_t a) const;
};

// Modulus: lowest-code monic irreducible of degree d over F (certified by
// the Frobenius/gcd test, so large d is fine).
ExtField make_ext(const FieldSpec& F, int d);
// Same field but modulo a caller-chosen irreducible; the class of t is then
// a root of that polynomial, which is how residue fields kappa_v get built.
ExtField make_ext(const FieldSpec& F, const Poly& modulus);
// The packed code of the class of t.
uint32_t ext_t_class(const ExtField& E);
bool ext_modulus_is_irreducible(const FieldSpec& F, const Poly& f);

// x -> x^q for every code; built by additivity in O(N d) digit steps.
std::vector<uint32_t> frobenius_table(const ExtField& E);

// Quadratic character on codes: +1 nonzero square, -1 nonsquare, 0 at 0.
// Odd q only.
std::vector<int8_t> quadratic_character_table(const ExtField& E);

// One place of degree exactly d, seen from the orbit scan.
struct PlaceEntry {
    uint32_t res;  // code of (prime mod t^5); for d < 5 this is the whole prime
    int32_t a;     // Frobenius trace datum attached by the scan
};

// Enumerates Frobenius orbits of size exactly d (= monic primes of degree d),
// reporting the minimal representative and its conjugates in walking order.
// Callback: void(uint32_t theta, const uint32_t* conj, int d).
template <class Fn>
void scan_orbits(const ExtField& E, const std::vector<uint32_t>& frob, Fn&& fn) {
    std::vector<uint32_t> conj(E.d);
    for (int64_t x = 0; x < E.N; ++x) {
        uint32_t y = frob[x];
        int steps = 1;
        bool minimal = true;
        conj[0] = uint32_t(x);
        while (y != uint32_t(x)) {
            if (y < uint32_t(x)) { minimal = false; break; }
            if (steps < E.d) conj[steps] = y;
            ++steps;
            y = frob[y];
        }
        if (minimal && steps == E.d) fn(uint32_t(x), conj.data(), E.d);
    }
}

// Minimal polynomial of theta truncated to min(slots, d+1) coefficients,
// packed base q (includes the leading 1 when d < slots).
uint32_t minpoly_code(const ExtField& E, const uint32_t* conj, int slots);

// Convenience: full minimal polynomial as a Poly over the base field.
Poly minpoly(const ExtField& E, const uint32_t* conj);

}  // namespace ffvar
