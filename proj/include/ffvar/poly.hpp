#pragma once
// Dense univariate polynomials over F_q.  Coefficients are stored
// constant-term first and kept canonical: no trailing zero coefficients,
// so the zero polynomial has an empty vector and degree -1.

#include "ffvar/gf.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ffvar {

struct Poly {
    std::vector<FieldElement> c;  // c[i] = coefficient of t^i

    int deg() const { return int(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    FieldElement coeff(int i) const {
        return (i >= 0 && i < int(c.size())) ? c[i] : FieldElement{0};
    }
    FieldElement lead() const { return c.empty() ? FieldElement{0} : c.back(); }
    friend bool operator==(const Poly&, const Poly&) = default;
};

Poly poly_trim(Poly f);  // canonicalize (drop trailing zeros)
Poly poly_from_codes(const std::vector<uint32_t>& codes);
Poly poly_t();                        // the polynomial t
Poly poly_const(FieldElement a);
Poly poly_tpow(int n);                // t^n

Poly poly_add(const FieldSpec& F, const Poly& a, const Poly& b);
Poly poly_sub(const FieldSpec& F, const Poly& a, const Poly& b);
Poly poly_neg(const FieldSpec& F, const Poly& a);
Poly poly_mul(const FieldSpec& F, const Poly& a, const Poly& b);
Poly poly_scale(const FieldSpec& F, FieldElement s, const Poly& a);
Poly poly_pow(const FieldSpec& F, Poly base, int64_t e);
FieldElement poly_eval(const FieldSpec& F, const Poly& f, FieldElement x);

// quotient and remainder; throws std::domain_error when b = 0
std::pair<Poly, Poly> divrem(const FieldSpec& F, const Poly& a, const Poly& b);
bool divides(const FieldSpec& F, const Poly& b, const Poly& a);  // b | a
Poly poly_mod(const FieldSpec& F, const Poly& a, const Poly& b);

bool is_monic(const Poly& f);
Poly make_monic(const FieldSpec& F, const Poly& f);

// Integer code of a polynomial of degree < len: sum coeff_code(i) * q^i.
// Only valid while q^len fits in uint64; callers keep len small.
uint64_t poly_code(const FieldSpec& F, const Poly& f, int len);
Poly poly_from_code(const FieldSpec& F, uint64_t code, int len);

struct Factorization {
    FieldElement unit;                       // leading coefficient
    std::vector<std::pair<Poly, int>> powers;  // (monic prime, exponent),
                                               // primes in enumeration order
};

// Exhaustive trial division by monic polynomials in order of (degree, code).
// Baseline algorithm, exponential in deg f; intended for small inputs.
Factorization factorize(const FieldSpec& F, const Poly& f);

// f = unit * P^m for a monic prime P?  Degree-0 f and f = 0 give nullopt.
struct PrimePower {
    Poly prime;
    int exponent = 0;
    FieldElement unit;
};
std::optional<PrimePower> prime_power_form(const FieldSpec& F, const Poly& f);

bool poly_is_irreducible(const FieldSpec& F, const Poly& f);

// Monic polynomials of degree exactly n, ordered by ascending code of the
// lower-coefficient block (constant term varies fastest).
std::vector<Poly> enumerate_monic(const FieldSpec& F, int n);
// Monic irreducibles of degree exactly d, same order.
std::vector<Poly> enumerate_irreducibles(const FieldSpec& F, int d);

// Expected number of monic irreducibles of degree d over F_q.
int64_t irreducible_count(int64_t q, int d);
int mobius(int64_t n);

// Reversal with respect to slot count n: coefficients (c_0,...,c_n),
// zero-padded, written backwards.  Requires deg f <= n.
Poly involute(const FieldSpec& F, const Poly& f, int n);

// The short interval around A of radius q^h: all f with deg(f - A) <= h.
// Requires deg A >= h + 1.  Size q^{h+1}.
std::vector<Poly> interval(const FieldSpec& F, const Poly& A, int h);

// Text form "c0,c1,...,cd" (codes); zero polynomial is "0".
std::string poly_to_string(const Poly& f);
Poly poly_from_string(const FieldSpec& F, const std::string& s);

// A place of the rational function field: monic prime + its degree.
struct PlaceData {
    Poly prime;
    int degree = 0;
};

}  // namespace ffvar
