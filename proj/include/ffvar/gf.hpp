#pragma once
// Arithmetic in F_q, q = p^k.  Elements are integer codes: the element
// sum_i c_i x^i  (0 <= c_i < p) has code sum_i c_i p^i, so codes range over
// [0, q).  All operations work directly on the coefficient vectors; no
// log/exp tables are built, which keeps construction O(k^2) even for large q.

#include <cstdint>
#include <string>
#include <vector>

namespace ffvar {

struct FieldElement {
    uint32_t v = 0;
    friend bool operator==(FieldElement, FieldElement) = default;
    friend auto operator<=>(FieldElement, FieldElement) = default;
};

struct FieldSpec {
    int64_t p = 0;                  // characteristic (prime)
    int32_t k = 0;                  // extension degree over F_p
    int64_t q = 0;                  // p^k
    std::vector<int32_t> modulus;   // monic irreducible of degree k over F_p,
                                    // modulus[i] = coeff of x^i, size k+1
    FieldElement generator;         // least code generating the unit group
    std::vector<int64_t> unit_order_primes;  // distinct primes dividing q-1

    std::vector<int32_t> digits(FieldElement a) const;  // length k
    FieldElement from_digits(const std::vector<int32_t>& d) const;
};

// Builds F_{p^k}.  The modulus is the first irreducible in the
// constant-coefficient-first lexicographic enumeration of monic degree-k
// polynomials over F_p, so the construction is deterministic.
// Throws std::invalid_argument if p is not prime or k < 1.
FieldSpec make_field(int64_t p, int32_t k);

FieldElement gf_add(const FieldSpec& F, FieldElement a, FieldElement b);
FieldElement gf_sub(const FieldSpec& F, FieldElement a, FieldElement b);
FieldElement gf_neg(const FieldSpec& F, FieldElement a);
FieldElement gf_mul(const FieldSpec& F, FieldElement a, FieldElement b);
FieldElement gf_inv(const FieldSpec& F, FieldElement a);  // throws on 0
// pow(0,0) = 1 by convention.  e may be any int64, negative allowed for units.
FieldElement gf_pow(const FieldSpec& F, FieldElement a, int64_t e);
bool gf_is_square(const FieldSpec& F, FieldElement a);    // true for 0

inline FieldElement gf_zero() { return {0}; }
inline FieldElement gf_one() { return {1}; }

// Scalar embedding F_p -> F_q (c reduced mod p first).
FieldElement gf_scalar(const FieldSpec& F, int64_t c);

// All q elements in ascending code order: 0, 1, ..., q-1.
std::vector<FieldElement> enumerate_elements(const FieldSpec& F);

// Multiplicative order of a unit (throws on 0).
int64_t gf_order(const FieldSpec& F, FieldElement a);

// "p" for prime fields, "p^k" otherwise; parse accepts both forms as well
// as a plain prime power ("9" -> p=3, k=2).
std::string field_tag(const FieldSpec& F);
FieldSpec parse_field_tag(const std::string& tag);

bool is_prime_i64(int64_t n);

}  // namespace ffvar
