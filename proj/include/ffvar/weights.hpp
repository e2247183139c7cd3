#pragma once
// Bulk place enumeration with Frobenius-trace data, and residue-class
// aggregation of von Mangoldt weights mod t^m.  These tables are what make
// per-character L-series cost |unit group| instead of q^n.

#include "ffvar/poly.hpp"
#include "ffvar/reps.hpp"

#include <cstdint>
#include <vector>

namespace ffvar {

// One monic prime of degree d: packed coefficient code (d+1 base-q digits,
// leading digit 1) and the first Frobenius trace.
struct PlaceWeight {
    uint32_t code = 0;
    int16_t a1 = 0;
    uint16_t ramified = 0;
};

struct DegreePlaces {
    int d = 0;
    std::vector<PlaceWeight> places; // sorted by code
};

// Largest degree the scan kernels accept at this q (code-space and time caps).
int scan_degree_cap(int64_t q);

// All degree-d places with traces for this representation; cached per
// (field, representation kind, d).  OpenMP-parallel orbit scan; for the
// curve representation the traces at d >= 2 come from one exact
// character-sum convolution per degree.
const DegreePlaces& place_table(const FieldSpec& F, const Representation& rep, int d);

// a_{v,e} given a place of degree d with first trace a1.
int64_t trace_power(const Representation& rep, int d, const PlaceWeight& pw, int e);

// Sum of Lambda_rho over all monic polynomials of degree n (includes t^n).
int64_t lambda_line_sum(const FieldSpec& F, const Representation& rep, int n);

// Residue-class aggregation of Lambda_rho over monic prime powers of degree n
// coprime to t, for n = 1..D:
//   fwd[n-1][r] sums over prime powers congruent to r mod t^m,
//   rev[n-1][r] sums over prime powers whose coefficient reversal is ≡ r.
// The reversed tables drive the short-interval side of the variance identity.
struct WeightTables {
    int m = 0;
    int D = 0;
    int64_t qm = 0;
    std::vector<std::vector<int64_t>> fwd, rev;
};

WeightTables build_weight_tables(const FieldSpec& F, const Representation& rep, int m, int D);

// Same contract, by literal enumeration and factorization of every monic
// polynomial (serial reference; pre: q^D small).
WeightTables build_weight_tables_reference(const FieldSpec& F, const Representation& rep,
                                           int m, int D);

// Multiply packed residue codes mod t^m (base-q digit convolution).
uint32_t residue_mul(const FieldSpec& F, int m, uint32_t a, uint32_t b);
uint32_t residue_pow(const FieldSpec& F, int m, uint32_t a, int64_t e);
// Code of the reversal of a degree-d monic prime, truncated mod t^m.
uint32_t reversed_residue(const FieldSpec& F, uint32_t code, int d, int m);

} // namespace ffvar
