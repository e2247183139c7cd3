#pragma once
// Short-interval statistics of generalized von Mangoldt sums: interval sums,
// expectation, exact variance (direct and character-route), and the
// large-field comparison table against the unitary-group trace moment.

#include "ffvar/lfunc.hpp"
#include "ffvar/poly.hpp"
#include "ffvar/reps.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ffvar {

struct ShortIntervalSum {
    Poly A;
    int h = 0;
    int64_t value = 0;  // our representations have integer Lambda values
};

// nu(A; h) = sum of Lambda_rho(f) over the q^{h+1} monic f with
// deg(f - A) <= h, excluding f with f(0) = 0.  Literal summation.
ShortIntervalSum nu(const Representation& rep, const Poly& A, int h);

// Sum of Lambda_rho over ALL degree-n polynomials (every nonzero leading
// coefficient) congruent to B_star mod t^m.  Literal summation.
int64_t psi_tilde(const Representation& rep, int n, const Poly& B_star, int m);

// nu over every interval of M_n at once: entry [r] is nu(t^{h+1}B; h) where
// r packs the non-leading coefficients of the monic B of degree n-h-1.
struct IntervalTable {
    int n = 0, h = 0;
    int64_t bins = 0;  // q^{n-h-1}
    std::vector<int64_t> sums;
};

// Bulk route: scatter prime powers through the place tables (OpenMP).
IntervalTable interval_sums(const FieldSpec& F, const Representation& rep, int n, int h);
// Reference route: enumerate every interval member and factorize (serial).
IntervalTable interval_sums_reference(const FieldSpec& F, const Representation& rep,
                                      int n, int h);

struct ExpectationReport {
    double by_definition = 0;    // average of nu over all A in M_n
    double by_line_sum = 0;      // (sum_{f in M_n} Lambda - Lambda(t^n)) / q^{n-h-1}
    double by_trivial_char = 0;  // b_n(trivial character) / q^{n-h-1}
    double spread() const;       // max pairwise relative difference
};
ExpectationReport expectation(const FieldSpec& F, const Representation& rep, int n, int h);

struct VarianceReport {
    int64_t q = 0;
    int n = 0, h = 0;
    std::string rep_id;
    double expectation = 0;
    double variance = 0;    // (1/q^{n-h-1}) sum over intervals |nu - E|^2, exact
    double normalized = 0;  // variance / q^{nw+h+1}
    double predicted = -1;  // min(n, S_majority); -1 until a census supplies it
    // character route: q^{-2(n-h-1)} * sum over even nontrivial chi of |b_n(chi)|^2,
    // with characters read at the polynomial itself (standard) and at its
    // coefficient reversal (the aggregation the interval side actually matches)
    double char_route_variance = 0;
    double identity_residual = 0;
    double reversed_route_variance = 0;
    double reversed_residual = 0;
};

VarianceReport variance_direct(const FieldSpec& F, const Representation& rep, int n, int h);
VarianceReport variance_via_characters(const FieldSpec& F, const Representation& rep,
                                       int n, int h);

struct LimitRow {
    int64_t q = 0;
    int n = 0, h = 0;
    std::string rep_id;
    double normalized_variance = 0;
    double good_trace_average = 0;  // (1/#good) sum over good even nontrivial |Tr theta^n|^2
    int64_t good_count = 0, mixed_count = 0, heavy_count = 0;
    int S_majority = -1;
    double predicted = 0;  // min(n, S_majority)
    double rmt_mean = 0, rmt_stderr = 0;  // Monte Carlo for U(S_majority)
    double gap_vs_good = 0;  // |normalized - q^{-(n-h-1)} sum_good |Tr theta^n|^2|
    double gap_bound = 0;    // exact non-good mass + 10 q^{h+1-n-n(1+w)/2}
};

// One row per field; modulus exponent is n-h throughout.
std::vector<LimitRow> limit_table(RepKind kind, int n, int h,
                                  const std::vector<std::pair<int, int>>& fields,
                                  int64_t rmt_samples, uint64_t seed);

}  // namespace ffvar
