#pragma once
// Haar-random unitary matrices and Monte Carlo estimates of the trace
// moment integral over U(S), which is the model the normalized variance
// converges to.

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <vector>

namespace ffvar {

struct UnitarySample {
    int S = 0;
    Eigen::MatrixXcd g;
    double orthonormality_residual() const;  // max |g*g - I| entry
    double det_modulus() const;
};

// Ginibre matrix -> QR -> phase correction by the conjugate phases of the
// triangular factor's diagonal, giving exact Haar measure.  Deterministic in
// (S, seed).
UnitarySample sample_haar(int S, uint64_t seed);

struct MomentEstimate {
    int S = 0;
    int n = 0;
    int64_t samples = 0;
    double mean = 0;
    double stderr_ = 0;  // sample stddev / sqrt(N)
};

// Monte Carlo mean of |Tr(g^n)|^2 over N Haar samples; the exact value of
// the integral is min(n, S).  Sample i draws from seed+i, so estimates merge
// deterministically regardless of worker count.
MomentEstimate trace_moment(int S, int n, int64_t N, uint64_t seed);

// Monte Carlo check that E[|Tr(g^n)|^2 det(g)^k] = 0 for k != 0; returns
// per-k estimates (mean should be 0 within a few stderr).
std::map<int, MomentEstimate> phase_invariance_check(int S, int n, int64_t N, uint64_t seed,
                                                     std::vector<int> ks = {-2, -1, 1, 2});

// Eigenphases of one sample, in [-pi, pi).
std::vector<double> eigenphases(const UnitarySample& u);

}  // namespace ffvar
