#include "ffvar/rmt.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ffvar {

namespace {

// per-sample generator: a splitmix step decorrelates consecutive seeds
uint64_t mix_seed(uint64_t seed, uint64_t i) {
    uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (i + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::complex<double> trace_power(const Eigen::MatrixXcd& g, int n) {
    Eigen::MatrixXcd p = g;
    for (int i = 1; i < n; ++i) p = p * g;
    return p.trace();
}

}  // namespace

double UnitarySample::orthonormality_residual() const {
    Eigen::MatrixXcd r = g.adjoint() * g - Eigen::MatrixXcd::Identity(S, S);
    return r.cwiseAbs().maxCoeff();
}

double UnitarySample::det_modulus() const { return std::abs(g.determinant()); }

UnitarySample sample_haar(int S, uint64_t seed) {
    if (S < 1) throw std::invalid_argument("sample_haar: S must be positive");
    std::mt19937_64 rng(mix_seed(seed, 0));
    std::normal_distribution<double> N01(0.0, 1.0);
    Eigen::MatrixXcd A(S, S);
    for (int i = 0; i < S; ++i)
        for (int j = 0; j < S; ++j) A(i, j) = std::complex<double>(N01(rng), N01(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
    Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(S, S);
    Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < S; ++j) {
        std::complex<double> d = R(j, j);
        double a = std::abs(d);
        std::complex<double> phase = a > 0 ? d / a : std::complex<double>(1.0, 0.0);
        Q.col(j) *= std::conj(phase);
    }
    UnitarySample u;
    u.S = S;
    u.g = std::move(Q);
    return u;
}

MomentEstimate trace_moment(int S, int n, int64_t N, uint64_t seed) {
    if (N < 1) throw std::invalid_argument("trace_moment: need samples");
    long double sum = 0.0L, sumsq = 0.0L;
#ifdef _OPENMP
#pragma omp parallel for reduction(+ : sum, sumsq) schedule(static)
#endif
    for (int64_t i = 0; i < N; ++i) {
        auto u = sample_haar(S, mix_seed(seed, uint64_t(i)));
        double v = std::norm(trace_power(u.g, n));
        sum += v;
        sumsq += double(v) * v;
    }
    MomentEstimate est;
    est.S = S;
    est.n = n;
    est.samples = N;
    est.mean = double(sum / N);
    double var = N > 1 ? double((sumsq - sum * sum / N) / (N - 1)) : 0.0;
    est.stderr_ = std::sqrt(std::max(0.0, var) / double(N));
    return est;
}

std::map<int, MomentEstimate> phase_invariance_check(int S, int n, int64_t N, uint64_t seed,
                                                     std::vector<int> ks) {
    std::map<int, MomentEstimate> out;
    for (int k : ks) {
        if (k == 0) throw std::invalid_argument("phase_invariance_check: k must be nonzero");
        long double sum = 0.0L, sumsq = 0.0L;
#ifdef _OPENMP
#pragma omp parallel for reduction(+ : sum, sumsq) schedule(static)
#endif
        for (int64_t i = 0; i < N; ++i) {
            auto u = sample_haar(S, mix_seed(seed, uint64_t(i)));
            std::complex<double> det = u.g.determinant();
            std::complex<double> dk(1.0, 0.0);
            for (int j = 0; j < std::abs(k); ++j) dk *= det;
            if (k < 0) dk = std::conj(dk);
            // the integrand is complex with zero mean; track its real part,
            // which carries the full signal for the symmetric k pairs
            double v = (std::norm(trace_power(u.g, n)) * dk).real();
            sum += v;
            sumsq += double(v) * v;
        }
        MomentEstimate est;
        est.S = S;
        est.n = n;
        est.samples = N;
        est.mean = double(sum / N);
        double var = N > 1 ? double((sumsq - sum * sum / N) / (N - 1)) : 0.0;
        est.stderr_ = std::sqrt(std::max(0.0, var) / double(N));
        out[k] = est;
    }
    return out;
}

std::vector<double> eigenphases(const UnitarySample& u) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(u.g, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigenphases: solver failed");
    std::vector<double> ph(static_cast<size_t>(u.S));
    for (int i = 0; i < u.S; ++i) ph[size_t(i)] = std::arg(es.eigenvalues()(i));
    return ph;
}

}  // namespace ffvar
