#pragma once
// Twisted L-series: character-weighted trace sums b_n, power-series
// reconstruction of L(T), classification of the finite part, and unitarized
// inverse roots for the spectral side.

#include "ffvar/chars.hpp"
#include "ffvar/reps.hpp"
#include "ffvar/weights.hpp"

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace ffvar {

using cdouble = std::complex<double>;

// b_n = sum over monic f of degree n of chi(f) Lambda_rho(f), n = 1..nmax,
// computed from the residue-aggregated weight tables.  With reversed = true
// the character is evaluated at the coefficient reversal of f instead.
std::vector<cdouble> trace_series(const WeightTables& W, const DirichletCharacter& chi,
                                  int nmax, bool reversed = false);

// Same sums by enumerating and factoring every monic polynomial (reference).
std::vector<cdouble> trace_series_reference(const FieldSpec& F, const Representation& rep,
                                            const DirichletCharacter& chi, int nmax);

// L(T) = exp(sum b_n T^n / n) as coefficients c_0..c_D (Newton's identity).
std::vector<cdouble> reconstruct_L(const std::vector<cdouble>& b, int D);
// Inverse of the above: recover b_1..b_nmax from coefficients.
std::vector<cdouble> trace_from_L(const std::vector<cdouble>& c, int nmax);

// Inverse roots gamma (so that poly = prod (1 - gamma T)) via the companion
// matrix of the reversed polynomial.  coeffs[0] must be 1.
std::vector<cdouble> polynomial_inverse_roots(const std::vector<cdouble>& coeffs);

// Sum of e^{i n phi} over stored phases.
cdouble trace_from_theta(const std::vector<double>& phases, int n);

enum class LClass { good, mixed, heavy };
std::string lclass_name(LClass c);

struct ClassifyOptions {
    int D = 0;               // truncation order; 0 = min(m*dim + 4, scan cap)
    double tol_coeff = 1e-6; // relative threshold for a coefficient to count as zero
    double tol_rh = 1e-6;    // relative tolerance on |gamma| for purity
    double tol_root = 1e-8;  // root-residual contract (relative backward error)
};

struct LRecord {
    std::string char_id;
    bool even = false;
    int conductor_exponent = 0;
    LClass cls = LClass::mixed;
    // The spectral part M: the classical representation's L carries a zero at
    // T = 1 which is divided out; the curve's twists turn out not to (the
    // remainder |L(1)| is reported, never assumed), and then M = L whole.
    bool trivial_zero = false;
    int S = -1;                    // degree of M
    std::vector<cdouble> coeffs;   // c_0..c_D of L
    std::vector<double> eigenphases;  // unitarized inverse-root angles, good only
    double tail_max = 0;           // largest |c_j| beyond the a-priori degree bound
    double l_at_1 = 0;             // |L(1)|, the trivial-zero remainder
    double purity_defect = 0;      // max deviation of |gamma| from q^{(1+w)/2}, relative
    double residual_root = 0;      // max relative backward error at computed roots
    double residual_recon = 0;     // max relative defect of b_n rebuilt from phases
};

// Full pipeline for one character.  W must carry the same modulus exponent as
// chi and reach degree D.
LRecord classify(const Representation& rep, const DirichletCharacter& chi,
                 const WeightTables& W, const ClassifyOptions& opts = {});

int default_truncation(const FieldSpec& F, const Representation& rep, int m);

struct DegreeCensus {
    int m = 0;
    int D = 0;
    int64_t total = 0;              // even characters examined (trivial included)
    std::map<int, int64_t> good_by_S;
    int64_t mixed = 0, heavy = 0;
    std::vector<LRecord> non_good;  // mixed and heavy records, in character order
};

// Classifies every even character mod t^m (including the trivial one).
DegreeCensus degree_census(const FieldSpec& F, const Representation& rep, int m,
                           const ClassifyOptions& opts = {});

} // namespace ffvar
