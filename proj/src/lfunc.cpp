#include "ffvar/lfunc.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ffvar {

namespace {

int64_t ipow64(int64_t b, int e) {
    int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// chi values on every residue code, zero at non-units
std::vector<cdouble> character_value_table(const DirichletCharacter& chi) {
    const UnitGroupTable& G = *chi.G;
    std::vector<cdouble> vals(static_cast<size_t>(G.qm), cdouble(0.0, 0.0));
    for (int64_t c = 0; c < G.qm; ++c)
        if (G.is_unit(uint32_t(c))) vals[size_t(c)] = chi.value_at(uint32_t(c));
    return vals;
}

}  // namespace

std::vector<cdouble> trace_series(const WeightTables& W, const DirichletCharacter& chi,
                                  int nmax, bool reversed) {
    if (chi.G->m != W.m) throw std::invalid_argument("trace_series: modulus mismatch");
    if (nmax > W.D) throw std::invalid_argument("trace_series: series longer than tables");
    auto vals = character_value_table(chi);
    const auto& tables = reversed ? W.rev : W.fwd;
    std::vector<cdouble> b(static_cast<size_t>(nmax));
    for (int n = 1; n <= nmax; ++n) {
        cdouble acc(0.0, 0.0);
        const auto& row = tables[size_t(n - 1)];
        for (int64_t r = 0; r < W.qm; ++r) {
            int64_t w = row[size_t(r)];
            if (w != 0) acc += double(w) * vals[size_t(r)];
        }
        b[size_t(n - 1)] = acc;
    }
    return b;
}

std::vector<cdouble> trace_series_reference(const FieldSpec& F, const Representation& rep,
                                            const DirichletCharacter& chi, int nmax) {
    std::vector<cdouble> b(static_cast<size_t>(nmax));
    for (int n = 1; n <= nmax; ++n) {
        cdouble acc(0.0, 0.0);
        for (const Poly& f : enumerate_monic(F, n)) {
            int64_t w = von_mangoldt(rep, f);
            if (w != 0) acc += double(w) * chi(f);
        }
        b[size_t(n - 1)] = acc;
    }
    return b;
}

std::vector<cdouble> reconstruct_L(const std::vector<cdouble>& b, int D) {
    if (D < 0 || size_t(D) > b.size()) throw std::invalid_argument("reconstruct_L: bad order");
    std::vector<cdouble> c(static_cast<size_t>(D + 1), cdouble(0.0, 0.0));
    c[0] = 1.0;
    for (int j = 1; j <= D; ++j) {
        cdouble acc(0.0, 0.0);
        for (int i = 1; i <= j; ++i) acc += b[size_t(i - 1)] * c[size_t(j - i)];
        c[size_t(j)] = acc / double(j);
    }
    return c;
}

std::vector<cdouble> trace_from_L(const std::vector<cdouble>& c, int nmax) {
    if (c.empty() || std::abs(c[0] - 1.0) > 1e-12)
        throw std::invalid_argument("trace_from_L: constant term must be 1");
    std::vector<cdouble> b(static_cast<size_t>(nmax), cdouble(0.0, 0.0));
    for (int n = 1; n <= nmax; ++n) {
        cdouble cn = size_t(n) < c.size() ? c[size_t(n)] : cdouble(0.0, 0.0);
        cdouble acc = double(n) * cn;
        for (int i = 1; i < n; ++i) {
            cdouble cji = size_t(n - i) < c.size() ? c[size_t(n - i)] : cdouble(0.0, 0.0);
            acc -= b[size_t(i - 1)] * cji;
        }
        b[size_t(n - 1)] = acc;
    }
    return b;
}

std::vector<cdouble> polynomial_inverse_roots(const std::vector<cdouble>& coeffs) {
    if (coeffs.empty() || std::abs(coeffs[0] - 1.0) > 1e-9)
        throw std::invalid_argument("polynomial_inverse_roots: constant term must be 1");
    int S = int(coeffs.size()) - 1;
    if (S == 0) return {};
    // rescale T -> u/r with r = |c_S|^(1/S) (geometric mean of the inverse
    // roots) so the companion matrix stays balanced; raw coefficients can
    // span many orders of magnitude and wreck the eigensolver's accuracy
    double r = std::abs(coeffs[size_t(S)]);
    r = r > 0 ? std::pow(r, 1.0 / double(S)) : 1.0;
    std::vector<cdouble> d(static_cast<size_t>(S + 1));
    double rj = 1.0;
    for (int j = 0; j <= S; ++j, rj *= r) d[size_t(j)] = coeffs[size_t(j)] / rj;
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(S, S);
    for (int i = 1; i < S; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < S; ++i) comp(i, S - 1) = -d[size_t(S - i)];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("polynomial_inverse_roots: eigensolver failed");
    std::vector<cdouble> roots(static_cast<size_t>(S));
    for (int i = 0; i < S; ++i) {
        cdouble u = es.eigenvalues()(i);
        // Newton steps on u^S + d_1 u^(S-1) + ... + d_S
        for (int it = 0; it < 3; ++it) {
            cdouble p(1.0, 0.0), dp(0.0, 0.0);
            for (int j = 1; j <= S; ++j) {
                dp = dp * u + p;
                p = p * u + d[size_t(j)];
            }
            if (std::abs(dp) < 1e-30) break;
            u -= p / dp;
        }
        roots[size_t(i)] = u * r;
    }
    std::sort(roots.begin(), roots.end(), [](const cdouble& a, const cdouble& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

cdouble trace_from_theta(const std::vector<double>& phases, int n) {
    cdouble acc(0.0, 0.0);
    for (double ph : phases) acc += std::polar(1.0, double(n) * ph);
    return acc;
}

std::string lclass_name(LClass c) {
    switch (c) {
        case LClass::good: return "good";
        case LClass::mixed: return "mixed";
        case LClass::heavy: return "heavy";
    }
    return "?";
}

int default_truncation(const FieldSpec& F, const Representation& rep, int m) {
    return std::min(m * rep.dim() + 4, scan_degree_cap(F.q));
}

LRecord classify(const Representation& rep, const DirichletCharacter& chi,
                 const WeightTables& W, const ClassifyOptions& opts) {
    const FieldSpec& F = rep.field();
    const int m = W.m;
    int D = opts.D > 0 ? opts.D : default_truncation(F, rep, m);
    if (D > W.D) throw std::invalid_argument("classify: tables too short for truncation");

    LRecord rec;
    rec.char_id = chi.serialize();
    rec.even = chi.even;
    rec.conductor_exponent = chi.conductor_exponent();

    auto b = trace_series(W, chi, D);
    rec.coeffs = reconstruct_L(b, D);

    // a priori the finite part is a polynomial of degree < m * dim(rho);
    // surviving mass beyond that bound signals a pole (non-polynomial L)
    const int degree_bound = m * rep.dim() - 1;
    double head = 1.0;
    for (int j = 0; j <= std::min(degree_bound, D); ++j)
        head = std::max(head, std::abs(rec.coeffs[size_t(j)]));
    for (int j = degree_bound + 1; j <= D; ++j)
        rec.tail_max = std::max(rec.tail_max, std::abs(rec.coeffs[size_t(j)]));
    if (rec.tail_max > opts.tol_coeff * head) {
        rec.cls = LClass::heavy;
        return rec;
    }

    int SL = 0;
    for (int j = std::min(degree_bound, D); j >= 1; --j) {
        if (std::abs(rec.coeffs[size_t(j)]) > opts.tol_coeff * head) {
            SL = j;
            break;
        }
    }

    cdouble L1(0.0, 0.0);
    for (int j = 0; j <= SL; ++j) L1 += rec.coeffs[size_t(j)];
    rec.l_at_1 = std::abs(L1);
    rec.trivial_zero = rec.l_at_1 <= opts.tol_coeff * head;

    // spectral part: divide the zero at T = 1 out when it is actually there
    // (measured, not assumed); otherwise all of L is spectrum
    std::vector<cdouble> M;
    if (rec.trivial_zero) {
        rec.S = SL - 1;
        M.resize(static_cast<size_t>(rec.S + 1));
        cdouble run(0.0, 0.0);
        for (int j = 0; j <= rec.S; ++j) {
            run += rec.coeffs[size_t(j)];
            M[size_t(j)] = run;
        }
    } else {
        rec.S = SL;
        M.assign(rec.coeffs.begin(), rec.coeffs.begin() + SL + 1);
    }

    auto gammas = polynomial_inverse_roots(M);  // empty when M = 1
    for (const auto& g : gammas) {
        // backward error of the monic reversed polynomial at the computed
        // root, relative to the magnitude the Horner evaluation moves through
        cdouble acc(1.0, 0.0);
        double mag = 1.0;
        const double ag = std::abs(g);
        for (int j = 1; j <= rec.S; ++j) {
            acc = acc * g + M[size_t(j)];
            mag = mag * ag + std::abs(M[size_t(j)]);
        }
        rec.residual_root = std::max(rec.residual_root, std::abs(acc) / mag);
    }
    if (rec.residual_root > opts.tol_root)
        throw std::runtime_error("classify: root residual contract violated");

    const double scale = std::pow(double(F.q), 0.5 * (1 + rep.weight()));
    for (const auto& g : gammas)
        rec.purity_defect = std::max(rec.purity_defect, std::abs(std::abs(g) / scale - 1.0));
    if (rec.purity_defect > opts.tol_rh) {
        rec.cls = LClass::mixed;
        return rec;
    }

    rec.cls = LClass::good;
    rec.eigenphases.reserve(gammas.size());
    for (const auto& g : gammas) rec.eigenphases.push_back(std::arg(g));
    std::sort(rec.eigenphases.begin(), rec.eigenphases.end());

    // round trip: b_n = -[zero at T=1] - q^{n(1+w)/2} * sum_j e^{i n theta_j}
    const double zero_term = rec.trivial_zero ? 1.0 : 0.0;
    for (int n = 1; n <= D; ++n) {
        cdouble rebuilt = -zero_term -
                          std::pow(double(ipow64(F.q, n)), 0.5 * (1 + rep.weight())) *
                              trace_from_theta(rec.eigenphases, n);
        double rel = std::abs(rebuilt - b[size_t(n - 1)]) /
                     std::max(1.0, std::abs(b[size_t(n - 1)]));
        rec.residual_recon = std::max(rec.residual_recon, rel);
    }
    return rec;
}

DegreeCensus degree_census(const FieldSpec& F, const Representation& rep, int m,
                           const ClassifyOptions& opts) {
    DegreeCensus out;
    out.m = m;
    out.D = opts.D > 0 ? opts.D : default_truncation(F, rep, m);
    ClassifyOptions local = opts;
    local.D = out.D;
    auto G = build_unit_group(F, m);
    auto W = build_weight_tables(F, rep, m, out.D);
    auto chars = enumerate_characters(G, /*even_only=*/true, /*exclude_trivial=*/false);
    for (const auto& chi : chars) {
        LRecord rec = classify(rep, chi, W, local);
        ++out.total;
        switch (rec.cls) {
            case LClass::good:
                ++out.good_by_S[rec.S];
                break;
            case LClass::mixed:
                ++out.mixed;
                out.non_good.push_back(std::move(rec));
                break;
            case LClass::heavy:
                ++out.heavy;
                out.non_good.push_back(std::move(rec));
                break;
        }
    }
    return out;
}

}  // namespace ffvar
