#include "ffvar/experiments.hpp"

#include "ffvar/rmt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ffvar {

namespace {

int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

ShortIntervalSum nu(const Representation& rep, const Poly& A, int h) {
    const FieldSpec& F = rep.field();
    ShortIntervalSum out;
    out.A = A;
    out.h = h;
    for (const Poly& f : interval(F, A, h))
        if (f.coeff(0).v != 0) out.value += von_mangoldt(rep, f);
    return out;
}

int64_t psi_tilde(const Representation& rep, int n, const Poly& B_star, int m) {
    const FieldSpec& F = rep.field();
    if (m < 1 || m > n) throw std::invalid_argument("psi_tilde: need 1 <= m <= n");
    Poly low = poly_mod(F, B_star, poly_tpow(m));
    // f = low + t^m g with deg g = n-m exactly, every leading coefficient
    int64_t total = 0;
    const int64_t rest = ipow(F.q, n - m);
    for (int64_t lead = 1; lead < F.q; ++lead) {
        for (int64_t r = 0; r < rest; ++r) {
            Poly g = poly_from_code(F, uint64_t(r), n - m);
            g.c.resize(size_t(n - m) + 1, gf_zero());
            g.c.back() = FieldElement{uint32_t(lead)};
            Poly f = poly_add(F, low, poly_mul(F, poly_tpow(m), g));
            total += von_mangoldt(rep, f);
        }
    }
    return total;
}

IntervalTable interval_sums(const FieldSpec& F, const Representation& rep, int n, int h) {
    if (h < 0 || h > n - 1) throw std::invalid_argument("interval_sums: need 0 <= h <= n-1");
    if (n > scan_degree_cap(F.q))
        throw std::invalid_argument("interval_sums: degree beyond scan cap");
    IntervalTable T;
    T.n = n;
    T.h = h;
    T.bins = ipow(F.q, n - h - 1);
    T.sums.assign(size_t(T.bins), 0);

    const int64_t qh1 = ipow(F.q, h + 1);
    for (int d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        const int e = n / d;
        const auto& tab = place_table(F, rep, d);
        if (e == 1) {
            // primes of full degree: the bin is a digit slice of the code
#ifdef _OPENMP
#pragma omp parallel
            {
                std::vector<int64_t> local(size_t(T.bins), 0);
#pragma omp for schedule(static)
                for (int64_t i = 0; i < int64_t(tab.places.size()); ++i) {
                    const PlaceWeight& pw = tab.places[size_t(i)];
                    if (pw.code % F.q == 0) continue;  // the place t
                    local[size_t((pw.code / qh1) % T.bins)] += int64_t(d) * pw.a1;
                }
#pragma omp critical
                for (int64_t b = 0; b < T.bins; ++b) T.sums[size_t(b)] += local[size_t(b)];
            }
#else
            for (const PlaceWeight& pw : tab.places) {
                if (pw.code % F.q == 0) continue;
                T.sums[size_t((pw.code / qh1) % T.bins)] += int64_t(d) * pw.a1;
            }
#endif
        } else {
            for (const PlaceWeight& pw : tab.places) {
                if (pw.code % F.q == 0) continue;  // t^n has constant term 0
                Poly P = poly_from_code(F, pw.code, d + 1);
                Poly f = poly_pow(F, P, e);
                int64_t bin = 0;
                for (int i = n - h - 2; i >= 0; --i)
                    bin = bin * F.q + f.coeff(h + 1 + i).v;
                T.sums[size_t(bin)] += int64_t(d) * trace_power(rep, d, pw, e);
            }
        }
    }
    return T;
}

IntervalTable interval_sums_reference(const FieldSpec& F, const Representation& rep,
                                      int n, int h) {
    if (h < 0 || h > n - 1) throw std::invalid_argument("interval_sums: need 0 <= h <= n-1");
    IntervalTable T;
    T.n = n;
    T.h = h;
    T.bins = ipow(F.q, n - h - 1);
    T.sums.assign(size_t(T.bins), 0);
    for (int64_t r = 0; r < T.bins; ++r) {
        Poly B = poly_from_code(F, uint64_t(r), n - h - 1);
        B.c.resize(size_t(n - h - 1) + 1, gf_zero());
        B.c.back() = gf_one();
        Poly A = poly_mul(F, poly_tpow(h + 1), B);
        T.sums[size_t(r)] = nu(rep, A, h).value;
    }
    return T;
}

double ExpectationReport::spread() const {
    const double lo = std::min({by_definition, by_line_sum, by_trivial_char});
    const double hi = std::max({by_definition, by_line_sum, by_trivial_char});
    return (hi - lo) / std::max(1.0, std::abs(hi));
}

ExpectationReport expectation(const FieldSpec& F, const Representation& rep, int n, int h) {
    ExpectationReport E;
    const double K = double(ipow(F.q, n - h - 1));

    IntervalTable T = interval_sums(F, rep, n, h);
    long double sum = 0;
    for (int64_t s : T.sums) sum += s;
    E.by_definition = double(sum) / double(T.bins);

    E.by_line_sum =
        double(lambda_line_sum(F, rep, n) - von_mangoldt(rep, poly_tpow(n))) / K;

    const int m = n - h;
    UnitGroupTable G = build_unit_group(F, m);
    WeightTables W = build_weight_tables(F, rep, m, n);
    auto b = trace_series(W, trivial_character(G), n);
    E.by_trivial_char = b[size_t(n - 1)].real() / K;
    return E;
}

VarianceReport variance_direct(const FieldSpec& F, const Representation& rep, int n, int h) {
    double size = std::pow(double(F.q), double(n));
    if (size > 1e7)
        throw std::invalid_argument("variance_direct: enumeration bound q^n <= 1e7");
    VarianceReport R;
    R.q = F.q;
    R.n = n;
    R.h = h;
    R.rep_id = rep.name();

    IntervalTable T = interval_sums(F, rep, n, h);
    const int64_t K = T.bins;
    int64_t G = 0;
    __int128 SS = 0;
    for (int64_t s : T.sums) {
        G += s;
        SS += __int128(s) * s;
    }
    // exact: Var = (K * sum s^2 - G^2) / K^2
    const __int128 num = __int128(K) * SS - __int128(G) * G;
    R.expectation = double(G) / double(K);
    R.variance = double((long double)(num) / ((long double)(K) * (long double)(K)));
    R.normalized = R.variance / std::pow(double(F.q), double(n * rep.weight() + h + 1));
    return R;
}

VarianceReport variance_via_characters(const FieldSpec& F, const Representation& rep,
                                       int n, int h) {
    VarianceReport R = variance_direct(F, rep, n, h);
    const int m = n - h;
    if (m >= 2) {
        UnitGroupTable G = build_unit_group(F, m);
        WeightTables W = build_weight_tables(F, rep, m, n);
        long double fwd = 0, rev = 0;
        for (const auto& chi : enumerate_characters(G, /*even_only=*/true,
                                                    /*exclude_trivial=*/true)) {
            fwd += std::norm(trace_series(W, chi, n).back());
            rev += std::norm(trace_series(W, chi, n, /*reversed=*/true).back());
        }
        const long double denom = powl((long double)(F.q), 2 * (n - h - 1));
        R.char_route_variance = double(fwd / denom);
        R.reversed_route_variance = double(rev / denom);
    }
    R.identity_residual =
        std::abs(R.variance - R.char_route_variance) / std::max(1.0, R.variance);
    R.reversed_residual =
        std::abs(R.variance - R.reversed_route_variance) / std::max(1.0, R.variance);
    return R;
}

std::vector<LimitRow> limit_table(RepKind kind, int n, int h,
                                  const std::vector<std::pair<int, int>>& fields,
                                  int64_t rmt_samples, uint64_t seed) {
    if (h > n - 5) throw std::invalid_argument("limit_table: need h <= n-5");
    std::vector<LimitRow> rows;
    for (auto [p, k] : fields) {
        FieldSpec F = make_field(p, k);
        RepPtr rep = make_rep(F, kind);
        LimitRow row;
        row.q = F.q;
        row.n = n;
        row.h = h;
        row.rep_id = rep->name();
        row.normalized_variance = variance_direct(F, *rep, n, h).normalized;

        const int m = n - h;
        ClassifyOptions opts;
        opts.D = default_truncation(F, *rep, m);
        UnitGroupTable G = build_unit_group(F, m);
        WeightTables W = build_weight_tables(F, *rep, m, opts.D);

        std::map<int, int64_t> good_by_S;
        long double trace_sq = 0, bad_mass = 0;
        int64_t trace_terms = 0;
        for (const auto& chi : enumerate_characters(G, /*even_only=*/true,
                                                    /*exclude_trivial=*/false)) {
            LRecord rec = classify(*rep, chi, W, opts);
            if (rec.cls == LClass::good) {
                ++row.good_count;
                ++good_by_S[rec.S];
                if (!chi.is_trivial()) {
                    trace_sq += std::norm(trace_from_theta(rec.eigenphases, n));
                    ++trace_terms;
                }
            } else {
                rec.cls == LClass::mixed ? ++row.mixed_count : ++row.heavy_count;
                if (!chi.is_trivial())
                    bad_mass += std::norm(trace_series(W, chi, n).back());
            }
        }
        int64_t best = -1;
        for (auto [S, cnt] : good_by_S)
            if (cnt >= best) {  // ties break to the larger degree
                best = cnt;
                row.S_majority = S;
            }
        row.predicted = double(std::min<int64_t>(n, row.S_majority));
        row.good_trace_average =
            trace_terms ? double(trace_sq) / double(trace_terms) : 0.0;

        const int w = rep->weight();
        const long double qd = (long double)(F.q);
        row.gap_vs_good = std::abs(
            row.normalized_variance -
            double(trace_sq / powl(qd, n - h - 1)));
        row.gap_bound =
            double(bad_mass / powl(qd, 2 * (n - h - 1) + n * w + h + 1)) +
            10.0 * std::pow(double(F.q), h + 1 - n - n * (1 + w) / 2.0);

        MomentEstimate mc = trace_moment(row.S_majority, n, rmt_samples, seed);
        row.rmt_mean = mc.mean;
        row.rmt_stderr = mc.stderr_;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace ffvar
