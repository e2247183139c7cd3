#include "ffvar/weights.hpp"

#include "ffvar/extfield.hpp"
#include "ffvar/ntt.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ffvar {

namespace {

constexpr int kMaxResidueExp = 15;

int64_t ipow64(int64_t b, int e) {
    int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// Frobenius traces a_{v,1} at every point of F_{q^d} for the curve
// y^2 = x(x-1)(x-theta), via one exact additive convolution:
//   a1(theta) = -sum_x chi(x) chi(x-1) chi(x-theta).
// Valid at nonsingular theta; degree >= 2 orbit representatives never hit
// the singular fibers theta in {0, 1}.
std::vector<int32_t> legendre_a1_table(const ExtField& E) {
    auto chi = quadratic_character_table(E);
    auto plan = make_ntt_plan(int(E.base->p), E.base->k * E.d);
    if (plan.N != E.N) throw std::logic_error("legendre_a1_table: plan size mismatch");
    std::vector<int8_t> u(size_t(E.N)), w(size_t(E.N));
    for (int64_t x = 0; x < E.N; ++x) {
        u[size_t(x)] = int8_t(chi[size_t(x)] * chi[E.sub(uint32_t(x), 1)]);
        w[size_t(x)] = chi[E.neg(uint32_t(x))];
    }
    std::vector<int8_t>().swap(chi);
    auto conv = cyclic_convolution(plan, u, w);
    for (auto& v : conv) v = -v;
    return conv;
}

struct ScanKey {
    int64_t p;
    int k;
    int rep;
    int d;
    bool operator<(const ScanKey& o) const {
        return std::tie(p, k, rep, d) < std::tie(o.p, o.k, o.rep, o.d);
    }
};

std::map<ScanKey, std::unique_ptr<DegreePlaces>> g_place_cache;
std::mutex g_place_mutex;

// Degree-1 places are the q linear primes t - theta; the curve's two
// ramified fibers live here, so this path just asks the representation.
std::unique_ptr<DegreePlaces> scan_linear(const FieldSpec& F, const Representation& rep) {
    auto dp = std::make_unique<DegreePlaces>();
    dp->d = 1;
    for (int64_t c = 0; c < F.q; ++c) {
        Poly P;
        P.c = {FieldElement{uint32_t(c)}, FieldElement{1}};
        PlaceWeight pw;
        pw.code = uint32_t(c + F.q);
        pw.a1 = int16_t(rep.local_trace(P, 1));
        pw.ramified = rep.is_ramified(P) ? 1 : 0;
        dp->places.push_back(pw);
    }
    return dp;
}

std::unique_ptr<DegreePlaces> scan_degree(const FieldSpec& F, const Representation& rep, int d) {
    if (d == 1) return scan_linear(F, rep);
    auto dp = std::make_unique<DegreePlaces>();
    dp->d = d;
    ExtField E = make_ext(F, d);
    const bool curve = rep.kind() == RepKind::legendre;
    std::vector<int32_t> a1tab;
    if (curve) {
        for (const Poly& P : rep.ramified_places())
            if (P.deg() >= 2)
                throw std::logic_error("scan_degree: ramified place beyond the linear layer");
        a1tab = legendre_a1_table(E);
    }
    auto frob = frobenius_table(E);
    const int64_t hasse = 4 * E.N;

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::vector<std::vector<PlaceWeight>> buckets(static_cast<size_t>(threads));

#ifdef _OPENMP
#pragma omp parallel num_threads(threads)
#endif
    {
        int tid = 0;
#ifdef _OPENMP
        tid = omp_get_thread_num();
#endif
        auto& out = buckets[size_t(tid)];
        uint32_t conj[34];
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 16384)
#endif
        for (int64_t x = 0; x < E.N; ++x) {
            uint32_t y = frob[size_t(x)];
            int steps = 1;
            bool minimal = true;
            conj[0] = uint32_t(x);
            while (y != uint32_t(x)) {
                if (y < uint32_t(x)) { minimal = false; break; }
                if (steps < d) conj[steps] = y;
                ++steps;
                y = frob[size_t(y)];
            }
            if (!minimal || steps != d) continue;
            PlaceWeight pw;
            pw.code = minpoly_code(E, conj, d + 1);
            if (curve) {
                int32_t a = a1tab[size_t(x)];
                if (int64_t(a) * a > hasse)
                    throw std::logic_error("scan_degree: trace outside the Hasse bound");
                pw.a1 = int16_t(a);
            } else {
                pw.a1 = 1;
            }
            out.push_back(pw);
        }
    }

    size_t total = 0;
    for (const auto& b : buckets) total += b.size();
    dp->places.reserve(total);
    for (auto& b : buckets) {
        dp->places.insert(dp->places.end(), b.begin(), b.end());
        std::vector<PlaceWeight>().swap(b);
    }
    std::sort(dp->places.begin(), dp->places.end(),
              [](const PlaceWeight& a, const PlaceWeight& b) { return a.code < b.code; });
    return dp;
}

}  // namespace

int scan_degree_cap(int64_t q) {
    int d = 0;
    int64_t pts = 1;
    while (pts * q <= 56000000 && pts * q * q < (int64_t(1) << 31)) {
        pts *= q;
        ++d;
    }
    return d;
}

const DegreePlaces& place_table(const FieldSpec& F, const Representation& rep, int d) {
    if (d < 1 || d > scan_degree_cap(F.q))
        throw std::invalid_argument("place_table: degree outside the scan cap");
    ScanKey key{F.p, F.k, int(rep.kind()), d};
    std::lock_guard<std::mutex> lock(g_place_mutex);
    auto it = g_place_cache.find(key);
    if (it == g_place_cache.end())
        it = g_place_cache.emplace(key, scan_degree(F, rep, d)).first;
    return *it->second;
}

int64_t trace_power(const Representation& rep, int d, const PlaceWeight& pw, int e) {
    if (e < 1) throw std::invalid_argument("trace_power: e must be positive");
    if (rep.kind() == RepKind::trivial) return 1;
    if (pw.ramified) {
        // inertia leaves one eigenvalue line: a_{v,e} = a1^e
        int64_t r = 1;
        for (int i = 0; i < e; ++i) r *= pw.a1;
        return r;
    }
    int64_t qv = ipow64(rep.field().q, d);
    int64_t sm2 = 2, sm1 = pw.a1;  // s_0, s_1
    for (int i = 2; i <= e; ++i) {
        int64_t s = pw.a1 * sm1 - qv * sm2;
        sm2 = sm1;
        sm1 = s;
    }
    return sm1;
}

int64_t lambda_line_sum(const FieldSpec& F, const Representation& rep, int n) {
    if (n < 1) throw std::invalid_argument("lambda_line_sum: n must be positive");
    int64_t total = 0;
    for (int d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        const auto& dp = place_table(F, rep, d);
        int e = n / d;
        int64_t sub = 0;
        for (const auto& pw : dp.places) sub += trace_power(rep, d, pw, e);
        total += int64_t(d) * sub;
    }
    return total;
}

uint32_t residue_mul(const FieldSpec& F, int m, uint32_t a, uint32_t b) {
    if (m < 1 || m > kMaxResidueExp) throw std::invalid_argument("residue_mul: bad modulus");
    uint32_t da[kMaxResidueExp + 1], db[kMaxResidueExp + 1];
    for (int i = 0; i < m; ++i) {
        da[i] = a % uint32_t(F.q);
        a /= uint32_t(F.q);
        db[i] = b % uint32_t(F.q);
        b /= uint32_t(F.q);
    }
    uint64_t code = 0;
    for (int i = m - 1; i >= 0; --i) {
        FieldElement acc{0};
        for (int j = 0; j <= i; ++j)
            acc = gf_add(F, acc, gf_mul(F, FieldElement{da[j]}, FieldElement{db[i - j]}));
        code = code * uint64_t(F.q) + acc.v;
    }
    return uint32_t(code);
}

uint32_t residue_pow(const FieldSpec& F, int m, uint32_t a, int64_t e) {
    if (e < 0) throw std::invalid_argument("residue_pow: negative exponent");
    uint32_t r = 1, base = a;
    while (e > 0) {
        if (e & 1) r = residue_mul(F, m, r, base);
        base = residue_mul(F, m, base, base);
        e >>= 1;
    }
    return r;
}

uint32_t reversed_residue(const FieldSpec& F, uint32_t code, int d, int m) {
    if (m < 1 || m > kMaxResidueExp) throw std::invalid_argument("reversed_residue: bad modulus");
    uint32_t digits[34];
    for (int i = 0; i <= d; ++i) {
        digits[i] = code % uint32_t(F.q);
        code /= uint32_t(F.q);
    }
    int take = std::min(m, d + 1);
    uint64_t out = 0;
    for (int i = take - 1; i >= 0; --i) out = out * uint64_t(F.q) + digits[d - i];
    return uint32_t(out);
}

WeightTables build_weight_tables(const FieldSpec& F, const Representation& rep, int m, int D) {
    if (m < 1 || m > kMaxResidueExp) throw std::invalid_argument("build_weight_tables: bad m");
    if (D < 1 || D > scan_degree_cap(F.q))
        throw std::invalid_argument("build_weight_tables: D outside the scan cap");
    int64_t qm = ipow64(F.q, m);
    if (qm > 10000000) throw std::invalid_argument("build_weight_tables: residue space too large");
    WeightTables W;
    W.m = m;
    W.D = D;
    W.qm = qm;
    W.fwd.assign(size_t(D), std::vector<int64_t>(size_t(qm), 0));
    W.rev.assign(size_t(D), std::vector<int64_t>(size_t(qm), 0));
    for (int d = 1; d <= D; ++d) {
        const auto& dp = place_table(F, rep, d);
        int emax = D / d;
        for (const auto& pw : dp.places) {
            if (pw.code % uint32_t(F.q) == 0) continue;  // the place at t
            uint32_t rf = uint32_t(pw.code % uint64_t(qm));
            uint32_t rr = reversed_residue(F, pw.code, d, m);
            uint32_t cf = rf, cr = rr;
            for (int e = 1; e <= emax; ++e) {
                int64_t w = int64_t(d) * trace_power(rep, d, pw, e);
                W.fwd[size_t(d * e - 1)][cf] += w;
                W.rev[size_t(d * e - 1)][cr] += w;
                if (e < emax) {
                    cf = residue_mul(F, m, cf, rf);
                    cr = residue_mul(F, m, cr, rr);
                }
            }
        }
    }
    return W;
}

WeightTables build_weight_tables_reference(const FieldSpec& F, const Representation& rep,
                                           int m, int D) {
    if (m < 1 || m > kMaxResidueExp) throw std::invalid_argument("build_weight_tables: bad m");
    int64_t qm = ipow64(F.q, m);
    if (ipow64(F.q, D) > 2000000)
        throw std::invalid_argument("build_weight_tables_reference: degree too large");
    WeightTables W;
    W.m = m;
    W.D = D;
    W.qm = qm;
    W.fwd.assign(size_t(D), std::vector<int64_t>(size_t(qm), 0));
    W.rev.assign(size_t(D), std::vector<int64_t>(size_t(qm), 0));
    for (int n = 1; n <= D; ++n) {
        for (const Poly& f : enumerate_monic(F, n)) {
            if (f.coeff(0).v == 0) continue;  // only t^n among prime powers
            int64_t w = von_mangoldt(rep, f);
            if (w == 0) continue;
            uint64_t cf = 0, cr = 0;
            int take = std::min(m, n + 1);
            for (int i = take - 1; i >= 0; --i) {
                cf = cf * uint64_t(F.q) + f.coeff(i).v;
                cr = cr * uint64_t(F.q) + f.coeff(n - i).v;
            }
            W.fwd[size_t(n - 1)][cf] += w;
            W.rev[size_t(n - 1)][cr] += w;
        }
    }
    return W;
}

}  // namespace ffvar
