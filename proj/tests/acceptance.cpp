// Acceptance gate: ten criteria, one verdict line each, exit code = number of
// failed criteria.  Tolerances are pinned here and nowhere else.  Detail text
// states what was measured; where a criterion fails, the measured law that
// holds instead is printed alongside.

#include "ffvar/experiments.hpp"
#include "ffvar/rmt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace ffvar;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
};

int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// 1. line sums of the classical weight equal q^n, q in {2,3,4,5,7,9}, n <= 8
Verdict criterion_1() {
    Verdict v;
    int checked = 0;
    for (auto [p, k] : {std::pair{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {3, 2}}) {
        FieldSpec F = make_field(p, k);
        RepPtr rep = trivial_rep(F);
        for (int n = 1; n <= 8; ++n) {
            if (lambda_line_sum(F, *rep, n) != ipow(F.q, n)) {
                v.pass = false;
                v.detail += fmt(" q=%lld n=%d off;", (long long)F.q, n);
            }
            ++checked;
        }
    }
    if (v.pass) v.detail = fmt("%d line sums equal q^n exactly", checked);
    return v;
}

// 2. reversal invariance of the weights; reversal algebra on random pairs
Verdict criterion_2() {
    Verdict v;
    struct Cell {
        int64_t p;
        const char* rep;
    };
    for (const Cell& c : {Cell{3, "trivial"}, {5, "trivial"}, {5, "legendre"}}) {
        FieldSpec F = make_field(c.p, 1);
        RepPtr rep = make_rep(F, c.rep);
        int64_t bad = 0, total = 0;
        for (int n = 1; n <= 5; ++n)
            for (const Poly& f : enumerate_monic(F, n)) {
                if (f.coeff(0).v == 0) continue;
                ++total;
                if (von_mangoldt(*rep, f) != von_mangoldt(*rep, involute(F, f, n))) ++bad;
            }
        v.detail += fmt("%s q=%lld: %lld/%lld invariant; ", c.rep, (long long)c.p,
                        (long long)(total - bad), (long long)total);
        if (bad) v.pass = false;
    }
    // the grid asks for the curve weight at q=3 as well; that field violates
    // the curve's own characteristic bound, so only q=5 is runnable
    v.detail += "(curve at q=3 impossible: characteristic must exceed 3) ";

    std::mt19937_64 rng(411);
    int64_t alg_bad = 0;
    for (int i = 0; i < 10000; ++i) {
        FieldSpec F = make_field(i % 2 ? 3 : 5, 1);
        auto rand_poly = [&](bool unit_const) {
            Poly f;
            int d = int(rng() % 6) + 1;
            f.c.resize(size_t(d) + 1);
            for (auto& x : f.c) x = FieldElement{uint32_t(rng() % uint64_t(F.q))};
            if (f.c.back().v == 0) f.c.back() = gf_one();
            if (unit_const && f.c.front().v == 0) f.c.front() = gf_one();
            return f;
        };
        Poly f = rand_poly(true), g = rand_poly(false);
        if (involute(F, involute(F, f, f.deg()), f.deg()) != f) ++alg_bad;
        Poly fg = poly_mul(F, f, g);
        if (involute(F, fg, fg.deg()) !=
            poly_mul(F, involute(F, f, f.deg()), involute(F, g, g.deg())))
            ++alg_bad;
    }
    if (alg_bad) v.pass = false;
    v.detail += fmt("reversal algebra: %lld/10000 pairs ok", (long long)(10000 - alg_bad));
    if (!v.pass)
        v.detail += " — measured law: curve weight picks up the quadratic character "
                    "of (-1)^deg f(0) under reversal";
    return v;
}

// 3. character orthogonality, exhaustive
Verdict criterion_3() {
    Verdict v;
    double worst = 0;
    for (auto [p, mmax] : {std::pair{3, 4}, {5, 3}}) {
        FieldSpec F = make_field(p, 1);
        for (int m = 1; m <= mmax; ++m) {
            UnitGroupTable G = build_unit_group(F, m);
            worst = std::max(worst, orthogonality_check(G).max_residual());
        }
    }
    v.pass = worst <= 1e-10;
    v.detail = fmt("max residual %.3g over q=3 m<=4 and q=5 m<=3 (tol 1e-10)", worst);
    return v;
}

// 4. even-character count equals q^{m-1}
Verdict criterion_4() {
    Verdict v;
    int checked = 0;
    for (auto [p, k] : {std::pair{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {3, 2}}) {
        FieldSpec F = make_field(p, k);
        for (int m = 1; m <= 4; ++m) {
            UnitGroupTable G = build_unit_group(F, m);
            auto evens = enumerate_characters(G, true, false);
            if (int64_t(evens.size()) != ipow(F.q, m - 1)) {
                v.pass = false;
                v.detail += fmt(" q=%lld m=%d: %zu != q^{m-1};", (long long)F.q, m,
                                evens.size());
            }
            ++checked;
        }
    }
    if (v.pass) v.detail = fmt("%d (q, m) cells equal q^{m-1} exactly", checked);
    return v;
}

struct VarGrid {
    const char* rep;
    int64_t p;
    int nmax;
};
const VarGrid kVarGrid[] = {{"trivial", 3, 7}, {"trivial", 5, 7}, {"legendre", 5, 6}};

// 5. exact variance identity across the grid
Verdict criterion_5() {
    Verdict v;
    int ok = 0, total = 0, rev_ok = 0;
    double worst_trivial = 0, worst_curve = 1e300, worst_curve_hi = 0;
    for (const VarGrid& g : kVarGrid) {
        FieldSpec F = make_field(g.p, 1);
        RepPtr rep = make_rep(F, g.rep);
        for (int m = 2; m <= 5; ++m)
            for (int n = std::max(m, 2); n <= g.nmax; ++n) {
                VarianceReport R = variance_via_characters(F, *rep, n, n - m);
                ++total;
                if (R.identity_residual <= 1e-8) ++ok;
                if (R.reversed_residual <= 1e-8) ++rev_ok;
                if (rep->kind() == RepKind::trivial)
                    worst_trivial = std::max(worst_trivial, R.identity_residual);
                else {
                    worst_curve = std::min(worst_curve, R.identity_residual);
                    worst_curve_hi = std::max(worst_curve_hi, R.identity_residual);
                }
            }
    }
    v.pass = ok == total;
    v.detail = fmt("%d/%d grid points within 1e-8 (classical worst %.2g; curve "
                   "residuals %.3g..%.3g) — reversed-character route matches on "
                   "%d/%d points",
                   ok, total, worst_trivial, worst_curve, worst_curve_hi, rev_ok, total);
    return v;
}

// 6. expectation multi-route agreement on the same grid
Verdict criterion_6() {
    Verdict v;
    double worst = 0;
    int total = 0;
    for (const VarGrid& g : kVarGrid) {
        FieldSpec F = make_field(g.p, 1);
        RepPtr rep = make_rep(F, g.rep);
        for (int m = 2; m <= 5; ++m)
            for (int n = std::max(m, 2); n <= g.nmax; ++n) {
                worst = std::max(worst, expectation(F, *rep, n, n - m).spread());
                ++total;
            }
    }
    v.pass = worst <= 1e-9;
    v.detail = fmt("%d grid points, worst relative spread %.3g (tol 1e-9)", total, worst);
    return v;
}

struct CensusCell {
    const char* rep;
    int64_t p;
    int m;
    DegreeCensus census;
    int dim;
};

std::vector<CensusCell>& census_grid() {
    static std::vector<CensusCell> cells = [] {
        std::vector<CensusCell> out;
        for (auto [repid, p] :
             {std::pair{"trivial", int64_t(3)}, {"trivial", 5}, {"legendre", 5}, {"legendre", 7}})
            for (int m = 3; m <= 5; ++m) {
                FieldSpec F = make_field(p, 1);
                RepPtr rep = make_rep(F, repid);
                out.push_back({repid, p, m, degree_census(F, *rep, m), rep->dim()});
            }
        return out;
    }();
    return cells;
}

// 7. purity of good characters; heavy set; mixed count
Verdict criterion_7() {
    Verdict v;
    bool heavy_ok = true, mixed_ok = true;
    std::string heavy_note;
    for (const CensusCell& c : census_grid()) {
        bool heavy_is_trivial_char =
            c.census.heavy == 1 && !c.census.non_good.empty() &&
            std::any_of(c.census.non_good.begin(), c.census.non_good.end(),
                        [](const LRecord& r) {
                            return r.cls == LClass::heavy && r.conductor_exponent == 0;
                        });
        if (!heavy_is_trivial_char) {
            heavy_ok = false;
            heavy_note += fmt(" %s q=%lld m=%d: heavy=%lld;", c.rep, (long long)c.p, c.m,
                              (long long)c.census.heavy);
        }
        if (c.census.mixed > c.dim) mixed_ok = false;
    }
    v.pass = heavy_ok && mixed_ok;
    v.detail = fmt("heavy set {trivial char} on all cells: %s;%s mixed <= dim on all "
                   "cells: %s",
                   heavy_ok ? "yes" : "NO", heavy_note.c_str(), mixed_ok ? "yes" : "NO");
    if (!heavy_ok)
        v.detail += " — measured: the curve's complete L-series is already a "
                    "polynomial, so its trivial twist is never heavy (good at q=5, "
                    "impure at q=7); heavy = {trivial char} holds only for the "
                    "classical weight";
    return v;
}

// purity re-check over every good character (the census keeps only non-good
// records, so run the classifier again over a subgrid and track the defect)
Verdict criterion_7_purity(Verdict v) {
    double worst = 0;
    int64_t goods = 0;
    for (auto [repid, p, m] : {std::tuple{"trivial", int64_t(3), 4}, {"trivial", 5, 3},
                               {"legendre", 5, 3}, {"legendre", 7, 3}}) {
        FieldSpec F = make_field(p, 1);
        RepPtr rep = make_rep(F, repid);
        ClassifyOptions opts;
        opts.D = default_truncation(F, *rep, m);
        UnitGroupTable G = build_unit_group(F, m);
        WeightTables W = build_weight_tables(F, *rep, m, opts.D);
        for (const auto& chi : enumerate_characters(G, true, false)) {
            LRecord rec = classify(*rep, chi, W, opts);
            if (rec.cls == LClass::good) {
                worst = std::max(worst, rec.purity_defect);
                ++goods;
            }
        }
    }
    bool purity_ok = worst <= 1e-6;
    v.pass = v.pass && purity_ok;
    v.detail = fmt("purity: %lld good characters, worst |gamma|/q^{(1+w)/2} defect "
                   "%.3g (tol 1e-6); ",
                   (long long)goods, worst) +
               v.detail;
    return v;
}

// 8. majority degree laws
Verdict criterion_8() {
    Verdict v;
    std::string rows;
    for (const CensusCell& c : census_grid()) {
        int S_maj = -1;
        int64_t best = -1;
        for (auto [S, cnt] : c.census.good_by_S)
            if (cnt >= best) {
                best = cnt;
                S_maj = S;
            }
        bool curve = std::string(c.rep) == "legendre";
        int expected = curve ? 2 * (c.m - 1) : c.m - 2;
        if (S_maj != expected) {
            v.pass = false;
            rows += fmt(" %s q=%lld m=%d: majority S=%d claimed %d;", c.rep,
                        (long long)c.p, c.m, S_maj, expected);
        }
    }
    if (v.pass)
        v.detail = "majority S = n-h-2 (classical) and 2(n-h-1) (curve) on all cells";
    else
        v.detail = fmt("claimed law off:%s — measured: curve majority S = 2(n-h)-1 "
                       "(no zero at T=1 to divide out), classical law holds",
                       rows.c_str());
    return v;
}

// 9. Monte Carlo matrix integral
Verdict criterion_9() {
    Verdict v;
    double worst_z = 0;
    for (int S : {1, 2, 3, 5})
        for (int n = 1; n <= 8; ++n) {
            MomentEstimate est = trace_moment(S, n, 20000, 7000 + uint64_t(S) * 100 + n);
            double expect = double(std::min(n, S));
            double z = est.stderr_ > 0 ? std::abs(est.mean - expect) / est.stderr_
                                       : std::abs(est.mean - expect);
            worst_z = std::max(worst_z, z);
            if (z > 4) {
                v.pass = false;
                v.detail += fmt(" S=%d n=%d: mean %.4f vs %g at %.1f stderr;", S, n,
                                est.mean, expect, z);
            }
        }
    if (v.pass)
        v.detail = fmt("32 cells within 4 stderr of min(n,S) (N=20000, worst %.2f)", worst_z);
    return v;
}

// 10. soft limit check at n=7, h=2
Verdict criterion_10() {
    Verdict v;
    auto norm = [](const char* repid, int64_t q) {
        FieldSpec F = parse_field_tag(std::to_string(q));
        RepPtr rep = make_rep(F, repid);
        return variance_direct(F, *rep, 7, 2).normalized;
    };
    double t3 = norm("trivial", 3), t5 = norm("trivial", 5), t7 = norm("trivial", 7),
           t9 = norm("trivial", 9);
    bool triv_ok = std::abs(t9 - 3) <= 0.35 * 3 && std::abs(t9 - 3) < std::abs(t3 - 3);
    double l5 = norm("legendre", 5), l7 = norm("legendre", 7);
    bool curve_ok = std::abs(l7 - 7) <= 0.35 * 7;
    v.pass = triv_ok && curve_ok;
    v.detail = fmt("classical Var/q^{h+1}: %.4f, %.4f, %.4f, %.4f (q=3,5,7,9), target 3 "
                   "within 1.05 and q=9 closer than q=3: %s%s; curve Var/q^{n+h+1}: "
                   "%.4f (q=5), %.4f (q=7), target 7 within 2.45 at q=7: %s",
                   t3, t5, t7, t9, triv_ok ? "yes" : "NO",
                   triv_ok ? ""
                           : " — measured: the family value oscillates about 3 "
                             "(crosses it at q=7); the two-point comparison is noise-dominated",
                   l5, l7, curve_ok ? "yes" : "NO");
    return v;
}

int run_acceptance_suite() {
    struct Item {
        int id;
        const char* name;
        Verdict (*fn)();
    };
    const Item items[] = {
        {1, "prime polynomial line sums", criterion_1},
        {2, "reversal invariance of the weights", criterion_2},
        {3, "character orthogonality", criterion_3},
        {4, "even-character count", criterion_4},
        {5, "exact variance identity", criterion_5},
        {6, "expectation route agreement", criterion_6},
        {7, "purity / heavy / mixed classification", criterion_7},
        {8, "majority degree laws", criterion_8},
        {9, "unitary-group trace moment", criterion_9},
        {10, "normalized variance limit (soft)", criterion_10},
    };
    int failures = 0;
    for (const Item& it : items) {
        Verdict v = it.fn();
        if (it.id == 7) v = criterion_7_purity(std::move(v));
        std::printf("CRITERION %2d %s  %s — %s\n", it.id, v.pass ? "PASS" : "FAIL",
                    it.name, v.detail.c_str());
        std::fflush(stdout);
        if (!v.pass) ++failures;
    }
    std::printf("SUMMARY %d/10 criteria pass, %d fail\n", 10 - failures, failures);
    return failures;
}

}  // namespace

int main() { return run_acceptance_suite(); }
