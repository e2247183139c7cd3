#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ffvar/chars.hpp"
#include "ffvar/lfunc.hpp"
#include "ffvar/reps.hpp"
#include "ffvar/weights.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace ffvar;

static double ipowd(int64_t b, int e) {
    double r = 1;
    while (e-- > 0) r *= double(b);
    return r;
}

TEST_CASE("trace sums against literal enumeration, all characters") {
    struct Row {
        int p, k, m, nmax;
        RepKind kind;
    };
    for (const Row& r : {Row{3, 1, 2, 5, RepKind::trivial}, Row{3, 1, 3, 5, RepKind::trivial},
                         Row{5, 1, 2, 4, RepKind::legendre}, Row{5, 1, 2, 4, RepKind::trivial}}) {
        auto F = make_field(r.p, r.k);
        auto rep = make_rep(F, r.kind);
        auto G = build_unit_group(F, r.m);
        auto W = build_weight_tables(F, *rep, r.m, r.nmax);
        for (const auto& chi : enumerate_characters(G, false, false)) {
            auto fast = trace_series(W, chi, r.nmax);
            auto ref = trace_series_reference(F, *rep, chi, r.nmax);
            for (int n = 1; n <= r.nmax; ++n) {
                CAPTURE(r.p);
                CAPTURE(chi.serialize());
                CAPTURE(n);
                CHECK(std::abs(fast[size_t(n - 1)] - ref[size_t(n - 1)]) <= 1e-9);
            }
        }
    }
}

TEST_CASE("trivial-character trace sums have the closed form q^n - 1") {
    for (auto [p, m] : {std::pair{3, 3}, {5, 2}}) {
        auto F = make_field(p, 1);
        auto rep = trivial_rep(F);
        auto G = build_unit_group(F, m);
        auto W = build_weight_tables(F, *rep, m, 7);
        auto b = trace_series(W, trivial_character(G), 7);
        for (int n = 1; n <= 7; ++n)
            CHECK(std::abs(b[size_t(n - 1)] - (ipowd(p, n) - 1.0)) <= 1e-9 * ipowd(p, n));
    }
}

TEST_CASE("coefficient reversal leaves classical trace sums alone but twists the curve's") {
    // classical von Mangoldt is reversal-invariant, so for even characters the
    // reversed aggregation reproduces the plain one
    {
        auto F = make_field(3, 1);
        auto rep = trivial_rep(F);
        auto G = build_unit_group(F, 3);
        auto W = build_weight_tables(F, *rep, 3, 6);
        for (const auto& chi : enumerate_characters(G, true, false)) {
            auto fwd = trace_series(W, chi, 6, false);
            auto rev = trace_series(W, chi, 6, true);
            for (int n = 1; n <= 6; ++n)
                CHECK(std::abs(fwd[size_t(n - 1)] - rev[size_t(n - 1)]) <= 1e-9);
        }
    }
    // the curve family picks up a quadratic twist under reversal, so the two
    // aggregations genuinely differ for some even character
    {
        auto F = make_field(5, 1);
        auto rep = legendre_rep(F);
        auto G = build_unit_group(F, 2);
        auto W = build_weight_tables(F, *rep, 2, 4);
        double maxdiff = 0;
        for (const auto& chi : enumerate_characters(G, true, true)) {
            auto fwd = trace_series(W, chi, 4, false);
            auto rev = trace_series(W, chi, 4, true);
            for (int n = 1; n <= 4; ++n)
                maxdiff = std::max(maxdiff,
                                   std::abs(fwd[size_t(n - 1)] - rev[size_t(n - 1)]));
        }
        CHECK(maxdiff > 0.5);
    }
}

TEST_CASE("series exponentiation and its inverse") {
    // log((1-T)/(1-qT)) has coefficients (q^n - 1)/n
    auto F = make_field(3, 1);
    auto rep = trivial_rep(F);
    auto G = build_unit_group(F, 2);
    auto W = build_weight_tables(F, *rep, 2, 7);
    auto b = trace_series(W, trivial_character(G), 7);
    auto c = reconstruct_L(b, 7);
    CHECK(std::abs(c[0] - 1.0) <= 1e-12);
    for (int j = 1; j <= 7; ++j) {
        double want = ipowd(3, j) - ipowd(3, j - 1);
        CHECK(std::abs(c[size_t(j)] - want) <= 1e-9 * want);
    }
    // round trip on arbitrary data
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    std::vector<cdouble> rb(10);
    for (auto& v : rb) v = cdouble(U(rng), U(rng));
    auto rc = reconstruct_L(rb, 10);
    auto back = trace_from_L(rc, 10);
    for (int n = 0; n < 10; ++n)
        CHECK(std::abs(back[size_t(n)] - rb[size_t(n)]) <= 1e-10);
}

TEST_CASE("inverse roots from coefficients") {
    // (1 - 2T)(1 - 3T) = 1 - 5T + 6T^2
    auto roots = polynomial_inverse_roots({cdouble(1), cdouble(-5), cdouble(6)});
    REQUIRE(roots.size() == 2);
    CHECK(std::abs(roots[0] - cdouble(2)) <= 1e-9);
    CHECK(std::abs(roots[1] - cdouble(3)) <= 1e-9);
    CHECK(polynomial_inverse_roots({cdouble(1)}).empty());
    auto one = polynomial_inverse_roots({cdouble(1), cdouble(-1)});
    REQUIRE(one.size() == 1);
    CHECK(std::abs(one[0] - cdouble(1)) <= 1e-12);
    // trace of phases
    std::vector<double> ph = {0.5, -0.5};
    CHECK(std::abs(trace_from_theta(ph, 3) - cdouble(2 * std::cos(1.5))) <= 1e-12);
}

TEST_CASE("classification: classical representation") {
    auto F = make_field(3, 1);
    auto rep = trivial_rep(F);
    auto G = build_unit_group(F, 3);
    auto W = build_weight_tables(F, *rep, 3, default_truncation(F, *rep, 3));

    // the trivial character carries the zeta pole: not a polynomial
    auto rec0 = classify(*rep, trivial_character(G), W);
    CHECK(rec0.cls == LClass::heavy);
    CHECK(rec0.tail_max > 1.0);

    // every other even character is clean: polynomial with a zero at T = 1,
    // unit-circle spectrum after scaling, degree = conductor exponent - 2
    for (const auto& chi : enumerate_characters(G, true, true)) {
        auto rec = classify(*rep, chi, W);
        CAPTURE(chi.serialize());
        CHECK(rec.cls == LClass::good);
        CHECK(rec.trivial_zero);
        CHECK(rec.S == rec.conductor_exponent - 2);
        CHECK(int(rec.eigenphases.size()) == rec.S);
        CHECK(rec.purity_defect <= 1e-6);
        CHECK(rec.residual_recon <= 1e-8);
    }
}

TEST_CASE("classification: curve twists are pure with no zero at T = 1") {
    auto F = make_field(5, 1);
    auto rep = legendre_rep(F);
    auto G = build_unit_group(F, 3);
    auto W = build_weight_tables(F, *rep, 3, default_truncation(F, *rep, 3));
    for (const auto& chi : enumerate_characters(G, true, true)) {
        auto rec = classify(*rep, chi, W);
        CAPTURE(chi.serialize());
        CHECK(rec.cls == LClass::good);
        CHECK_FALSE(rec.trivial_zero);
        CHECK(rec.l_at_1 > 1.0);  // remainder is of head size, not noise
        CHECK(rec.S == 2 * rec.conductor_exponent - 1);
        CHECK(int(rec.eigenphases.size()) == rec.S);
        CHECK(rec.purity_defect <= 1e-6);
        CHECK(rec.residual_recon <= 1e-8);
    }
}

TEST_CASE("classification: curve representation at the trivial character") {
    // finite part is 1 - a_t T with a_t the quadratic-character value at -1;
    // a zero at T = 1 iff a_t = +1
    {
        auto F = make_field(5, 1);
        auto rep = legendre_rep(F);
        auto G = build_unit_group(F, 2);
        auto W = build_weight_tables(F, *rep, 2, default_truncation(F, *rep, 2));
        auto rec = classify(*rep, trivial_character(G), W);
        CHECK(rec.cls == LClass::good);
        CHECK(rec.trivial_zero);
        CHECK(rec.S == 0);
        CHECK(std::abs(rec.coeffs[1] - cdouble(-1.0)) <= 1e-9);
    }
    {
        auto F = make_field(7, 1);
        auto rep = legendre_rep(F);
        auto G = build_unit_group(F, 2);
        ClassifyOptions opts;
        opts.D = 6;
        auto W = build_weight_tables(F, *rep, 2, 6);
        auto rec = classify(*rep, trivial_character(G), W, opts);
        CHECK(rec.cls == LClass::mixed);  // inverse root -1 sits far off |gamma| = q
        CHECK_FALSE(rec.trivial_zero);
        CHECK(std::abs(rec.coeffs[1] - cdouble(1.0)) <= 1e-9);
        CHECK(std::abs(rec.l_at_1 - 2.0) <= 1e-9);
        CHECK(rec.purity_defect > 0.5);
    }
}

TEST_CASE("degree census across all even characters") {
    {
        auto F = make_field(3, 1);
        auto rep = trivial_rep(F);
        auto census = degree_census(F, *rep, 3);
        CHECK(census.total == 9);
        CHECK(census.heavy == 1);
        CHECK(census.mixed == 0);
        CHECK(census.good_by_S == std::map<int, int64_t>{{0, 2}, {1, 6}});
    }
    {
        auto F = make_field(3, 1);
        auto rep = trivial_rep(F);
        auto census = degree_census(F, *rep, 5);
        CHECK(census.total == 81);
        CHECK(census.heavy == 1);
        CHECK(census.mixed == 0);
        CHECK(census.good_by_S == std::map<int, int64_t>{{0, 2}, {1, 6}, {2, 18}, {3, 54}});
    }
    {
        auto F = make_field(5, 1);
        auto rep = legendre_rep(F);
        auto census = degree_census(F, *rep, 2);
        CHECK(census.total == 5);
        CHECK(census.heavy == 0);
        CHECK(census.mixed == 0);
        CHECK(census.good_by_S == std::map<int, int64_t>{{0, 1}, {3, 4}});
    }
    {
        // conductor strata: 4 characters of conductor 2 (S=3), 20 of
        // conductor 3 (S=5), plus the trivial one (S=0)
        auto F = make_field(5, 1);
        auto rep = legendre_rep(F);
        auto census = degree_census(F, *rep, 3);
        CHECK(census.total == 25);
        CHECK(census.heavy == 0);
        CHECK(census.mixed == 0);
        CHECK(census.good_by_S == std::map<int, int64_t>{{0, 1}, {3, 4}, {5, 20}});
    }
    {
        auto F = make_field(7, 1);
        auto rep = legendre_rep(F);
        ClassifyOptions opts;
        opts.D = 6;
        auto census = degree_census(F, *rep, 2, opts);
        CHECK(census.total == 7);
        CHECK(census.heavy == 0);
        CHECK(census.mixed == 1);  // trivial character: finite part 1 + T
        CHECK(census.good_by_S == std::map<int, int64_t>{{3, 6}});
        REQUIRE(census.non_good.size() == 1);
        CHECK(census.non_good[0].conductor_exponent == 0);
    }
}

TEST_CASE("classification guards") {
    auto F = make_field(3, 1);
    auto rep = trivial_rep(F);
    auto G = build_unit_group(F, 2);
    auto W = build_weight_tables(F, *rep, 2, 3);
    ClassifyOptions opts;
    opts.D = 9;
    CHECK_THROWS(classify(*rep, trivial_character(G), W, opts));
}
