#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffvar/gf.hpp"

#include <set>
#include <stdexcept>

using namespace ffvar;

// brute-force root test: enough to certify irreducibility up to degree 3
static bool has_root_mod_p(const std::vector<int32_t>& f, int64_t p) {
    for (int64_t x = 0; x < p; ++x) {
        int64_t acc = 0;
        for (int i = int(f.size()) - 1; i >= 0; --i) acc = (acc * x + f[i]) % p;
        if (acc == 0) return true;
    }
    return false;
}

TEST_CASE("prime fields") {
    auto F3 = make_field(3, 1);
    CHECK(F3.q == 3);
    CHECK(F3.generator.v == 2);
    CHECK(gf_mul(F3, {2}, {2}).v == 1);
    CHECK(gf_add(F3, {2}, {2}).v == 1);

    auto F5 = make_field(5, 1);
    CHECK(gf_inv(F5, {2}).v == 3);
    std::set<uint32_t> squares;
    for (auto a : enumerate_elements(F5)) squares.insert(gf_mul(F5, a, a).v);
    for (auto a : enumerate_elements(F5))
        CHECK(gf_is_square(F5, a) == (squares.count(a.v) > 0));
}

TEST_CASE("non-prime p rejected") {
    CHECK_THROWS_AS(make_field(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_field(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_field(6, 2), std::invalid_argument);
    CHECK_THROWS_AS(make_field(5, 0), std::invalid_argument);
}

TEST_CASE("F4 structure") {
    auto F4 = make_field(2, 2);
    // only irreducible monic quadratic over F_2 (oracle: root test on all four)
    int irreducible_count = 0;
    std::vector<int32_t> expect;
    for (int c0 = 0; c0 < 2; ++c0)
        for (int c1 = 0; c1 < 2; ++c1) {
            std::vector<int32_t> f{c0, c1, 1};
            if (!has_root_mod_p(f, 2)) { ++irreducible_count; expect = f; }
        }
    CHECK(irreducible_count == 1);
    CHECK(F4.modulus == expect);
    CHECK(gf_mul(F4, {2}, {2}).v == 3);  // x*x = x+1
    CHECK(F4.generator.v == 2);
    CHECK(gf_order(F4, F4.generator) == 3);
}

TEST_CASE("modulus is first irreducible in constant-first order") {
    auto F8 = make_field(2, 3);
    bool seen_ours = false;
    for (int c0 = 0; c0 < 2 && !seen_ours; ++c0)
        for (int c1 = 0; c1 < 2 && !seen_ours; ++c1)
            for (int c2 = 0; c2 < 2 && !seen_ours; ++c2) {
                std::vector<int32_t> f{c0, c1, c2, 1};
                if (f == F8.modulus) { seen_ours = true; break; }
                CHECK(has_root_mod_p(f, 2));  // everything earlier must be reducible
            }
    CHECK(seen_ours);
    CHECK(!has_root_mod_p(F8.modulus, 2));

    auto F9 = make_field(3, 2);
    CHECK(!has_root_mod_p(F9.modulus, 3));
    CHECK(F9.modulus == std::vector<int32_t>{1, 0, 1});  // x^2+1, first with no root
}

TEST_CASE("field axioms on F9 and F8") {
    for (auto [p, k] : {std::pair{3, 2}, std::pair{2, 3}}) {
        auto F = make_field(p, k);
        auto elems = enumerate_elements(F);
        REQUIRE(int64_t(elems.size()) == F.q);
        for (auto a : elems) {
            CHECK(gf_add(F, a, gf_neg(F, a)).v == 0);
            if (a.v) CHECK(gf_mul(F, a, gf_inv(F, a)).v == 1);
            for (auto b : elems) {
                CHECK(gf_mul(F, a, b) == gf_mul(F, b, a));
                CHECK(gf_add(F, a, b) == gf_add(F, b, a));
                for (auto c : elems)
                    CHECK(gf_mul(F, a, gf_add(F, b, c)) ==
                          gf_add(F, gf_mul(F, a, b), gf_mul(F, a, c)));
            }
        }
    }
}

TEST_CASE("frobenius is additive") {
    auto F9 = make_field(3, 2);
    for (auto a : enumerate_elements(F9))
        for (auto b : enumerate_elements(F9))
            CHECK(gf_pow(F9, gf_add(F9, a, b), 3) ==
                  gf_add(F9, gf_pow(F9, a, 3), gf_pow(F9, b, 3)));
}

TEST_CASE("powers and order") {
    auto F9 = make_field(3, 2);
    CHECK(gf_pow(F9, {0}, 0).v == 1);  // 0^0 = 1 convention
    CHECK(gf_pow(F9, {0}, 5).v == 0);
    CHECK(gf_order(F9, F9.generator) == 8);
    CHECK(gf_order(F9, gf_one()) == 1);
    // generator powers sweep all units
    std::set<uint32_t> seen;
    for (int e = 0; e < 8; ++e) seen.insert(gf_pow(F9, F9.generator, e).v);
    CHECK(seen.size() == 8);
    CHECK(seen.count(0) == 0);
    // negative exponent = inverse power
    auto g = F9.generator;
    CHECK(gf_pow(F9, g, -3) == gf_inv(F9, gf_pow(F9, g, 3)));
}

TEST_CASE("squares in extension fields") {
    auto F9 = make_field(3, 2);
    std::set<uint32_t> squares;
    for (auto a : enumerate_elements(F9)) squares.insert(gf_mul(F9, a, a).v);
    for (auto a : enumerate_elements(F9))
        CHECK(gf_is_square(F9, a) == (squares.count(a.v) > 0));
    // char 2: squaring is a bijection, everything is a square
    auto F8 = make_field(2, 3);
    for (auto a : enumerate_elements(F8)) CHECK(gf_is_square(F8, a));
}

TEST_CASE("field tags") {
    auto F9 = parse_field_tag("9");
    CHECK(F9.p == 3);
    CHECK(F9.k == 2);
    CHECK(field_tag(F9) == "3^2");
    auto F9b = parse_field_tag("3^2");
    CHECK(F9b.q == 9);
    auto F7 = parse_field_tag("7");
    CHECK(field_tag(F7) == "7");
    CHECK_THROWS_AS(parse_field_tag("12"), std::invalid_argument);
    CHECK_THROWS_AS(parse_field_tag("1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_field_tag("zzz"), std::invalid_argument);
}

TEST_CASE("scalar embedding") {
    auto F9 = make_field(3, 2);
    CHECK(gf_scalar(F9, 7).v == 1);
    CHECK(gf_scalar(F9, -1) == gf_neg(F9, gf_one()));
}
