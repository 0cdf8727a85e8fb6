#include <doctest.h>

#include <random>

#include "leecheck/group_ring.hpp"

using namespace lee;

namespace {

GroupRingElement random_element(const AbelianGroup& g, std::mt19937_64& rng, int lo = -3, int hi = 5) {
    GroupRingElement a(g);
    std::uniform_int_distribution<int> d(lo, hi);
    for (std::uint64_t h = 0; h < g.order(); ++h) a[h] = d(rng);
    return a;
}

}  // namespace

TEST_CASE("group indexing") {
    AbelianGroup g({5, 5});
    CHECK(g.order() == 25);
    CHECK(g.str() == "C5xC5");
    const auto a = g.element({2, 3});
    const auto b = g.element({4, 4});
    CHECK(g.components(g.add(a, b)) == std::vector<std::uint64_t>{1, 2});
    CHECK(g.components(g.neg(a)) == std::vector<std::uint64_t>{3, 2});
    CHECK(g.components(g.scale(a, 7)) == std::vector<std::uint64_t>{4, 1});
    CHECK_THROWS_AS(AbelianGroup({4, 6}), std::invalid_argument);
    CHECK(AbelianGroup(std::vector<std::uint64_t>{}).order() == 1);
}

TEST_CASE("ring product basics") {
    const AbelianGroup c13 = AbelianGroup::cyclic(13);
    std::mt19937_64 rng(1);
    GroupRingElement a = random_element(c13, rng);
    CHECK(a * GroupRingElement::identity(c13) == a);

    GroupRingElement s(c13);
    s[1] = 1;
    s[12] = 1;
    GroupRingElement sq = s * s;
    GroupRingElement expected(c13);
    expected[2] = 1;
    expected[11] = 1;
    expected[0] = 2;
    CHECK(sq == expected);

    const GroupRingElement all = GroupRingElement::all_ones(c13);
    CHECK(all * all == all * Integer(13));
    CHECK_THROWS_AS(a * GroupRingElement::identity(AbelianGroup::cyclic(7)), std::invalid_argument);
}

TEST_CASE("power map") {
    std::mt19937_64 rng(2);
    const AbelianGroup c13 = AbelianGroup::cyclic(13);
    GroupRingElement a = random_element(c13, rng);
    CHECK(power_map(a, 1) == a);
    GroupRingElement t = build_T(c13, {1, 5});
    CHECK(power_map(t, -1) == t);
    for (auto g : {AbelianGroup::cyclic(13), AbelianGroup::cyclic(25), AbelianGroup({5, 5})})
        CHECK(power_map(GroupRingElement::all_ones(g), 2) == GroupRingElement::all_ones(g));
}

TEST_CASE("power map is a ring homomorphism for exponents prime to the group exponent") {
    std::mt19937_64 rng(3);
    for (auto g : {AbelianGroup::cyclic(13), AbelianGroup::cyclic(25), AbelianGroup({5, 5})}) {
        for (std::int64_t t : {2, 3, -1, 7, 12}) {
            if (std::gcd<std::int64_t, std::int64_t>(t, static_cast<std::int64_t>(g.exponent())) != 1) continue;
            for (int i = 0; i < 5; ++i) {
                GroupRingElement a = random_element(g, rng), b = random_element(g, rng);
                CHECK(power_map(a * b, t) == power_map(a, t) * power_map(b, t));
                CHECK(power_map(a + b, t) == power_map(a, t) + power_map(b, t));
            }
        }
    }
}

TEST_CASE("building T") {
    const AbelianGroup c13 = AbelianGroup::cyclic(13);
    GroupRingElement t = build_T(c13, {1, 5});
    for (std::uint64_t h = 0; h < 13; ++h) {
        const bool in = h == 0 || h == 1 || h == 12 || h == 5 || h == 8;
        CHECK(t[h] == (in ? 1 : 0));
    }
    CHECK(build_T(c13, {}) == GroupRingElement::identity(c13));
    GroupRingElement dup = build_T(c13, {1, 1});
    CHECK(dup[1] == 2);
    CHECK(dup[12] == 2);
    CHECK(dup.coefficient_sum() == 5);
    CHECK_FALSE(dup.is_zero_one());
    CHECK(build_T(AbelianGroup::cyclic(41), {1, 2, 3, 9}).coefficient_sum() == 9);
}

TEST_CASE("radius-2 identity") {
    const AbelianGroup c13 = AbelianGroup::cyclic(13);
    CHECK(verify_r2_identity(build_T(c13, {1, 5}), 2).holds);
    IdentityCheck bad = verify_r2_identity(GroupRingElement::identity(c13), 2);
    CHECK_FALSE(bad.holds);
    REQUIRE(bad.first_failure);
    CHECK_FALSE(verify_r2_identity(build_T(c13, {1, 2}), 2).holds);
    CHECK_THROWS_AS(verify_r2_identity(build_T(c13, {1, 5}), 3), std::invalid_argument);
}

TEST_CASE("radius-3 identity") {
    const AbelianGroup c25 = AbelianGroup::cyclic(25);
    CHECK(verify_r3_identity(build_T(c25, {1, 7}), 2).holds);
    CHECK_FALSE(verify_r3_identity(GroupRingElement::identity(c25), 2).holds);
    CHECK_FALSE(verify_r3_identity(build_T(c25, {1, 2}), 2).holds);
}

TEST_CASE("constant solutions of the radius-3 identity reduce to the cubic in the identity coefficient") {
    // S = a + b G over C_v with a + v b = 2n+1; project the identity to Z[C_v].
    std::mt19937_64 rng(4);
    for (std::uint64_t v : {5ULL, 7ULL, 11ULL, 13ULL}) {
        const AbelianGroup cv = AbelianGroup::cyclic(v);
        for (int trial = 0; trial < 10; ++trial) {
            const std::int64_t n = static_cast<std::int64_t>(rng() % 20 + 1);
            const std::int64_t b = static_cast<std::int64_t>(rng() % 5);
            const std::int64_t a = 2 * n + 1 - static_cast<std::int64_t>(v) * b;
            // Any m works; pick the one forced by the augmentation: (2n+1)^3 = 6 m v - ... leaves m free,
            // so compare the difference of both sides against the constant-term cubic.
            GroupRingElement s = GroupRingElement::identity(cv) * Integer(a) + GroupRingElement::all_ones(cv) * Integer(b);
            GroupRingElement lhs = s * s * s + power_map(s, 2) * s * Integer(3) + power_map(s, 3) * Integer(2) -
                                   s * Integer(6 * n);
            // lhs must be (cubic) * 1 + (something) * G.
            const Integer cubic = Integer(a) * a * a + 3 * Integer(a) * a + 2 * Integer(a) - 6 * Integer(a) * n;
            const Integer shift = lhs[1];
            CHECK(lhs[0] - shift == cubic);
            for (std::uint64_t h = 1; h < v; ++h) CHECK(lhs[h] == shift);
        }
    }
}

TEST_CASE("characters in an auxiliary field") {
    std::mt19937_64 rng(5);
    for (std::uint64_t w : {13ULL, 25ULL, 7ULL, 1ULL}) {
        const AbelianGroup g = AbelianGroup::cyclic(w);
        AuxField aux = make_aux_field(w);
        CHECK((aux.field->p() - 1) % w == 0);
        GroupRingElement a = random_element(g, rng);
        CHECK(*char_eval(a, 0, aux).in_prime_subfield() == to_u64(mod(a.coefficient_sum(), from_u64(aux.field->p()))));
        const GroupRingElement all = GroupRingElement::all_ones(g);
        for (std::uint64_t c = 1; c < w; ++c) CHECK(char_eval(all, c, aux).is_zero());
        for (std::int64_t t : {2, 3, -1}) {
            for (std::uint64_t c = 0; c < w; ++c) {
                const std::uint64_t tc = static_cast<std::uint64_t>(((t * static_cast<std::int64_t>(c)) % static_cast<std::int64_t>(w) + static_cast<std::int64_t>(w)) % static_cast<std::int64_t>(w));
                CHECK(char_eval(power_map(a, t), c, aux) == char_eval(a, tc, aux));
            }
        }
        for (int i = 0; i < 5; ++i) CHECK(inversion_roundtrip(random_element(g, rng, -1000, 1000), aux));
        CHECK(inversion_roundtrip(GroupRingElement::identity(g), aux));
        CHECK(inversion_roundtrip(all, aux));
    }
}
