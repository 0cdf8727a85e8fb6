#include <doctest.h>

#include <random>

#include "leecheck/lee_geometry.hpp"

using namespace lee;

TEST_CASE("sphere sizes") {
    CHECK(sphere_size(2, 2) == 13);
    CHECK(sphere_size(2, 3) == 25);
    for (std::uint64_t n = 0; n < 50; ++n) CHECK(sphere_size(n, 1) == from_u64(2 * n + 1));
    CHECK(group_order_r2(6) == 85);
    CHECK(group_order_r2(102) == 21013);
    CHECK(group_order_r3(3) == 63);
}

TEST_CASE("order polynomials match sphere sizes up to 10^4") {
    for (std::uint64_t n = 0; n <= 10000; ++n) {
        const Natural nn = from_u64(n);
        CHECK(sphere_size(n, 2) == 2 * nn * nn + 2 * nn + 1);
        CHECK(sphere_size(n, 3) == 1 + 6 * nn * nn + Natural(4 * nn * (nn - 1) * (nn - 2)) / 3);
    }
}

TEST_CASE("sphere enumeration") {
    auto s = enumerate_sphere(1, 2);
    REQUIRE(s.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(s[i].coords == std::vector<std::int64_t>{i - 2});
    CHECK(enumerate_sphere(2, 2).size() == 13);
    for (unsigned n = 0; n <= 6; ++n)
        for (unsigned r = 0; r <= 6; ++r) {
            auto e = enumerate_sphere(n, r);
            CHECK(from_u64(e.size()) == sphere_size(n, r));
            for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i - 1].coords < e[i].coords);
            for (const auto& x : e) CHECK(x.norm() <= r);
        }
    CHECK_THROWS_AS(enumerate_sphere(30, 5, 1000), CapExceeded);
}

TEST_CASE("Lee distance") {
    LeeVector a({0, 0}, 13), b({6, 8}, 13);
    CHECK(lee_distance(a, b) == 11);
    CHECK(lee_distance(b, b) == 0);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        LeeVector x({static_cast<std::int64_t>(rng() % 40) - 20, static_cast<std::int64_t>(rng() % 40) - 20}, 17);
        LeeVector y({static_cast<std::int64_t>(rng() % 40) - 20, static_cast<std::int64_t>(rng() % 40) - 20}, 17);
        CHECK(lee_distance(x, y) == lee_distance(y, x));
    }
    CHECK(lee_distance(LeeVector({3, -4}), LeeVector({0, 0})) == 7);
    CHECK_THROWS_AS(lee_distance(LeeVector({1}), LeeVector({1}, 5)), std::invalid_argument);
}

TEST_CASE("witness verification") {
    CodeWitness w{AbelianGroup::cyclic(13), {1, 5}, 2, 2};
    CHECK(verify_witness(w).ok);
    CodeWitness bad{AbelianGroup::cyclic(13), {1, 2}, 2, 2};
    WitnessCheck c = verify_witness(bad);
    CHECK_FALSE(c.ok);
    REQUIRE(c.collision);
    CHECK(witness_image(bad, c.collision->first) == witness_image(bad, c.collision->second));
    CHECK(verify_witness({AbelianGroup::cyclic(25), {1, 7}, 2, 3}).ok);
    CHECK_THROWS_AS(verify_witness({AbelianGroup::cyclic(12), {1, 5}, 2, 2}), std::invalid_argument);
}

TEST_CASE("automorphisms preserve witnesses") {
    for (std::int64_t u = 1; u < 13; ++u) {
        CodeWitness w{AbelianGroup::cyclic(13), {static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(5 * u % 13)}, 2, 2};
        CHECK(verify_witness(w).ok);
    }
    for (std::int64_t u = 1; u < 25; ++u) {
        if (u % 5 == 0) continue;
        CodeWitness w{AbelianGroup::cyclic(25), {static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(7 * u % 25)}, 2, 3};
        CHECK(verify_witness(w).ok);
        CodeWitness neg{AbelianGroup::cyclic(25), {static_cast<std::uint64_t>(25 - u), static_cast<std::uint64_t>(7 * u % 25)}, 2, 3};
        CHECK(verify_witness(neg).ok);
    }
}

TEST_CASE("Moore bound") {
    CHECK(moore_bound_abelian(2, 2) == 13);
    for (std::uint64_t d = 0; d < 12; ++d) {
        CHECK(moore_bound_abelian(d, 1) == from_u64(2 * d + 1));
        for (std::uint64_t k = 0; k < 12; ++k) CHECK(moore_bound_abelian(d, k) == moore_bound_abelian(k, d));
    }
}

TEST_CASE("tiling picture is stable") {
    CodeWitness w{AbelianGroup::cyclic(13), {1, 5}, 2, 2};
    const std::string pic = render_tiling(w, 9, 5);
    CHECK(pic == render_tiling(w, 9, 5));
    CHECK(std::count(pic.begin(), pic.end(), '\n') == 5);
    // The origin is a tile center.
    CHECK(std::isupper(static_cast<unsigned char>(pic[2 * 10 + 4])));
}
