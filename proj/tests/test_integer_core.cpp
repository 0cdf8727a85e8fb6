#include <doctest.h>

#include <random>

#include "leecheck/integer_core.hpp"

using namespace lee;

namespace {

std::uint64_t naive_order(std::uint64_t a, std::uint64_t m) {
    std::uint64_t x = a % m, k = 1;
    while (x != 1) {
        x = x * a % m;
        ++k;
    }
    return k;
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

bool naive_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TEST_CASE("primality examples") {
    CHECK(is_prime(21013));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(85));
    CHECK_FALSE(is_prime(0));
    CHECK(is_prime(2));
}

TEST_CASE("primality agrees with trial division below 20000") {
    for (std::uint64_t n = 0; n < 20000; ++n) CHECK(is_prime(from_u64(n)) == naive_prime(n));
}

TEST_CASE("primality of large inputs") {
    bool prob = true;
    CHECK(is_prime(Natural("1000000000000000000000000000057"), &prob));
    CHECK(prob);
    CHECK(is_prime(Natural("18446744073709551557"), &prob));
    CHECK_FALSE(prob);
    // Strong pseudoprime to bases 2..37.
    CHECK_FALSE(is_prime(Natural("3825123056546413051")));
}

TEST_CASE("factorization examples") {
    Factorization f = factorize(85);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].prime == 5);
    CHECK(f.factors[1].prime == 17);
    CHECK(f.factors[0].exponent == 1);

    f = factorize(13);
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0].prime == 13);

    f = factorize(4901);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].prime == 13);
    CHECK(f.factors[0].exponent == 2);
    CHECK(f.factors[1].prime == 29);

    CHECK(factorize(1).factors.empty());
}

TEST_CASE("factorization recomposes on random inputs") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 3000; ++i) {
        Natural n = from_u64(rng() % 1000000 + 1);
        Factorization f = factorize(n);
        CHECK(f.recompose() == n);
        for (std::size_t k = 0; k < f.factors.size(); ++k) {
            CHECK(is_prime(f.factors[k].prime));
            if (k) CHECK(f.factors[k - 1].prime < f.factors[k].prime);
        }
    }
    // Semiprimes beyond trial division.
    Natural a("1000000007"), b("998244353"), c("4294967291");
    Natural n = a * b * b * c;
    Factorization f = factorize(n);
    CHECK(f.recompose() == n);
    CHECK(f.factors.size() == 3);
}

TEST_CASE("factorization budget yields a skip") {
    Natural p("1000000000000000000000000000057"), q("1000000000000000000000000000099");
    CHECK_THROWS_AS(factorize(p * q, 1000), CapExceeded);
}

TEST_CASE("perfect squares") {
    CHECK(*is_perfect_square(25) == 5);
    CHECK_FALSE(is_perfect_square(65));
    CHECK(*is_perfect_square(0) == 0);
    for (std::uint64_t k = 1; k <= 100000; ++k) {
        Natural s = from_u64(k) * from_u64(k);
        auto r = is_perfect_square(s);
        REQUIRE(r);
        CHECK(*r == from_u64(k));
        CHECK_FALSE(is_perfect_square(s + 1));
    }
}

TEST_CASE("multiplicative order") {
    CHECK(mult_order(2, 5) == 4);
    CHECK(mult_order(4, 13) == 6);
    CHECK(mult_order(7, 421) == 70);
    CHECK_THROWS_AS(mult_order(6, 9), std::domain_error);
    for (std::uint64_t m = 2; m < 400; ++m)
        for (std::uint64_t a = 1; a < m; ++a)
            if (gcd64(a, m) == 1) CHECK(mult_order(from_u64(a), from_u64(m)) == from_u64(naive_order(a, m)));
}

TEST_CASE("multiplicative order is exact") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        Natural m = from_u64(rng() % 100000000 + 3);
        Natural a = from_u64(rng() % 1000 + 2);
        if (gcd(a, m) != 1) continue;
        Natural k = mult_order(a, m);
        CHECK(mod_pow(a, k, m) == 1);
        for (const auto& q : factorize(k).factors) CHECK(mod_pow(a, k / q.prime, m) != 1);
    }
}

TEST_CASE("modular power and gcd") {
    CHECK(mod_pow(4, 3, 41) == 23);
    CHECK(gcd(0, 7) == 7);
    CHECK(mod_pow(123, 0, 10) == 1);
    CHECK(mod_pow(5, 0, 1) == 0);
    Natural big;
    mpz_ui_pow_ui(big.get_mpz_t(), 2, 10000);
    CHECK(mod_pow(3, big, 1000003) == mod_pow(3, mod(big, 1000002), 1000003));
}

TEST_CASE("discrete logarithm examples") {
    CHECK(*discrete_log(2, 1, 13, 12) == 0);
    CHECK(*discrete_log(2, 5, 13, 12) == 9);
    CHECK_FALSE(discrete_log(4, 7, 13, 6));
}

TEST_CASE("discrete logarithm agrees with naive powering below 1000") {
    for (std::uint64_t m = 3; m < 1000; m += 2) {
        if (!naive_prime(m)) continue;
        for (std::uint64_t b : {2ULL, 3ULL, 5ULL, 7ULL}) {
            if (b % m == 0) continue;
            const std::uint64_t ord = naive_order(b, m);
            std::vector<std::int64_t> first(m, -1);
            std::uint64_t x = 1;
            for (std::uint64_t j = 0; j < ord; ++j) {
                if (first[x] < 0) first[x] = static_cast<std::int64_t>(j);
                x = x * b % m;
            }
            for (std::uint64_t t = 1; t < m; ++t) {
                auto j = discrete_log(from_u64(b), from_u64(t), from_u64(m), from_u64(ord));
                if (first[t] < 0) {
                    CHECK_FALSE(j);
                } else {
                    REQUIRE(j);
                    CHECK(*j == first[t]);
                }
            }
        }
    }
}

TEST_CASE("shifted solvability examples") {
    CHECK_FALSE(solvable_shifted(MaybeInfinite(3), 10, 4));
    CHECK(solvable_shifted(MaybeInfinite(2), 6, 2));
    CHECK_FALSE(solvable_shifted(MaybeInfinite::infinity(), 5, 100));
    CHECK_FALSE(solvable_shifted(MaybeInfinite(1), 1, -3));
}

TEST_CASE("shifted solvability agrees with the double loop") {
    for (int a = 1; a <= 200; a += (a < 30 ? 1 : 7)) {
        for (int b = 1; b <= 200; b += (b < 30 ? 1 : 5)) {
            for (int t = -2; t <= 200; ++t) {
                bool brute = false;
                for (int x = 0; !brute && a * (x + 1) <= t; ++x)
                    for (int y = 0; a * (x + 1) + b * y <= t; ++y)
                        if (a * (x + 1) + b * y == t) {
                            brute = true;
                            break;
                        }
                CHECK(solvable_shifted(MaybeInfinite(a), b, t) == brute);
            }
        }
    }
}

TEST_CASE("maybe-infinite ordering") {
    CHECK(MaybeInfinite(5) < MaybeInfinite::infinity());
    CHECK_FALSE(MaybeInfinite::infinity() < MaybeInfinite(Natural("1000000000000000000000")));
    CHECK(MaybeInfinite::infinity() == MaybeInfinite::infinity());
    CHECK(MaybeInfinite::infinity().str() == "inf");
}
