#include <doctest.h>

#include <random>
#include <set>

#include "leecheck/finite_field.hpp"

using namespace lee;

namespace {

FieldElement random_element(const FieldCtx& f, std::mt19937_64& rng) {
    std::vector<FieldCtx::Coeff> c(f.degree());
    for (auto& x : c) x = rng() % f.p();
    return f.from_coeffs(c);
}

}  // namespace

TEST_CASE("field construction") {
    auto f53 = FieldCtx::build(5, 3, 1);
    CHECK(f53->size() == 125);
    auto f116 = FieldCtx::build(11, 6, 1);
    CHECK(f116->size() == 1771561);
    auto fp = FieldCtx::build(7, 1, 1);
    CHECK(fp->modulus().size() == 2);
    CHECK(fp->size() == 7);
    CHECK_THROWS_AS(FieldCtx::build(3, 81, 1), CapExceeded);
    CHECK_THROWS_AS(FieldCtx::build(4, 2, 1), std::invalid_argument);
}

TEST_CASE("same seed gives the same modulus") {
    CHECK(FieldCtx::build(7, 10, 99)->modulus() == FieldCtx::build(7, 10, 99)->modulus());
}

TEST_CASE("generator of a small field has full order (modulus is irreducible)") {
    // X generates a subfield of degree f exactly when P is irreducible; check that
    // the Frobenius orbit of X has length f and every nonzero element satisfies Lagrange.
    for (auto [p, f] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 8}, {3, 5}, {5, 3}, {7, 4}, {13, 2}}) {
        auto ctx = FieldCtx::build(p, f, 3);
        const FieldElement x = ctx->generator();
        for (unsigned k = 1; k < f; ++k) CHECK(x.frobenius(k) != x);
        CHECK(x.frobenius(f) == x);
        const std::uint64_t q = to_u64(ctx->size());
        std::set<std::uint64_t> seen;
        for (std::uint64_t i = 1; i < q; ++i) {
            FieldElement e = ctx->from_index(i);
            CHECK(e.pow(ctx->unit_order()).is_one());
            seen.insert((e * e.inv()).index());
        }
        CHECK(seen.size() == 1);
    }
}

TEST_CASE("field axioms on random triples") {
    std::mt19937_64 rng(5);
    for (auto [p, f] : std::vector<std::pair<std::uint64_t, unsigned>>{{5, 3}, {11, 6}, {7, 70}, {3, 8}, {65537, 4}}) {
        auto ctx = FieldCtx::build(p, f, 1);
        for (int i = 0; i < 50; ++i) {
            FieldElement a = random_element(*ctx, rng), b = random_element(*ctx, rng), c = random_element(*ctx, rng);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK(a - a == ctx->zero());
            if (!a.is_zero()) CHECK((a * a.inv()).is_one());
            CHECK(a.pow(from_u64(p)) == a.frobenius(1));
            CHECK((a + b).frobenius(1) == a.frobenius(1) + b.frobenius(1));
            CHECK(a.frobenius(f) == a);
            CHECK(a.frobenius(0) == a);
            CHECK(a.trace() == a.trace_by_frobenius());
            const std::uint64_t s = rng() % p;
            CHECK((a * ctx->constant(static_cast<std::int64_t>(s)) + b).trace() == (a.trace() * s + b.trace()) % p);
        }
        CHECK(ctx->one().trace() == f % p);
        CHECK(ctx->zero().trace() == 0);
        for (int i = 0; i < 5; ++i) {
            FieldElement g = random_element(*ctx, rng);
            if (!g.is_zero()) CHECK(g.pow(ctx->unit_order()).is_one());
        }
    }
}

TEST_CASE("inverse of zero and mixed owners are errors") {
    auto a = FieldCtx::build(5, 3, 1);
    auto b = FieldCtx::build(5, 3, 1);
    CHECK_THROWS_AS(a->zero().inv(), std::domain_error);
    CHECK_THROWS_AS(a->one() + b->one(), std::invalid_argument);
}

TEST_CASE("roots of unity") {
    auto f33 = FieldCtx::build(3, 3, 1);
    auto one = f33->roots_of_unity(1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].is_one());

    auto r13 = f33->roots_of_unity(13);
    REQUIRE(r13.size() == 13);
    std::set<std::uint64_t> distinct;
    for (const auto& z : r13) {
        CHECK(z.pow(13).is_one());
        distinct.insert(z.index());
    }
    CHECK(distinct.size() == 13);
    for (std::size_t i = 0; i < r13.size(); i += 3)
        for (std::size_t j = 0; j < r13.size(); j += 4) CHECK((r13[i] * r13[j]).pow(13).is_one());

    CHECK_THROWS_AS(f33->roots_of_unity(5), std::invalid_argument);
    auto f28 = FieldCtx::build(2, 20, 1);
    CHECK_THROWS_AS(f28->roots_of_unity(1048575, 65536), CapExceeded);
}

TEST_CASE("cube roots of unity in a degree-70 extension of F_7 lie in the degree-35 subfield") {
    auto ctx = FieldCtx::build(7, 70, 1);
    auto roots = ctx->roots_of_unity(3);
    REQUIRE(roots.size() == 3);
    for (const auto& x : roots) {
        CHECK(x.pow(3).is_one());
        CHECK(x.frobenius(35) == x);
    }
}

TEST_CASE("prime subfield membership") {
    auto ctx = FieldCtx::build(5, 3, 1);
    CHECK(*ctx->constant(4).in_prime_subfield() == 4);
    CHECK_FALSE(ctx->generator().in_prime_subfield());
    for (std::uint64_t i = 0; i < 125; ++i) {
        FieldElement e = ctx->from_index(i);
        CHECK((e.frobenius(1) == e) == e.in_prime_subfield().has_value());
    }
}
