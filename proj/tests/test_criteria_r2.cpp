#include <doctest.h>

#include <map>

#include "leecheck/criteria_r2.hpp"
#include "leecheck/lee_geometry.hpp"

using namespace lee;

namespace {

bool small_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t order_mod(std::uint64_t a, std::uint64_t m) {
    std::uint64_t x = a % m, k = 1;
    while (x != 1) {
        x = x * a % m;
        ++k;
    }
    return k;
}

// Least n >= 2 with v | 2n^2+2n+1 and p | 2n, or 0.
std::uint64_t dimension_for(std::uint64_t v, std::uint64_t p) {
    for (std::uint64_t n = 2; n < 2 * v * p + 4; ++n)
        if ((2 * n * n + 2 * n + 1) % v == 0 && (2 * n) % p == 0) return n;
    return 0;
}

// gcd of p^l - 1 and every 2^i - p^j with 2^i = p^j (mod v), i <= h2, j <= hp.
Natural brute_lambda(std::uint64_t v, std::uint64_t p) {
    const std::uint64_t h2 = order_mod(2, v), hp = order_mod(p, v);
    std::uint64_t l = hp;
    if (hp % 2 == 0) {
        std::uint64_t x = 1;
        for (std::uint64_t k = 0; k < hp / 2; ++k) x = x * p % v;
        if (x == v - 1) l = hp / 2;
    }
    Natural g;
    mpz_ui_pow_ui(g.get_mpz_t(), p, l);
    g -= 1;
    std::uint64_t two_i = 1;
    for (std::uint64_t i = 0; i <= h2; ++i, two_i = two_i * 2 % v) {
        std::uint64_t p_j = 1;
        for (std::uint64_t j = 0; j <= hp; ++j, p_j = p_j * p % v) {
            if ((i == 0 && j == 0) || two_i != p_j) continue;
            Natural a, b;
            mpz_ui_pow_ui(a.get_mpz_t(), 2, i);
            mpz_ui_pow_ui(b.get_mpz_t(), p, j);
            Natural d = a > b ? Natural(a - b) : Natural(b - a);
            g = gcd(g, d);
        }
    }
    return g;
}

}  // namespace

TEST_CASE("kim examples") {
    CriterionOutcome o = kim_check(4);
    CHECK(o.status == Status::Excluded);
    CHECK(o.tier == Tier::Unconditional);
    CHECK(o.params.at("v") == 41);
    CHECK(o.params.at("a") == 3);
    CHECK(o.params.at("b") == 10);
    CHECK(o.params.at("m") == 1);

    o = kim_check(6);
    CHECK(o.status == Status::Excluded);
    CHECK(o.certificate["divisors"].size() == 1);  // only 17 exceeds 2n+1 = 13
    CHECK(o.params.at("v") == 17);

    o = kim_check(2);
    CHECK(o.status == Status::Undecided);
    REQUIRE(o.certificate["divisors"].size() == 1);
    CHECK(o.certificate["divisors"][0]["a"] == 2);
    CHECK(o.certificate["divisors"][0]["b"] == 6);
    CHECK(o.certificate["divisors"][0]["first_solvable_ell"] == 0);
}

TEST_CASE("kim agrees with a direct search for n < 300") {
    for (std::uint64_t n = 2; n < 300; ++n) {
        const std::uint64_t order = 2 * n * n + 2 * n + 1;
        bool excluded = false;
        std::uint64_t rest = order;
        for (std::uint64_t v = 2; v <= rest; ++v) {
            if (rest % v) continue;
            while (rest % v == 0) rest /= v;
            if (v <= 2 * n + 1) continue;
            const std::uint64_t b = order_mod(4, v);
            std::uint64_t a = 0, x = 1;
            for (std::uint64_t k = 1; k <= b; ++k) {
                x = x * 4 % v;
                if ((x + 4 * n + 2) % v == 0) {
                    a = k;
                    break;
                }
            }
            bool solvable = false;
            for (std::uint64_t ell = 0; ell <= order / v / 4 && ell < n && a && !solvable; ++ell)
                for (std::uint64_t s = a; s <= n - ell && !solvable; s += a)
                    solvable = (n - ell - s) % b == 0;
            excluded = excluded || !solvable;
        }
        CHECK_MESSAGE(kim_check(n).excluded() == excluded, "n = " << n);
    }
}

TEST_CASE("quadratic preconditions") {
    QuadraticPreconditions q = quadratic_preconditions(8, 5);
    CHECK_FALSE(q.square8n1);
    CHECK_FALSE(q.vk2_hit);
    q = quadratic_preconditions(3, 5);
    REQUIRE(q.square8n1);
    CHECK(*q.square8n1 == 5);
    CHECK(quadratic_preconditions(1, 5).vk2_hit);
    CHECK(quadratic_preconditions(2, 13).vk2_hit);
}

TEST_CASE("small divisor examples") {
    CriterionOutcome o = small_v_check(8);
    CHECK(o.status == Status::Excluded);
    CHECK(o.certificate["fired"] == json::array({5}));

    o = small_v_check(49);
    CHECK(o.excluded());
    CHECK(o.certificate["fired"] == json::array({13}));

    o = small_v_check(299);
    CHECK(o.excluded());
    CHECK(o.certificate["fired"] == json::array({17}));

    o = small_v_check(3);
    CHECK(o.status == Status::NotApplicable);
    CHECK(o.reason == "8n+1 is a square");

    CHECK(small_v_check(2).status == Status::NotApplicable);
}

TEST_CASE("lambda worked examples") {
    LambdaCertificate c = lambda_value(102, 21013, 3);
    REQUIRE(c.lambda);
    CHECK(*c.lambda == 1);
    CHECK(c.hypotheses_ok());
    CriterionOutcome o = lambda_check(102, 21013, 3);
    CHECK(o.status == Status::Excluded);
    CHECK(o.tier == Tier::Unconditional);

    c = lambda_value(14, 421, 7);
    REQUIRE(c.lambda);
    CHECK(*c.lambda == 3);
    CHECK(c.m == 1);
    CHECK(c.f == 70);
    CHECK(c.l == 35);
    CHECK(c.d == 6);
    CHECK(lambda_check(14, 421, 7).status == Status::Undecided);
}

TEST_CASE("lambda certificate invariants") {
    for (std::uint64_t n = 2; n < 200; ++n) {
        const R2Instance inst = make_r2_instance(n);
        for (const Natural& v : inst.factorization.primes()) {
            for (const auto& pf : factorize(from_u64(2 * n)).factors) {
                const Natural& p = pf.prime;
                if (p == v) continue;
                LambdaCertificate c = lambda_value(n, v, p);
                REQUIRE(c.lambda);
                CHECK(c.d * c.f == v - 1);
                CHECK(mod_pow(p, c.f, v) == 1);
                const Natural pl = mod_pow(p, c.l, v);
                CHECK((pl == 1 || pl == v - 1));
                Natural big;
                mpz_pow_ui(big.get_mpz_t(), p.get_mpz_t(), to_u64(c.l));
                CHECK((big - 1) % *c.lambda == 0);
                Natural l;
                mpz_lcm(l.get_mpz_t(), c.h2.get_mpz_t(), c.hp.get_mpz_t());
                CHECK(c.full_group == (l == v - 1));
            }
        }
    }
}

TEST_CASE("lambda generator chain matches the brute-force pair gcd for primes v < 500") {
    int compared = 0;
    for (std::uint64_t v = 5; v < 500; v += 4) {
        if (!small_prime(v)) continue;
        for (std::uint64_t p = 2; p < 50; ++p) {
            if (!small_prime(p) || p == v) continue;
            const std::uint64_t n = dimension_for(v, p);
            REQUIRE(n);
            LambdaCertificate c = lambda_value(n, from_u64(v), from_u64(p));
            REQUIRE(c.lambda);
            CHECK_MESSAGE(*c.lambda == brute_lambda(v, p), "v = " << v << ", p = " << p);
            ++compared;
        }
    }
    CHECK(compared > 500);
}

TEST_CASE("lambda hypotheses gate the criterion") {
    // n = 11, v = 5, p = 11: 11 = 1 mod 5.
    CriterionOutcome o = lambda_check(11, 5, 11);
    CHECK(o.status == Status::NotApplicable);
    CHECK(o.reason == "p = 1 mod v");
    // n = 2, v = 13, p = 2: m2 = 2m mod 2 = 0.
    o = lambda_check(2, 13, 2);
    CHECK(o.status == Status::NotApplicable);
}

TEST_CASE("theta trivial values") {
    auto ctx = FieldCtx::build(3, 3, 1);
    const FieldElement one = ctx->one();
    // v = 13, p = 3: f = 3, d = 4.
    CHECK(*theta(one, one, 13, 4, ThetaMode::Trace) == (4 * 3) % 3);
    CHECK(*theta(one, one, 13, 4, ThetaMode::PowerSum) == 12 % 3);
}

TEST_CASE("theta forms agree when 2 is primitive") {
    int compared = 0;
    for (std::uint64_t v : {13ULL, 29ULL, 37ULL, 53ULL, 61ULL}) {
        for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL}) {
            if (p == v) continue;
            const std::uint64_t n = dimension_for(v, p);
            LambdaCertificate c = lambda_value(n, from_u64(v), from_u64(p));
            if (!c.full_group || c.f > 40 || *c.lambda > 200) continue;
            auto ctx = FieldCtx::build(p, static_cast<unsigned>(to_u64(c.f)), 7);
            const auto xs = ctx->roots_of_unity(*c.lambda);
            const auto ys = ctx->roots_of_unity(from_u64(v));
            for (std::size_t i = 0; i < xs.size(); i += 1 + xs.size() / 4)
                for (std::size_t j = 0; j < ys.size(); j += 3) {
                    auto a = theta(xs[i], ys[j], v, to_u64(c.d), ThetaMode::PowerSum);
                    auto b = theta(xs[i], ys[j], v, to_u64(c.d), ThetaMode::Trace);
                    REQUIRE(a);
                    CHECK(*a == *b);
                    ++compared;
                }
        }
    }
    CHECK(compared > 50);
}

TEST_CASE("field check worked example: no admissible cube root for n = 14") {
    CriterionOutcome o = field_check(14, 421, 7);
    CHECK(o.status == Status::Excluded);
    CHECK(o.tier == Tier::Unconditional);
    CHECK(o.certificate["condition"] == "counts");
    CHECK(o.certificate["candidates"].size() == 3);
    CHECK(o.certificate["surviving_x"] == 0);
}

TEST_CASE("field check does not run when lambda already decides") {
    CriterionOutcome o = field_check(102, 21013, 3);
    CHECK(o.status == Status::NotApplicable);
    CHECK(o.reason == "lambda is 1 or v");
}

TEST_CASE("field check caps produce skips") {
    Caps caps;
    caps.max_unity_enum = 100;
    CriterionOutcome o = field_check(14, 421, 7, caps);
    CHECK(o.status == Status::Skipped);
    CHECK(o.reason.find("max_unity_enum") != std::string::npos);
}

TEST_CASE("orbit search v=17, p=3 over every class") {
    // Consistent-table counts from an independent polynomial gcd computation over F_3.
    const std::map<std::uint64_t, std::size_t> expected = {{0, 2}, {1, 2}, {2, 9}};
    for (auto [c, count] : expected) {
        const auto survivors = orbit_survivors(17, 3, c);
        CHECK(survivors.size() == count);
        for (const auto& s : survivors) {
            REQUIRE(s.values.size() == 16);
            const FieldElement two_n = s.tau0.ctx().constant(static_cast<std::int64_t>(c));
            for (std::uint64_t j = 1; j < 17; ++j) {
                CHECK(s.values[j - 1] == s.values[17 - j - 1]);
                CHECK(s.values[(3 * j) % 17 - 1] == s.values[j - 1].frobenius(1));
                CHECK(s.values[j - 1] * s.values[j - 1] + s.values[(2 * j) % 17 - 1] == two_n);
            }
            const FieldElement q2 = s.tau0 * s.tau0 + s.tau0 - two_n;
            if (s.tau0.in_prime_subfield() && q2.is_zero()) CHECK(s.classification == OrbitClass::QuadraticFactor2);
        }
    }
}

TEST_CASE("orbit check outcomes v=17, p=3") {
    CriterionOutcome o = orbit_check(23, 17, 3);  // 2n = 1 mod 3
    CHECK(o.status == Status::Excluded);
    CHECK(o.tier == Tier::PerPaper);
    CHECK(o.certificate["searched"] == 6561);
    CHECK(orbit_check(10, 17, 3).status == Status::NotApplicable);  // 8n+1 = 81
    CHECK(orbit_check(40, 17, 3).status == Status::Undecided);
    CHECK(orbit_check(4, 17, 3).status == Status::NotApplicable);  // 17 does not divide 41
    CHECK(orbit_check(23, 19, 3).status == Status::NotApplicable);
}

TEST_CASE("orbit check v=13, p=11 for one class") {
    // 2n = 9 mod 11; expected table count 2, both on the quadratic factors.
    CriterionOutcome o = orbit_check(54, 13, 11);
    CHECK(o.certificate["searched"] == 1771561);
    CHECK(o.certificate["consistent_tables"] == 2);
    CHECK(o.status == Status::Excluded);
    CHECK(o.tier == Tier::PerPaper);
    CHECK(orbit_check(2, 13, 11).reason == "8n-3 = v k^2");
}
