#include "leecheck/criteria_r2.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "leecheck/lee_geometry.hpp"
#include "orbit_common.hpp"

namespace lee {

namespace {

Natural pow_ui(const Natural& base, std::uint64_t e) {
    Natural r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Natural lcm(const Natural& a, const Natural& b) {
    Natural r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

std::uint64_t bit_estimate(const Natural& base, const Natural& exponent) {
    const double bits = static_cast<double>(mpz_sizeinbase(base.get_mpz_t(), 2)) * exponent.get_d();
    return bits > 1e18 ? ~0ULL : static_cast<std::uint64_t>(bits);
}

}  // namespace

R2Instance make_r2_instance(std::uint64_t n, const Caps& caps) {
    R2Instance inst;
    inst.n = n;
    inst.order = group_order_r2(n);
    inst.factorization = factorize(inst.order, caps.factor_budget, caps.seed);
    return inst;
}

CriterionOutcome kim_check(const R2Instance& inst) {
    CriterionOutcome o;
    o.criterion = "kim";
    const Natural n = from_u64(inst.n);
    const Natural bound = 2 * n + 1;
    json divisors = json::array();
    bool any = false;
    for (const auto& pf : inst.factorization.factors) {
        const Natural& v = pf.prime;
        if (v <= bound) continue;
        any = true;
        const Factorization vm1 = factorize(v - 1);
        const Natural b = mult_order_in(4, v, vm1);
        const Natural target = mod(-(4 * n + 2), v);
        const Natural m = inst.order / v;
        const Natural ell_max = m / 4;

        // a = least a in [1, b] with 4^a = target, infinity when target is outside <4>.
        std::optional<Natural> a;
        bool a_exists = mod_pow(target, b, v) == 1;
        if (a_exists) {
            if (target == 1) {
                a = b;
            } else {
                const Natural limit = std::min(n, Natural(b - 1));
                auto j = discrete_log_bounded(4, target, v, limit);
                if (!j && b <= 100'000'000) j = discrete_log(4, target, v, b);
                if (j) a = *j;
            }
        }
        json entry;
        entry["v"] = natural_to_json(v);
        entry["a"] = !a_exists ? json("inf") : a ? natural_to_json(*a) : json("gt_n");
        entry["b"] = natural_to_json(b);
        entry["m"] = natural_to_json(m);
        entry["ell_max"] = natural_to_json(ell_max);

        std::optional<Natural> solvable_at;
        if (a && *a <= n) {
            for (Natural ell = 0; ell <= ell_max && ell < n; ++ell) {
                if (solvable_shifted(MaybeInfinite(*a), b, n - ell)) {
                    solvable_at = ell;
                    break;
                }
            }
        }
        entry["first_solvable_ell"] = solvable_at ? natural_to_json(*solvable_at) : json(nullptr);
        divisors.push_back(entry);
        if (!solvable_at && o.status != Status::Excluded) {
            o.status = Status::Excluded;
            o.tier = Tier::Unconditional;
            o.params["v"] = v;
            o.params["b"] = b;
            o.params["m"] = m;
            if (a) o.params["a"] = *a;
        }
    }
    o.certificate["divisors"] = divisors;
    if (!any) {
        o.status = Status::NotApplicable;
        o.reason = "no prime divisor exceeds 2n+1";
    }
    return o;
}

CriterionOutcome kim_check(std::uint64_t n, const Caps& caps) {
    try {
        return kim_check(make_r2_instance(n, caps));
    } catch (const CapExceeded& e) {
        return CriterionOutcome::skipped("kim", e);
    }
}

QuadraticPreconditions quadratic_preconditions(std::uint64_t n, std::uint64_t v) {
    QuadraticPreconditions q;
    const Integer nn = from_u64(n);
    q.square8n1 = is_perfect_square(8 * nn + 1);
    const Integer t = 8 * nn - 3;
    if (sgn(t) >= 0 && v > 0 && t % v == 0) q.vk2_hit = is_perfect_square(t / v).has_value();
    return q;
}

CriterionOutcome small_v_check(const R2Instance& inst) {
    CriterionOutcome o;
    o.criterion = "small_v";
    json candidates = json::array();
    json fired = json::array();
    const auto sq = quadratic_preconditions(inst.n, 1).square8n1;
    o.certificate["square_8n_plus_1"] = sq ? natural_to_json(*sq) : json(nullptr);
    for (std::uint64_t v : {5ULL, 13ULL, 17ULL}) {
        const bool divides = inst.order % v == 0;
        const bool hit = v != 17 && quadratic_preconditions(inst.n, v).vk2_hit;
        const bool fires = divides && !hit && !sq;
        candidates.push_back({{"v", v}, {"divides", divides}, {"vk2_hit", hit}, {"fired", fires}});
        if (fires) {
            fired.push_back(v);
            if (!o.params.count("v")) o.params["v"] = from_u64(v);
        }
    }
    o.certificate["candidates"] = candidates;
    o.certificate["fired"] = fired;
    if (sq) {
        o.status = Status::NotApplicable;
        o.reason = "8n+1 is a square";
    } else if (!fired.empty()) {
        o.status = Status::Excluded;
        o.tier = Tier::PerPaper;
    } else {
        o.status = Status::NotApplicable;
        o.reason = "no v in {5, 13, 17} qualifies";
    }
    return o;
}

CriterionOutcome small_v_check(std::uint64_t n, const Caps& caps) {
    try {
        return small_v_check(make_r2_instance(n, caps));
    } catch (const CapExceeded& e) {
        return CriterionOutcome::skipped("small_v", e);
    }
}

json LambdaCertificate::to_json() const {
    json j;
    for (auto [k, x] : {std::pair<const char*, const Natural*>{"v", &v}, {"p", &p}, {"f", &f}, {"l", &l},
                        {"d", &d}, {"m", &m}, {"m1", &m1}, {"m2", &m2}, {"h2", &h2}, {"hp", &hp},
                        {"i0", &i0}, {"j0", &j0}})
        j[k] = natural_to_json(*x);
    j["lambda"] = lambda ? natural_to_json(*lambda) : json(nullptr);
    j["bound_m1"] = bound_m1;
    j["bound_m2"] = bound_m2;
    j["full_group"] = full_group;
    return j;
}

namespace {

LambdaCertificate lambda_parts(std::uint64_t n, const Natural& v, const Natural& p, bool with_lambda,
                               std::uint64_t max_bits) {
    const Natural order = group_order_r2(n);
    if (order % v != 0 || !is_prime(v)) throw std::invalid_argument("v must be a prime divisor of the order");
    if ((2 * from_u64(n)) % p != 0 || !is_prime(p)) throw std::invalid_argument("p must be a prime divisor of 2n");
    LambdaCertificate c;
    c.v = v;
    c.p = p;
    c.m = order / v;
    c.m1 = mod(c.m, p);
    c.m2 = mod(2 * c.m, p);
    const Natural bound = 2 * from_u64(n) + 1;
    c.bound_m1 = bound < c.m1 * v;
    c.bound_m2 = bound < c.m2 * v;
    if (p == v) return c;  // p is not a unit mod v; nothing else is defined
    const Factorization vm1 = factorize(v - 1);
    c.h2 = mult_order_in(2, v, vm1);
    c.hp = mult_order_in(p, v, vm1);
    c.f = c.hp;
    c.d = (v - 1) / c.f;
    c.l = c.f;
    if (c.f % 2 == 0 && mod_pow(p, c.f / 2, v) == v - 1) c.l = c.f / 2;
    c.full_group = lcm(c.h2, c.hp) == v - 1;
    // Least i with 2^i in <p>; equals (v-1)/hp when <2, p> is the full unit group.
    c.i0 = c.h2 / gcd(c.h2, c.hp);
    auto j0 = discrete_log(p, mod_pow(2, c.i0, v), v, c.hp);
    if (!j0) return c;
    c.j0 = *j0;
    if (!with_lambda) return c;

    const std::uint64_t bits_pl = bit_estimate(p, c.l);
    const std::uint64_t bits_2 = bit_estimate(2, c.h2);
    if (std::min(bits_pl, bits_2) > max_bits)
        throw CapExceeded("max_lambda_bits", "p^l - 1 and 2^h2 - 1 exceed " + std::to_string(max_bits) + " bits");
    Natural M;
    if (bits_pl <= bits_2) {
        M = pow_ui(p, to_u64(c.l)) - 1;
        M = gcd(M, mod(mod_pow(2, c.h2, M) - 1, M));
    } else {
        M = pow_ui(2, to_u64(c.h2)) - 1;
        M = gcd(M, mod(mod_pow(p, c.l, M) - 1, M));
    }
    M = gcd(M, mod(mod_pow(p, c.hp, M) - 1, M));
    M = gcd(M, mod(mod_pow(2, c.i0, M) - mod_pow(p, c.j0, M), M));
    c.lambda = M;
    return c;
}

void put_params(CriterionOutcome& o, const LambdaCertificate& c) {
    o.params = {{"v", c.v}, {"p", c.p}, {"f", c.f}, {"l", c.l}, {"d", c.d},
                {"m", c.m}, {"m1", c.m1}, {"m2", c.m2}};
    if (c.lambda) o.params["lambda"] = *c.lambda;
}

// Reason the criterion cannot be used, or empty.
std::string unusable_reason(const LambdaCertificate& c) {
    if (c.p == c.v) return "p = v";
    std::string r;
    auto add = [&](const char* s) { r += r.empty() ? s : std::string("; ") + s; };
    if (!c.bound_m1) add("2n+1 >= m1 v");
    if (!c.bound_m2) add("2n+1 >= m2 v");
    if (!c.full_group) add("<2, p> is a proper subgroup of (Z/v)^*");
    if (r.empty() && c.f == 1) add("p = 1 mod v");
    return r;
}

}  // namespace

LambdaCertificate lambda_value(std::uint64_t n, const Natural& v, const Natural& p, std::uint64_t max_bits) {
    return lambda_parts(n, v, p, true, max_bits);
}

CriterionOutcome lambda_check(std::uint64_t n, const Natural& v, const Natural& p, const Caps& caps) {
    CriterionOutcome o;
    o.criterion = "lambda";
    try {
        LambdaCertificate c = lambda_parts(n, v, p, false, caps.max_lambda_bits);
        const std::string why = unusable_reason(c);
        if (!why.empty()) {
            put_params(o, c);
            o.status = Status::NotApplicable;
            o.reason = why;
            o.certificate = c.to_json();
            return o;
        }
        c = lambda_parts(n, v, p, true, caps.max_lambda_bits);
        put_params(o, c);
        o.certificate = c.to_json();
        if (*c.lambda == 1 || *c.lambda == v) {
            o.status = Status::Excluded;
            o.tier = Tier::Unconditional;
        } else {
            o.status = Status::Undecided;
        }
        return o;
    } catch (const CapExceeded& e) {
        CriterionOutcome s = CriterionOutcome::skipped("lambda", e);
        s.params = {{"v", v}, {"p", p}};
        return s;
    }
}

std::optional<std::uint64_t> theta(const FieldElement& x, const FieldElement& y, std::uint64_t v,
                                   std::uint64_t d, ThetaMode mode) {
    FieldElement t = x * y;
    if (mode == ThetaMode::Trace) {
        const std::uint64_t p = x.ctx().p();
        std::uint64_t sum = 0;
        for (std::uint64_t i = 0; i < d; ++i) {
            sum = (sum + t.trace()) % p;
            t = t * t;
        }
        return sum;
    }
    FieldElement sum = x.ctx().zero();
    for (std::uint64_t i = 0; i + 1 < v; ++i) {
        sum = sum + t;
        t = t * t;
    }
    return sum.in_prime_subfield();
}

CriterionOutcome field_check(std::uint64_t n, const Natural& v, const Natural& p, const Caps& caps) {
    CriterionOutcome o;
    o.criterion = "field";
    try {
        const LambdaCertificate c = lambda_parts(n, v, p, true, caps.max_lambda_bits);
        put_params(o, c);
        o.certificate["lambda"] = c.to_json();
        const std::string why = unusable_reason(c);
        if (!why.empty()) {
            o.status = Status::NotApplicable;
            o.reason = why;
            return o;
        }
        if (*c.lambda == 1 || *c.lambda == v) {
            o.status = Status::NotApplicable;
            o.reason = "lambda is 1 or v";
            return o;
        }
        if (*c.lambda > from_u64(caps.max_unity_enum))
            throw CapExceeded("max_unity_enum", "lambda = " + c.lambda->get_str());
        if (v > from_u64(caps.max_unity_enum)) throw CapExceeded("max_unity_enum", "v = " + v.get_str());
        const Natural work = *c.lambda * v * c.d;
        if (work > from_u64(caps.search_node_budget))
            throw CapExceeded("search_node_budget", "lambda * v * d = " + work.get_str());

        auto ctx = FieldCtx::build(to_u64(p), static_cast<unsigned>(to_u64(c.f)), caps.seed, caps.max_field_degree);
        const std::vector<FieldElement> xs = ctx->roots_of_unity(*c.lambda, caps.max_unity_enum);
        const std::vector<FieldElement> ys = ctx->roots_of_unity(v, caps.max_unity_enum);
        const std::uint64_t pp = to_u64(p), vv = to_u64(v), dd = to_u64(c.d);
        const bool two_primitive = c.h2 == v - 1;
        o.certificate["theta_mode"] = two_primitive ? "power_sum (evaluated as trace form)" : "trace";

        // The trace form equals the power sum when 2 is primitive; confirm on a sample.
        if (two_primitive && vv <= 4096) {
            for (std::size_t k = 0; k < std::min<std::size_t>(ys.size(), 8); ++k)
                if (theta(xs[0], ys[k], vv, dd, ThetaMode::PowerSum) != theta(xs[0], ys[k], vv, dd, ThetaMode::Trace))
                    throw std::logic_error("theta forms disagree");
        }

        const std::uint64_t m_mod_p = to_u64(mod(c.m, p));
        const bool whole_group = c.m == 1;
        const Natural nn = from_u64(n);
        const std::uint64_t want_ones = whole_group ? to_u64(2 * nn * nn) : 0;
        const std::uint64_t want_zeros = 2 * n + 1;
        json per_x = json::array();
        std::size_t survivors = 0;
        for (std::size_t xi = 0; xi < xs.size(); ++xi) {
            std::uint64_t sum = 0, ones = 0, zeros = 0;
            bool range_ok = true;
            for (const auto& y : ys) {
                const std::uint64_t th = *theta(xs[xi], y, vv, dd, ThetaMode::Trace);
                sum = (sum + th) % pp;
                ones += th == 1;
                zeros += th == 0;
                const std::uint64_t val = (m_mod_p * ((1 + pp - th) % pp)) % pp;
                if (from_u64(val) > c.m) range_ok = false;
            }
            const bool sum_ok = (m_mod_p * sum) % pp == 0;
            const bool ok = whole_group ? (ones == want_ones && zeros == want_zeros) : (sum_ok && range_ok);
            survivors += ok;
            json e = {{"x", xs[xi].str()}, {"survives", ok}};
            if (whole_group) {
                e["count_theta_1"] = ones;
                e["count_theta_0"] = zeros;
            } else {
                e["theta_sum"] = sum;
                e["sum_condition"] = sum_ok;
                e["range_condition"] = range_ok;
            }
            per_x.push_back(e);
        }
        o.certificate["condition"] = whole_group ? "counts" : "sum_and_range";
        o.certificate["candidates"] = per_x;
        o.certificate["surviving_x"] = survivors;
        if (survivors == 0) {
            o.status = Status::Excluded;
            o.tier = Tier::Unconditional;
        } else {
            o.status = Status::Undecided;
        }
        return o;
    } catch (const CapExceeded& e) {
        CriterionOutcome s = CriterionOutcome::skipped("field", e);
        s.params = o.params;
        return s;
    }
}

std::string to_string(OrbitClass c) {
    switch (c) {
        case OrbitClass::QuadraticFactor1: return "quadratic_factor_1";
        case OrbitClass::QuadraticFactor2: return "quadratic_factor_2";
        case OrbitClass::Other: return "other";
    }
    return "?";
}

namespace {

struct OrbitSearch {
    std::vector<OrbitSurvivor> survivors;
    std::vector<std::vector<FieldElement>> coefficients;  // a_g per survivor
    std::uint64_t searched = 0;
    std::uint64_t consistent_tables = 0;
    unsigned f = 0, e = 0;
};

std::mutex orbit_cache_mutex;
std::map<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t>, std::shared_ptr<const OrbitSearch>>
    orbit_cache;

std::shared_ptr<const OrbitSearch> run_orbit_search(std::uint64_t v, std::uint64_t p, std::uint64_t c,
                                                    const Caps& caps) {
    const auto key = std::make_tuple(v, p, c, caps.seed);
    {
        std::lock_guard<std::mutex> lock(orbit_cache_mutex);
        auto it = orbit_cache.find(key);
        if (it != orbit_cache.end()) return it->second;
    }
    const detail::OrbitSetup s = detail::make_orbit_setup(v, p, caps);
    const FieldCtx& ctx = *s.ctx;
    const unsigned f = s.f;
    const FieldElement cst = ctx.constant(static_cast<std::int64_t>(c));
    const std::vector<detail::UnitMap> maps = {
        {v - 1, [f](const FieldCtx::Coeff* a, FieldCtx::Coeff* out) { std::copy(a, a + f, out); }},
        {p % v, [&ctx](const FieldCtx::Coeff* a, FieldCtx::Coeff* out) { ctx.frobenius1(a, out); }},
        {2 % v, [&ctx, &cst](const FieldCtx::Coeff* a, FieldCtx::Coeff* out) {
             ctx.mul(a, a, out);
             ctx.sub(cst.coeffs().data(), out, out);
         }},
    };
    auto result = std::make_shared<OrbitSearch>();
    result->f = s.f;
    result->e = s.e;
    std::vector<FieldCtx::Coeff> table;
    std::vector<char> known;
    detail::for_each_subfield_element(s, [&](std::uint64_t, const FieldElement& tau0) {
        ++result->searched;
        if (!detail::build_table(s, tau0.coeffs().data(), maps, table, known)) return true;
        for (std::uint64_t j = 1; j < v; ++j)
            if (!known[j]) throw std::logic_error("orbit maps do not reach every unit");
        ++result->consistent_tables;
        OrbitSurvivor sv;
        sv.tau0 = tau0;
        for (std::uint64_t j = 1; j < v; ++j)
            sv.values.push_back(ctx.from_coeffs({table.begin() + j * f, table.begin() + (j + 1) * f}));
        for (std::uint64_t j = 1; j < v; ++j) {
            if (sv.values[j - 1] != sv.values[v - j - 1]) throw std::logic_error("V(-j) != V(j)");
            if (sv.values[(p * j) % v - 1] != sv.values[j - 1].frobenius(1)) throw std::logic_error("V(pj) != V(j)^p");
        }
        if (v == 13) {
            FieldElement g = tau0;
            for (int i = 0; i < 6; ++i) g = cst - g * g;
            if (g != tau0) throw std::logic_error("chain does not close after six steps");
        }
        std::vector<FieldElement> a = detail::inversion_coefficients(s, sv.values, (c + 1) % p);
        FieldElement total = ctx.zero();
        bool integral = true;
        for (const auto& x : a) {
            integral = integral && x.in_prime_subfield().has_value();
            total = total + x;
        }
        if (!integral || total != ctx.constant(static_cast<std::int64_t>((c + 1) % p))) return true;
        const FieldElement q1 = tau0 * tau0 - tau0 - ctx.constant(static_cast<std::int64_t>(c)) + ctx.one();
        const FieldElement q2 = tau0 * tau0 + tau0 - ctx.constant(static_cast<std::int64_t>(c));
        sv.classification = q2.is_zero()   ? OrbitClass::QuadraticFactor2
                            : q1.is_zero() ? OrbitClass::QuadraticFactor1
                                           : OrbitClass::Other;
        result->survivors.push_back(std::move(sv));
        result->coefficients.push_back(std::move(a));
        return true;
    });
    std::lock_guard<std::mutex> lock(orbit_cache_mutex);
    orbit_cache.emplace(key, result);
    return result;
}

CriterionOutcome not_applicable(CriterionOutcome o, const std::string& reason) {
    o.status = Status::NotApplicable;
    o.reason = reason;
    return o;
}

bool default_instance(std::uint64_t v, std::uint64_t p) { return (v == 13 && p == 11) || (v == 17 && p == 3); }

}  // namespace

std::vector<OrbitSurvivor> orbit_survivors(std::uint64_t v, std::uint64_t p, std::uint64_t two_n_mod_p,
                                           const Caps& caps) {
    return run_orbit_search(v, p, two_n_mod_p % p, caps)->survivors;
}

CriterionOutcome orbit_check(std::uint64_t n, std::uint64_t v, std::uint64_t p, const Caps& caps, bool generic) {
    CriterionOutcome o;
    o.criterion = "orbit";
    o.params = {{"v", from_u64(v)}, {"p", from_u64(p)}};
    if (!generic && !default_instance(v, p))
        return not_applicable(o, "instance not enabled without the generic flag");
    o.certificate["experimental"] = !default_instance(v, p);
    if (!is_prime(from_u64(v)) || !is_prime(from_u64(p)) || v == p)
        return not_applicable(o, "v and p must be distinct primes");
    if (group_order_r2(n) % v != 0)
        return not_applicable(o, "v does not divide the order");
    const auto reach = detail::generated_units(v, {2, p, v - 1});
    for (std::uint64_t j = 1; j < v; ++j)
        if (!reach[j]) return not_applicable(o, "<2, p, -1> is a proper subgroup");
    const QuadraticPreconditions q = quadratic_preconditions(n, v);
    if (q.square8n1) return not_applicable(o, "8n+1 is a square");
    if ((v == 5 || v == 13) && q.vk2_hit) return not_applicable(o, "8n-3 = v k^2");

    try {
        const std::uint64_t c = (2 * n) % p;
        auto search = run_orbit_search(v, p, c, caps);
        o.params["f"] = search->f;
        o.params["e"] = search->e;
        o.certificate["two_n_mod_p"] = c;
        o.certificate["searched"] = search->searched;
        o.certificate["consistent_tables"] = search->consistent_tables;
        json list = json::array();
        std::size_t other = 0;
        for (std::size_t i = 0; i < search->survivors.size(); ++i) {
            const auto& sv = search->survivors[i];
            other += sv.classification == OrbitClass::Other;
            list.push_back({{"tau0", sv.tau0.str()},
                            {"class", to_string(sv.classification)},
                            {"identity_coefficient", *search->coefficients[i][0].in_prime_subfield()}});
        }
        o.certificate["survivors"] = list;
        if (search->survivors.empty()) {
            o.status = Status::Excluded;
            o.tier = Tier::Unconditional;
        } else if (other == 0) {
            o.status = Status::Excluded;
            o.tier = Tier::PerPaper;
        } else {
            o.status = Status::Undecided;
        }
    } catch (const CapExceeded& e) {
        CriterionOutcome s = CriterionOutcome::skipped("orbit", e);
        s.params = o.params;
        return s;
    }
    return o;
}

}  // namespace lee
