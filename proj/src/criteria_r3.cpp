#include "leecheck/criteria_r3.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "leecheck/lee_geometry.hpp"
#include "orbit_common.hpp"

namespace lee {

namespace {

constexpr std::uint64_t kV = 7;
constexpr std::uint64_t kP = 5;

}  // namespace

R3Instance make_r3_instance(std::uint64_t n, const Caps& caps) {
    R3Instance inst;
    inst.n = n;
    inst.order = group_order_r3(n);
    inst.factorization = factorize(inst.order, caps.factor_budget, caps.seed);
    return inst;
}

GateResult trivial_solution_gate(std::uint64_t n, std::uint64_t v) {
    GateResult g;
    const Natural nn = from_u64(n);
    if ((2 * nn + 1) % v == 0) {
        g.reason = "v divides 2n+1";
        return g;
    }
    g.c = is_perfect_square(24 * nn + 1);
    if (g.c) {
        const Natural& c = *g.c;
        const Natural twelve_v = 12 * from_u64(v);
        g.divides_plus = (c * c + 6 * c + 29) % twelve_v == 0;
        g.divides_minus = (c * c - 6 * c + 29) % twelve_v == 0;
        if (g.divides_plus || g.divides_minus) {
            g.reason = "square branch";
            return g;
        }
    }
    g.pass = true;
    return g;
}

CriterionOutcome v7_check(std::uint64_t n) {
    CriterionOutcome o;
    o.criterion = "v7";
    o.params["v"] = kV;
    const Natural order = group_order_r3(n);
    json& cert = o.certificate;
    cert["order"] = natural_to_json(order);
    cert["v"] = kV;
    if (n % 7 != 1 && n % 7 != 5) {
        o.status = Status::NotApplicable;
        o.reason = "n is not 1 or 5 mod 7";
        return o;
    }
    const GateResult g = trivial_solution_gate(n, kV);
    cert["c"] = g.c ? natural_to_json(*g.c) : json(nullptr);
    o.tier = Tier::PerPaper;
    if (!g.c) {
        o.status = Status::Excluded;
        cert["branch"] = "24n+1 is not a square";
        return o;
    }
    cert["reading"] = "c^2 +- 6c + 29 with c = sqrt(24n+1)";
    cert["84_divides_c2_plus_6c_29"] = g.divides_plus;
    cert["84_divides_c2_minus_6c_29"] = g.divides_minus;
    o.params["c"] = *g.c;
    if (g.pass) {
        o.status = Status::Excluded;
        cert["branch"] = "84 divides neither c^2 + 6c + 29 nor c^2 - 6c + 29";
    } else {
        o.status = Status::Undecided;
        o.tier = Tier::None;
        cert["branch"] = g.divides_plus ? "84 divides c^2 + 6c + 29" : "84 divides c^2 - 6c + 29";
    }
    return o;
}

namespace {

struct OrbitR3Search {
    std::vector<OrbitR3Survivor> survivors;
    std::uint64_t searched = 0;
    std::uint64_t cubic_solutions = 0;
};

std::mutex r3_cache_mutex;
std::map<std::pair<std::uint64_t, std::uint64_t>, std::shared_ptr<const OrbitR3Search>> r3_cache;

std::shared_ptr<const OrbitR3Search> run_r3_search(std::uint64_t n_mod_p, const Caps& caps) {
    const auto key = std::make_pair(n_mod_p % kP, caps.seed);
    {
        std::lock_guard<std::mutex> lock(r3_cache_mutex);
        auto it = r3_cache.find(key);
        if (it != r3_cache.end()) return it->second;
    }
    const detail::OrbitSetup s = detail::make_orbit_setup(kV, kP, caps);
    const FieldCtx& ctx = *s.ctx;
    const unsigned f = s.f;
    const std::vector<detail::UnitMap> maps = {
        {kV - 1, [f](const FieldCtx::Coeff* a, FieldCtx::Coeff* out) { std::copy(a, a + f, out); }},
        {kP, [&ctx](const FieldCtx::Coeff* a, FieldCtx::Coeff* out) { ctx.frobenius1(a, out); }},
    };
    const std::uint64_t nm = n_mod_p % kP;
    const FieldElement six_n = ctx.constant(static_cast<std::int64_t>(6 * nm));
    const FieldElement two = ctx.constant(2), three = ctx.constant(3);
    const std::uint64_t aug = (2 * nm + 1) % kP;

    auto result = std::make_shared<OrbitR3Search>();
    std::vector<FieldCtx::Coeff> table;
    std::vector<char> known;
    detail::for_each_subfield_element(s, [&](std::uint64_t, const FieldElement& tau1) {
        ++result->searched;
        if (!detail::build_table(s, tau1.coeffs().data(), maps, table, known))
            throw std::logic_error("Frobenius and negation are inconsistent on the real subfield");
        std::vector<FieldElement> V;
        for (std::uint64_t j = 1; j < kV; ++j) V.push_back(ctx.from_coeffs({table.begin() + j * f, table.begin() + (j + 1) * f}));
        auto at = [&](std::uint64_t j) -> const FieldElement& { return V[j % kV - 1]; };
        for (std::uint64_t j = 1; j < kV; ++j) {
            const FieldElement& x = at(j);
            if (!(x * x * x + three * at(2 * j) * x + two * at(3 * j) - six_n * x).is_zero()) return true;
        }
        ++result->cubic_solutions;
        // Cyclic symmetry (tau1, tau2, tau3) -> (tau2, tau3, tau1): V(2j) also solves the system.
        const FieldElement &t1 = at(1), &t2 = at(2), &t3 = at(3);
        for (const auto& [a, b, c] : {std::tuple{&t2, &t3, &t1}, std::tuple{&t3, &t1, &t2}})
            if (!(*a * *a * *a + three * *b * *a + two * *c - six_n * *a).is_zero())
                throw std::logic_error("cubic system is not cyclically symmetric");

        std::vector<FieldElement> a = detail::inversion_coefficients(s, V, aug);
        OrbitR3Survivor sv;
        FieldElement total = ctx.zero();
        for (const auto& x : a) {
            auto r = x.in_prime_subfield();
            if (!r) return true;
            sv.coefficients.push_back(*r);
            total = total + x;
        }
        if (total != ctx.constant(static_cast<std::int64_t>(aug))) return true;
        sv.tau1 = tau1;
        sv.values = V;
        sv.trivial = (tau1 * (tau1 * tau1 + three * tau1 - six_n + two)).is_zero();
        result->survivors.push_back(std::move(sv));
        return true;
    });
    std::lock_guard<std::mutex> lock(r3_cache_mutex);
    r3_cache.emplace(key, result);
    return result;
}

}  // namespace

std::vector<OrbitR3Survivor> orbit_survivors_r3(std::uint64_t n_mod_p, const Caps& caps) {
    return run_r3_search(n_mod_p, caps)->survivors;
}

CriterionOutcome orbit_check_r3(std::uint64_t n, const Caps& caps) {
    CriterionOutcome o;
    o.criterion = "orbit_r3";
    o.params = {{"v", from_u64(kV)}, {"p", from_u64(kP)}};
    if (group_order_r3(n) % kV != 0) {
        o.status = Status::NotApplicable;
        o.reason = "7 does not divide the order";
        return o;
    }
    const GateResult g = trivial_solution_gate(n, kV);
    if (!g.pass) {
        o.status = Status::NotApplicable;
        o.reason = g.reason;
        return o;
    }
    try {
        auto search = run_r3_search(n % kP, caps);
        o.certificate["n_mod_p"] = n % kP;
        o.certificate["searched"] = search->searched;
        o.certificate["cubic_solutions"] = search->cubic_solutions;
        json list = json::array();
        std::size_t nontrivial = 0;
        for (const auto& sv : search->survivors) {
            nontrivial += !sv.trivial;
            list.push_back({{"tau1", sv.tau1.str()},
                            {"trivial_factor", sv.trivial},
                            {"identity_coefficient", sv.coefficients[0]},
                            {"coefficients", sv.coefficients}});
        }
        o.certificate["survivors"] = list;
        if (search->survivors.empty()) {
            o.status = Status::Excluded;
            o.tier = Tier::Unconditional;
        } else if (nontrivial == 0) {
            o.status = Status::Excluded;
            o.tier = Tier::PerPaper;
        } else {
            o.status = Status::Undecided;
        }
    } catch (const CapExceeded& e) {
        CriterionOutcome s = CriterionOutcome::skipped("orbit_r3", e);
        s.params = o.params;
        return s;
    }
    return o;
}

}  // namespace lee
