#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "leecheck/finite_field.hpp"
#include "leecheck/integer_core.hpp"
#include "leecheck/outcome.hpp"

namespace lee {

// Radius-2 problem data shared by all criteria for one dimension.
struct R2Instance {
    std::uint64_t n = 0;
    Natural order;  // 2n^2 + 2n + 1
    Factorization factorization;
};

// Throws CapExceeded("factor_budget").
R2Instance make_r2_instance(std::uint64_t n, const Caps& caps = {});

CriterionOutcome kim_check(const R2Instance& inst);
CriterionOutcome kim_check(std::uint64_t n, const Caps& caps = {});

struct QuadraticPreconditions {
    std::optional<Natural> square8n1;  // root of 8n+1 when it is a square
    bool vk2_hit = false;              // 8n-3 = v k^2 for some integer k
};

QuadraticPreconditions quadratic_preconditions(std::uint64_t n, std::uint64_t v);

CriterionOutcome small_v_check(const R2Instance& inst);
CriterionOutcome small_v_check(std::uint64_t n, const Caps& caps = {});

struct LambdaCertificate {
    Natural v, p, f, l, d, m, m1, m2, h2, hp, i0, j0;
    std::optional<Natural> lambda;  // absent when the generator pair is undefined
    bool bound_m1 = false;          // 2n+1 < m1 v
    bool bound_m2 = false;          // 2n+1 < m2 v
    bool full_group = false;        // <2, p> = (Z/v)^*

    bool hypotheses_ok() const { return bound_m1 && bound_m2 && full_group; }
    json to_json() const;
};

// Throws CapExceeded("max_lambda_bits") when p^l - 1 and 2^h2 - 1 are both too long.
LambdaCertificate lambda_value(std::uint64_t n, const Natural& v, const Natural& p,
                               std::uint64_t max_bits = kDefaultLambdaBits);

CriterionOutcome lambda_check(std::uint64_t n, const Natural& v, const Natural& p,
                              const Caps& caps = {});

// Sum of successive squares (xy)^{2^i}: over i < v-1 directly, or over i < d with
// each term replaced by its trace to F_p.
enum class ThetaMode { PowerSum, Trace };

std::optional<std::uint64_t> theta(const FieldElement& x, const FieldElement& y, std::uint64_t v,
                                   std::uint64_t d, ThetaMode mode);

CriterionOutcome field_check(std::uint64_t n, const Natural& v, const Natural& p, const Caps& caps = {});

enum class OrbitClass { QuadraticFactor1, QuadraticFactor2, Other };

struct OrbitSurvivor {
    FieldElement tau0;
    std::vector<FieldElement> values;  // V(j) for j = 1 .. v-1
    OrbitClass classification = OrbitClass::Other;
};

// Search for character tables of a projected radius-2 solution over C_v, mod p.
// Only (13, 11) and (17, 3) run unless `generic` is set.
CriterionOutcome orbit_check(std::uint64_t n, std::uint64_t v, std::uint64_t p, const Caps& caps = {},
                             bool generic = false);

// The survivors behind orbit_check for a residue of 2n mod p (memoized).
std::vector<OrbitSurvivor> orbit_survivors(std::uint64_t v, std::uint64_t p, std::uint64_t two_n_mod_p,
                                           const Caps& caps = {});

std::string to_string(OrbitClass c);

}  // namespace lee
