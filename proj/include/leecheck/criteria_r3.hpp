#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "leecheck/finite_field.hpp"
#include "leecheck/integer_core.hpp"
#include "leecheck/outcome.hpp"

namespace lee {

// Radius-3 problem data for one dimension.
struct R3Instance {
    std::uint64_t n = 0;
    Natural order;  // 1 + 6n^2 + 4n(n-1)(n-2)/3
    Factorization factorization;
};

R3Instance make_r3_instance(std::uint64_t n, const Caps& caps = {});

// Whether the constant-type solutions a + bG of the projected cubic identity
// are ruled out for the quotient of order v.
struct GateResult {
    bool pass = false;
    std::string reason;          // "v divides 2n+1" or "square branch" when blocked
    std::optional<Natural> c;    // sqrt(24n+1) when it is an integer
    bool divides_plus = false;   // 12v | c^2 + 6c + 29
    bool divides_minus = false;  // 12v | c^2 - 6c + 29
};

GateResult trivial_solution_gate(std::uint64_t n, std::uint64_t v);

CriterionOutcome v7_check(std::uint64_t n);

struct OrbitR3Survivor {
    FieldElement tau1;
    std::vector<FieldElement> values;       // V(j) for j = 1 .. 6
    std::vector<std::uint64_t> coefficients;  // a_g mod p for g = 0 .. 6
    bool trivial = false;                   // tau (tau^2 + 3 tau - 6n + 2) = 0
};

// Frobenius-consistent solutions of the projected cubic system over C_7 modulo 5,
// for a residue of n mod 5 (memoized).
std::vector<OrbitR3Survivor> orbit_survivors_r3(std::uint64_t n_mod_p, const Caps& caps = {});

CriterionOutcome orbit_check_r3(std::uint64_t n, const Caps& caps = {});

}  // namespace lee
