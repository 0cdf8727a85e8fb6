#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "leecheck/finite_field.hpp"

namespace lee::detail {

// F_{p^f} with f = ord_v(p), a primitive v-th root, and the subfield of
// degree e that holds the values of real characters.
struct OrbitSetup {
    std::shared_ptr<const FieldCtx> ctx;
    std::uint64_t v = 0, p = 0;
    unsigned f = 0, e = 0;
    FieldElement beta;
    FieldElement gamma;  // generates the multiplicative group of the degree-e subfield
    std::uint64_t subfield_size = 0;
};

// Throws CapExceeded on field degree or search size.
OrbitSetup make_orbit_setup(std::uint64_t v, std::uint64_t p, const Caps& caps);

// Visits 0 and every power of gamma; stops early when visit returns false.
void for_each_subfield_element(const OrbitSetup& s, const std::function<bool(std::uint64_t, const FieldElement&)>& visit);

// a_g = v^{-1} (aug + sum_j V(j) beta^{-j g}) for g = 0 .. v-1; values[j-1] = V(j).
std::vector<FieldElement> inversion_coefficients(const OrbitSetup& s, const std::vector<FieldElement>& values,
                                                 std::uint64_t aug);

// Units mod v reachable from 1 under multiplication by the given factors.
std::vector<bool> generated_units(std::uint64_t v, const std::vector<std::uint64_t>& factors);

}  // namespace lee::detail

namespace lee::detail {

struct UnitMap {
    std::uint64_t factor;  // j -> factor * j mod v
    std::function<void(const FieldCtx::Coeff*, FieldCtx::Coeff*)> apply;
};

// Fills table[j*f .. j*f+f) = V(j) for all units j reachable from V(1) = tau0
// through the maps. Returns false on the first inconsistent assignment.
bool build_table(const OrbitSetup& s, const FieldCtx::Coeff* tau0, const std::vector<UnitMap>& maps,
                 std::vector<FieldCtx::Coeff>& table, std::vector<char>& known);

}  // namespace lee::detail
