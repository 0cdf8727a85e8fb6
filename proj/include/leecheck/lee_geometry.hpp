#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leecheck/group_ring.hpp"
#include "leecheck/integer_core.hpp"

namespace lee {

struct LeeVector {
    std::vector<std::int64_t> coords;
    std::optional<std::uint64_t> modulus;  // present for Z_m^n

    LeeVector() = default;
    explicit LeeVector(std::vector<std::int64_t> c, std::optional<std::uint64_t> m = std::nullopt);
    std::uint64_t norm() const;  // Lee weight
    std::string str() const;
    friend bool operator==(const LeeVector&, const LeeVector&) = default;
};

struct CodeWitness {
    AbelianGroup group;
    std::vector<std::uint64_t> generators;  // images of the unit vectors
    unsigned n = 0;
    unsigned r = 0;
};

struct WitnessCheck {
    bool ok = false;
    std::optional<std::pair<LeeVector, LeeVector>> collision;
};

Natural sphere_size(std::uint64_t n, std::uint64_t r);
Natural group_order_r2(std::uint64_t n);
Natural group_order_r3(std::uint64_t n);
Natural moore_bound_abelian(std::uint64_t d, std::uint64_t k);

// Lexicographic; throws CapExceeded("search_node_budget") when the sphere exceeds cap.
std::vector<LeeVector> enumerate_sphere(unsigned n, unsigned r, std::uint64_t cap = Caps{}.search_node_budget);

std::uint64_t lee_distance(const LeeVector& x, const LeeVector& y);

// Image of a sphere vector under the homomorphism fixed by the witness.
std::uint64_t witness_image(const CodeWitness& w, const LeeVector& x);
WitnessCheck verify_witness(const CodeWitness& w);

// Text picture of the tiling for n = 2: each cell shows a letter for its
// tile, upper case at tile centers.
std::string render_tiling(const CodeWitness& w, int width, int height);

}  // namespace lee
