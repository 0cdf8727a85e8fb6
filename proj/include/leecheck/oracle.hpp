#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "leecheck/group_ring.hpp"
#include "leecheck/lee_geometry.hpp"

namespace lee {

// All abelian groups of a given order, one per isomorphism class.
struct GroupMenu {
    Natural order;
    std::vector<AbelianGroup> groups;
};

// Throws CapExceeded("factor_budget").
GroupMenu enumerate_abelian_groups(const Natural& order, const Caps& caps = {});

struct SearchResult {
    std::optional<CodeWitness> witness;
    std::uint64_t nodes = 0;
};

// Exhaustive search for generator images that make the sphere map a bijection.
// `order_seed` permutes the candidate order (the result set is unchanged).
// Throws CapExceeded("search_node_budget").
SearchResult search_code(unsigned n, unsigned r, const AbelianGroup& group, const Caps& caps = {},
                         std::optional<std::uint64_t> order_seed = std::nullopt);

enum class OracleStatus { Exists, NotExists, Skipped };

struct OracleGroupRecord {
    AbelianGroup group;
    std::string result;  // "witness", "exhausted" or "skipped"
    std::uint64_t nodes = 0;
};

struct OracleVerdict {
    OracleStatus status = OracleStatus::Skipped;
    std::optional<CodeWitness> witness;
    std::vector<OracleGroupRecord> groups;
    std::string reason;
};

OracleVerdict oracle_verdict(unsigned n, unsigned r, const Caps& caps = {},
                             std::optional<std::uint64_t> order_seed = std::nullopt);

std::string to_string(OracleStatus s);

// True when some automorphism of the cyclic group maps {+-a_i} onto {+-b_i}.
bool cyclic_equivalent(const CodeWitness& w, const std::vector<std::uint64_t>& generators);

}  // namespace lee
