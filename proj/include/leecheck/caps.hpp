#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lee {

inline constexpr std::uint64_t kDefaultLambdaBits = 1ULL << 26;

// Resource limits shared by every module. A limit that is hit never turns
// into evidence; callers receive CapExceeded and report the criterion as
// skipped.
struct Caps {
    std::uint64_t max_field_degree = 80;
    std::uint64_t max_unity_enum = 65536;
    std::uint64_t factor_budget = 20'000'000;
    std::uint64_t search_node_budget = 100'000'000;
    std::uint64_t max_lambda_bits = kDefaultLambdaBits;
    std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
    std::uint64_t thread_count = 1;
};

class CapExceeded : public std::runtime_error {
public:
    CapExceeded(std::string cap, const std::string& detail)
        : std::runtime_error(cap + ": " + detail), cap_(std::move(cap)) {}
    const std::string& cap() const noexcept { return cap_; }

private:
    std::string cap_;
};

// Derive an independent stream seed from the configured seed and a salt.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace lee
