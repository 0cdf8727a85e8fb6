#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "leecheck/caps.hpp"

namespace lee {

using Natural = mpz_class;
using Integer = mpz_class;

struct PrimePower {
    Natural prime;
    unsigned exponent = 0;
};

struct Factorization {
    Natural n;
    std::vector<PrimePower> factors;  // strictly increasing primes
    bool probabilistic = false;

    Natural recompose() const;
    std::vector<Natural> primes() const;
    bool has_prime(const Natural& q) const;
};

// Either a finite natural number or infinity, which exceeds every finite value.
class MaybeInfinite {
public:
    MaybeInfinite() = default;
    explicit MaybeInfinite(Natural v) : value_(std::move(v)) {}
    static MaybeInfinite infinity() { return MaybeInfinite(); }

    bool is_infinite() const { return !value_.has_value(); }
    const Natural& value() const;
    std::string str() const;

    friend bool operator==(const MaybeInfinite& a, const MaybeInfinite& b);
    friend bool operator<(const MaybeInfinite& a, const MaybeInfinite& b);

private:
    std::optional<Natural> value_;
};

std::uint64_t to_u64(const Natural& x);
Natural from_u64(std::uint64_t x);

bool is_prime(const Natural& n, bool* probabilistic = nullptr,
              std::uint64_t seed = Caps{}.seed);

// Throws CapExceeded("factor_budget") when the splitting budget runs out.
Factorization factorize(const Natural& n, std::uint64_t budget = Caps{}.factor_budget,
                        std::uint64_t seed = Caps{}.seed);

std::optional<Natural> is_perfect_square(const Natural& n);

Natural mod_pow(const Natural& base, const Natural& exponent, const Natural& modulus);
Natural gcd(const Natural& a, const Natural& b);
Natural mod(const Integer& a, const Natural& modulus);  // least nonnegative residue

// Order of a in (Z/modulus)^*. Throws std::domain_error on gcd(a, modulus) != 1.
Natural mult_order(const Natural& a, const Natural& modulus);
// Same, when the order of the ambient group is already factored.
Natural mult_order_in(const Natural& a, const Natural& modulus, const Factorization& group_order);

std::optional<Natural> discrete_log(const Natural& base, const Natural& target,
                                    const Natural& modulus, const Natural& order);

// Least j in [0, bound] with base^j = target, by baby-step/giant-step.
std::optional<Natural> discrete_log_bounded(const Natural& base, const Natural& target,
                                            const Natural& modulus, const Natural& bound);

// True iff a*(x+1) + b*y = t has a solution with x, y >= 0.
bool solvable_shifted(const MaybeInfinite& a, const Natural& b, const Integer& t);

}  // namespace lee
