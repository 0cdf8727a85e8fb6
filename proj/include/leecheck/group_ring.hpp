#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "leecheck/finite_field.hpp"
#include "leecheck/integer_core.hpp"

namespace lee {

// Finite abelian group in invariant-factor form m1 | m2 | ... | mk.
// Elements are mixed-radix indices in [0, order).
class AbelianGroup {
public:
    AbelianGroup() = default;
    explicit AbelianGroup(std::vector<std::uint64_t> cyclic_orders);
    static AbelianGroup cyclic(std::uint64_t m) {
        return m == 1 ? AbelianGroup() : AbelianGroup(std::vector<std::uint64_t>{m});
    }

    const std::vector<std::uint64_t>& cyclic_orders() const { return orders_; }
    std::uint64_t order() const { return order_; }
    std::uint64_t exponent() const { return orders_.empty() ? 1 : orders_.back(); }
    bool is_cyclic() const { return orders_.size() <= 1; }

    std::vector<std::uint64_t> components(std::uint64_t g) const;
    std::uint64_t element(const std::vector<std::int64_t>& comps) const;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const;
    std::uint64_t scale(std::uint64_t a, std::int64_t t) const;
    std::string str() const;  // e.g. "C5xC5", "C1" for the trivial group

    friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) { return a.orders_ == b.orders_; }

private:
    std::vector<std::uint64_t> orders_;
    std::uint64_t order_ = 1;
};

class GroupRingElement {
public:
    GroupRingElement() = default;
    explicit GroupRingElement(AbelianGroup g);  // zero element
    GroupRingElement(AbelianGroup g, std::vector<Integer> coeffs);

    static GroupRingElement identity(const AbelianGroup& g);  // 1_G
    static GroupRingElement all_ones(const AbelianGroup& g);  // the element G

    const AbelianGroup& group() const { return group_; }
    const std::vector<Integer>& coeffs() const { return coeffs_; }
    const Integer& operator[](std::uint64_t g) const { return coeffs_[g]; }
    Integer& operator[](std::uint64_t g) { return coeffs_[g]; }
    Integer coefficient_sum() const;
    bool is_zero_one() const;

    GroupRingElement operator+(const GroupRingElement& o) const;
    GroupRingElement operator-(const GroupRingElement& o) const;
    GroupRingElement operator*(const GroupRingElement& o) const;
    GroupRingElement operator*(const Integer& k) const;

    friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
        return a.group_ == b.group_ && a.coeffs_ == b.coeffs_;
    }

private:
    void same_group(const GroupRingElement& o) const;

    AbelianGroup group_;
    std::vector<Integer> coeffs_;
};

GroupRingElement ring_add(const GroupRingElement& a, const GroupRingElement& b);
GroupRingElement ring_mul(const GroupRingElement& a, const GroupRingElement& b);
GroupRingElement power_map(const GroupRingElement& a, std::int64_t t);

// 1 + sum (g_i + g_i^{-1}) with multiset semantics.
GroupRingElement build_T(const AbelianGroup& group, const std::vector<std::uint64_t>& generators);

struct IdentityCheck {
    bool holds = false;
    std::optional<std::uint64_t> first_failure;  // group element where the sides differ
    Integer lhs, rhs;                            // coefficients at first_failure
};

IdentityCheck verify_r2_identity(const GroupRingElement& t, std::uint64_t n);
IdentityCheck verify_r3_identity(const GroupRingElement& t, std::uint64_t n);

// Prime field F_q with q = 1 mod w and a fixed primitive w-th root of unity.
struct AuxField {
    std::shared_ptr<const FieldCtx> field;
    FieldElement zeta;
    std::uint64_t w = 1;
};

// Throws CapExceeded("factor_budget") if no q = 1 + k w with k <= budget is prime.
AuxField make_aux_field(std::uint64_t w, std::uint64_t seed = Caps{}.seed,
                        std::uint64_t budget = 1'000'000);

// sum a_g zeta^{g * character}; requires a cyclic group of order aux.w.
FieldElement char_eval(const GroupRingElement& a, std::uint64_t character, const AuxField& aux);

// Reconstruct coefficients mod q from all character values.
std::vector<std::uint64_t> inverse_transform(const std::vector<FieldElement>& values, const AuxField& aux);
bool inversion_roundtrip(const GroupRingElement& a, const AuxField& aux);

}  // namespace lee
