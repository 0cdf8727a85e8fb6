#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "leecheck/integer_core.hpp"

namespace lee {

class FieldElement;

// F_{p^f} as F_p[X]/(P) for a monic irreducible P of degree f.
// Immutable after construction; always handled through shared_ptr.
class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
public:
    using Coeff = std::uint64_t;

    // Throws CapExceeded("max_field_degree") when f > max_degree.
    static std::shared_ptr<const FieldCtx> build(std::uint64_t p, unsigned f, std::uint64_t seed,
                                                 std::uint64_t max_degree = Caps{}.max_field_degree);

    std::uint64_t p() const { return p_; }
    unsigned degree() const { return f_; }
    const std::vector<Coeff>& modulus() const { return modulus_; }  // f+1 coefficients, monic
    const Natural& unit_order() const { return unit_order_; }       // p^f - 1
    Natural size() const { return unit_order_ + 1; }
    std::uint64_t seed() const { return seed_; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement constant(std::int64_t c) const;
    FieldElement generator() const;  // the class of X
    FieldElement from_coeffs(std::vector<Coeff> c) const;
    FieldElement from_index(std::uint64_t index) const;  // base-p digits as coefficients

    // A primitive k-th root of unity (k | p^f - 1), chosen by a seeded search.
    FieldElement primitive_root_of_unity(const Natural& k) const;
    // All k-th roots of unity as successive powers of the primitive one.
    // Throws CapExceeded("max_unity_enum") when k > cap.
    std::vector<FieldElement> roots_of_unity(const Natural& k,
                                             std::uint64_t cap = Caps{}.max_unity_enum) const;

    // Raw kernels on coefficient arrays of length f. Output may alias input.
    void add(const Coeff* a, const Coeff* b, Coeff* out) const;
    void sub(const Coeff* a, const Coeff* b, Coeff* out) const;
    void mul(const Coeff* a, const Coeff* b, Coeff* out) const;
    void frobenius1(const Coeff* a, Coeff* out) const;
    Coeff trace(const Coeff* a) const;

private:
    FieldCtx() = default;

    std::uint64_t p_ = 2;
    unsigned f_ = 1;
    std::uint64_t seed_ = 0;
    std::vector<Coeff> modulus_;
    Natural unit_order_;
    std::vector<Coeff> frob_;   // row k: X^{k p} mod P
    std::vector<Coeff> trace_;  // trace of X^k
};

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(std::shared_ptr<const FieldCtx> ctx, std::vector<FieldCtx::Coeff> c);

    const FieldCtx& ctx() const { return *ctx_; }
    const std::shared_ptr<const FieldCtx>& ctx_ptr() const { return ctx_; }
    const std::vector<FieldCtx::Coeff>& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_one() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement pow(const Natural& k) const;
    FieldElement inv() const;  // throws std::domain_error on zero
    FieldElement frobenius(unsigned k) const;
    std::uint64_t trace() const;                 // via the precomputed trace functional
    std::uint64_t trace_by_frobenius() const;    // sum of conjugates, asserted to be constant
    std::optional<std::uint64_t> in_prime_subfield() const;
    std::uint64_t index() const;  // inverse of FieldCtx::from_index
    std::string str() const;

    friend bool operator==(const FieldElement& a, const FieldElement& b);
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

private:
    void same_owner(const FieldElement& o) const;

    std::shared_ptr<const FieldCtx> ctx_;
    std::vector<FieldCtx::Coeff> c_;
};

}  // namespace lee
