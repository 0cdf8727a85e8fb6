#include "orbit_common.hpp"

#include <algorithm>
#include <stdexcept>

namespace lee::detail {

std::vector<bool> generated_units(std::uint64_t v, const std::vector<std::uint64_t>& factors) {
    std::vector<bool> seen(v, false);
    std::vector<std::uint64_t> stack{1 % v};
    seen[1 % v] = true;
    while (!stack.empty()) {
        const std::uint64_t j = stack.back();
        stack.pop_back();
        for (auto t : factors) {
            const std::uint64_t k = static_cast<std::uint64_t>((static_cast<unsigned __int128>(j) * (t % v)) % v);
            if (!seen[k]) {
                seen[k] = true;
                stack.push_back(k);
            }
        }
    }
    return seen;
}

OrbitSetup make_orbit_setup(std::uint64_t v, std::uint64_t p, const Caps& caps) {
    OrbitSetup s;
    s.v = v;
    s.p = p;
    s.f = static_cast<unsigned>(to_u64(mult_order(from_u64(p), from_u64(v))));
    const bool minus_one_in_p = s.f % 2 == 0 && mod_pow(from_u64(p), from_u64(s.f / 2), from_u64(v)) == v - 1;
    s.e = minus_one_in_p ? s.f / 2 : s.f;
    Natural sub;
    mpz_ui_pow_ui(sub.get_mpz_t(), p, s.e);
    if (sub > from_u64(caps.search_node_budget))
        throw CapExceeded("search_node_budget", "subfield of size " + sub.get_str());
    s.subfield_size = to_u64(sub);
    s.ctx = FieldCtx::build(p, s.f, caps.seed, caps.max_field_degree);
    s.beta = s.ctx->primitive_root_of_unity(from_u64(v));
    s.gamma = s.ctx->primitive_root_of_unity(sub - 1);
    return s;
}

void for_each_subfield_element(const OrbitSetup& s,
                               const std::function<bool(std::uint64_t, const FieldElement&)>& visit) {
    if (!visit(0, s.ctx->zero())) return;
    FieldElement cur = s.ctx->one();
    for (std::uint64_t k = 1; k < s.subfield_size; ++k) {
        if (!visit(k, cur)) return;
        cur = cur * s.gamma;
    }
}

std::vector<FieldElement> inversion_coefficients(const OrbitSetup& s, const std::vector<FieldElement>& values,
                                                 std::uint64_t aug) {
    const FieldCtx& f = *s.ctx;
    if (values.size() + 1 != s.v) throw std::invalid_argument("need V(j) for every nonzero j");
    const FieldElement inv_v = f.constant(static_cast<std::int64_t>(s.v % s.p)).inv();
    const FieldElement beta_inv = s.beta.inv();
    const FieldElement base_aug = f.constant(static_cast<std::int64_t>(aug % s.p));
    std::vector<FieldElement> out;
    out.reserve(s.v);
    FieldElement step = f.one();  // beta^{-g}
    for (std::uint64_t g = 0; g < s.v; ++g) {
        FieldElement acc = base_aug;
        FieldElement z = step;  // beta^{-j g}
        for (std::uint64_t j = 1; j < s.v; ++j) {
            acc = acc + values[j - 1] * z;
            z = z * step;
        }
        out.push_back(acc * inv_v);
        step = step * beta_inv;
    }
    return out;
}

}  // namespace lee::detail

namespace lee::detail {

bool build_table(const OrbitSetup& s, const FieldCtx::Coeff* tau0, const std::vector<UnitMap>& maps,
                 std::vector<FieldCtx::Coeff>& table, std::vector<char>& known) {
    const unsigned f = s.f;
    table.resize(static_cast<std::size_t>(s.v) * f);
    known.assign(s.v, 0);
    thread_local std::vector<FieldCtx::Coeff> scratch;
    scratch.resize(f);
    thread_local std::vector<std::uint64_t> stack;
    stack.clear();
    std::copy(tau0, tau0 + f, table.begin() + f);
    known[1 % s.v] = 1;
    stack.push_back(1 % s.v);
    while (!stack.empty()) {
        const std::uint64_t j = stack.back();
        stack.pop_back();
        for (const auto& m : maps) {
            const std::uint64_t k = static_cast<std::uint64_t>(static_cast<unsigned __int128>(j) * m.factor % s.v);
            m.apply(table.data() + j * f, scratch.data());
            FieldCtx::Coeff* dst = table.data() + k * f;
            if (known[k]) {
                if (!std::equal(scratch.begin(), scratch.end(), dst)) return false;
            } else {
                std::copy(scratch.begin(), scratch.end(), dst);
                known[k] = 1;
                stack.push_back(k);
            }
        }
    }
    return true;
}

}  // namespace lee::detail
