#include "leecheck/group_ring.hpp"

#include <algorithm>
#include <stdexcept>

namespace lee {

AbelianGroup::AbelianGroup(std::vector<std::uint64_t> cyclic_orders) : orders_(std::move(cyclic_orders)) {
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        if (orders_[i] < 2) throw std::invalid_argument("cyclic factor orders must be >= 2");
        if (i && orders_[i] % orders_[i - 1] != 0)
            throw std::invalid_argument("cyclic orders must form a divisibility chain");
        order_ *= orders_[i];
    }
}

std::vector<std::uint64_t> AbelianGroup::components(std::uint64_t g) const {
    std::vector<std::uint64_t> c(orders_.size());
    for (std::size_t i = orders_.size(); i-- > 0;) {
        c[i] = g % orders_[i];
        g /= orders_[i];
    }
    return c;
}

std::uint64_t AbelianGroup::element(const std::vector<std::int64_t>& comps) const {
    if (comps.size() != orders_.size()) throw std::invalid_argument("component count mismatch");
    std::uint64_t g = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        const auto m = static_cast<std::int64_t>(orders_[i]);
        const std::int64_t r = ((comps[i] % m) + m) % m;
        g = g * orders_[i] + static_cast<std::uint64_t>(r);
    }
    return g;
}

std::uint64_t AbelianGroup::add(std::uint64_t a, std::uint64_t b) const {
    if (orders_.size() == 1) {
        const std::uint64_t s = a + b;
        return s >= order_ ? s - order_ : s;
    }
    std::uint64_t g = 0, stride = 1;
    for (std::size_t i = orders_.size(); i-- > 0;) {
        const std::uint64_t m = orders_[i];
        const std::uint64_t s = (a % m + b % m) % m;
        g += s * stride;
        stride *= m;
        a /= m;
        b /= m;
    }
    return g;
}

std::uint64_t AbelianGroup::neg(std::uint64_t a) const { return scale(a, -1); }

std::uint64_t AbelianGroup::scale(std::uint64_t a, std::int64_t t) const {
    std::uint64_t g = 0, stride = 1;
    for (std::size_t i = orders_.size(); i-- > 0;) {
        const auto m = static_cast<std::int64_t>(orders_[i]);
        const auto x = static_cast<__int128>(a % orders_[i]);
        __int128 s = (x * t) % m;
        if (s < 0) s += m;
        g += static_cast<std::uint64_t>(s) * stride;
        stride *= orders_[i];
        a /= orders_[i];
    }
    return g;
}

std::string AbelianGroup::str() const {
    if (orders_.empty()) return "C1";
    std::string s;
    for (std::size_t i = 0; i < orders_.size(); ++i) s += (i ? "xC" : "C") + std::to_string(orders_[i]);
    return s;
}

GroupRingElement::GroupRingElement(AbelianGroup g) : group_(std::move(g)), coeffs_(group_.order()) {}

GroupRingElement::GroupRingElement(AbelianGroup g, std::vector<Integer> coeffs)
    : group_(std::move(g)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != group_.order()) throw std::invalid_argument("coefficient count must equal group order");
}

GroupRingElement GroupRingElement::identity(const AbelianGroup& g) {
    GroupRingElement e(g);
    e.coeffs_[0] = 1;
    return e;
}

GroupRingElement GroupRingElement::all_ones(const AbelianGroup& g) {
    return GroupRingElement(g, std::vector<Integer>(g.order(), Integer(1)));
}

Integer GroupRingElement::coefficient_sum() const {
    Integer s = 0;
    for (const auto& c : coeffs_) s += c;
    return s;
}

bool GroupRingElement::is_zero_one() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c == 0 || c == 1; });
}

void GroupRingElement::same_group(const GroupRingElement& o) const {
    if (!(group_ == o.group_)) throw std::invalid_argument("group ring elements over different groups");
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
    same_group(o);
    GroupRingElement r = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
    return r;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const {
    same_group(o);
    GroupRingElement r = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] -= o.coeffs_[i];
    return r;
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
    same_group(o);
    GroupRingElement r(group_);
    const std::uint64_t m = group_.order();
    for (std::uint64_t h = 0; h < m; ++h) {
        if (coeffs_[h] == 0) continue;
        for (std::uint64_t g = 0; g < m; ++g) {
            if (o.coeffs_[g] == 0) continue;
            r.coeffs_[group_.add(h, g)] += coeffs_[h] * o.coeffs_[g];
        }
    }
    return r;
}

GroupRingElement GroupRingElement::operator*(const Integer& k) const {
    GroupRingElement r = *this;
    for (auto& c : r.coeffs_) c *= k;
    return r;
}

GroupRingElement ring_add(const GroupRingElement& a, const GroupRingElement& b) { return a + b; }
GroupRingElement ring_mul(const GroupRingElement& a, const GroupRingElement& b) { return a * b; }

GroupRingElement power_map(const GroupRingElement& a, std::int64_t t) {
    const AbelianGroup& g = a.group();
    GroupRingElement r(g);
    for (std::uint64_t h = 0; h < g.order(); ++h)
        if (a[h] != 0) r[g.scale(h, t)] += a[h];
    return r;
}

GroupRingElement build_T(const AbelianGroup& group, const std::vector<std::uint64_t>& generators) {
    GroupRingElement t = GroupRingElement::identity(group);
    for (auto a : generators) {
        if (a >= group.order()) throw std::invalid_argument("generator outside the group");
        t[a] += 1;
        t[group.neg(a)] += 1;
    }
    return t;
}

namespace {

IdentityCheck compare(const GroupRingElement& lhs, const GroupRingElement& rhs) {
    IdentityCheck r;
    for (std::uint64_t g = 0; g < lhs.group().order(); ++g) {
        if (lhs[g] != rhs[g]) {
            r.first_failure = g;
            r.lhs = lhs[g];
            r.rhs = rhs[g];
            return r;
        }
    }
    r.holds = true;
    return r;
}

}  // namespace

IdentityCheck verify_r2_identity(const GroupRingElement& t, std::uint64_t n) {
    const AbelianGroup& g = t.group();
    const Natural expected = Natural(2) * n * n + 2 * n + 1;
    if (from_u64(g.order()) != expected) throw std::invalid_argument("group order is not 2n^2+2n+1");
    GroupRingElement lhs = t * t;
    GroupRingElement rhs = GroupRingElement::all_ones(g) * Integer(2) - power_map(t, 2) +
                           GroupRingElement::identity(g) * Integer(from_u64(2 * n));
    return compare(lhs, rhs);
}

IdentityCheck verify_r3_identity(const GroupRingElement& t, std::uint64_t n) {
    const AbelianGroup& g = t.group();
    const Natural nn = from_u64(n);
    const Natural expected = 1 + 6 * nn * nn + 4 * nn * (nn - 1) * (nn - 2) / 3;
    if (from_u64(g.order()) != expected) throw std::invalid_argument("group order is not the radius-3 sphere size");
    GroupRingElement lhs = t * t * t;
    GroupRingElement rhs = GroupRingElement::all_ones(g) * Integer(6) - power_map(t, 2) * t * Integer(3) -
                           power_map(t, 3) * Integer(2) + t * Integer(6 * nn);
    return compare(lhs, rhs);
}

AuxField make_aux_field(std::uint64_t w, std::uint64_t seed, std::uint64_t budget) {
    if (w < 1) throw std::invalid_argument("character group order must be >= 1");
    for (std::uint64_t k = 1; k <= budget; ++k) {
        const std::uint64_t q = 1 + k * w;
        if (q < 3) continue;
        if (q >= (1ULL << 32)) break;
        if (is_prime(from_u64(q))) {
            AuxField aux;
            aux.field = FieldCtx::build(q, 1, seed);
            aux.w = w;
            aux.zeta = aux.field->primitive_root_of_unity(from_u64(w));
            return aux;
        }
    }
    throw CapExceeded("factor_budget", "no auxiliary prime q = 1 mod " + std::to_string(w));
}

FieldElement char_eval(const GroupRingElement& a, std::uint64_t character, const AuxField& aux) {
    const AbelianGroup& g = a.group();
    if (!g.is_cyclic() || g.order() != aux.w)
        throw std::invalid_argument("characters are evaluated on the cyclic group of order w");
    const FieldCtx& f = *aux.field;
    const std::uint64_t q = f.p();
    const FieldElement step = aux.zeta.pow(from_u64(character % aux.w));
    FieldElement acc = f.zero();
    FieldElement z = f.one();
    for (std::uint64_t h = 0; h < g.order(); ++h) {
        const std::uint64_t c = to_u64(mod(a[h], from_u64(q)));
        if (c) acc = acc + z * f.constant(static_cast<std::int64_t>(c));
        z = z * step;
    }
    return acc;
}

std::vector<std::uint64_t> inverse_transform(const std::vector<FieldElement>& values, const AuxField& aux) {
    const FieldCtx& f = *aux.field;
    const std::uint64_t w = aux.w;
    if (values.size() != w) throw std::invalid_argument("need one value per character");
    const FieldElement inv_w = f.constant(static_cast<std::int64_t>(w % f.p())).inv();
    const FieldElement zeta_inv = aux.zeta.inv();
    std::vector<std::uint64_t> out(w);
    FieldElement base = f.one();  // zeta^{-h}
    for (std::uint64_t h = 0; h < w; ++h) {
        FieldElement acc = f.zero();
        FieldElement z = f.one();  // zeta^{-h c}
        for (std::uint64_t c = 0; c < w; ++c) {
            acc = acc + values[c] * z;
            z = z * base;
        }
        out[h] = *(acc * inv_w).in_prime_subfield();
        base = base * zeta_inv;
    }
    return out;
}

bool inversion_roundtrip(const GroupRingElement& a, const AuxField& aux) {
    std::vector<FieldElement> values;
    values.reserve(aux.w);
    for (std::uint64_t c = 0; c < aux.w; ++c) values.push_back(char_eval(a, c, aux));
    const std::vector<std::uint64_t> back = inverse_transform(values, aux);
    const Natural q = from_u64(aux.field->p());
    for (std::uint64_t h = 0; h < aux.w; ++h)
        if (from_u64(back[h]) != mod(a[h], q)) return false;
    return true;
}

}  // namespace lee
