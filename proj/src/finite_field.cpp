#include "leecheck/finite_field.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace lee {

namespace {

using Coeff = FieldCtx::Coeff;
using Poly = std::vector<Coeff>;  // little-endian coefficients

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Coeff inv_mod(Coeff a, Coeff p) {
    Natural r;
    Natural an = from_u64(a), pn = from_u64(p);
    if (mpz_invert(r.get_mpz_t(), an.get_mpz_t(), pn.get_mpz_t()) == 0)
        throw std::domain_error("no inverse mod p");
    return to_u64(r);
}

// Remainder of a modulo b (b nonzero, any leading coefficient).
Poly poly_rem(Poly a, const Poly& b, Coeff p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    const Coeff lead_inv = inv_mod(b.back(), p);
    while (a.size() > db) {
        const std::size_t shift = a.size() - 1 - db;
        const Coeff c = a.back() * lead_inv % p;
        for (std::size_t j = 0; j <= db; ++j)
            a[shift + j] = (a[shift + j] + (p - b[j] * c % p)) % p;
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, Coeff p) {
    if (a.empty() || b.empty()) return {};
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    return poly_rem(std::move(prod), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, Coeff p) {
    Poly r{1};
    base = poly_rem(std::move(base), m, p);
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, m, p);
        e >>= 1;
        if (e) base = poly_mulmod(base, base, m, p);
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, Coeff p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Rabin's test.
bool irreducible(const Poly& m, Coeff p) {
    const unsigned f = static_cast<unsigned>(m.size() - 1);
    if (f == 1) return true;
    std::vector<unsigned> prime_divisors;
    for (unsigned q = 2, r = f; q <= r; ++q) {
        if (r % q == 0) {
            prime_divisors.push_back(q);
            while (r % q == 0) r /= q;
        }
    }
    std::vector<Poly> frob_powers(f + 1);  // X^{p^i} mod m
    frob_powers[0] = poly_rem(Poly{0, 1}, m, p);
    for (unsigned i = 1; i <= f; ++i) frob_powers[i] = poly_powmod(frob_powers[i - 1], p, m, p);
    Poly x = poly_rem(Poly{0, 1}, m, p);
    if (frob_powers[f] != x) return false;
    for (unsigned q : prime_divisors) {
        Poly h = frob_powers[f / q];
        h.resize(std::max<std::size_t>(h.size(), 2), 0);
        h[1] = (h[1] + p - 1) % p;
        trim(h);
        if (h.empty()) return false;
        Poly g = poly_gcd(h, m, p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace

std::shared_ptr<const FieldCtx> FieldCtx::build(std::uint64_t p, unsigned f, std::uint64_t seed,
                                                std::uint64_t max_degree) {
    if (f < 1) throw std::invalid_argument("field degree must be >= 1");
    if (f > max_degree)
        throw CapExceeded("max_field_degree",
                          "degree " + std::to_string(f) + " > " + std::to_string(max_degree));
    if (p >= (1ULL << 32) || !is_prime(from_u64(p)))
        throw std::invalid_argument("field characteristic must be a prime below 2^32");

    std::shared_ptr<FieldCtx> ctx(new FieldCtx());
    ctx->p_ = p;
    ctx->f_ = f;
    ctx->seed_ = seed;
    Natural q;
    mpz_ui_pow_ui(q.get_mpz_t(), p, f);
    ctx->unit_order_ = q - 1;

    if (f == 1) {
        ctx->modulus_ = {0, 1};
    } else {
        std::mt19937_64 rng(mix_seed(seed, p * 1000003ULL + f));
        std::uniform_int_distribution<Coeff> dist(0, p - 1);
        Poly m(f + 1);
        do {
            for (unsigned i = 0; i < f; ++i) m[i] = dist(rng);
            m[f] = 1;
        } while (m[0] == 0 || !irreducible(m, p));
        ctx->modulus_ = m;
    }

    // Frobenius rows: X^{k p} mod P.
    ctx->frob_.assign(static_cast<std::size_t>(f) * f, 0);
    Poly xp = poly_powmod(Poly{0, 1}, p, ctx->modulus_, p);
    Poly row{1};
    for (unsigned k = 0; k < f; ++k) {
        for (std::size_t j = 0; j < row.size(); ++j) ctx->frob_[k * f + j] = row[j];
        row = poly_mulmod(row, xp, ctx->modulus_, p);
    }
    ctx->trace_.assign(f, 0);
    for (unsigned k = 0; k < f; ++k) {
        std::vector<Coeff> basis(f, 0);
        basis[k] = 1;
        FieldElement e(ctx, basis);
        ctx->trace_[k] = e.trace_by_frobenius();
    }
    return ctx;
}

void FieldCtx::add(const Coeff* a, const Coeff* b, Coeff* out) const {
    for (unsigned i = 0; i < f_; ++i) {
        Coeff s = a[i] + b[i];
        out[i] = s >= p_ ? s - p_ : s;
    }
}

void FieldCtx::sub(const Coeff* a, const Coeff* b, Coeff* out) const {
    for (unsigned i = 0; i < f_; ++i) out[i] = a[i] >= b[i] ? a[i] - b[i] : a[i] + p_ - b[i];
}

void FieldCtx::mul(const Coeff* a, const Coeff* b, Coeff* out) const {
    const unsigned f = f_;
    if (f == 1) {
        out[0] = a[0] * b[0] % p_;
        return;
    }
    thread_local std::vector<unsigned __int128> acc;
    acc.assign(2 * f - 1, 0);
    for (unsigned i = 0; i < f; ++i) {
        if (a[i] == 0) continue;
        for (unsigned j = 0; j < f; ++j) acc[i + j] += static_cast<unsigned __int128>(a[i] * b[j]);
    }
    thread_local std::vector<Coeff> t;
    t.resize(2 * f - 1);
    for (unsigned i = 0; i < 2 * f - 1; ++i) t[i] = static_cast<Coeff>(acc[i] % p_);
    const Coeff* m = modulus_.data();
    for (unsigned i = 2 * f - 2; i >= f; --i) {
        const Coeff c = t[i];
        if (c == 0) continue;
        const unsigned base = i - f;
        for (unsigned j = 0; j < f; ++j) {
            const Coeff s = c * m[j] % p_;
            t[base + j] = t[base + j] >= s ? t[base + j] - s : t[base + j] + p_ - s;
        }
    }
    std::copy(t.begin(), t.begin() + f, out);
}

void FieldCtx::frobenius1(const Coeff* a, Coeff* out) const {
    const unsigned f = f_;
    thread_local std::vector<unsigned __int128> acc;
    acc.assign(f, 0);
    for (unsigned k = 0; k < f; ++k) {
        if (a[k] == 0) continue;
        const Coeff* row = frob_.data() + static_cast<std::size_t>(k) * f;
        for (unsigned j = 0; j < f; ++j) acc[j] += static_cast<unsigned __int128>(a[k] * row[j]);
    }
    for (unsigned j = 0; j < f; ++j) out[j] = static_cast<Coeff>(acc[j] % p_);
}

FieldCtx::Coeff FieldCtx::trace(const Coeff* a) const {
    unsigned __int128 acc = 0;
    for (unsigned k = 0; k < f_; ++k) acc += static_cast<unsigned __int128>(a[k] * trace_[k]);
    return static_cast<Coeff>(acc % p_);
}

FieldElement FieldCtx::zero() const { return FieldElement(shared_from_this(), Poly(f_, 0)); }

FieldElement FieldCtx::one() const { return constant(1); }

FieldElement FieldCtx::constant(std::int64_t c) const {
    Poly v(f_, 0);
    std::int64_t r = c % static_cast<std::int64_t>(p_);
    v[0] = static_cast<Coeff>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
    return FieldElement(shared_from_this(), v);
}

FieldElement FieldCtx::generator() const {
    Poly v(f_, 0);
    if (f_ == 1) v[0] = (p_ - modulus_[0]) % p_;
    else v[1] = 1;
    return FieldElement(shared_from_this(), v);
}

FieldElement FieldCtx::from_coeffs(std::vector<Coeff> c) const {
    if (c.size() != f_) throw std::invalid_argument("coefficient count must equal field degree");
    for (auto& x : c) x %= p_;
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement FieldCtx::from_index(std::uint64_t index) const {
    Poly v(f_, 0);
    for (unsigned i = 0; i < f_; ++i) {
        v[i] = index % p_;
        index /= p_;
    }
    return FieldElement(shared_from_this(), v);
}

FieldElement FieldCtx::primitive_root_of_unity(const Natural& k) const {
    if (k < 1 || unit_order_ % k != 0)
        throw std::invalid_argument(k.get_str() + " does not divide " + unit_order_.get_str());
    if (k == 1) return one();
    const Natural cofactor = unit_order_ / k;
    const Factorization kf = factorize(k);
    std::mt19937_64 rng(mix_seed(seed_, mpz_get_ui(k.get_mpz_t()) ^ (p_ << 20) ^ f_));
    std::uniform_int_distribution<Coeff> dist(0, p_ - 1);
    for (;;) {
        Poly g(f_);
        for (auto& c : g) c = dist(rng);
        FieldElement z = FieldElement(shared_from_this(), g).pow(cofactor);
        if (z.is_zero()) continue;
        bool exact = true;
        for (const auto& q : kf.factors) {
            if (z.pow(k / q.prime).is_one()) {
                exact = false;
                break;
            }
        }
        if (exact) return z;
    }
}

std::vector<FieldElement> FieldCtx::roots_of_unity(const Natural& k, std::uint64_t cap) const {
    if (k > from_u64(cap))
        throw CapExceeded("max_unity_enum", k.get_str() + " > " + std::to_string(cap));
    FieldElement z = primitive_root_of_unity(k);
    const std::uint64_t count = to_u64(k);
    std::vector<FieldElement> out;
    out.reserve(count);
    FieldElement cur = one();
    for (std::uint64_t i = 0; i < count; ++i) {
        out.push_back(cur);
        cur = cur * z;
    }
    return out;
}

FieldElement::FieldElement(std::shared_ptr<const FieldCtx> ctx, std::vector<FieldCtx::Coeff> c)
    : ctx_(std::move(ctx)), c_(std::move(c)) {}

void FieldElement::same_owner(const FieldElement& o) const {
    if (!ctx_ || ctx_ != o.ctx_) throw std::invalid_argument("field elements from different contexts");
}

bool FieldElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](Coeff x) { return x == 0; });
}

bool FieldElement::is_one() const {
    return !c_.empty() && c_[0] == 1 && std::all_of(c_.begin() + 1, c_.end(), [](Coeff x) { return x == 0; });
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    same_owner(o);
    Poly r(c_.size());
    ctx_->add(c_.data(), o.c_.data(), r.data());
    return FieldElement(ctx_, std::move(r));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    same_owner(o);
    Poly r(c_.size());
    ctx_->sub(c_.data(), o.c_.data(), r.data());
    return FieldElement(ctx_, std::move(r));
}

FieldElement FieldElement::operator-() const { return ctx_->zero() - *this; }

FieldElement FieldElement::operator*(const FieldElement& o) const {
    same_owner(o);
    Poly r(c_.size());
    ctx_->mul(c_.data(), o.c_.data(), r.data());
    return FieldElement(ctx_, std::move(r));
}

FieldElement FieldElement::pow(const Natural& k) const {
    if (sgn(k) < 0) return inv().pow(-k);
    FieldElement result = ctx_->one();
    const std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = result * result;
        if (mpz_tstbit(k.get_mpz_t(), i)) result = result * *this;
    }
    return result;
}

FieldElement FieldElement::inv() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return pow(ctx_->unit_order() - 1);
}

FieldElement FieldElement::frobenius(unsigned k) const {
    Poly r = c_;
    for (unsigned i = 0; i < k; ++i) ctx_->frobenius1(r.data(), r.data());
    return FieldElement(ctx_, std::move(r));
}

std::uint64_t FieldElement::trace() const { return ctx_->trace(c_.data()); }

std::uint64_t FieldElement::trace_by_frobenius() const {
    FieldElement sum = ctx_->zero();
    FieldElement cur = *this;
    for (unsigned k = 0; k < ctx_->degree(); ++k) {
        sum = sum + cur;
        cur = cur.frobenius(1);
    }
    auto r = sum.in_prime_subfield();
    if (!r) throw std::logic_error("trace left the prime subfield");
    return *r;
}

std::optional<std::uint64_t> FieldElement::in_prime_subfield() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return std::nullopt;
    return c_.empty() ? 0 : c_[0];
}

std::uint64_t FieldElement::index() const {
    std::uint64_t r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * ctx_->p() + c_[i];
    return r;
}

std::string FieldElement::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
    os << ']';
    return os.str();
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    a.same_owner(b);
    return a.c_ == b.c_;
}

}  // namespace lee
