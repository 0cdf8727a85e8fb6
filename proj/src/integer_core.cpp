#include "leecheck/integer_core.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace lee {

Natural Factorization::recompose() const {
    Natural r = 1;
    for (const auto& f : factors) {
        Natural pe;
        mpz_pow_ui(pe.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
        r *= pe;
    }
    return r;
}

std::vector<Natural> Factorization::primes() const {
    std::vector<Natural> out;
    out.reserve(factors.size());
    for (const auto& f : factors) out.push_back(f.prime);
    return out;
}

bool Factorization::has_prime(const Natural& q) const {
    return std::any_of(factors.begin(), factors.end(),
                       [&](const PrimePower& f) { return f.prime == q; });
}

const Natural& MaybeInfinite::value() const {
    if (!value_) throw std::logic_error("value of infinity");
    return *value_;
}

std::string MaybeInfinite::str() const { return value_ ? value_->get_str() : "inf"; }

bool operator==(const MaybeInfinite& a, const MaybeInfinite& b) {
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
    return *a.value_ == *b.value_;
}

bool operator<(const MaybeInfinite& a, const MaybeInfinite& b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return *a.value_ < *b.value_;
}

std::uint64_t to_u64(const Natural& x) {
    if (sgn(x) < 0 || mpz_sizeinbase(x.get_mpz_t(), 2) > 64)
        throw std::overflow_error("value does not fit in 64 bits: " + x.get_str());
    std::uint64_t r = 0;
    mpz_export(&r, nullptr, -1, sizeof r, 0, 0, x.get_mpz_t());
    return r;
}

Natural from_u64(std::uint64_t x) {
    Natural r;
    mpz_import(r.get_mpz_t(), 1, -1, sizeof x, 0, 0, &x);
    return r;
}

Natural mod(const Integer& a, const Natural& modulus) {
    Natural r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

Natural mod_pow(const Natural& base, const Natural& exponent, const Natural& modulus) {
    if (modulus == 1) return 0;
    Natural r;
    Natural b = mod(base, modulus);
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

Natural gcd(const Natural& a, const Natural& b) {
    Natural r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

namespace {

const unsigned kSmallPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

bool miller_rabin_round(const Natural& n, const Natural& d, unsigned s, const Natural& a) {
    Natural x = mod_pow(a, d, n);
    Natural nm1 = n - 1;
    if (x == 1 || x == nm1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == nm1) return true;
        if (x == 1) return false;
    }
    return false;
}

}  // namespace

bool is_prime(const Natural& n, bool* probabilistic, std::uint64_t seed) {
    if (probabilistic) *probabilistic = false;
    if (n < 2) return false;
    for (unsigned p : kSmallPrimes) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Natural d = n - 1;
    unsigned s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d /= 2;
        ++s;
    }
    for (unsigned a : kSmallPrimes)
        if (!miller_rabin_round(n, d, s, a)) return false;
    static const Natural deterministic_limit("3317044064679887385961981");
    if (n < deterministic_limit) return true;

    if (probabilistic) *probabilistic = true;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(from_u64(mix_seed(seed, mpz_get_ui(n.get_mpz_t()))));
    for (int round = 0; round < 64; ++round) {
        Natural a = rng.get_z_range(n - 3) + 2;
        if (!miller_rabin_round(n, d, s, a)) return false;
    }
    return true;
}

namespace {

// Pollard-Brent; returns a nontrivial divisor of composite n.
Natural pollard_brent(const Natural& n, std::uint64_t& budget, std::mt19937_64& rng) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    std::uniform_int_distribution<std::uint64_t> dist(1, ~0ULL);
    for (;;) {
        Natural y = mod(from_u64(dist(rng)), n);
        Natural c = mod(from_u64(dist(rng)), n - 1) + 1;
        const std::uint64_t m = 128;
        Natural g = 1, r = 1, q = 1, x, ys;
        while (g == 1) {
            x = y;
            for (Natural i = 0; i < r; ++i) y = (y * y + c) % n;
            Natural k = 0;
            while (k < r && g == 1) {
                ys = y;
                std::uint64_t lim = std::min<std::uint64_t>(m, to_u64(r - k));
                for (std::uint64_t i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    Natural diff = x > y ? Natural(x - y) : Natural(y - x);
                    q = q * diff % n;
                }
                if (budget < lim) throw CapExceeded("factor_budget", "factorizing " + n.get_str());
                budget -= lim;
                g = gcd(q, n);
                k += lim;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = (ys * ys + c) % n;
                Natural diff = x > ys ? Natural(x - ys) : Natural(ys - x);
                g = gcd(diff, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split(const Natural& n, std::map<Natural, unsigned>& out, std::uint64_t& budget,
           std::mt19937_64& rng, bool& probabilistic, std::uint64_t seed) {
    if (n == 1) return;
    bool prob = false;
    if (is_prime(n, &prob, seed)) {
        probabilistic = probabilistic || prob;
        ++out[n];
        return;
    }
    if (auto r = is_perfect_square(n)) {
        split(*r, out, budget, rng, probabilistic, seed);
        split(*r, out, budget, rng, probabilistic, seed);
        return;
    }
    Natural d = pollard_brent(n, budget, rng);
    split(d, out, budget, rng, probabilistic, seed);
    split(n / d, out, budget, rng, probabilistic, seed);
}

}  // namespace

Factorization factorize(const Natural& n, std::uint64_t budget, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("factorize requires n >= 1");
    Factorization result;
    result.n = n;
    std::map<Natural, unsigned> found;
    Natural rest = n;
    const unsigned long trial_bound = 1 << 12;
    for (unsigned long p = 2; p < trial_bound; p += (p == 2 ? 1 : 2)) {
        if (rest == 1) break;
        if (Natural(p) * p > rest) break;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            rest /= p;
            ++found[Natural(p)];
        }
    }
    if (rest > 1) {
        if (rest < Natural(trial_bound) * trial_bound) {
            ++found[rest];
        } else {
            std::mt19937_64 rng(mix_seed(seed, mpz_get_ui(n.get_mpz_t())));
            split(rest, found, budget, rng, result.probabilistic, seed);
        }
    }
    for (auto& [p, e] : found) result.factors.push_back({p, e});
    return result;
}

std::optional<Natural> is_perfect_square(const Natural& n) {
    if (sgn(n) < 0) return std::nullopt;
    Natural r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    if (r * r == n) return r;
    return std::nullopt;
}

Natural mult_order_in(const Natural& a, const Natural& modulus, const Factorization& group_order) {
    if (modulus < 2) throw std::domain_error("mult_order requires modulus >= 2");
    Natural b = mod(a, modulus);
    if (gcd(b, modulus) != 1)
        throw std::domain_error("mult_order: " + a.get_str() + " not coprime to " + modulus.get_str());
    Natural order = group_order.n;
    for (const auto& f : group_order.factors) {
        for (unsigned i = 0; i < f.exponent; ++i) {
            Natural cand = order / f.prime;
            if (mod_pow(b, cand, modulus) != 1) break;
            order = cand;
        }
    }
    return order;
}

Natural mult_order(const Natural& a, const Natural& modulus) {
    if (modulus < 2) throw std::domain_error("mult_order requires modulus >= 2");
    Factorization m = factorize(modulus);
    // Euler phi, assembled as a factorization.
    std::map<Natural, unsigned> phi;
    for (const auto& f : m.factors) {
        if (f.exponent > 1) phi[f.prime] += f.exponent - 1;
        for (const auto& g : factorize(f.prime - 1).factors) phi[g.prime] += g.exponent;
    }
    Factorization phi_fac;
    phi_fac.n = 1;
    for (auto& [p, e] : phi) {
        phi_fac.factors.push_back({p, e});
    }
    phi_fac.n = phi_fac.recompose();
    return mult_order_in(a, modulus, phi_fac);
}

namespace {

struct LimbHash {
    std::size_t operator()(const Natural& x) const {
        return mpz_size(x.get_mpz_t()) ? mpz_getlimbn(x.get_mpz_t(), 0) : 0;
    }
};

}  // namespace

std::optional<Natural> discrete_log_bounded(const Natural& base, const Natural& target,
                                            const Natural& modulus, const Natural& bound) {
    const Natural b = mod(base, modulus);
    const Natural t = mod(target, modulus);
    if (sgn(bound) < 0) return std::nullopt;
    const Natural span = bound + 1;
    Natural step;
    mpz_sqrt(step.get_mpz_t(), span.get_mpz_t());
    if (step * step < span) step += 1;
    const std::uint64_t m = to_u64(step);

    std::unordered_map<Natural, std::uint64_t, LimbHash> baby;
    baby.reserve(m * 2);
    Natural cur = 1 % modulus;
    for (std::uint64_t j = 0; j < m; ++j) {
        baby.emplace(cur, j);
        cur = cur * b % modulus;
    }
    // cur = b^m; the giant step multiplies by its inverse.
    Natural giant;
    if (mpz_invert(giant.get_mpz_t(), cur.get_mpz_t(), modulus.get_mpz_t()) == 0) return std::nullopt;
    Natural gamma = t;
    for (std::uint64_t i = 0; i < m; ++i) {
        auto it = baby.find(gamma);
        if (it != baby.end()) {
            Natural j = Natural(from_u64(i)) * m + from_u64(it->second);
            if (j <= bound) return j;
            return std::nullopt;
        }
        gamma = gamma * giant % modulus;
    }
    return std::nullopt;
}

std::optional<Natural> discrete_log(const Natural& base, const Natural& target,
                                    const Natural& modulus, const Natural& order) {
    if (order < 1) return std::nullopt;
    return discrete_log_bounded(base, target, modulus, order - 1);
}

bool solvable_shifted(const MaybeInfinite& a, const Natural& b, const Integer& t) {
    if (b < 1) throw std::invalid_argument("solvable_shifted requires b >= 1");
    if (a.is_infinite() || sgn(t) <= 0) return false;
    const Natural& av = a.value();
    if (av < 1 || av > t) return false;
    Natural g = gcd(av, b);
    if (t % g != 0) return false;
    Natural a1 = av / g, b1 = b / g, t1 = t / g;
    Natural k0;
    if (b1 == 1) {
        k0 = 1;
    } else {
        Natural inv;
        mpz_invert(inv.get_mpz_t(), a1.get_mpz_t(), b1.get_mpz_t());
        k0 = mod(t1 * inv, b1);
        if (k0 == 0) k0 = b1;
    }
    return av * k0 <= t;
}

}  // namespace lee
