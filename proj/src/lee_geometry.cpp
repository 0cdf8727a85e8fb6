#include "leecheck/lee_geometry.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace lee {

LeeVector::LeeVector(std::vector<std::int64_t> c, std::optional<std::uint64_t> m)
    : coords(std::move(c)), modulus(m) {
    if (modulus) {
        const auto mm = static_cast<std::int64_t>(*modulus);
        for (auto& x : coords) x = ((x % mm) + mm) % mm;
    }
}

std::uint64_t LeeVector::norm() const {
    return lee_distance(*this, LeeVector(std::vector<std::int64_t>(coords.size(), 0), modulus));
}

std::string LeeVector::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << coords[i];
    os << ')';
    if (modulus) os << " mod " << *modulus;
    return os.str();
}

Natural sphere_size(std::uint64_t n, std::uint64_t r) {
    Natural total = 0;
    for (std::uint64_t i = 0; i <= std::min(n, r); ++i) {
        Natural cn, cr, two;
        mpz_bin_uiui(cn.get_mpz_t(), n, i);
        mpz_bin_uiui(cr.get_mpz_t(), r, i);
        mpz_ui_pow_ui(two.get_mpz_t(), 2, i);
        total += two * cn * cr;
    }
    return total;
}

Natural group_order_r2(std::uint64_t n) {
    const Natural nn = from_u64(n);
    Natural v = 2 * nn * nn + 2 * nn + 1;
    if (v != sphere_size(n, 2)) throw std::logic_error("radius-2 order formula disagrees with sphere size");
    return v;
}

Natural group_order_r3(std::uint64_t n) {
    const Natural nn = from_u64(n);
    Natural v = 1 + 6 * nn * nn + Natural(4 * nn * (nn - 1) * (nn - 2)) / 3;
    if (v != sphere_size(n, 3)) throw std::logic_error("radius-3 order formula disagrees with sphere size");
    return v;
}

Natural moore_bound_abelian(std::uint64_t d, std::uint64_t k) { return sphere_size(d, k); }

namespace {

void enumerate_rec(unsigned n, int remaining, std::vector<std::int64_t>& cur, std::vector<LeeVector>& out) {
    if (cur.size() == n) {
        out.emplace_back(cur);
        return;
    }
    for (int x = -remaining; x <= remaining; ++x) {
        cur.push_back(x);
        enumerate_rec(n, remaining - std::abs(x), cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<LeeVector> enumerate_sphere(unsigned n, unsigned r, std::uint64_t cap) {
    const Natural size = sphere_size(n, r);
    if (size > from_u64(cap))
        throw CapExceeded("search_node_budget", "sphere of size " + size.get_str());
    std::vector<LeeVector> out;
    out.reserve(to_u64(size));
    std::vector<std::int64_t> cur;
    enumerate_rec(n, static_cast<int>(r), cur, out);
    return out;
}

std::uint64_t lee_distance(const LeeVector& x, const LeeVector& y) {
    if (x.coords.size() != y.coords.size() || x.modulus != y.modulus)
        throw std::invalid_argument("Lee distance between different ambient spaces");
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        std::uint64_t diff = static_cast<std::uint64_t>(std::llabs(x.coords[i] - y.coords[i]));
        if (x.modulus) diff = std::min(diff, *x.modulus - diff);
        d += diff;
    }
    return d;
}

std::uint64_t witness_image(const CodeWitness& w, const LeeVector& x) {
    std::uint64_t g = 0;
    for (std::size_t i = 0; i < x.coords.size(); ++i)
        g = w.group.add(g, w.group.scale(w.generators[i], x.coords[i]));
    return g;
}

WitnessCheck verify_witness(const CodeWitness& w) {
    if (w.generators.size() != w.n) throw std::invalid_argument("witness needs one generator per coordinate");
    if (from_u64(w.group.order()) != sphere_size(w.n, w.r))
        throw std::invalid_argument("group order differs from the sphere size");
    const std::vector<LeeVector> sphere = enumerate_sphere(w.n, w.r);
    std::vector<std::int64_t> owner(w.group.order(), -1);
    WitnessCheck result;
    for (std::size_t i = 0; i < sphere.size(); ++i) {
        const std::uint64_t g = witness_image(w, sphere[i]);
        if (owner[g] >= 0) {
            result.collision = std::make_pair(sphere[static_cast<std::size_t>(owner[g])], sphere[i]);
            return result;
        }
        owner[g] = static_cast<std::int64_t>(i);
    }
    result.ok = true;
    return result;
}

std::string render_tiling(const CodeWitness& w, int width, int height) {
    if (w.n != 2) throw std::invalid_argument("tiling pictures are two-dimensional");
    if (!verify_witness(w).ok) throw std::invalid_argument("not a perfect code witness");
    const std::vector<LeeVector> sphere = enumerate_sphere(2, w.r);
    std::vector<const LeeVector*> preimage(w.group.order(), nullptr);
    for (const auto& s : sphere) preimage[witness_image(w, s)] = &s;

    const auto order = static_cast<std::int64_t>(w.group.order());
    std::string out;
    for (int row = 0; row < height; ++row) {
        const std::int64_t y = height / 2 - row;
        for (int col = 0; col < width; ++col) {
            const std::int64_t x = col - width / 2;
            const LeeVector z({x, y});
            const LeeVector& s = *preimage[witness_image(w, z)];
            const std::int64_t cx = x - s.coords[0];
            const std::int64_t label = ((cx % order) + order) % order % 26;
            const bool center = s.coords[0] == 0 && s.coords[1] == 0;
            out += static_cast<char>((center ? 'A' : 'a') + label);
        }
        out += '\n';
    }
    return out;
}

}  // namespace lee
