#include "leecheck/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace lee {

namespace {

void partitions(unsigned e, unsigned max_part, std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out) {
    if (e == 0) {
        out.push_back(cur);
        return;
    }
    for (unsigned part = std::min(e, max_part); part >= 1; --part) {
        cur.push_back(part);
        partitions(e - part, part, cur, out);
        cur.pop_back();
    }
}

}  // namespace

GroupMenu enumerate_abelian_groups(const Natural& order, const Caps& caps) {
    GroupMenu menu;
    menu.order = order;
    const Factorization fac = factorize(order, caps.factor_budget, caps.seed);
    const std::uint64_t m = to_u64(order);
    std::vector<std::vector<std::vector<unsigned>>> per_prime;
    for (const auto& pf : fac.factors) {
        std::vector<std::vector<unsigned>> parts;
        std::vector<unsigned> cur;
        partitions(pf.exponent, pf.exponent, cur, parts);
        per_prime.push_back(std::move(parts));
    }
    // Mixed-radix walk over one partition per prime.
    std::vector<std::size_t> pick(per_prime.size(), 0);
    for (;;) {
        std::size_t rank = 0;
        for (std::size_t i = 0; i < per_prime.size(); ++i) rank = std::max(rank, per_prime[i][pick[i]].size());
        std::vector<std::uint64_t> factors(rank, 1);  // factors[0] is the largest
        for (std::size_t i = 0; i < per_prime.size(); ++i) {
            const std::uint64_t p = to_u64(fac.factors[i].prime);
            const auto& part = per_prime[i][pick[i]];
            for (std::size_t k = 0; k < part.size(); ++k)
                for (unsigned t = 0; t < part[k]; ++t) factors[k] *= p;
        }
        std::reverse(factors.begin(), factors.end());
        menu.groups.push_back(m == 1 ? AbelianGroup() : AbelianGroup(factors));
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == per_prime[i].size()) pick[i++] = 0;
        if (i == pick.size()) break;
    }
    return menu;
}

namespace {

class Searcher {
public:
    Searcher(unsigned n, unsigned r, const AbelianGroup& g, std::uint64_t budget)
        : n_(n), r_(r), g_(g), budget_(budget), occupied_(g.order(), 0) {}

    std::optional<std::vector<std::uint64_t>> run(const std::vector<std::uint64_t>& first,
                                                  const std::vector<std::uint64_t>& rest,
                                                  const std::vector<std::uint64_t>& rest_floor) {
        rest_ = rest;
        rest_floor_ = rest_floor;
        points_.push_back({0, 0});
        occupied_[0] = 1;
        for (std::uint64_t a : first) {
            chosen_.push_back(a);
            if (place(a)) {
                floor_ = std::gcd(a, g_.order());
                if (descend(0)) return chosen_;
                unplace();
            }
            chosen_.pop_back();
        }
        return std::nullopt;
    }

    std::uint64_t nodes() const { return nodes_; }

private:
    struct Point {
        std::uint64_t elem;
        unsigned norm;
    };

    // Adds all sphere points using generator a; false (and rolled back) on a collision.
    bool place(std::uint64_t a) {
        if (++nodes_ > budget_) throw CapExceeded("search_node_budget", "oracle search exceeded the node budget");
        const std::size_t base = points_.size();
        marks_.push_back(base);
        for (std::size_t i = 0; i < base; ++i) {
            const Point pt = points_[i];
            std::uint64_t up = pt.elem, down = pt.elem;
            for (unsigned c = 1; pt.norm + c <= r_; ++c) {
                up = g_.add(up, a);
                down = g_.add(down, g_.neg(a));
                for (std::uint64_t y : {up, down}) {
                    if (occupied_[y]) {
                        unplace();
                        return false;
                    }
                    occupied_[y] = 1;
                    points_.push_back({y, pt.norm + c});
                }
            }
        }
        return true;
    }

    void unplace() {
        const std::size_t base = marks_.back();
        marks_.pop_back();
        for (std::size_t i = base; i < points_.size(); ++i) occupied_[points_[i].elem] = 0;
        points_.resize(base);
    }

    bool descend(std::size_t start) {
        if (chosen_.size() == n_) return true;
        for (std::size_t i = start; i < rest_.size(); ++i) {
            if (rest_floor_.size() && rest_floor_[i] < floor_) continue;
            const std::uint64_t a = rest_[i];
            if (std::find(chosen_.begin(), chosen_.end(), a) != chosen_.end()) continue;
            chosen_.push_back(a);
            if (place(a)) {
                if (descend(i + 1)) return true;
                unplace();
            }
            chosen_.pop_back();
        }
        return false;
    }

    unsigned n_, r_;
    const AbelianGroup& g_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::uint64_t floor_ = 0;
    std::vector<char> occupied_;
    std::vector<Point> points_;
    std::vector<std::size_t> marks_;
    std::vector<std::uint64_t> chosen_;
    std::vector<std::uint64_t> rest_;
    std::vector<std::uint64_t> rest_floor_;
};

}  // namespace

SearchResult search_code(unsigned n, unsigned r, const AbelianGroup& group, const Caps& caps,
                         std::optional<std::uint64_t> order_seed) {
    if (n == 0 || r == 0) throw std::invalid_argument("search_code requires n, r >= 1");
    if (from_u64(group.order()) != sphere_size(n, r))
        throw std::invalid_argument("group order " + std::to_string(group.order()) + " differs from the sphere size");
    const std::uint64_t m = group.order();

    // One of each pair {a, -a}; elements of order <= 2 always collide.
    std::vector<std::uint64_t> canonical;
    for (std::uint64_t x = 1; x < m; ++x)
        if (x < group.neg(x)) canonical.push_back(x);

    std::mt19937_64 rng(order_seed ? mix_seed(*order_seed, m) : 0);
    auto shuffle = [&](std::vector<std::uint64_t>& v) {
        if (order_seed) std::shuffle(v.begin(), v.end(), rng);
    };

    std::vector<std::uint64_t> first, rest = canonical, rest_floor;
    if (group.is_cyclic()) {
        // Unit multiplication is an automorphism: send the generator with the least
        // gcd(a, m) to that divisor; every other generator keeps gcd >= it.
        for (std::uint64_t d = 1; d < m; ++d)
            if (m % d == 0 && d < group.neg(d)) first.push_back(d);
        shuffle(first);
        shuffle(rest);
        for (std::uint64_t x : rest) rest_floor.push_back(std::gcd(x, m));
    } else {
        // The first generator is the least element of the set under the candidate order.
        shuffle(rest);
        first = rest;
    }

    SearchResult out;
    if (group.is_cyclic()) {
        Searcher s(n, r, group, caps.search_node_budget);
        auto found = s.run(first, rest, rest_floor);
        out.nodes = s.nodes();
        if (found) out.witness = CodeWitness{group, *found, n, r};
    } else {
        std::uint64_t nodes = 0;
        for (std::size_t i = 0; i < first.size() && !out.witness; ++i) {
            Searcher t(n, r, group, caps.search_node_budget - std::min(nodes, caps.search_node_budget));
            std::vector<std::uint64_t> tail(rest.begin() + static_cast<std::ptrdiff_t>(i) + 1, rest.end());
            auto found = t.run({first[i]}, tail, {});
            nodes += t.nodes();
            if (found) out.witness = CodeWitness{group, *found, n, r};
        }
        out.nodes = nodes;
    }
    if (out.witness) {
        if (!verify_witness(*out.witness).ok) throw std::logic_error("oracle produced an invalid witness");
        const GroupRingElement t = build_T(group, out.witness->generators);
        const bool holds = r == 2 ? verify_r2_identity(t, n).holds : r == 3 ? verify_r3_identity(t, n).holds : true;
        if (!holds) throw std::logic_error("oracle witness fails the group ring identity");
    }
    return out;
}

std::string to_string(OracleStatus s) {
    switch (s) {
        case OracleStatus::Exists: return "exists";
        case OracleStatus::NotExists: return "not_exists";
        case OracleStatus::Skipped: return "skipped";
    }
    return "?";
}

OracleVerdict oracle_verdict(unsigned n, unsigned r, const Caps& caps, std::optional<std::uint64_t> order_seed) {
    OracleVerdict v;
    GroupMenu menu;
    try {
        menu = enumerate_abelian_groups(sphere_size(n, r), caps);
    } catch (const CapExceeded& e) {
        v.reason = e.what();
        return v;
    }
    bool skipped = false;
    for (const auto& g : menu.groups) {
        OracleGroupRecord rec{g, "exhausted", 0};
        try {
            SearchResult res = search_code(n, r, g, caps, order_seed);
            rec.nodes = res.nodes;
            if (res.witness) {
                rec.result = "witness";
                v.groups.push_back(rec);
                v.status = OracleStatus::Exists;
                v.witness = res.witness;
                return v;
            }
        } catch (const CapExceeded& e) {
            rec.result = "skipped";
            skipped = true;
            v.reason = e.what();
        }
        v.groups.push_back(rec);
    }
    v.status = skipped ? OracleStatus::Skipped : OracleStatus::NotExists;
    return v;
}

bool cyclic_equivalent(const CodeWitness& w, const std::vector<std::uint64_t>& generators) {
    if (!w.group.is_cyclic() || generators.size() != w.generators.size()) return false;
    const std::uint64_t m = w.group.order();
    auto closed = [&](const std::vector<std::uint64_t>& gens, std::uint64_t u) {
        std::vector<std::uint64_t> s;
        for (auto a : gens) {
            const std::uint64_t x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * u % m);
            s.push_back(std::min(x, (m - x) % m));
        }
        std::sort(s.begin(), s.end());
        return s;
    };
    const auto target = closed(w.generators, 1);
    for (std::uint64_t u = 1; u < m; ++u)
        if (std::gcd(u, m) == 1 && closed(generators, u) == target) return true;
    return false;
}

}  // namespace lee
