#include "leecheck.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <set>
#include <sstream>
#include <stdexcept>

#include "leecheck/criteria_r2.hpp"
#include "leecheck/criteria_r3.hpp"
#include "leecheck/oracle.hpp"
#include "leecheck/survey.hpp"

struct lc_caps {
    lee::Caps caps;
};

struct lc_verdicts {
    lee::Caps caps;
    std::vector<lee::Verdict> verdicts;
};

namespace {

thread_local std::string last_error;

lc_status fail(lc_status s, const std::string& msg) {
    last_error = msg;
    return s;
}

template <class F>
lc_status guarded(F&& f) {
    last_error.clear();
    try {
        return f();
    } catch (const lee::CapExceeded& e) {
        return fail(LC_ERR_CAP, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(LC_ERR_USAGE, e.what());
    } catch (const std::out_of_range& e) {
        return fail(LC_ERR_USAGE, e.what());
    } catch (const lee::json::exception& e) {
        return fail(LC_ERR_USAGE, e.what());
    } catch (const std::runtime_error& e) {
        return fail(LC_ERR_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(LC_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(LC_ERR_INTERNAL, e.what());
    }
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

lee::Caps caps_or_default(const lc_caps* c) { return c ? c->caps : lee::Caps{}; }

std::set<std::string> parse_criteria(const char* s) {
    std::set<std::string> out;
    if (!s) return out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ','))
        if (!tok.empty()) out.insert(tok);
    return out;
}

lee::CheckOptions options(unsigned flags, const char* criteria) {
    lee::CheckOptions opt;
    opt.early_exit = flags & LC_EARLY_EXIT;
    opt.use_registry = flags & LC_USE_REGISTRY;
    opt.criteria = parse_criteria(criteria);
    return opt;
}

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

std::uint64_t* caps_field(lee::Caps& c, const std::string& key) {
    if (key == "max_field_degree") return &c.max_field_degree;
    if (key == "max_unity_enum") return &c.max_unity_enum;
    if (key == "factor_budget") return &c.factor_budget;
    if (key == "search_node_budget") return &c.search_node_budget;
    if (key == "max_lambda_bits") return &c.max_lambda_bits;
    if (key == "seed") return &c.seed;
    if (key == "thread_count") return &c.thread_count;
    throw std::invalid_argument("unknown caps key: " + key);
}

}  // namespace

extern "C" {

const char* lc_version(void) { return lee::kVersion; }

const char* lc_last_error(void) { return last_error.c_str(); }

void lc_string_free(char* s) { std::free(s); }

lc_status lc_caps_new(lc_caps** out) {
    return guarded([&] {
        require(out, "null output pointer");
        *out = new lc_caps();
        return LC_OK;
    });
}

void lc_caps_free(lc_caps* caps) { delete caps; }

lc_status lc_caps_load(lc_caps* caps, const char* path) {
    return guarded([&] {
        require(caps && path, "null argument");
        caps->caps = lee::load_caps(path);
        return LC_OK;
    });
}

lc_status lc_caps_set(lc_caps* caps, const char* key, uint64_t value) {
    return guarded([&] {
        require(caps && key, "null argument");
        require(value > 0, "caps values must be positive");
        *caps_field(caps->caps, key) = value;
        return LC_OK;
    });
}

lc_status lc_caps_get(const lc_caps* caps, const char* key, uint64_t* value) {
    return guarded([&] {
        require(caps && key && value, "null argument");
        lee::Caps c = caps->caps;
        *value = *caps_field(c, key);
        return LC_OK;
    });
}

lc_status lc_caps_to_text(const lc_caps* caps, char** out) {
    return guarded([&] {
        require(out, "null output pointer");
        *out = dup(lee::caps_to_text(caps_or_default(caps)));
        return LC_OK;
    });
}

lc_status lc_check(uint64_t n, unsigned r, const lc_caps* caps, unsigned flags, const char* criteria,
                   lc_verdicts** out) {
    return guarded([&] {
        require(out, "null output pointer");
        auto v = std::make_unique<lc_verdicts>();
        v->caps = caps_or_default(caps);
        v->verdicts.push_back(lee::check(n, r, v->caps, options(flags, criteria)));
        *out = v.release();
        return LC_OK;
    });
}

lc_status lc_scan(unsigned r, uint64_t from, uint64_t to, const lc_caps* caps, unsigned flags,
                  const char* criteria, lc_verdicts** out) {
    return guarded([&] {
        require(out, "null output pointer");
        auto v = std::make_unique<lc_verdicts>();
        v->caps = caps_or_default(caps);
        v->verdicts = lee::scan(r, from, to, v->caps, options(flags, criteria));
        *out = v.release();
        return LC_OK;
    });
}

void lc_verdicts_free(lc_verdicts* v) { delete v; }

size_t lc_verdicts_count(const lc_verdicts* v) { return v ? v->verdicts.size() : 0; }

lc_status lc_verdicts_get(const lc_verdicts* v, size_t i, uint64_t* n, lc_overall* overall, int* has_skips) {
    return guarded([&] {
        require(v && i < v->verdicts.size(), "verdict index out of range");
        const lee::Verdict& x = v->verdicts[i];
        if (n) *n = x.n;
        if (overall) *overall = static_cast<lc_overall>(static_cast<int>(x.overall));
        if (has_skips) *has_skips = !x.skipped().empty();
        return LC_OK;
    });
}

lc_status lc_verdicts_emit(const lc_verdicts* v, const char* format, unsigned flags, char** out) {
    return guarded([&] {
        require(v && format && out, "null argument");
        *out = dup(lee::emit(v->verdicts, lee::format_from_string(format), v->caps, flags & LC_WITH_TIMING));
        return LC_OK;
    });
}

lc_status lc_verdicts_parse(const char* json_text, lc_verdicts** out) {
    return guarded([&] {
        require(json_text && out, "null argument");
        lee::Report rep = lee::parse_json_report(json_text);
        auto v = std::make_unique<lc_verdicts>();
        v->caps = rep.caps;
        v->verdicts = std::move(rep.verdicts);
        *out = v.release();
        return LC_OK;
    });
}

lc_status lc_verdicts_soundness(const lc_verdicts* v, char** conflict) {
    return guarded([&] {
        require(v, "null argument");
        if (conflict) *conflict = nullptr;
        for (const auto& x : v->verdicts) {
            if (auto c = lee::soundness_conflict(x, v->caps)) {
                if (conflict) *conflict = dup(*c);
                return fail(LC_ERR_INCONSISTENT, *c);
            }
        }
        return LC_OK;
    });
}

lc_status lc_counts(unsigned r, uint64_t upto, const char* criteria, const lc_caps* caps, char** out) {
    return guarded([&] {
        require(out, "null output pointer");
        std::set<std::string> subset = parse_criteria(criteria);
        if (subset.empty()) {
            const auto& all = lee::criteria_for(r);
            subset.insert(all.begin(), all.end());
        }
        *out = dup(lee::counts(r, upto, subset, caps_or_default(caps)).to_json().dump(2) + "\n");
        return LC_OK;
    });
}

lc_status lc_oracle(uint64_t n, unsigned r, const lc_caps* caps, int shuffle, uint64_t shuffle_seed, char** out) {
    return guarded([&] {
        require(out, "null output pointer");
        require(n >= 1 && n <= 64 && r >= 1 && r <= 64, "oracle needs 1 <= n, r <= 64");
        const lee::Caps c = caps_or_default(caps);
        std::optional<std::uint64_t> seed;
        if (shuffle) seed = shuffle_seed;
        const lee::OracleVerdict v =
            lee::oracle_verdict(static_cast<unsigned>(n), r, c, seed);
        lee::json j;
        j["n"] = n;
        j["r"] = r;
        j["order"] = lee::natural_to_json(lee::sphere_size(n, r));
        j["status"] = lee::to_string(v.status);
        if (v.witness) {
            j["witness"] = {{"group", v.witness->group.str()},
                            {"cyclic_orders", v.witness->group.cyclic_orders()},
                            {"generators", v.witness->generators},
                            {"verified", lee::verify_witness(*v.witness).ok}};
        } else {
            j["witness"] = nullptr;
        }
        lee::json groups = lee::json::array();
        for (const auto& g : v.groups)
            groups.push_back({{"group", g.group.str()}, {"result", g.result}, {"nodes", g.nodes}});
        j["groups"] = groups;
        j["reason"] = v.reason;
        *out = dup(j.dump(2) + "\n");
        return LC_OK;
    });
}

lc_status lc_orbit(uint64_t n, unsigned r, uint64_t v, uint64_t p, const lc_caps* caps, int generic, char** out) {
    return guarded([&] {
        require(out, "null output pointer");
        const lee::Caps c = caps_or_default(caps);
        lee::CriterionOutcome o;
        if (r == 2) {
            require(n >= 2, "dimension must be at least 2");
            o = lee::orbit_check(n, v, p, c, generic);
        } else if (r == 3) {
            require(n >= 3, "dimension must be at least 3");
            require(v == 7 && p == 5, "the radius-3 orbit search runs for v = 7, p = 5 only");
            o = lee::orbit_check_r3(n, c);
        } else {
            throw std::invalid_argument("radius must be 2 or 3");
        }
        *out = dup(lee::outcome_to_json(o, true).dump(2) + "\n");
        return LC_OK;
    });
}

lc_status lc_reproduce_table(const lc_caps* caps, char** out) {
    return guarded([&] {
        require(out, "null output pointer");
        *out = dup(lee::reproduce_appendix_table(caps_or_default(caps)).to_json().dump(2) + "\n");
        return LC_OK;
    });
}

lc_status lc_selftest(const lc_caps* caps, char** out) {
    return guarded([&] {
        require(out, "null output pointer");
        const lee::SelftestReport rep = lee::selftest(caps_or_default(caps));
        *out = dup(rep.to_json().dump(2) + "\n");
        if (!rep.soundness_ok) return fail(LC_ERR_INCONSISTENT, "criteria contradict the oracle");
        return LC_OK;
    });
}

}  // extern "C"
