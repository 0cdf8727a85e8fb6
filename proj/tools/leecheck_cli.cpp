#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "leecheck.h"

namespace {

enum Exit { kOk = 0, kUsage = 1, kInconsistent = 2, kCapSkip = 3 };

struct Options {
    std::uint64_t n = 0;
    unsigned r = 2;
    std::uint64_t from = 0, to = 0, upto = 0;
    std::uint64_t v = 0, p = 0;
    std::string format = "json";
    std::string out;
    std::string caps_file;
    std::string criteria;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> threads;
    bool no_early_exit = false;
    bool early_exit = false;
    bool strict = false;
    bool timing = false;
    bool generic = false;
};

struct CString {
    char* s = nullptr;
    ~CString() { lc_string_free(s); }
};

struct Caps {
    lc_caps* c = nullptr;
    ~Caps() { lc_caps_free(c); }
};

struct Verdicts {
    lc_verdicts* v = nullptr;
    ~Verdicts() { lc_verdicts_free(v); }
};

int report_error(lc_status s) {
    std::cerr << "error: " << lc_last_error() << "\n";
    if (s == LC_ERR_INCONSISTENT) return kInconsistent;
    if (s == LC_ERR_CAP) return kCapSkip;
    return kUsage;
}

#define LC_TRY(call)                                    \
    do {                                                \
        const lc_status st_ = (call);                   \
        if (st_ != LC_OK) return report_error(st_);     \
    } while (0)

int write_output(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return kOk;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f || !(f << text)) {
        std::cerr << "error: cannot write " << o.out << "\n";
        return kUsage;
    }
    return kOk;
}

int make_caps(const Options& o, Caps& caps) {
    LC_TRY(lc_caps_new(&caps.c));
    if (!o.caps_file.empty()) LC_TRY(lc_caps_load(caps.c, o.caps_file.c_str()));
    if (o.seed) LC_TRY(lc_caps_set(caps.c, "seed", *o.seed));
    if (o.threads) LC_TRY(lc_caps_set(caps.c, "thread_count", *o.threads));
    return kOk;
}

// Writes the verdicts, then applies the oracle coupling and --strict.
int finish_verdicts(const Options& o, const Verdicts& vs) {
    CString text;
    LC_TRY(lc_verdicts_emit(vs.v, o.format.c_str(), o.timing ? LC_WITH_TIMING : 0u, &text.s));
    if (int rc = write_output(o, text.s)) return rc;
    CString conflict;
    if (lc_verdicts_soundness(vs.v, &conflict.s) == LC_ERR_INCONSISTENT) {
        std::cerr << "internal inconsistency: " << conflict.s << "\n";
        return kInconsistent;
    }
    if (o.strict) {
        for (std::size_t i = 0; i < lc_verdicts_count(vs.v); ++i) {
            std::uint64_t n = 0;
            int skips = 0;
            LC_TRY(lc_verdicts_get(vs.v, i, &n, nullptr, &skips));
            if (skips) {
                std::cerr << "strict: n = " << n << " has skipped criteria\n";
                return kCapSkip;
            }
        }
    }
    return kOk;
}

int run_check(const Options& o) {
    Caps caps;
    if (int rc = make_caps(o, caps)) return rc;
    Verdicts vs;
    const unsigned flags = o.early_exit ? LC_EARLY_EXIT : 0u;
    LC_TRY(lc_check(o.n, o.r, caps.c, flags, o.criteria.c_str(), &vs.v));
    return finish_verdicts(o, vs);
}

int run_scan(const Options& o) {
    Caps caps;
    if (int rc = make_caps(o, caps)) return rc;
    Verdicts vs;
    const unsigned flags = o.no_early_exit ? 0u : LC_EARLY_EXIT;
    LC_TRY(lc_scan(o.r, o.from, o.to, caps.c, flags, o.criteria.c_str(), &vs.v));
    return finish_verdicts(o, vs);
}

int run_counts(const Options& o) {
    Caps caps;
    if (int rc = make_caps(o, caps)) return rc;
    CString text;
    LC_TRY(lc_counts(o.r, o.upto, o.criteria.c_str(), caps.c, &text.s));
    if (int rc = write_output(o, text.s)) return rc;
    if (o.strict && nlohmann::json::parse(text.s).at("capped").get<std::uint64_t>() > 0) return kCapSkip;
    return kOk;
}

int run_oracle(const Options& o) {
    Caps caps;
    if (int rc = make_caps(o, caps)) return rc;
    CString text;
    LC_TRY(lc_oracle(o.n, o.r, caps.c, o.seed.has_value(), o.seed.value_or(0), &text.s));
    if (int rc = write_output(o, text.s)) return rc;
    if (o.strict && nlohmann::json::parse(text.s).at("status") == "skipped") return kCapSkip;
    return kOk;
}

int run_orbit(const Options& o) {
    Caps caps;
    if (int rc = make_caps(o, caps)) return rc;
    std::uint64_t v = o.v, p = o.p;
    if (o.r == 3 && v == 0) v = 7;
    if (o.r == 3 && p == 0) p = 5;
    if (v == 0 || p == 0) {
        std::cerr << "error: --v and --p are required for radius 2\n";
        return kUsage;
    }
    CString text;
    LC_TRY(lc_orbit(o.n, o.r, v, p, caps.c, o.generic, &text.s));
    if (int rc = write_output(o, text.s)) return rc;
    if (o.strict && nlohmann::json::parse(text.s).at("status") == "skipped") return kCapSkip;
    return kOk;
}

int run_reproduce(const Options& o) {
    Caps caps;
    if (int rc = make_caps(o, caps)) return rc;
    CString text;
    LC_TRY(lc_reproduce_table(caps.c, &text.s));
    if (int rc = write_output(o, text.s)) return rc;
    const auto j = nlohmann::json::parse(text.s);
    std::cerr << "agreements " << j["agreements"].size() << ", disagreements " << j["disagreements"].size()
              << ", cap-skips " << j["cap_skips"].size() << ", open " << j["open_set"].dump() << "\n";
    if (o.strict && !j["cap_skips"].empty()) return kCapSkip;
    return kOk;
}

int run_selftest(const Options& o) {
    Caps caps;
    if (int rc = make_caps(o, caps)) return rc;
    CString text;
    const lc_status st = lc_selftest(caps.c, &text.s);
    if (text.s)
        if (int rc = write_output(o, text.s)) return rc;
    if (st == LC_ERR_INCONSISTENT) {
        std::cerr << "internal inconsistency: " << lc_last_error() << "\n";
        return kInconsistent;
    }
    if (st != LC_OK) return report_error(st);
    const auto j = nlohmann::json::parse(text.s);
    for (const auto& s : j["suites"])
        std::cerr << (s["passed"].get<bool>() ? "PASS " : "FAIL ") << s["name"].get<std::string>() << " ("
                  << s["seconds"].get<double>() << " s)\n";
    return j["passed"].get<bool>() ? kOk : kInconsistent;
}

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--caps", o.caps_file, "caps file (key = value)")->check(CLI::ExistingFile);
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--out", o.out, "output file (default stdout)");
    cmd->add_flag("--strict", o.strict, "exit 3 when any criterion was skipped by a cap");
}

void add_radius(CLI::App* cmd, Options& o) {
    cmd->add_option("--r", o.r, "radius (2 or 3)")->check(CLI::IsMember({2u, 3u}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonexistence checks for linear perfect Lee codes of radius 2 and 3"};
    app.set_version_flag("--version", lc_version());
    app.require_subcommand(1);
    Options o;

    auto* check = app.add_subcommand("check", "run every criterion for one dimension");
    check->add_option("--n", o.n, "dimension")->required();
    add_radius(check, o);
    check->add_option("--criteria", o.criteria, "comma-separated criterion ids");
    check->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));
    check->add_flag("--early-exit", o.early_exit, "stop at the first exclusion");
    check->add_flag("--timing", o.timing, "include wall times");
    add_common(check, o);

    auto* scan = app.add_subcommand("scan", "check a range of dimensions");
    scan->add_option("--from", o.from)->required();
    scan->add_option("--to", o.to)->required();
    add_radius(scan, o);
    scan->add_option("--criteria", o.criteria, "comma-separated criterion ids");
    scan->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));
    scan->add_flag("--no-early-exit", o.no_early_exit, "record every outcome");
    scan->add_flag("--timing", o.timing, "include wall times");
    add_common(scan, o);

    auto* counts = app.add_subcommand("counts", "number of excluded dimensions up to a bound");
    counts->add_option("--to,--upto", o.upto, "upper bound N")->required();
    add_radius(counts, o);
    counts->add_option("--criteria", o.criteria, "comma-separated criterion ids (default all)");
    add_common(counts, o);

    auto* oracle = app.add_subcommand("oracle", "exhaustive search for a linear code");
    oracle->add_option("--n", o.n)->required();
    oracle->add_option("--r", o.r)->check(CLI::Range(1u, 64u));
    add_common(oracle, o);

    auto* orbit = app.add_subcommand("orbit", "orbit search modulo p over C_v");
    orbit->add_option("--n", o.n)->required();
    add_radius(orbit, o);
    orbit->add_option("--v", o.v);
    orbit->add_option("--p", o.p);
    orbit->add_flag("--generic", o.generic, "allow instances other than the built-in ones");
    add_common(orbit, o);

    auto* table = app.add_subcommand("reproduce-table", "compare 3 <= n <= 100 with the reference table");
    add_common(table, o);

    auto* self = app.add_subcommand("selftest", "property suites and the oracle coupling");
    add_common(self, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    if (*check) return run_check(o);
    if (*scan) return run_scan(o);
    if (*counts) return run_counts(o);
    if (*oracle) return run_oracle(o);
    if (*orbit) return run_orbit(o);
    if (*table) return run_reproduce(o);
    return run_selftest(o);
}
