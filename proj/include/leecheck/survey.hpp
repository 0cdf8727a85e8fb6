#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "leecheck/integer_core.hpp"
#include "leecheck/outcome.hpp"

namespace lee {

inline constexpr const char* kVersion = "1.0.0";

enum class Overall { Excluded, Open, ExternallyKnown };

struct Verdict {
    std::uint64_t n = 0;
    unsigned r = 2;
    Natural order;
    Factorization factorization;
    std::vector<CriterionOutcome> outcomes;
    Overall overall = Overall::Open;
    Tier tier = Tier::None;
    std::string by;        // criterion id of the strongest exclusion
    std::string citation;  // registry key for ExternallyKnown

    std::vector<std::string> fired() const;    // distinct ids with an Excluded outcome, in dispatch order
    std::vector<std::string> skipped() const;  // "id:cap" per Skipped outcome
    bool operator==(const Verdict& o) const;
};

struct CheckOptions {
    bool early_exit = false;
    bool use_registry = false;
    std::set<std::string> criteria;  // empty: all criteria for the radius
};

// Criterion ids per radius, in dispatch order.
const std::vector<std::string>& criteria_for(unsigned r);

// Throws std::invalid_argument for r outside {2, 3} or n below the minimum.
Verdict check(std::uint64_t n, unsigned r, const Caps& caps = {}, const CheckOptions& opt = {});
Verdict aggregate_r3(std::uint64_t n, const Caps& caps = {}, const CheckOptions& opt = {});

// Verdicts for from..to ordered by n; fans out over caps.thread_count workers.
std::vector<Verdict> scan(unsigned r, std::uint64_t from, std::uint64_t to, const Caps& caps = {},
                          const CheckOptions& opt = {});

struct CountReport {
    unsigned r = 2;
    std::uint64_t upto = 0;
    std::set<std::string> criteria;
    std::uint64_t count = 0;
    std::map<std::uint64_t, std::uint64_t> per_v;  // small_v only: n with v among the fired moduli
    std::uint64_t capped = 0;                      // n not excluded with some Skipped outcome
    std::vector<std::uint64_t> capped_n;
    json to_json() const;
};

// Tallies n (from 2 for r=2, 3 for r=3) with at least one Excluded outcome among `criteria`.
CountReport counts(unsigned r, std::uint64_t upto, const std::set<std::string>& criteria, const Caps& caps = {});

// External results used only in appendix-table reproduction.
std::optional<std::string> registry_citation(std::uint64_t n, unsigned r);

struct AppendixRow {
    std::uint64_t n = 0;
    std::string expected;  // families "K", "S", "U", "?" or a registry key
    Verdict computed;
    std::string families;  // computed families in the same notation
    bool verdict_match = false;
    bool attribution_match = false;  // K and S agree where the row is decided by criteria
    bool union_match = false;        // U family agrees
};

struct AppendixReport {
    std::vector<AppendixRow> rows;
    std::vector<std::uint64_t> open_set;
    std::vector<std::uint64_t> agreements, disagreements, cap_skips;
    std::vector<std::uint64_t> union_differences;
    bool all_match() const { return disagreements.empty(); }
    json to_json() const;
};

// Reference rows for 3 <= n <= 100.
const std::map<std::uint64_t, std::string>& appendix_reference();

AppendixReport reproduce_appendix_table(const Caps& caps = {});

std::string to_string(Overall o);
Overall overall_from_string(const std::string& s);

json verdict_to_json(const Verdict& v, bool with_timing = false);
Verdict verdict_from_json(const json& j);

enum class Format { Json, Csv };
Format format_from_string(const std::string& s);

std::string emit(const std::vector<Verdict>& verdicts, Format format, const Caps& caps, bool with_timing = false);

struct Report {
    Caps caps;
    std::string version;
    std::vector<Verdict> verdicts;
};

Report parse_json_report(const std::string& text);

struct CsvRow {
    std::uint64_t n = 0;
    unsigned r = 2;
    Natural order;
    std::string overall, tier, criteria_fired, skips;
    bool operator==(const CsvRow&) const = default;
};

std::vector<CsvRow> parse_csv_report(const std::string& text);
CsvRow csv_row(const Verdict& v);

// Throws std::runtime_error with the path on I/O failure.
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// key = value lines; '#' starts a comment. Unknown keys and zero values are errors.
Caps parse_caps(const std::string& text);
Caps load_caps(const std::string& path);
std::string caps_to_text(const Caps& caps);
json caps_to_json(const Caps& caps);
Caps caps_from_json(const json& j);

struct SelftestResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct SelftestReport {
    std::vector<SelftestResult> suites;
    bool soundness_ok = true;
    bool all_passed() const;
    json to_json() const;
};

SelftestReport selftest(const Caps& caps = {});

// Compares a verdict with the oracle when the sphere is small enough to search.
// Returns a description of the conflict, or nothing.
std::optional<std::string> soundness_conflict(const Verdict& v, const Caps& caps = {});

}  // namespace lee
