#include "leecheck/survey.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "leecheck/criteria_r2.hpp"
#include "leecheck/criteria_r3.hpp"
#include "leecheck/group_ring.hpp"
#include "leecheck/lee_geometry.hpp"
#include "leecheck/oracle.hpp"

namespace lee {

namespace {

template <class F>
CriterionOutcome timed(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionOutcome o = f();
    o.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return o;
}

bool outcome_equal(const CriterionOutcome& a, const CriterionOutcome& b) {
    return a.criterion == b.criterion && a.params == b.params && a.status == b.status && a.tier == b.tier &&
           a.reason == b.reason && a.certificate == b.certificate;
}

void finish(Verdict& v, const CheckOptions& opt) {
    v.overall = Overall::Open;
    v.tier = Tier::None;
    v.by.clear();
    v.citation.clear();
    for (const auto& o : v.outcomes) {
        if (!o.excluded()) continue;
        if (v.overall != Overall::Excluded || (o.tier == Tier::Unconditional && v.tier != Tier::Unconditional)) {
            v.overall = Overall::Excluded;
            v.tier = o.tier;
            v.by = o.criterion;
        }
    }
    if (v.overall == Overall::Open && opt.use_registry) {
        if (auto key = registry_citation(v.n, v.r)) {
            v.overall = Overall::ExternallyKnown;
            v.citation = *key;
        }
    }
}

class Dispatch {
public:
    Dispatch(Verdict& v, const CheckOptions& opt) : v_(v), opt_(opt) {}

    bool selected(const std::string& id) const { return opt_.criteria.empty() || opt_.criteria.count(id); }
    bool done() const { return opt_.early_exit && excluded_; }

    template <class F>
    const CriterionOutcome* run(const std::string& id, F&& f) {
        if (done() || !selected(id)) return nullptr;
        v_.outcomes.push_back(timed(std::forward<F>(f)));
        excluded_ = excluded_ || v_.outcomes.back().excluded();
        return &v_.outcomes.back();
    }

private:
    Verdict& v_;
    const CheckOptions& opt_;
    bool excluded_ = false;
};

void dispatch_r2(Verdict& v, const Caps& caps, const CheckOptions& opt) {
    R2Instance inst;
    try {
        inst = make_r2_instance(v.n, caps);
    } catch (const CapExceeded& e) {
        v.order = group_order_r2(v.n);
        v.outcomes.push_back(CriterionOutcome::skipped("kim", e));
        return;
    }
    v.order = inst.order;
    v.factorization = inst.factorization;
    Dispatch d(v, opt);
    d.run("kim", [&] { return kim_check(inst); });
    d.run("small_v", [&] { return small_v_check(inst); });

    const Factorization two_n = factorize(from_u64(2 * v.n), caps.factor_budget, caps.seed);
    for (const auto& vf : inst.factorization.factors) {
        for (const auto& pf : two_n.factors) {
            if (d.done()) return;
            const Natural& q = vf.prime;
            const Natural& p = pf.prime;
            const CriterionOutcome* lam = d.run("lambda", [&] { return lambda_check(v.n, q, p, caps); });
            const bool want_field = lam ? lam->status == Status::Undecided : true;
            if (want_field) d.run("field", [&] { return field_check(v.n, q, p, caps); });
        }
    }
    if (inst.order % 13 == 0) d.run("orbit", [&] { return orbit_check(v.n, 13, 11, caps); });
    if (inst.order % 17 == 0) d.run("orbit", [&] { return orbit_check(v.n, 17, 3, caps); });
}

void dispatch_r3(Verdict& v, const Caps& caps, const CheckOptions& opt) {
    try {
        const R3Instance inst = make_r3_instance(v.n, caps);
        v.order = inst.order;
        v.factorization = inst.factorization;
    } catch (const CapExceeded&) {
        v.order = group_order_r3(v.n);
    }
    Dispatch d(v, opt);
    d.run("v7", [&] { return v7_check(v.n); });
    d.run("orbit_r3", [&] { return orbit_check_r3(v.n, caps); });
}

std::string join(const std::vector<std::string>& xs, char sep) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += sep;
        s += xs[i];
    }
    return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::string> Verdict::fired() const {
    std::vector<std::string> out;
    for (const auto& o : outcomes)
        if (o.excluded() && std::find(out.begin(), out.end(), o.criterion) == out.end()) out.push_back(o.criterion);
    return out;
}

std::vector<std::string> Verdict::skipped() const {
    std::vector<std::string> out;
    for (const auto& o : outcomes)
        if (o.status == Status::Skipped) out.push_back(o.criterion + ":" + o.reason);
    return out;
}

bool Verdict::operator==(const Verdict& o) const {
    if (n != o.n || r != o.r || order != o.order || overall != o.overall || tier != o.tier || by != o.by ||
        citation != o.citation || outcomes.size() != o.outcomes.size())
        return false;
    if (factorization.probabilistic != o.factorization.probabilistic ||
        factorization.factors.size() != o.factorization.factors.size())
        return false;
    for (std::size_t i = 0; i < factorization.factors.size(); ++i)
        if (factorization.factors[i].prime != o.factorization.factors[i].prime ||
            factorization.factors[i].exponent != o.factorization.factors[i].exponent)
            return false;
    for (std::size_t i = 0; i < outcomes.size(); ++i)
        if (!outcome_equal(outcomes[i], o.outcomes[i])) return false;
    return true;
}

const std::vector<std::string>& criteria_for(unsigned r) {
    static const std::vector<std::string> r2 = {"kim", "small_v", "lambda", "field", "orbit"};
    static const std::vector<std::string> r3 = {"v7", "orbit_r3"};
    if (r == 2) return r2;
    if (r == 3) return r3;
    throw std::invalid_argument("radius must be 2 or 3");
}

Verdict check(std::uint64_t n, unsigned r, const Caps& caps, const CheckOptions& opt) {
    const auto& known = criteria_for(r);
    if (n < r) throw std::invalid_argument("dimension must be at least " + std::to_string(r) + " for radius " + std::to_string(r));
    for (const auto& c : opt.criteria)
        if (std::find(known.begin(), known.end(), c) == known.end())
            throw std::invalid_argument("unknown criterion for radius " + std::to_string(r) + ": " + c);
    Verdict v;
    v.n = n;
    v.r = r;
    if (r == 2)
        dispatch_r2(v, caps, opt);
    else
        dispatch_r3(v, caps, opt);
    finish(v, opt);
    return v;
}

Verdict aggregate_r3(std::uint64_t n, const Caps& caps, const CheckOptions& opt) { return check(n, 3, caps, opt); }

std::vector<Verdict> scan(unsigned r, std::uint64_t from, std::uint64_t to, const Caps& caps,
                          const CheckOptions& opt) {
    if (from > to) throw std::invalid_argument("scan range is empty");
    criteria_for(r);
    const std::uint64_t total = to - from + 1;
    std::vector<Verdict> out(total);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= total) return;
            try {
                out[i] = check(from + i, r, caps, opt);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next = total;
            }
        }
    };
    const std::uint64_t threads = std::max<std::uint64_t>(1, std::min<std::uint64_t>(caps.thread_count, total));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::uint64_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
    return out;
}

json CountReport::to_json() const {
    json j;
    j["r"] = r;
    j["upto"] = upto;
    j["criteria"] = criteria;
    j["count"] = count;
    if (!per_v.empty()) {
        json pv = json::object();
        for (auto [v, c] : per_v) pv[std::to_string(v)] = c;
        j["per_v"] = pv;
    }
    j["capped"] = capped;
    j["capped_n"] = capped_n;
    return j;
}

CountReport counts(unsigned r, std::uint64_t upto, const std::set<std::string>& criteria, const Caps& caps) {
    CountReport rep;
    rep.r = r;
    rep.upto = upto;
    rep.criteria = criteria;
    const std::uint64_t from = r;
    if (upto < from) return rep;
    CheckOptions opt;
    opt.criteria = criteria;
    opt.early_exit = true;
    const bool breakdown = criteria == std::set<std::string>{"small_v"};
    if (breakdown) rep.per_v = {{5, 0}, {13, 0}, {17, 0}};
    for (const Verdict& v : scan(r, from, upto, caps, opt)) {
        if (v.overall == Overall::Excluded) {
            ++rep.count;
        } else if (!v.skipped().empty()) {
            ++rep.capped;
            rep.capped_n.push_back(v.n);
        }
        if (!breakdown) continue;
        for (const auto& o : v.outcomes)
            if (o.criterion == "small_v" && o.excluded())
                for (const auto& q : o.certificate["fired"]) ++rep.per_v[q.get<std::uint64_t>()];
    }
    return rep;
}

std::optional<std::string> registry_citation(std::uint64_t n, unsigned r) {
    if (r == 2 && n == 3) return "H09E";
    if (r == 2 && n == 10) return "HG14";
    return std::nullopt;
}

const std::map<std::uint64_t, std::string>& appendix_reference() {
    static const std::map<std::uint64_t, std::string> rows = [] {
        // K: Kim-type test, S: small-v test, U: lambda/field family, ?: open.
        const char* table =
            "3:H09E 4:K 5:KU 6:KU 7:K 8:S 9:KU 10:HG14 11:KSU 12:K 13:KSU 14:K 15:U 16:? 17:KU 18:SU 19:K "
            "20:U 21:? 22:K 23:SU 24:K 25:KU 26:KSU 27:KSU 28:U 29:KU 30:KU 31:K 32:K 33:KS 34:K 35:K 36:? "
            "37:KU 38:S 39:K 40:KS 41:S 42:KU 43:KSU 44:KSU 45:U 46:SU 47:K 48:KSU 49:S 50:K 51:KU 52:KU "
            "53:KS 54:KS 55:? 56:KSU 57:KSU 58:S 59:U 60:K 61:SU 62:KSU 63:KSU 64:? 65:KU 66:? 67:KSU 68:KS "
            "69:K 70:K 71:KS 72:K 73:KSU 74:KSU 75:KSU 76:K 77:U 78:? 79:K 80:K 81:KSU 82:K 83:KS 84:K 85:KU "
            "86:S 87:K 88:KS 89:K 90:KU 91:U 92:? 93:KSU 94:KU 95:SU 96:S 97:K 98:S 99:K 100:K";
        std::map<std::uint64_t, std::string> m;
        std::istringstream in(table);
        std::string tok;
        while (in >> tok) {
            const auto colon = tok.find(':');
            m[std::stoull(tok.substr(0, colon))] = tok.substr(colon + 1);
        }
        return m;
    }();
    return rows;
}

json AppendixReport::to_json() const {
    json j;
    json rs = json::array();
    for (const auto& row : rows) {
        json x;
        x["n"] = row.n;
        x["expected"] = row.expected;
        x["computed"] = row.families.empty() ? to_string(row.computed.overall) : row.families;
        x["overall"] = to_string(row.computed.overall);
        if (!row.computed.citation.empty()) x["citation"] = row.computed.citation;
        x["verdict_match"] = row.verdict_match;
        x["attribution_match"] = row.attribution_match;
        x["union_match"] = row.union_match;
        x["skips"] = row.computed.skipped();
        rs.push_back(x);
    }
    j["rows"] = rs;
    j["open_set"] = open_set;
    j["agreements"] = agreements;
    j["disagreements"] = disagreements;
    j["cap_skips"] = cap_skips;
    j["union_differences"] = union_differences;
    return j;
}

AppendixReport reproduce_appendix_table(const Caps& caps) {
    AppendixReport rep;
    CheckOptions opt;
    opt.use_registry = true;
    const auto& ref = appendix_reference();
    const std::vector<Verdict> verdicts = scan(2, ref.begin()->first, ref.rbegin()->first, caps, opt);
    for (const Verdict& v : verdicts) {
        AppendixRow row;
        row.n = v.n;
        row.expected = ref.at(v.n);
        row.computed = v;
        bool k = false, s = false, u = false;
        for (const auto& o : v.outcomes) {
            if (!o.excluded()) continue;
            k = k || o.criterion == "kim";
            s = s || o.criterion == "small_v";
            u = u || o.criterion == "lambda" || o.criterion == "field";
        }
        row.families = std::string(k ? "K" : "") + (s ? "S" : "") + (u ? "U" : "");
        const bool registry_row = registry_citation(v.n, 2).has_value();
        if (registry_row) {
            row.verdict_match = v.overall == Overall::ExternallyKnown && v.citation == row.expected;
            row.attribution_match = row.verdict_match;
            row.union_match = !u;
        } else if (row.expected == "?") {
            row.verdict_match = v.overall == Overall::Open;
            row.attribution_match = row.verdict_match;
            row.union_match = !u;
        } else {
            const bool ek = row.expected.find('K') != std::string::npos;
            const bool es = row.expected.find('S') != std::string::npos;
            const bool eu = row.expected.find('U') != std::string::npos;
            row.verdict_match = v.overall == Overall::Excluded;
            row.attribution_match = ek == k && es == s;
            row.union_match = eu == u;
        }
        if (v.overall == Overall::Open) rep.open_set.push_back(v.n);
        if (!v.skipped().empty()) rep.cap_skips.push_back(v.n);
        (row.verdict_match && row.attribution_match ? rep.agreements : rep.disagreements).push_back(v.n);
        if (!row.union_match) rep.union_differences.push_back(v.n);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

std::string to_string(Overall o) {
    switch (o) {
        case Overall::Excluded: return "excluded";
        case Overall::Open: return "open";
        case Overall::ExternallyKnown: return "externally_known";
    }
    return "?";
}

Overall overall_from_string(const std::string& s) {
    if (s == "excluded") return Overall::Excluded;
    if (s == "open") return Overall::Open;
    if (s == "externally_known") return Overall::ExternallyKnown;
    throw std::invalid_argument("unknown overall verdict: " + s);
}

json verdict_to_json(const Verdict& v, bool with_timing) {
    json j;
    j["n"] = v.n;
    j["r"] = v.r;
    j["order"] = natural_to_json(v.order);
    json fac = json::array();
    for (const auto& pf : v.factorization.factors)
        fac.push_back({{"prime", natural_to_json(pf.prime)}, {"exponent", pf.exponent}});
    j["factorization"] = fac;
    j["probabilistic"] = v.factorization.probabilistic;
    j["overall"] = to_string(v.overall);
    j["tier"] = to_string(v.tier);
    j["by"] = v.by;
    j["citation"] = v.citation;
    json outs = json::array();
    for (const auto& o : v.outcomes) outs.push_back(outcome_to_json(o, with_timing));
    j["outcomes"] = outs;
    return j;
}

Verdict verdict_from_json(const json& j) {
    Verdict v;
    v.n = j.at("n").get<std::uint64_t>();
    v.r = j.at("r").get<unsigned>();
    v.order = natural_from_json(j.at("order"));
    v.factorization.n = v.order;
    for (const auto& pf : j.at("factorization"))
        v.factorization.factors.push_back({natural_from_json(pf.at("prime")), pf.at("exponent").get<unsigned>()});
    v.factorization.probabilistic = j.at("probabilistic").get<bool>();
    v.overall = overall_from_string(j.at("overall").get<std::string>());
    v.tier = tier_from_string(j.at("tier").get<std::string>());
    v.by = j.at("by").get<std::string>();
    v.citation = j.at("citation").get<std::string>();
    for (const auto& o : j.at("outcomes")) v.outcomes.push_back(outcome_from_json(o));
    return v;
}

Format format_from_string(const std::string& s) {
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    throw std::invalid_argument("format must be json or csv");
}

CsvRow csv_row(const Verdict& v) {
    return {v.n, v.r, v.order, to_string(v.overall), to_string(v.tier), join(v.fired(), ';'), join(v.skipped(), ';')};
}

std::string emit(const std::vector<Verdict>& verdicts, Format format, const Caps& caps, bool with_timing) {
    if (format == Format::Csv) {
        std::string s = "n,r,order,overall,tier,criteria_fired,skips\n";
        for (const auto& v : verdicts) {
            const CsvRow row = csv_row(v);
            s += std::to_string(row.n) + "," + std::to_string(row.r) + "," + row.order.get_str() + "," +
                 row.overall + "," + row.tier + "," + row.criteria_fired + "," + row.skips + "\n";
        }
        return s;
    }
    json j;
    j["caps"] = caps_to_json(caps);
    j["seed"] = caps.seed;
    j["version"] = kVersion;
    json vs = json::array();
    for (const auto& v : verdicts) vs.push_back(verdict_to_json(v, with_timing));
    j["verdicts"] = vs;
    return j.dump(2) + "\n";
}

Report parse_json_report(const std::string& text) {
    const json j = json::parse(text);
    Report rep;
    rep.caps = caps_from_json(j.at("caps"));
    rep.caps.seed = j.at("seed").get<std::uint64_t>();
    rep.version = j.at("version").get<std::string>();
    for (const auto& v : j.at("verdicts")) rep.verdicts.push_back(verdict_from_json(v));
    return rep;
}

std::vector<CsvRow> parse_csv_report(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "n,r,order,overall,tier,criteria_fired,skips")
        throw std::invalid_argument("missing or unexpected CSV header");
    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 7) throw std::invalid_argument("CSV row has " + std::to_string(f.size()) + " fields: " + line);
        rows.push_back({std::stoull(f[0]), static_cast<unsigned>(std::stoul(f[1])), Natural(f[2]), f[3], f[4], f[5], f[6]});
    }
    return rows;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path + " for reading");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

namespace {

const std::vector<std::pair<const char*, std::uint64_t Caps::*>>& caps_fields() {
    static const std::vector<std::pair<const char*, std::uint64_t Caps::*>> fields = {
        {"max_field_degree", &Caps::max_field_degree},
        {"max_unity_enum", &Caps::max_unity_enum},
        {"factor_budget", &Caps::factor_budget},
        {"search_node_budget", &Caps::search_node_budget},
        {"max_lambda_bits", &Caps::max_lambda_bits},
        {"seed", &Caps::seed},
        {"thread_count", &Caps::thread_count},
    };
    return fields;
}

}  // namespace

Caps parse_caps(const std::string& text) {
    Caps caps;
    std::istringstream in(text);
    std::string line;
    unsigned lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("caps line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        bool known = false;
        for (const auto& [name, member] : caps_fields()) {
            if (key != name) continue;
            known = true;
            std::size_t used = 0;
            std::uint64_t x = 0;
            try {
                x = std::stoull(value, &used, 0);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != value.size() || value.empty() || value[0] == '-')
                throw std::invalid_argument("caps line " + std::to_string(lineno) + ": bad value for " + key);
            if (x == 0) throw std::invalid_argument("caps line " + std::to_string(lineno) + ": " + key + " must be positive");
            caps.*member = x;
        }
        if (!known) throw std::invalid_argument("caps line " + std::to_string(lineno) + ": unknown key " + key);
    }
    return caps;
}

Caps load_caps(const std::string& path) {
    try {
        return parse_caps(read_file(path));
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

std::string caps_to_text(const Caps& caps) {
    std::string s;
    for (const auto& [name, member] : caps_fields()) s += std::string(name) + " = " + std::to_string(caps.*member) + "\n";
    return s;
}

json caps_to_json(const Caps& caps) {
    json j;
    for (const auto& [name, member] : caps_fields()) j[name] = caps.*member;
    return j;
}

Caps caps_from_json(const json& j) {
    Caps caps;
    for (const auto& [name, member] : caps_fields())
        if (j.contains(name)) caps.*member = j.at(name).get<std::uint64_t>();
    return caps;
}

std::optional<std::string> soundness_conflict(const Verdict& v, const Caps& caps) {
    if (v.overall != Overall::Excluded) return std::nullopt;
    if (sphere_size(v.n, v.r) > 100) return std::nullopt;
    const OracleVerdict o = oracle_verdict(static_cast<unsigned>(v.n), v.r, caps);
    if (o.status != OracleStatus::Exists) return std::nullopt;
    return "n = " + std::to_string(v.n) + ", r = " + std::to_string(v.r) + ": " + v.by +
           " excludes a dimension with an explicit code in " + o.witness->group.str();
}

bool SelftestReport::all_passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SelftestResult& s) { return s.passed; });
}

json SelftestReport::to_json() const {
    json j;
    json ss = json::array();
    for (const auto& s : suites)
        ss.push_back({{"name", s.name}, {"passed", s.passed}, {"detail", s.detail}, {"seconds", s.seconds}});
    j["suites"] = ss;
    j["soundness_ok"] = soundness_ok;
    j["passed"] = all_passed();
    return j;
}

namespace {

std::uint64_t order_mod(std::uint64_t a, std::uint64_t m) {
    std::uint64_t x = a % m, k = 1;
    while (x != 1) {
        x = x * a % m;
        ++k;
    }
    return k;
}

bool small_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// gcd of p^l - 1 and every 2^i - p^j with 2^i = p^j (mod v), (i, j) != (0, 0).
Natural brute_lambda(std::uint64_t v, std::uint64_t p) {
    const std::uint64_t h2 = order_mod(2, v), hp = order_mod(p, v);
    std::uint64_t l = hp;
    if (hp % 2 == 0) {
        std::uint64_t x = 1;
        for (std::uint64_t k = 0; k < hp / 2; ++k) x = x * p % v;
        if (x == v - 1) l = hp / 2;
    }
    Natural g;
    mpz_ui_pow_ui(g.get_mpz_t(), p, l);
    g -= 1;
    std::uint64_t two_i = 1;
    for (std::uint64_t i = 0; i <= h2; ++i, two_i = two_i * 2 % v) {
        std::uint64_t p_j = 1;
        for (std::uint64_t j = 0; j <= hp; ++j, p_j = p_j * p % v) {
            if ((i == 0 && j == 0) || two_i != p_j) continue;
            Natural a, b;
            mpz_ui_pow_ui(a.get_mpz_t(), 2, i);
            mpz_ui_pow_ui(b.get_mpz_t(), p, j);
            g = gcd(g, a > b ? Natural(a - b) : Natural(b - a));
        }
    }
    return g;
}

SelftestResult suite_lambda() {
    SelftestResult r{"lambda_generators_vs_pair_gcd", true, "", 0};
    unsigned compared = 0;
    // Prime divisors of 2n^2+2n+1 are 1 mod 4.
    for (std::uint64_t v = 5; v < 500 && r.passed; v += 4) {
        if (!small_prime(v)) continue;
        for (std::uint64_t p = 2; p < 50; ++p) {
            if (!small_prime(p) || p == v) continue;
            std::uint64_t n = 0;
            for (std::uint64_t k = 2; k < 2 * v * p + 4 && !n; ++k)
                if ((2 * k * k + 2 * k + 1) % v == 0 && (2 * k) % p == 0) n = k;
            const LambdaCertificate c = lambda_value(n, from_u64(v), from_u64(p));
            if (!c.lambda || *c.lambda != brute_lambda(v, p)) {
                r.passed = false;
                r.detail = "mismatch at v = " + std::to_string(v) + ", p = " + std::to_string(p);
                break;
            }
            ++compared;
        }
    }
    if (r.passed) r.detail = std::to_string(compared) + " pairs";
    return r;
}

GroupRingElement random_element(const AbelianGroup& g, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> dist(-50, 50);
    std::vector<Integer> c(g.order());
    for (auto& x : c) x = dist(rng);
    return GroupRingElement(g, c);
}

SelftestResult suite_inversion(const Caps& caps) {
    SelftestResult r{"inversion_roundtrip", true, "", 0};
    std::mt19937_64 rng(mix_seed(caps.seed, 101));
    unsigned trials = 0;
    for (std::uint64_t w : {13ULL, 25ULL}) {
        const AbelianGroup g = AbelianGroup::cyclic(w);
        const AuxField aux = make_aux_field(w, caps.seed);
        std::vector<GroupRingElement> xs = {GroupRingElement::identity(g), GroupRingElement::all_ones(g),
                                            build_T(g, w == 13 ? std::vector<std::uint64_t>{1, 5}
                                                               : std::vector<std::uint64_t>{1, 7})};
        for (int i = 0; i < 20; ++i) xs.push_back(random_element(g, rng));
        for (const auto& x : xs) {
            ++trials;
            if (!inversion_roundtrip(x, aux)) {
                r.passed = false;
                r.detail = "roundtrip failed in C" + std::to_string(w);
                return r;
            }
        }
    }
    r.detail = std::to_string(trials) + " elements";
    return r;
}

SelftestResult suite_power_map(const Caps& caps) {
    SelftestResult r{"power_map_homomorphism", true, "", 0};
    std::mt19937_64 rng(mix_seed(caps.seed, 102));
    unsigned trials = 0;
    for (const auto& orders : std::vector<std::vector<std::uint64_t>>{{13}, {25}, {5, 5}, {2, 6}, {3, 9}}) {
        const AbelianGroup g(orders);
        for (std::int64_t t = -7; t <= 7; ++t) {
            if (std::gcd(static_cast<std::uint64_t>(t < 0 ? -t : t), g.exponent()) != 1) continue;
            const GroupRingElement a = random_element(g, rng), b = random_element(g, rng);
            ++trials;
            if (power_map(a * b, t) != power_map(a, t) * power_map(b, t) ||
                power_map(a + b, t) != power_map(a, t) + power_map(b, t)) {
                r.passed = false;
                r.detail = "failed in " + g.str() + " at t = " + std::to_string(t);
                return r;
            }
        }
    }
    r.detail = std::to_string(trials) + " pairs";
    return r;
}

SelftestResult suite_sphere() {
    SelftestResult r{"sphere_size_vs_enumeration", true, "", 0};
    for (unsigned n = 1; n <= 6; ++n)
        for (unsigned rad = 0; rad <= 6; ++rad)
            if (from_u64(enumerate_sphere(n, rad).size()) != sphere_size(n, rad)) {
                r.passed = false;
                r.detail = "n = " + std::to_string(n) + ", r = " + std::to_string(rad);
                return r;
            }
    r.detail = "n, r <= 6";
    return r;
}

SelftestResult suite_polynomials() {
    SelftestResult r{"sphere_size_polynomials", true, "", 0};
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        const Natural nn = from_u64(n);
        const Natural r2 = 2 * nn * nn + 2 * nn + 1;
        const Natural r3 = 1 + 6 * nn * nn + 4 * nn * (nn - 1) * (nn - 2) / 3;
        if (sphere_size(n, 2) != r2 || group_order_r2(n) != r2 || sphere_size(n, 3) != r3 || group_order_r3(n) != r3) {
            r.passed = false;
            r.detail = "n = " + std::to_string(n);
            return r;
        }
    }
    r.detail = "n <= 10000";
    return r;
}

SelftestResult suite_soundness(const Caps& caps, bool& sound) {
    SelftestResult r{"criteria_vs_oracle", true, "", 0};
    std::vector<std::string> notes;
    auto conflict = [&](const std::string& what) {
        sound = false;
        r.passed = false;
        notes.push_back(what);
    };
    // Radius 2: every dimension whose sphere fits a small search.
    for (unsigned n = 2; sphere_size(n, 2) <= 100; ++n) {
        const OracleVerdict o = oracle_verdict(n, 2, caps);
        const Verdict v = check(n, 2, caps);
        notes.push_back("r=2 n=" + std::to_string(n) + " oracle " + to_string(o.status) + ", criteria " + to_string(v.overall));
        if (o.status == OracleStatus::Exists)
            for (const auto& x : v.outcomes)
                if (x.excluded()) conflict(x.criterion + " excludes n = " + std::to_string(n) + ", r = 2");
    }
    // Radius 3, n = 2: the criteria still have to stay silent.
    const OracleVerdict o3 = oracle_verdict(2, 3, caps);
    notes.push_back("r=3 n=2 oracle " + to_string(o3.status));
    if (o3.status == OracleStatus::Exists) {
        if (v7_check(2).excluded()) conflict("v7 excludes n = 2, r = 3");
        if (orbit_check_r3(2, caps).excluded()) conflict("orbit_r3 excludes n = 2, r = 3");
    } else {
        conflict("oracle found no code for n = 2, r = 3");
    }
    r.detail = join(notes, ';');
    return r;
}

}  // namespace

SelftestReport selftest(const Caps& caps) {
    SelftestReport rep;
    auto run = [&](auto&& f) {
        const auto t0 = std::chrono::steady_clock::now();
        SelftestResult s = f();
        s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rep.suites.push_back(std::move(s));
    };
    run([] { return suite_lambda(); });
    run([&] { return suite_inversion(caps); });
    run([&] { return suite_power_map(caps); });
    run([] { return suite_sphere(); });
    run([] { return suite_polynomials(); });
    run([&] { return suite_soundness(caps, rep.soundness_ok); });
    return rep;
}

}  // namespace lee
