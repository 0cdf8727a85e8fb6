#include "leecheck/outcome.hpp"

#include <stdexcept>

namespace lee {

CriterionOutcome CriterionOutcome::not_applicable(std::string criterion, std::string reason) {
    CriterionOutcome o;
    o.criterion = std::move(criterion);
    o.status = Status::NotApplicable;
    o.reason = std::move(reason);
    return o;
}

CriterionOutcome CriterionOutcome::skipped(std::string criterion, const CapExceeded& cap) {
    CriterionOutcome o;
    o.criterion = std::move(criterion);
    o.status = Status::Skipped;
    o.reason = cap.cap();
    o.certificate["detail"] = cap.what();
    return o;
}

std::string to_string(Status s) {
    switch (s) {
        case Status::Excluded: return "excluded";
        case Status::NotApplicable: return "not_applicable";
        case Status::Undecided: return "undecided";
        case Status::Skipped: return "skipped";
    }
    return "?";
}

std::string to_string(Tier t) {
    switch (t) {
        case Tier::None: return "";
        case Tier::Unconditional: return "unconditional";
        case Tier::PerPaper: return "per_paper";
    }
    return "?";
}

Status status_from_string(const std::string& s) {
    if (s == "excluded") return Status::Excluded;
    if (s == "not_applicable") return Status::NotApplicable;
    if (s == "undecided") return Status::Undecided;
    if (s == "skipped") return Status::Skipped;
    throw std::invalid_argument("unknown status: " + s);
}

Tier tier_from_string(const std::string& s) {
    if (s.empty()) return Tier::None;
    if (s == "unconditional") return Tier::Unconditional;
    if (s == "per_paper") return Tier::PerPaper;
    throw std::invalid_argument("unknown tier: " + s);
}

json natural_to_json(const Natural& x) {
    if (sgn(x) >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 64) return to_u64(x);
    return x.get_str();
}

Natural natural_from_json(const json& j) {
    if (j.is_string()) return Natural(j.get<std::string>());
    if (j.is_number_unsigned()) return from_u64(j.get<std::uint64_t>());
    if (j.is_number_integer()) return Natural(static_cast<long>(j.get<std::int64_t>()));
    throw std::invalid_argument("expected an integer");
}

json outcome_to_json(const CriterionOutcome& o, bool with_timing) {
    json j;
    j["criterion"] = o.criterion;
    j["status"] = to_string(o.status);
    j["tier"] = to_string(o.tier);
    j["reason"] = o.reason;
    json params = json::object();
    for (const auto& [k, v] : o.params) params[k] = natural_to_json(v);
    j["params"] = params;
    j["certificate"] = o.certificate;
    if (with_timing) j["wall_seconds"] = o.wall_seconds;
    return j;
}

CriterionOutcome outcome_from_json(const json& j) {
    CriterionOutcome o;
    o.criterion = j.at("criterion").get<std::string>();
    o.status = status_from_string(j.at("status").get<std::string>());
    o.tier = tier_from_string(j.at("tier").get<std::string>());
    o.reason = j.at("reason").get<std::string>();
    for (const auto& [k, v] : j.at("params").items()) o.params[k] = natural_from_json(v);
    o.certificate = j.at("certificate");
    if (j.contains("wall_seconds")) o.wall_seconds = j["wall_seconds"].get<double>();
    return o;
}

}  // namespace lee
