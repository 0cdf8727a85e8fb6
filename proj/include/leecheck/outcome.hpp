#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "leecheck/caps.hpp"
#include "leecheck/integer_core.hpp"

namespace lee {

using json = nlohmann::ordered_json;

enum class Status { Excluded, NotApplicable, Undecided, Skipped };

// Unconditional: reproducible from this artifact alone.
// PerPaper: additionally relies on a published characteristic-zero argument.
enum class Tier { None, Unconditional, PerPaper };

struct CriterionOutcome {
    std::string criterion;
    std::map<std::string, Natural> params;
    Status status = Status::Undecided;
    Tier tier = Tier::None;
    std::string reason;  // NotApplicable reason or the cap that was hit
    json certificate = json::object();
    double wall_seconds = 0.0;

    bool excluded() const { return status == Status::Excluded; }

    static CriterionOutcome not_applicable(std::string criterion, std::string reason);
    static CriterionOutcome skipped(std::string criterion, const CapExceeded& cap);
};

std::string to_string(Status s);
std::string to_string(Tier t);
Status status_from_string(const std::string& s);
Tier tier_from_string(const std::string& s);

// Numbers that fit in 64 bits are emitted as JSON numbers, larger ones as strings.
json natural_to_json(const Natural& x);
Natural natural_from_json(const json& j);

json outcome_to_json(const CriterionOutcome& o, bool with_timing = false);
CriterionOutcome outcome_from_json(const json& j);

}  // namespace lee
