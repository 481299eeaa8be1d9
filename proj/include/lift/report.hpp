#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lift/rational.hpp"

namespace lift {

struct TrialOutcome {
    std::uint64_t seed_offset = 0;
    Rational residual = 0;
    std::string label;  // optional: which sub-instance the trial belongs to

    bool zero() const { return is_zero(residual); }
};

// Named pass/fail line, for checks that are not a plain "residual == 0" per trial.
struct ReportEntry {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct VerificationReport {
    std::string check;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    std::vector<TrialOutcome> trials;
    std::vector<ReportEntry> entries;
    std::uint64_t terms_evaluated = 0;
    std::optional<std::int64_t> ms;  // wall time; only serialized when set

    bool pass() const;
    bool any_nonzero() const;
    void merge(const VerificationReport& other, const std::string& label_prefix = {});

    nlohmann::ordered_json to_json() const;
    std::string to_pretty() const;
};

}  // namespace lift
