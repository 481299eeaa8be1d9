#include "lift/report.hpp"

#include <sstream>

namespace lift {

bool VerificationReport::pass() const
{
    for (const auto& t : trials)
        if (!t.zero())
            return false;
    for (const auto& e : entries)
        if (!e.pass)
            return false;
    return true;
}

bool VerificationReport::any_nonzero() const
{
    for (const auto& t : trials)
        if (!t.zero())
            return true;
    return false;
}

void VerificationReport::merge(const VerificationReport& other, const std::string& label_prefix)
{
    for (auto t : other.trials) {
        if (!label_prefix.empty())
            t.label = t.label.empty() ? label_prefix : label_prefix + " " + t.label;
        trials.push_back(std::move(t));
    }
    for (auto e : other.entries) {
        if (!label_prefix.empty())
            e.name = label_prefix + " " + e.name;
        entries.push_back(std::move(e));
    }
    terms_evaluated += other.terms_evaluated;
}

nlohmann::ordered_json VerificationReport::to_json() const
{
    nlohmann::ordered_json j;
    j["check"] = check;
    j["params"] = params;
    auto jt = nlohmann::ordered_json::array();
    for (const auto& t : trials) {
        nlohmann::ordered_json o;
        o["seed_offset"] = t.seed_offset;
        if (!t.label.empty())
            o["label"] = t.label;
        o["zero"] = t.zero();
        if (!t.zero())
            o["residual"] = rational_to_json(t.residual);
        jt.push_back(o);
    }
    j["trials"] = jt;
    if (!entries.empty()) {
        auto je = nlohmann::ordered_json::array();
        for (const auto& e : entries)
            je.push_back({{"name", e.name}, {"pass", e.pass}, {"detail", e.detail}});
        j["entries"] = je;
    }
    j["terms_evaluated"] = terms_evaluated;
    if (ms)
        j["ms"] = *ms;
    j["pass"] = pass();
    return j;
}

std::string VerificationReport::to_pretty() const
{
    std::ostringstream out;
    out << check << "  " << params.dump() << "\n";
    std::size_t zeros = 0;
    for (const auto& t : trials) {
        if (t.zero()) {
            ++zeros;
            continue;
        }
        out << "  trial " << t.seed_offset;
        if (!t.label.empty())
            out << " [" << t.label << "]";
        out << "  residual " << to_string(t.residual) << "\n";
    }
    if (!trials.empty())
        out << "  trials: " << zeros << "/" << trials.size() << " exactly zero\n";
    for (const auto& e : entries)
        out << "  " << (e.pass ? "ok    " : "FAIL  ") << e.name << (e.detail.empty() ? "" : "  " + e.detail) << "\n";
    out << "  terms evaluated: " << terms_evaluated << "\n";
    if (ms)
        out << "  wall time: " << *ms << " ms\n";
    out << "  result: " << (pass() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

}  // namespace lift
