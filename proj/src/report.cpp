#include "rpqwn/report.hpp"

#include "rpqwn/errors.hpp"

#include <algorithm>
#include <sstream>

namespace rpqwn {

std::string check_status_name(CheckStatus s) {
    switch (s) {
    case CheckStatus::PASS: return "pass";
    case CheckStatus::FAIL: return "fail";
    case CheckStatus::SYMBOLIC: return "symbolic";
    case CheckStatus::FLAGGED_SINGULAR: return "flagged-singular";
    }
    throw EngineError("unreachable check status");
}

void Report::add_check(const std::string& name, bool pass, const std::string& witness) {
    checks.push_back({name, pass ? CheckStatus::PASS : CheckStatus::FAIL, witness});
}

void Report::add_status(const std::string& name, CheckStatus status,
                        const std::string& witness) {
    checks.push_back({name, status, witness});
}

bool Report::any_fail() const {
    return std::any_of(checks.begin(), checks.end(),
                       [](const Check& c) { return c.status == CheckStatus::FAIL; });
}

nlohmann::ordered_json Report::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["inputs"] = inputs;
    if (family) j["family"] = *family;
    if (result_expr) j["result_expr"] = *result_expr;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["status"] = check_status_name(c.status);
        if (!c.witness.empty()) jc["witness"] = c.witness;
        arr.push_back(std::move(jc));
    }
    j["checks"] = std::move(arr);
    j["timing_ms"] = timing_ms;
    return j;
}

std::string Report::human_text() const {
    std::ostringstream out;
    out << "command: " << command << "\n";
    if (family) out << "family: " << *family << "\n";
    if (result_expr) out << "result: " << *result_expr << "\n";
    for (const auto& c : checks) {
        out << "check " << c.name << ": " << check_status_name(c.status);
        if (!c.witness.empty()) out << " (" << c.witness << ")";
        out << "\n";
    }
    return out.str();
}

} // namespace rpqwn
