#pragma once

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rpqwn {

enum class CheckStatus { PASS, FAIL, SYMBOLIC, FLAGGED_SINGULAR };

std::string check_status_name(CheckStatus s);

struct Check {
    std::string name;
    CheckStatus status = CheckStatus::PASS;
    std::string witness; // empty = omitted from JSON
};

// One verification run: echoed inputs, optional result expression, and a
// flat list of named checks. Exit status 0 iff no check failed.
struct Report {
    std::string command;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    std::optional<std::string> family;
    std::optional<std::string> result_expr;
    std::vector<Check> checks;
    long long timing_ms = 0;

    void add_check(const std::string& name, bool pass, const std::string& witness = "");
    void add_status(const std::string& name, CheckStatus status,
                    const std::string& witness = "");

    bool any_fail() const;
    int exit_code() const { return any_fail() ? 1 : 0; }

    nlohmann::ordered_json to_json() const;
    std::string human_text() const;
};

} // namespace rpqwn
