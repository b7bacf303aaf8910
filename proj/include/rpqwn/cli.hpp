#pragma once

#include "rpqwn/report.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace rpqwn {

// Runs one CLI invocation in-process. Exit codes: 0 all checks passed,
// 1 at least one failed check, 2 usage or domain errors. When `captured`
// is non-null the assembled report is copied into it.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err, Report* captured = nullptr);

} // namespace rpqwn
