#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace cstar::cli {

enum ExitCode : int { ok = 0, usage = 1, parse_error = 2, budget = 3, certification = 4 };

/// Entry point shared by the executable and the tests; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Throws std::invalid_argument naming the first offending key of a `dist --json` report.
void validate_dist_report(const nlohmann::json& report);

}  // namespace cstar::cli
