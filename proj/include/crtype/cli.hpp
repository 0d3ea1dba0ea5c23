#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "crtype/exprlang.hpp"
#include "json.hpp"

namespace crtype::cli {

inline constexpr const char* report_schema = "crtype-report/1";
inline constexpr const char* tool_name = "crtype";
inline constexpr const char* tool_version = "0.1.0";

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {"ttype", "ctype",         "nu",   "hormander", "contact",
                                                 "generic-z", "tangent-check", "levi", "bracket",   "report"};
  return names;
}

/// Runs one task against a parsed job. `params` holds the task's keys
/// ("cutoff", "f", "section", ...); missing keys take their defaults.
/// The result echoes the effective parameters under "task".
nlohmann::ordered_json execute(const std::string& type, const nlohmann::ordered_json& params, const JobFile& job);

/// Human-readable rendering of one task result.
std::string render_text(const nlohmann::ordered_json& result);

/// Entry point. Exit codes: 0 computed, 2 input error, 3 internal invariant
/// violation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crtype::cli
