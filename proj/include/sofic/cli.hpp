#pragma once

// Command-line front end: run orchestration and report emission.
// Exit codes: 0 success, 1 validation error, 2 computation-budget error.

#include <string>
#include <vector>

namespace sofic::cli {

constexpr const char* kToolVersion = "soficdim 1.0.0";
constexpr int kReportSchema = 1;

int run(const std::vector<std::string>& args);

}  // namespace sofic::cli
