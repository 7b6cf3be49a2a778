// Run driver: dispatches a parsed configuration to the computation modules
// and emits deterministic CSV reports (17 significant digits, canonical row
// order, byte-identical across repeated runs and worker counts).
#pragma once

#include <string>
#include <vector>

#include "cubeavg/config.hpp"

namespace cubeavg {

inline constexpr const char* kToolVersion = "cubeavg 0.1.0";

struct SummaryRow {
    std::string type;       // "meta" or "check"
    std::string name;
    std::string value;
    std::string threshold;  // empty for meta rows
    std::string status;     // "pass"/"fail" for checks, empty for meta
};

struct RunReport {
    int exit_code = 0;  // 0 = all checks pass, 1 = some check failed
    std::vector<SummaryRow> rows;
    std::vector<std::string> files;
};

// Round-trippable decimal rendering of a binary64 (17 significant digits).
std::string format_double(double v);

RunReport run(const RunConfig& config);

}  // namespace cubeavg
