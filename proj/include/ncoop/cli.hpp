#pragma once

#include "ncoop/config.hpp"

#include <ostream>
#include <string>

namespace ncoop {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitNumerical = 3,
    kExitBudget = 4,
};

struct RunOptions {
    std::string out_dir = "out";
    std::ostream* report = nullptr;   // code report and run notes
    std::ostream* progress = nullptr; // Monte Carlo progress
    unsigned threads = 0;
};

/// Number formatting used in every CSV: scientific, 9 significant digits,
/// locale independent.
std::string format_number(double v);

/// Prints the code report, then runs each mode and writes <out_dir>/<mode>.csv.
int run(const ScenarioConfig& cfg, const RunOptions& opt);

} // namespace ncoop
