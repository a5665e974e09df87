#pragma once
// The verification suites behind `qalg verify`: each bundles the residual
// operations of one module, swept over the configured parameter grid.
#include <string>
#include <vector>

#include "qalg/report.hpp"

namespace qalg {

const std::vector<std::string>& suite_names();

// name is one of suite_names() or "all"; throws invalid_argument for
// anything else.  Point-level failures inside a check become skipped
// samples, never aborts.
std::vector<SuiteReport> run_suites(const std::string& name,
                                    const ToolkitConfig& cfg);

}  // namespace qalg
