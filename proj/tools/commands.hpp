#pragma once

#include "config.hpp"

namespace dramcell::cli {

int cmd_simulate(const RunConfig& cfg);
int cmd_extract(const RunConfig& cfg);
int cmd_analyze(const RunConfig& cfg);
int cmd_report(const RunConfig& cfg);

}  // namespace dramcell::cli
