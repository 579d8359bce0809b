#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cauchylab/config.hpp"

namespace cauchylab {

/// Subcommand names accepted by run().
const std::vector<std::string>& subcommands();

/// Runs one subcommand and writes its reports (CSV and JSON side by side,
/// plus run.json) into out_dir. Returns 0 when every check passes, 1 on a
/// bound violation and 2 on an input error; diagnostics go to `log`.
int run(const ExperimentConfig& cfg, const std::string& subcommand, const std::string& out_dir, std::ostream& log);

}  // namespace cauchylab
