// Subcommand drivers shared by the CLI binary and the end-to-end tests.
// Each echoes the resolved scenario to the log stream, writes its CSV
// deliverable, and returns the process exit status.

#pragma once

#include <ostream>

#include "cohdet/scenario.hpp"

namespace cohdet {

int run_sweep(const Scenario& scenario, std::ostream& log);
int run_balance(const Scenario& scenario, std::ostream& log);
int run_montecarlo(const Scenario& scenario, std::ostream& log);
int run_validate(const Scenario& scenario, std::ostream& log);

int run_mode(const Scenario& scenario, const std::string& mode, std::ostream& log);

}  // namespace cohdet
