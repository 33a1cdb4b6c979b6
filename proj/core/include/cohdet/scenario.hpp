// Scenario resolution: one flat key = value schema covering every
// subcommand, explicit defaults for all physical parameters, and an echo
// block so no run starts with silent values.

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "cohdet/balance.hpp"
#include "cohdet/config.hpp"
#include "cohdet/field.hpp"

namespace cohdet {

struct Scenario {
    FieldPairSpec spec;
    AtomCavityParams atom;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string out_path;

    // sweep
    std::vector<double> sweep_n;
    std::vector<double> sweep_zeta;
    std::vector<double> n_T_grid;

    // balance
    ControlSetting control_init;
    BalanceOptions balance;
    int balance_repeats = 1;

    // montecarlo
    int mc_samples = 20000;
    double window_modes = 10.0;  // T * delta_omega / (2 pi)
    int classical_repeats = 1000;
    double classical_n_T = 1e3;
    long long trajectory_stride = 0;  // 0 disables the trajectory dump

    // validate
    double sample_budget = 1.0;
};

// Parses and validates the full scenario; mode is one of sweep, balance,
// montecarlo, validate. Throws config_error on unknown keys or invalid
// values, and std::domain_error when a physical record rejects its inputs.
Scenario resolve_scenario(const Config& config, const std::string& mode);

// Run header: every resolved parameter, one commented line each.
void echo_scenario(const Scenario& scenario, const std::string& mode, std::ostream& out);

// Comma-separated list of numbers, e.g. "10,1,0.01".
std::vector<double> parse_number_list(const std::string& text);

}  // namespace cohdet
