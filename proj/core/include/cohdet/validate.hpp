// Runtime self-check suite: closed-form identities, integrator cross-checks,
// sampler moments, and frozen reference values. The analytic evolver is
// injectable so tests can prove the suite catches a broken propagator.

#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "cohdet/qubit.hpp"

namespace cohdet {

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;  // figure compared against bound
    double bound = 0.0;
    std::string note;
};

using AnalyticEvolver = std::function<QubitState(const QubitState&, const RabiDrive&, double)>;

struct ValidateOptions {
    // Scales Monte-Carlo sample counts; statistical bounds widen as
    // 1/sqrt(sample_budget) automatically because they are derived from the
    // realized sample count.
    double sample_budget = 1.0;
    std::uint64_t seed = 20260815;
    unsigned threads = 1;
    // Defaults to evolve_analytic when empty.
    AnalyticEvolver evolve;
};

std::vector<CheckResult> run_invariant_suite(const ValidateOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);

void print_check_table(const std::vector<CheckResult>& results, std::ostream& out);

}  // namespace cohdet
