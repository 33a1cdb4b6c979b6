/**
 * Exception taxonomy.
 *
 * std::domain_error is used directly for bad physical inputs (negative
 * temperature, |zeta| > 1, too-small detuning). The types below cover the
 * remaining failure classes the library distinguishes.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace cohdet {

// A run or call was configured outside its validity envelope (bad step size,
// malformed config file, unknown key).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// An integrator or solver produced a result that fails its own internal
// consistency check (norm drift, singular design matrix after pivoting).
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// A statistical estimator cannot be formed from the data given (degenerate
// phase set, empty sample list, too few repetitions).
class estimation_error : public std::runtime_error {
public:
    explicit estimation_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cohdet
