/**
 * Small statistics helpers shared by the Monte-Carlo cross-checks: sample
 * moments for real and complex data and an ordinary least-squares line fit
 * with a standard error on the slope.
 */

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "cohdet/errors.hpp"

namespace cohdet {

inline double mean(const std::vector<double>& x) {
    if (x.empty()) throw estimation_error("mean: empty sample");
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

// Unbiased sample variance.
inline double variance(const std::vector<double>& x) {
    if (x.size() < 2) throw estimation_error("variance: need at least 2 samples");
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size() - 1);
}

inline std::complex<double> mean(const std::vector<std::complex<double>>& x) {
    if (x.empty()) throw estimation_error("mean: empty sample");
    std::complex<double> s = 0.0;
    for (auto v : x) s += v;
    return s / static_cast<double>(x.size());
}

// Total complex variance E|z - mean|^2 (sum of the two component variances),
// unbiased. This is the quantity the closed-form noise budget predicts for
// complex-valued estimators.
inline double complex_variance(const std::vector<std::complex<double>>& x) {
    if (x.size() < 2) throw estimation_error("complex_variance: need at least 2 samples");
    const std::complex<double> m = mean(x);
    double s = 0.0;
    for (auto v : x) s += std::norm(v - m);
    return s / static_cast<double>(x.size() - 1);
}

struct LineFit {
    double slope;
    double intercept;
    double slope_se;  // standard error of the slope from the residuals
};

// Ordinary least squares y = a + b x.
inline LineFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 3) throw estimation_error("linear_fit: need >= 3 paired points");
    double mx = mean(x), my = mean(y);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw estimation_error("linear_fit: degenerate abscissa");
    const double b = sxy / sxx;
    const double a = my - b * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (a + b * x[i]);
        ss_res += r * r;
    }
    const double sigma2 = ss_res / static_cast<double>(n - 2);
    return {b, a, std::sqrt(sigma2 / sxx)};
}

}  // namespace cohdet
