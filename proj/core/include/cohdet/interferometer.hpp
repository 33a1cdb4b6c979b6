/**
 * Classical baseline: beamsplitter interferometer with photodetection.
 *
 * The two fields interfere on a beamsplitter whose relative phase phi is
 * scanned; the two output irradiances I_{1,2} = I0 [1 +- Re(zeta e^{i phi})]
 * are detected and a least-squares fit over >= 3 phases recovers the complex
 * coherence. Photodetection statistics are thermal: counts have variance
 * mean * (1 + eta * n_mode) where n_mode is the detected occupation per
 * temporal mode, reproducing the closed-form measurement variance at the
 * working point.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "cohdet/field.hpp"
#include "cohdet/rng.hpp"

namespace cohdet {

struct PhaseScanMeasurement {
    std::vector<double> phases;  // rad, pairwise distinct mod 2pi
    // One (I1, I2) irradiance pair per phase, W/m^2.
    std::vector<std::pair<double, double>> mean_irradiances;
    double integration_time = 0.0;  // T per phase point, s
    double eta = 1.0;               // detector quantum efficiency
};

// Symmetric minimal phase set; minimizes the estimator condition number.
inline const std::vector<double> symmetric_three_phases{0.0, 2.0 * pi / 3.0, 4.0 * pi / 3.0};

// Both detector outputs for a given scan phase. I1 + I2 = 2*I0 for all
// zeta and phi.
std::pair<double, double> detector_irradiances(double i0, std::complex<double> zeta, double phi);

/**
 * Draws a photon count for irradiance I collected over time T.
 *
 * Mean count is eta*I*T*A/(hbar*omega_c). The count is negative-binomial
 * with shape M = T*delta_omega/(2 pi) (the number of temporal modes in the
 * window), sampled as a gamma-mixed Poisson, which gives variance
 * mean * (1 + mean/M) exactly; at I = I0 the excess equals eta*n_occ. Above
 * 50 expected counts a Gaussian with the same mean and variance is used.
 */
std::uint64_t simulate_photodetection(double irradiance, const FieldPairSpec& spec, double eta,
                                      double T, Rng& rng);

// Runs the full phase scan on a simulated field pair: for each phase both
// detector counts are drawn and converted back to irradiance estimates.
PhaseScanMeasurement measure_phase_scan(const FieldPairSpec& spec,
                                        const std::vector<double>& phases, double eta, double T,
                                        Rng& rng);

// Least-squares estimate of zeta from a phase scan, using both detectors of
// every phase point. Exact in the noiseless case; throws estimation_error if
// the phase set is degenerate.
std::complex<double> estimate_coherence_three_phase(const PhaseScanMeasurement& meas, double i0);

// Closed-form variance of a single irradiance measurement:
// sigma_I^2 = 2 * eta * I0 * (1 + eta*n) * hbar * omega_c / (T * A).
double classical_variance(double eta, double i0, double n_occ, double omega_c, double T,
                          double area);

// Detection floor expressed as a coherence magnitude: sqrt(sigma_I^2).
// Depends on the field brightness but not on zeta.
double noise_equivalent_coherence(double sigma_i_sq);

}  // namespace cohdet
