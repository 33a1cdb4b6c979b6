/**
 * Rabi drive of the ground-state pair by the sampled field modes.
 *
 * The two-photon Rabi frequency is proportional to the fields' mutual
 * coherence. Closed form at the ensemble level:
 *
 *   Omega0 = (Z0 d02 d12 / (hbar^2 delta)) * R * (F/pi) * Gamma12,
 *
 * with R = ((omega_c + delta)/omega_c)^2 the excited-transition frequency
 * ratio (kept exact; it shifts results at the few-1e-4 level). Per-sample,
 * the instantaneous drive is the double sum over mode pairs with beat-note
 * phases, factorized here into two single sums per evaluation.
 *
 * Per-mode couplings are normalized so that the ensemble average of the
 * sampled drive reproduces the closed form: each of the K modes carries
 * irradiance I0/(n K), and the pair weight divides by the per-mode detuning
 * omega_02 - omega_k exactly.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "cohdet/field.hpp"

namespace cohdet {

// Ensemble Rabi frequency for a given mutual coherence (units W/m^2).
std::complex<double> ensemble_rabi_frequency(const AtomCavityParams& atom,
                                             const FieldPairSpec& spec,
                                             std::complex<double> gamma12);

// Pair weights W_k used by the sampled drive: everything scalar in the
// coupling chain folded onto the second index, including the per-mode
// detuning denominator.
std::vector<double> mode_pair_weights(const AtomCavityParams& atom, const FieldPairSpec& spec);

// Instantaneous sampled Rabi frequency at time t (delay phases included).
std::complex<double> instantaneous_rabi(const FieldSample& sample, const AtomCavityParams& atom,
                                        const FieldPairSpec& spec, double t);

// Ensemble AC Stark shifts (delta0, delta1) of the two ground states.
// Every mode is taken at the central detuning delta; the band's spread adds
// only a ~(delta_omega/delta) relative correction.
std::pair<double, double> ac_stark_shifts(const AtomCavityParams& atom,
                                          const FieldPairSpec& spec);

// Same with the sampled per-mode occupations substituted for their means.
std::pair<double, double> ac_stark_shifts(const FieldSample& sample,
                                          const AtomCavityParams& atom,
                                          const FieldPairSpec& spec);

// Closed-form window-averaged second moment of the drive:
//   <Omega^2> = |Omega0|^2 * (1 + (2 pi / (T delta_omega)) * (n + 1) / n).
// Diverges at n = 0 (thrown as domain_error rather than evaluated).
double rabi_variance(std::complex<double> omega0, double T, double delta_omega, double n_occ);

struct WindowedRabiMoment {
    std::complex<double> mean;  // Monte-Carlo estimate of <Omega_bar^2>
    double std_error;           // standard error of the mean (complex modulus)
    int samples;
};

/**
 * Monte-Carlo estimate of the window-averaged drive moment <Omega_bar^2>
 * with Omega_bar = (1/T) integral of Omega(t) dt, evaluated in closed form
 * per sample through the window kernel sinc((omega_k - omega_k') T / 2).
 *
 * The sampled amplitudes reproduce normally ordered field moments; the
 * unconjugated square of the drive additionally contains one cross-field
 * contraction, which for a shared-source mode pair contributes zeta per
 * mode. That ordering term is added per sample, so the estimator converges
 * to the closed-form moment of rabi_variance including its (n+1)/n factor.
 *
 * The formula's excess coefficient 2 pi / (T delta_omega) is exact when the
 * mode spacing matches the window, K = T delta_omega / (2 pi); other grids
 * carry an O(1) discretization factor.
 */
WindowedRabiMoment windowed_rabi_moment(const AtomCavityParams& atom, const FieldPairSpec& spec,
                                        double T, int samples, std::uint64_t seed,
                                        unsigned threads = 1);

}  // namespace cohdet
