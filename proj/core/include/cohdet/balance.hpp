/**
 * Closed-loop null balancing.
 *
 * A pair of coherent control beams drives the same ground-state pair as the
 * partially coherent field. The controller adjusts the control drive until
 * the total population transfer vanishes; the balanced control setting then
 * mirrors the unknown mutual coherence, which is read back through the
 * inverse of the ensemble coupling chain.
 *
 * Error signal: equator preparations beta = 0 and beta = pi/2 give
 * population signals z = sin(2|Omega_T|T) sin(phi_T + beta), so the pair
 * (z_cos + i z_sin)/(2T) estimates Omega_T itself in the small-angle
 * regime. The update is damped stochastic approximation with a decaying
 * gain, followed by one unit-gain refinement once the smoothed residual is
 * below tolerance; the refinement makes the final estimate a single-shot
 * measurement with predictable projection-noise variance.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

#include "cohdet/field.hpp"
#include "cohdet/qubit.hpp"
#include "cohdet/rng.hpp"

namespace cohdet {

struct ControlSetting {
    std::complex<double> alpha0{0.0};  // coherent amplitudes, dimensionless
    std::complex<double> alpha1{0.0};
    double psi = 0.0;       // relative phase between the two control beams
    double delta_l = 0.0;   // control detuning, rad/s, nonzero
    double g02 = 0.0;       // control coupling rates, rad/s
    double g12 = 0.0;

    void validate() const;
};

struct MeasurementRecord {
    double alpha = 0.0;  // preparation polar angle
    double beta = 0.0;   // preparation azimuth
    long long atoms_total = 0;
    long long count1 = 0;  // atoms found in the second basis state
    double T = 0.0;
};

struct BalanceResult {
    std::complex<double> omega1_final{0.0};
    std::complex<double> gamma12_estimate{0.0};  // W/m^2
    int iterations = 0;
    double residual_signal = 0.0;  // smoothed |z| that ended the loop
    bool converged = false;
};

struct ControlDrive {
    std::complex<double> omega1;  // two-photon control Rabi frequency
    double delta0pp;              // control light shifts of the two ground states
    double delta1pp;
};

struct LoopTraceRow {
    int iteration;
    std::complex<double> omega1;  // control drive after this update
    double z_sin;
    double z_cos;
    double gain;
};

struct BalanceOptions {
    int max_iter = 200;
    // Convergence threshold on the smoothed |z_cos + i z_sin|; NaN selects
    // the projection-noise floor 1/sqrt(atom_count).
    double tol = std::numeric_limits<double>::quiet_NaN();
    double gain0 = 1.0;
    double gain_decay = 40.0;  // gain_k = gain0 / (1 + k / gain_decay)
    double smoothing = 0.2;    // EMA weight of the newest measurement pair
    long long atom_count = 25;  // atoms per iteration, split across the two preparations
    // Interaction time per cycle; NaN auto-scales to |Omega_T(0)| T = pi/8.
    double interaction_time = std::numeric_limits<double>::quiet_NaN();
    bool measurement_noise = true;  // false: use exact population expectations
    bool photon_noise = false;      // per-cycle drive fluctuation about the ensemble mean
    std::vector<LoopTraceRow>* trace = nullptr;
    std::ostream* warnings = nullptr;  // small-angle violations are reported here
};

// Control-beam drive: omega1 = g02 g12 conj(alpha0) alpha1 e^{-i psi} / delta_l
// and light shifts delta_i'' = g_i2^2 |alpha_i|^2 / delta_l.
ControlDrive control_rabi(const ControlSetting& setting);

// Amplitudes realizing a requested control drive while keeping the two
// total light shifts degenerate: |alpha_i|^2 are chosen so the control
// shifts cancel the field-shift imbalance delta1 - delta0. alpha0 is kept
// real nonnegative and psi is taken from the template setting.
ControlSetting control_for_rabi(std::complex<double> omega1_target,
                                double field_shift_imbalance,
                                const ControlSetting& base);

// Total drive seen by an atom: field plus control.
RabiDrive total_drive(std::complex<double> omega0, std::complex<double> omega1,
                      std::pair<double, double> field_shifts,
                      std::pair<double, double> control_shifts);

// One prepare-evolve-project cycle on n_atoms atoms. count1 is binomial with
// success probability |C1(T)|^2 from the closed-form evolution; requires
// degenerate total shifts.
MeasurementRecord prepare_measure_cycle(double alpha, double beta, const RabiDrive& drive,
                                        double T, long long n_atoms, Rng& rng);
MeasurementRecord prepare_measure_cycle(double alpha, double beta, const RabiDrive& drive,
                                        double T, long long n_atoms, std::uint64_t seed);

// Quadrature pair from two equator preparations (beta = 0 and beta = pi/2):
// z = 2 count1/atoms - 1 each, returned as (z_sin, z_cos).
std::pair<double, double> quadrature_signals(const MeasurementRecord& rec_b0,
                                             const MeasurementRecord& rec_b90);

// Run the null-balancing loop against a hidden field pair. Exceeding
// max_iter yields converged = false, not an exception.
BalanceResult balance_loop(const FieldPairSpec& hidden, const AtomCavityParams& atom,
                           const ControlSetting& init, const BalanceOptions& options,
                           std::uint64_t seed);

// Invert the coupling chain at balance: the mutual coherence whose drive the
// control exactly cancels.
std::complex<double> gamma_from_control(const ControlSetting& setting,
                                        const AtomCavityParams& atom,
                                        const FieldPairSpec& spec);

}  // namespace cohdet
