/**
 * Reference integrator for the full lambda system: two ground states coupled
 * to one upper state by two classical drives, detuned by delta_ang.
 *
 * Equations (rotating frame at the common drive frequency, optical carrier
 * removed, upper state kept):
 *
 *   dC0/dt = -i conj(G0) C2
 *   dC1/dt = -i conj(G1) C2
 *   dC2/dt = -i (G0 C0 + G1 C1 + delta_ang C2),   G_i = g_i * drive_i.
 *
 * Eliminating C2 at large detuning reduces this to the ground-pair model of
 * qubit.hpp with Omega = conj(G0) G1 / delta_ang and light shifts
 * delta_i = |G_i|^2 / delta_ang, which is exactly what this module exists to
 * validate: the reference keeps the upper state and makes no elimination.
 */

#pragma once

#include <complex>

#include "cohdet/qubit.hpp"

namespace cohdet {

struct ThreeLevelState {
    std::complex<double> c0{1.0};
    std::complex<double> c1{0.0};
    std::complex<double> c2{0.0};

    double norm_sq() const { return std::norm(c0) + std::norm(c1) + std::norm(c2); }
};

struct ThreeLevelRun {
    ThreeLevelState final_state;
    double mean_upper_population = 0.0;  // time average of |c2|^2 over [0, T]
    long long steps = 0;
};

// Fixed-step 4th-order integration of the three-level equations.
// Requires dt small against every rate present: dt * max(delta_ang, |G_i|)
// < 0.1, else config_error. Norm drift beyond 1e-8 raises numerical_error.
ThreeLevelRun three_level_oracle(double g0, double g1, double delta_ang,
                                 std::complex<double> drive0, std::complex<double> drive1,
                                 double T, double dt,
                                 const ThreeLevelState& initial = ThreeLevelState{});

// Closed-form propagator for the same constant-drive problem, by splitting
// off the uncoupled dark superposition and solving the remaining 2x2 block
// exactly. Step-size-free cross-check for the integrator.
ThreeLevelState three_level_exact(double g0, double g1, double delta_ang,
                                  std::complex<double> drive0, std::complex<double> drive1,
                                  double T, const ThreeLevelState& initial = ThreeLevelState{});

// Two-level drive predicted by adiabatic elimination of the upper state.
RabiDrive raman_effective_drive(double g0, double g1, double delta_ang,
                                std::complex<double> drive0, std::complex<double> drive1);

}  // namespace cohdet
