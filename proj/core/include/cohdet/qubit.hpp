/**
 * Two-level dynamics of the ground-state pair driven by a complex Rabi
 * frequency.
 *
 * States live in the interaction picture with the common AC Stark phase
 * removed, so the closed-form evolution is a pure rotation generated by
 * Omega = |Omega| e^{i phi}:
 *
 *   U(T) = cos(|Omega| T) I + i sin(|Omega| T) (cos phi sigma_x - sin phi sigma_y)
 *
 * which acts on the Bloch sphere (x = 2 Re c0* c1, y = 2 Im c0* c1,
 * z = |c0|^2 - |c1|^2, with |0> at the +z pole) as a rotation by
 * -2|Omega|T about the equatorial axis (cos phi, -sin phi, 0). The numeric
 * integrator solves the same equations with a time-dependent drive and
 * verifies norm conservation instead of imposing it.
 */

#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "cohdet/constants.hpp"

namespace cohdet {

struct QubitState {
    std::complex<double> c0;
    std::complex<double> c1;

    double norm_sq() const { return std::norm(c0) + std::norm(c1); }
};

struct BlochVector {
    double x;
    double y;
    double z;
};

struct RabiDrive {
    std::complex<double> omega0;  // complex Rabi frequency, rad/s
    double delta0 = 0.0;          // AC Stark shift of |0>, rad/s
    double delta1 = 0.0;          // AC Stark shift of |1>, rad/s

    // The closed-form solution exists only when the two shifts coincide.
    bool degenerate(double T) const;
};

// Equatorial-capable preparation cos(alpha)|0> + e^{i beta} sin(alpha)|1>.
QubitState prepare_state(double alpha, double beta);

// Bloch-sphere coordinates of a normalized pure state.
BlochVector bloch_vector(const QubitState& state);

// Closed-form evolution of an arbitrary initial state for time T under a
// constant drive with degenerate Stark shifts (common phase removed).
// Throws std::domain_error if the shifts are not degenerate over T.
QubitState evolve_analytic(const QubitState& initial, const RabiDrive& drive, double T);

// Same, starting from prepare_state(alpha, beta).
QubitState evolve_analytic(double alpha, double beta, const RabiDrive& drive, double T);

// Drive samples on the half-step grid t = 0, dt/2, dt, ..., T required by
// the fourth-order integrator: 2N + 1 values for N steps of size dt.
struct SampledDrive {
    std::vector<std::complex<double>> omega;
    double dt = 0.0;
};

/**
 * Fourth-order (classic Runge-Kutta) integration of
 *
 *   dc0/dt = i delta0 c0 + i Omega(t) c1
 *   dc1/dt = i conj(Omega(t)) c0 + i delta1 c1
 *
 * The step must satisfy dt * max(|Omega|, |delta_i|) < 0.05 (config_error
 * otherwise). The norm is checked after every step and never renormalized;
 * drift beyond 1e-8 raises numerical_error.
 */
QubitState evolve_numeric(const QubitState& initial, const SampledDrive& drive, double delta0,
                          double delta1, double T);

// Convenience overload sampling omega(t) on the fly with step dt (rounded to
// divide T evenly).
QubitState evolve_numeric(const QubitState& initial,
                          const std::function<std::complex<double>(double)>& omega, double delta0,
                          double delta1, double T, double dt);

}  // namespace cohdet
