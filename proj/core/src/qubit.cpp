#include "cohdet/qubit.hpp"

#include <cmath>
#include <stdexcept>

#include "cohdet/errors.hpp"

namespace cohdet {

namespace {

constexpr double step_bound = 0.05;       // dt * max rate must stay below this
constexpr double norm_drift_bound = 1e-8;

using cplx = std::complex<double>;

// Right-hand side of the two-level Schroedinger equation.
inline void rhs(const cplx& omega, double delta0, double delta1, const cplx& c0, const cplx& c1,
                cplx& d0, cplx& d1) {
    const cplx i(0.0, 1.0);
    d0 = i * (delta0 * c0 + omega * c1);
    d1 = i * (std::conj(omega) * c0 + delta1 * c1);
}

// One classic fourth-order step using the drive at t, t + dt/2, t + dt.
inline void rk4_step(QubitState& s, const cplx& w0, const cplx& wh, const cplx& w1, double delta0,
                     double delta1, double dt) {
    cplx k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b;
    rhs(w0, delta0, delta1, s.c0, s.c1, k1a, k1b);
    rhs(wh, delta0, delta1, s.c0 + 0.5 * dt * k1a, s.c1 + 0.5 * dt * k1b, k2a, k2b);
    rhs(wh, delta0, delta1, s.c0 + 0.5 * dt * k2a, s.c1 + 0.5 * dt * k2b, k3a, k3b);
    rhs(w1, delta0, delta1, s.c0 + dt * k3a, s.c1 + dt * k3b, k4a, k4b);
    s.c0 += dt / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
    s.c1 += dt / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
}

inline void check_norm(const QubitState& s) {
    if (std::abs(std::sqrt(s.norm_sq()) - 1.0) > norm_drift_bound)
        throw numerical_error("evolve_numeric: norm drift exceeded 1e-8");
}

}  // namespace

bool RabiDrive::degenerate(double T) const {
    // Degeneracy matters through the differential phase accumulated over the
    // evolution window, not through the raw shift difference.
    return std::abs(delta0 - delta1) * std::abs(T) <= 1e-9;
}

QubitState prepare_state(double alpha, double beta) {
    return {std::cos(alpha), std::polar(std::sin(alpha), beta)};
}

BlochVector bloch_vector(const QubitState& state) {
    if (std::abs(state.norm_sq() - 1.0) > 1e-6)
        throw std::domain_error("bloch_vector: state is not normalized");
    const cplx coh = std::conj(state.c0) * state.c1;
    return {2.0 * coh.real(), 2.0 * coh.imag(), std::norm(state.c0) - std::norm(state.c1)};
}

QubitState evolve_analytic(const QubitState& initial, const RabiDrive& drive, double T) {
    if (!drive.degenerate(T))
        throw std::domain_error("evolve_analytic: Stark shifts must be degenerate");
    const double theta = std::abs(drive.omega0) * T;
    const double phi = std::arg(drive.omega0);
    const cplx i(0.0, 1.0);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    // U = cos(theta) I + i sin(theta) (cos(phi) sigma_x - sin(phi) sigma_y)
    const cplx u01 = i * s * std::polar(1.0, phi);
    const cplx u10 = i * s * std::polar(1.0, -phi);
    return {c * initial.c0 + u01 * initial.c1, u10 * initial.c0 + c * initial.c1};
}

QubitState evolve_analytic(double alpha, double beta, const RabiDrive& drive, double T) {
    return evolve_analytic(prepare_state(alpha, beta), drive, T);
}

QubitState evolve_numeric(const QubitState& initial, const SampledDrive& drive, double delta0,
                          double delta1, double T) {
    if (drive.omega.size() < 3 || drive.omega.size() % 2 == 0)
        throw config_error("evolve_numeric: drive series must hold 2N+1 half-step samples");
    if (!(drive.dt > 0.0)) throw config_error("evolve_numeric: dt must be positive");
    const std::size_t steps = (drive.omega.size() - 1) / 2;
    if (std::abs(static_cast<double>(steps) * drive.dt - T) >
        1e-9 * std::max(T, drive.dt))
        throw config_error("evolve_numeric: drive series does not span T");
    const double rate_floor = std::max(std::abs(delta0), std::abs(delta1));
    double max_rate = rate_floor;
    for (const auto& w : drive.omega) max_rate = std::max(max_rate, std::abs(w));
    if (!(drive.dt * max_rate < step_bound))
        throw config_error("evolve_numeric: dt * max(|Omega|, |delta|) must be < 0.05");

    QubitState s = initial;
    for (std::size_t i = 0; i < steps; ++i) {
        rk4_step(s, drive.omega[2 * i], drive.omega[2 * i + 1], drive.omega[2 * i + 2], delta0,
                 delta1, drive.dt);
        check_norm(s);
    }
    return s;
}

QubitState evolve_numeric(const QubitState& initial,
                          const std::function<std::complex<double>(double)>& omega, double delta0,
                          double delta1, double T, double dt) {
    if (!(T > 0.0)) throw config_error("evolve_numeric: T must be positive");
    if (!(dt > 0.0)) throw config_error("evolve_numeric: dt must be positive");
    const auto steps = static_cast<std::size_t>(std::llround(std::max(1.0, T / dt)));
    const double h = T / static_cast<double>(steps);
    const double rate_floor = std::max(std::abs(delta0), std::abs(delta1));
    QubitState s = initial;
    cplx w1 = omega(0.0);
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) * h;
        const cplx w0 = w1;
        const cplx wh = omega(t + 0.5 * h);
        w1 = omega(t + h);
        const double max_rate =
            std::max({rate_floor, std::abs(w0), std::abs(wh), std::abs(w1)});
        if (!(h * max_rate < step_bound))
            throw config_error("evolve_numeric: dt * max(|Omega|, |delta|) must be < 0.05");
        rk4_step(s, w0, wh, w1, delta0, delta1, h);
        check_norm(s);
    }
    return s;
}

}  // namespace cohdet
