#include "cohdet/three_level.hpp"

#include <cmath>
#include <stdexcept>

#include "cohdet/errors.hpp"

namespace cohdet {

namespace {

using cplx = std::complex<double>;

struct Couplings {
    cplx G0, G1;
    double delta;
};

ThreeLevelState rhs(const Couplings& cp, const ThreeLevelState& s) {
    const cplx i{0.0, 1.0};
    ThreeLevelState d;
    d.c0 = -i * std::conj(cp.G0) * s.c2;
    d.c1 = -i * std::conj(cp.G1) * s.c2;
    d.c2 = -i * (cp.G0 * s.c0 + cp.G1 * s.c1 + cp.delta * s.c2);
    return d;
}

ThreeLevelState axpy(const ThreeLevelState& a, double w, const ThreeLevelState& b) {
    return {a.c0 + w * b.c0, a.c1 + w * b.c1, a.c2 + w * b.c2};
}

void require_normalized(const ThreeLevelState& s) {
    if (std::abs(std::sqrt(s.norm_sq()) - 1.0) > 1e-9)
        throw std::domain_error("three_level: initial state must be normalized");
}

Couplings make_couplings(double g0, double g1, double delta_ang, cplx drive0, cplx drive1) {
    if (g0 < 0.0 || g1 < 0.0)
        throw std::domain_error("three_level: coupling rates must be nonnegative");
    return {g0 * drive0, g1 * drive1, delta_ang};
}

}  // namespace

ThreeLevelRun three_level_oracle(double g0, double g1, double delta_ang, cplx drive0,
                                 cplx drive1, double T, double dt,
                                 const ThreeLevelState& initial) {
    const Couplings cp = make_couplings(g0, g1, delta_ang, drive0, drive1);
    require_normalized(initial);
    if (!(T >= 0.0)) throw std::domain_error("three_level_oracle: T must be nonnegative");
    if (!(dt > 0.0)) throw config_error("three_level_oracle: dt must be positive");
    const double fastest =
        std::max({std::abs(delta_ang), std::abs(cp.G0), std::abs(cp.G1)});
    if (dt * fastest >= 0.1)
        throw config_error("three_level_oracle: dt does not resolve the fastest rate");

    ThreeLevelRun run;
    run.final_state = initial;
    if (T == 0.0) return run;

    const long long steps = std::max(1ll, std::llround(T / dt));
    const double h = T / static_cast<double>(steps);
    ThreeLevelState s = initial;
    double upper_acc = 0.0;
    double prev_upper = std::norm(s.c2);
    for (long long step = 0; step < steps; ++step) {
        const ThreeLevelState k1 = rhs(cp, s);
        const ThreeLevelState k2 = rhs(cp, axpy(s, 0.5 * h, k1));
        const ThreeLevelState k3 = rhs(cp, axpy(s, 0.5 * h, k2));
        const ThreeLevelState k4 = rhs(cp, axpy(s, h, k3));
        s.c0 += h / 6.0 * (k1.c0 + 2.0 * k2.c0 + 2.0 * k3.c0 + k4.c0);
        s.c1 += h / 6.0 * (k1.c1 + 2.0 * k2.c1 + 2.0 * k3.c1 + k4.c1);
        s.c2 += h / 6.0 * (k1.c2 + 2.0 * k2.c2 + 2.0 * k3.c2 + k4.c2);
        const double upper = std::norm(s.c2);
        upper_acc += 0.5 * (prev_upper + upper);
        prev_upper = upper;
        if (std::abs(std::sqrt(s.norm_sq()) - 1.0) > 1e-8)
            throw numerical_error("three_level_oracle: norm drift exceeded 1e-8");
    }
    run.final_state = s;
    run.mean_upper_population = upper_acc / static_cast<double>(steps);
    run.steps = steps;
    return run;
}

ThreeLevelState three_level_exact(double g0, double g1, double delta_ang, cplx drive0,
                                  cplx drive1, double T, const ThreeLevelState& initial) {
    const Couplings cp = make_couplings(g0, g1, delta_ang, drive0, drive1);
    require_normalized(initial);
    if (!(T >= 0.0)) throw std::domain_error("three_level_exact: T must be nonnegative");

    const double g = std::sqrt(std::norm(cp.G0) + std::norm(cp.G1));
    const cplx i{0.0, 1.0};
    if (g == 0.0) {
        ThreeLevelState out = initial;
        out.c2 *= std::exp(-i * delta_ang * T);
        return out;
    }

    // Ground-subspace frame: bright component couples to the upper state,
    // the orthogonal dark component is stationary.
    const cplx bright = (cp.G0 * initial.c0 + cp.G1 * initial.c1) / g;
    const cplx dark = (-std::conj(cp.G1) * initial.c0 + std::conj(cp.G0) * initial.c1) / g;

    // exp(-i H_b T) for H_b = [[0, g], [g, delta]]: split off the trace.
    const double half = 0.5 * delta_ang;
    const double omega = std::sqrt(half * half + g * g);
    const double c = std::cos(omega * T);
    const double s = omega == 0.0 ? T : std::sin(omega * T) / omega;
    const cplx phase = std::exp(-i * half * T);
    const cplx u_bb = phase * (c + i * half * s);
    const cplx u_be = phase * (-i * g * s);
    const cplx u_ee = phase * (c - i * half * s);

    const cplx bright_T = u_bb * bright + u_be * initial.c2;
    const cplx upper_T = u_be * bright + u_ee * initial.c2;

    ThreeLevelState out;
    out.c0 = (std::conj(cp.G0) * bright_T - cp.G1 * dark) / g;
    out.c1 = (std::conj(cp.G1) * bright_T + cp.G0 * dark) / g;
    out.c2 = upper_T;
    return out;
}

RabiDrive raman_effective_drive(double g0, double g1, double delta_ang, cplx drive0,
                                cplx drive1) {
    if (delta_ang == 0.0)
        throw std::domain_error("raman_effective_drive: zero detuning is singular");
    const Couplings cp = make_couplings(g0, g1, delta_ang, drive0, drive1);
    RabiDrive drive;
    drive.omega0 = std::conj(cp.G0) * cp.G1 / delta_ang;
    drive.delta0 = std::norm(cp.G0) / delta_ang;
    drive.delta1 = std::norm(cp.G1) / delta_ang;
    return drive;
}

}  // namespace cohdet
