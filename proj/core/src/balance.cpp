#include "cohdet/balance.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "cohdet/constants.hpp"
#include "cohdet/errors.hpp"
#include "cohdet/rabi.hpp"

namespace cohdet {

namespace {

using cplx = std::complex<double>;

constexpr double equator_alpha = 0.25 * pi;

double z_from_population(double p1) { return 2.0 * p1 - 1.0; }

}  // namespace

void ControlSetting::validate() const {
    if (delta_l == 0.0) throw std::domain_error("ControlSetting: delta_l must be nonzero");
    if (g02 < 0.0 || g12 < 0.0)
        throw std::domain_error("ControlSetting: coupling rates must be nonnegative");
}

ControlDrive control_rabi(const ControlSetting& setting) {
    setting.validate();
    ControlDrive out;
    out.omega1 = setting.g02 * setting.g12 * std::conj(setting.alpha0) * setting.alpha1 *
                 std::polar(1.0, -setting.psi) / setting.delta_l;
    out.delta0pp = setting.g02 * setting.g02 * std::norm(setting.alpha0) / setting.delta_l;
    out.delta1pp = setting.g12 * setting.g12 * std::norm(setting.alpha1) / setting.delta_l;
    return out;
}

ControlSetting control_for_rabi(cplx omega1_target, double field_shift_imbalance,
                                const ControlSetting& base) {
    base.validate();
    if (!(base.g02 > 0.0) || !(base.g12 > 0.0))
        throw std::domain_error("control_for_rabi: both control couplings must be positive");
    // Solve for the two beam powers: their product fixes |omega1|, their
    // difference cancels the field-shift imbalance so the total light
    // shifts stay degenerate.
    const double diff = field_shift_imbalance * base.delta_l;  // |g02 a0|^2 - |g12 a1|^2
    const double prod = std::abs(omega1_target * base.delta_l);
    const double root = std::sqrt(diff * diff + 4.0 * prod * prod);
    const double power0 = 0.5 * (root + diff);
    const double power1 = 0.5 * (root - diff);
    ControlSetting out = base;
    out.alpha0 = std::sqrt(power0) / base.g02;
    if (prod == 0.0) {
        out.alpha1 = std::sqrt(power1) / base.g12;
        return out;
    }
    const cplx want = omega1_target * base.delta_l * std::polar(1.0, base.psi) /
                      (base.g02 * base.g12);  // conj(alpha0) * alpha1
    out.alpha1 = want / out.alpha0.real();
    return out;
}

RabiDrive total_drive(cplx omega0, cplx omega1, std::pair<double, double> field_shifts,
                      std::pair<double, double> control_shifts) {
    RabiDrive drive;
    drive.omega0 = omega0 + omega1;
    drive.delta0 = field_shifts.first + control_shifts.first;
    drive.delta1 = field_shifts.second + control_shifts.second;
    return drive;
}

MeasurementRecord prepare_measure_cycle(double alpha, double beta, const RabiDrive& drive,
                                        double T, long long n_atoms, Rng& rng) {
    if (n_atoms <= 0) throw std::domain_error("prepare_measure_cycle: need at least one atom");
    if (!(T > 0.0)) throw std::domain_error("prepare_measure_cycle: T must be positive");
    const QubitState out = evolve_analytic(alpha, beta, drive, T);
    const double p1 = std::min(1.0, std::norm(out.c1));
    MeasurementRecord rec;
    rec.alpha = alpha;
    rec.beta = beta;
    rec.atoms_total = n_atoms;
    rec.T = T;
    rec.count1 = rng.binomial(n_atoms, p1);
    return rec;
}

MeasurementRecord prepare_measure_cycle(double alpha, double beta, const RabiDrive& drive,
                                        double T, long long n_atoms, std::uint64_t seed) {
    Rng rng(seed);
    return prepare_measure_cycle(alpha, beta, drive, T, n_atoms, rng);
}

std::pair<double, double> quadrature_signals(const MeasurementRecord& rec_b0,
                                             const MeasurementRecord& rec_b90) {
    const auto check = [](const MeasurementRecord& rec, double beta_want) {
        if (std::abs(rec.alpha - equator_alpha) > 1e-12)
            throw std::domain_error("quadrature_signals: preparations must sit on the equator");
        if (std::abs(rec.beta - beta_want) > 1e-12)
            throw std::domain_error("quadrature_signals: azimuths must be 0 and pi/2");
        if (rec.atoms_total <= 0)
            throw std::domain_error("quadrature_signals: record has no atoms");
    };
    check(rec_b0, 0.0);
    check(rec_b90, 0.5 * pi);
    if (rec_b0.atoms_total != rec_b90.atoms_total || rec_b0.T != rec_b90.T)
        throw std::domain_error("quadrature_signals: records must share atom count and timing");
    const auto z = [](const MeasurementRecord& rec) {
        return z_from_population(static_cast<double>(rec.count1) /
                                 static_cast<double>(rec.atoms_total));
    };
    return {z(rec_b0), z(rec_b90)};
}

BalanceResult balance_loop(const FieldPairSpec& hidden, const AtomCavityParams& atom,
                           const ControlSetting& init, const BalanceOptions& options,
                           std::uint64_t seed) {
    hidden.validate();
    init.validate();
    if (!(init.g02 > 0.0) || !(init.g12 > 0.0))
        throw config_error("balance_loop: control couplings must be positive");
    if (options.max_iter < 1) throw config_error("balance_loop: max_iter must be >= 1");
    if (!(options.gain0 > 0.0) || !(options.gain_decay > 0.0))
        throw config_error("balance_loop: gain schedule must be positive");
    if (!(options.smoothing > 0.0) || options.smoothing > 1.0)
        throw config_error("balance_loop: smoothing weight must lie in (0, 1]");
    if (options.measurement_noise && options.atom_count < 2)
        throw config_error("balance_loop: need at least two atoms per iteration");

    const cplx gamma_true = mutual_coherence(hidden);
    const cplx omega0_mean = ensemble_rabi_frequency(atom, hidden, gamma_true);
    const auto field_shifts = ac_stark_shifts(atom, hidden);
    const double imbalance = field_shifts.second - field_shifts.first;

    Rng rng(seed);
    cplx omega1 = control_rabi(init).omega1;

    double t_eff = options.interaction_time;
    if (std::isnan(t_eff)) {
        double scale = std::abs(omega0_mean + omega1);
        if (scale == 0.0)
            scale = std::abs(
                ensemble_rabi_frequency(atom, hidden, irradiance_from_occupation(hidden)));
        if (scale == 0.0)
            throw config_error("balance_loop: cannot auto-scale the interaction time; pass one");
        t_eff = pi / (8.0 * scale);
    } else if (!(t_eff > 0.0)) {
        throw config_error("balance_loop: interaction time must be positive");
    }

    const double tol =
        std::isnan(options.tol)
            ? 1.0 / std::sqrt(static_cast<double>(std::max(1ll, options.atom_count)))
            : options.tol;
    if (!(tol > 0.0)) throw config_error("balance_loop: tolerance must be positive");

    const long long atoms_per_prep = options.measurement_noise ? options.atom_count / 2 : 1;

    // Per-cycle realization of the field drive: the window average over one
    // interaction time fluctuates about the ensemble mean with the relative
    // variance of the window-averaged drive moment.
    const auto cycle_omega0 = [&]() -> cplx {
        if (!options.photon_noise || hidden.n_occ == 0.0 || omega0_mean == cplx{0.0})
            return omega0_mean;
        const double rel_var = 2.0 * pi / (t_eff * hidden.delta_omega) * (hidden.n_occ + 1.0) /
                               hidden.n_occ;
        return omega0_mean * (1.0 + rng.normal(0.0, std::sqrt(rel_var)));
    };

    const auto one_cycle = [&](double beta, const ControlDrive& control) -> double {
        const cplx omega0_cyc = cycle_omega0();
        while (std::abs(omega0_cyc + control.omega1) * t_eff > 0.25 * pi) {
            t_eff *= 0.5;
            if (options.warnings)
                *options.warnings
                    << "balance_loop: |Omega_T| T exceeded pi/4; halving T to " << t_eff << "\n";
        }
        const RabiDrive drive = total_drive(omega0_cyc, control.omega1, field_shifts,
                                            {control.delta0pp, control.delta1pp});
        if (options.measurement_noise) {
            const MeasurementRecord rec =
                prepare_measure_cycle(equator_alpha, beta, drive, t_eff, atoms_per_prep, rng);
            return z_from_population(static_cast<double>(rec.count1) /
                                     static_cast<double>(rec.atoms_total));
        }
        const QubitState out = evolve_analytic(equator_alpha, beta, drive, t_eff);
        return z_from_population(std::norm(out.c1));
    };

    BalanceResult result;
    cplx ema = 0.0;
    bool ema_started = false;

    for (int k = 0; k < options.max_iter; ++k) {
        const ControlSetting setting = control_for_rabi(omega1, imbalance, init);
        const ControlDrive control = control_rabi(setting);
        omega1 = control.omega1;

        const double z_sin = one_cycle(0.0, control);
        const double z_cos = one_cycle(0.5 * pi, control);
        const cplx z{z_cos, z_sin};
        ema = ema_started ? options.smoothing * z + (1.0 - options.smoothing) * ema : z;
        ema_started = true;
        result.residual_signal = std::abs(ema);

        if (result.residual_signal < tol) {
            if (options.trace) options.trace->push_back({k, omega1, z_sin, z_cos, 0.0});
            // One unit-gain step on a fresh pair: the final estimate is a
            // single-shot measurement, independent of the loop history.
            const double rz_sin = one_cycle(0.0, control);
            const double rz_cos = one_cycle(0.5 * pi, control);
            omega1 -= cplx{rz_cos, rz_sin} / (2.0 * t_eff);
            if (options.trace) options.trace->push_back({k + 1, omega1, rz_sin, rz_cos, 1.0});
            result.iterations = k + 2;
            result.converged = true;
            break;
        }

        const double gain = options.gain0 / (1.0 + static_cast<double>(k) / options.gain_decay);
        omega1 -= gain * z / (2.0 * t_eff);
        if (options.trace) options.trace->push_back({k, omega1, z_sin, z_cos, gain});
        result.iterations = k + 1;
    }

    const ControlSetting final_setting = control_for_rabi(omega1, imbalance, init);
    result.omega1_final = control_rabi(final_setting).omega1;
    result.gamma12_estimate = gamma_from_control(final_setting, atom, hidden);
    return result;
}

std::complex<double> gamma_from_control(const ControlSetting& setting,
                                        const AtomCavityParams& atom,
                                        const FieldPairSpec& spec) {
    const cplx omega1 = control_rabi(setting).omega1;
    const double ratio = (spec.omega_c + atom.delta) / spec.omega_c;
    return -omega1 * constants.hbar * constants.hbar * atom.delta /
           (constants.Z0 * atom.d02 * atom.d12) * (pi / atom.finesse) / (ratio * ratio);
}

}  // namespace cohdet
