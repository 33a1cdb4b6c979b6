#include "cohdet/validate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>

#include "cohdet/balance.hpp"
#include "cohdet/constants.hpp"
#include "cohdet/field.hpp"
#include "cohdet/interferometer.hpp"
#include "cohdet/noise_budget.hpp"
#include "cohdet/rabi.hpp"
#include "cohdet/rng.hpp"
#include "cohdet/three_level.hpp"

namespace cohdet {

namespace {

using cplx = std::complex<double>;

double rel(double a, double b) {
    const double scale = std::max(std::abs(b), 1e-300);
    return std::abs(a - b) / scale;
}

double state_distance(const QubitState& a, const QubitState& b) {
    return std::max(std::abs(a.c0 - b.c0), std::abs(a.c1 - b.c1));
}

CheckResult make_check(std::string name, double measured, double bound, std::string note) {
    CheckResult r;
    r.name = std::move(name);
    r.measured = measured;
    r.bound = bound;
    r.passed = measured <= bound;
    r.note = std::move(note);
    return r;
}

// Default operating point used by every check below: 780 nm carrier,
// relative bandwidth 1e-7, micron waist, high-finesse cavity.
FieldPairSpec reference_spec(double n_occ, cplx zeta) {
    FieldPairSpec spec;
    spec.omega_c = 2.0 * pi * constants.c0 / 780e-9;
    spec.delta_omega = 1e-7 * spec.omega_c;
    spec.n_occ = n_occ;
    spec.zeta = zeta;
    spec.tau = 0.0;
    spec.mode_count = 64;
    spec.w0 = 1e-6;
    spec.validate();
    return spec;
}

AtomCavityParams reference_atom(const FieldPairSpec& spec) {
    const double delta = 1e3 * spec.delta_omega;
    return AtomCavityParams(1.6e-29, 1.6e-29, delta, delta, 1.6e5, 1e18, 780e-9,
                            spec.delta_omega);
}

CheckResult check_frozen_references() {
    const FieldPairSpec spec = reference_spec(1.0, cplx{1.0, 0.0});
    const AtomCavityParams atom = reference_atom(spec);
    const BudgetParams params = BudgetParams::from(spec, atom);
    const NoiseBudget budget = assemble_budget(params, 0.1, 1.0, 1e3);

    double worst = 0.0;
    worst = std::max(worst, rel(spec.omega_c, 2414937906806222.1504));
    worst = std::max(worst, rel(irradiance_from_occupation(spec), 3.1157195328029110566));
    worst = std::max(worst, rel(params.atoms(), 25.306677951511175946));
    worst = std::max(worst, rel(std::abs(ensemble_rabi_frequency(atom, spec, mutual_coherence(spec))),
                                5699379.3398433421811));
    worst = std::max(worst, rel(budget.sigma_I_sq, 0.03883083282835836139));
    worst = std::max(worst, rel(budget.Q_mc, 0.00056174678021509092633));
    return make_check("frozen-references", worst, 1e-12,
                      "recomputation vs pinned release values");
}

CheckResult check_budget_identity() {
    const FieldPairSpec spec = reference_spec(1.0, cplx{1.0, 0.0});
    const BudgetParams params = BudgetParams::from(spec, reference_atom(spec));
    double worst = 0.0;
    for (double n : {0.01, 1.0, 10.0})
        for (double zeta : {1.0, 0.1, 0.01, 0.001})
            for (double n_T : {1.0, 1e2, 1e4, 1e6, 1e8}) {
                const NoiseBudget b = assemble_budget(params, zeta, n, n_T);
                const double q = enhancement_factor(zeta, n, n_T, params);
                worst = std::max(worst, rel(b.sigma_I_sq / b.sigma_Q_sq, q));
            }
    return make_check("budget-identity", worst, 1e-10,
                      "term-by-term assembly vs closed formula, 60 points");
}

CheckResult check_rotation_composition(const AnalyticEvolver& evolve, Rng& rng) {
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const RabiDrive drive{std::polar(0.5 + 1.5 * rng.uniform(), 2.0 * pi * rng.uniform()),
                              0.0, 0.0};
        const double t1 = 0.1 + 1.9 * rng.uniform();
        const double t2 = 0.1 + 1.9 * rng.uniform();
        const QubitState init = prepare_state(pi * rng.uniform(), 2.0 * pi * rng.uniform());
        const QubitState split = evolve(evolve(init, drive, t1), drive, t2);
        const QubitState whole = evolve(init, drive, t1 + t2);
        worst = std::max(worst, state_distance(split, whole));
    }
    return make_check("rotation-composition", worst, 1e-12,
                      "U(T2) U(T1) vs U(T1+T2), 20 random drives");
}

CheckResult check_unitarity(const AnalyticEvolver& evolve, Rng& rng) {
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const RabiDrive drive{std::polar(0.5 + 1.5 * rng.uniform(), 2.0 * pi * rng.uniform()),
                              0.0, 0.0};
        const QubitState init = prepare_state(pi * rng.uniform(), 2.0 * pi * rng.uniform());
        const QubitState out = evolve(init, drive, 0.2 + 3.0 * rng.uniform());
        worst = std::max(worst, std::abs(out.norm_sq() - 1.0));
    }
    return make_check("unitarity", worst, 1e-12, "norm preservation of the closed form");
}

CheckResult check_analytic_vs_numeric(const AnalyticEvolver& evolve, Rng& rng) {
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        const cplx omega = std::polar(1.0, 2.0 * pi * rng.uniform());
        const RabiDrive drive{omega, 0.0, 0.0};
        const double T = 0.5 + (2.0 * pi - 0.5) * rng.uniform();
        const QubitState init = prepare_state(pi * rng.uniform(), 2.0 * pi * rng.uniform());
        const QubitState closed = evolve(init, drive, T);
        const QubitState numeric = evolve_numeric(
            init, [omega](double) { return omega; }, 0.0, 0.0, T, 0.01);
        worst = std::max(worst, state_distance(closed, numeric));
    }
    return make_check("analytic-vs-numeric", worst, 1e-8,
                      "constant drive, fourth-order integrator at step 0.01/|Omega|");
}

CheckResult check_three_level_integrator() {
    const cplx drive0 = std::polar(1.0, 0.3);
    const cplx drive1 = std::polar(0.8, -1.1);
    const ThreeLevelRun run = three_level_oracle(0.9, 1.1, 5.0, drive0, drive1, 7.3, 0.002);
    const ThreeLevelState exact = three_level_exact(0.9, 1.1, 5.0, drive0, drive1, 7.3);
    const double worst = std::max({std::abs(run.final_state.c0 - exact.c0),
                                   std::abs(run.final_state.c1 - exact.c1),
                                   std::abs(run.final_state.c2 - exact.c2)});
    return make_check("three-level-integrator", worst, 1e-8,
                      "fixed-step integration vs closed-form propagator");
}

CheckResult check_adiabatic_elimination() {
    const double rho = 100.0;  // detuning over single-photon coupling
    const double g = 1.0 / rho;
    const cplx drive0{1.0, 0.0};
    const cplx drive1 = std::polar(1.0, 0.7);
    const RabiDrive reduced = raman_effective_drive(g, g, 1.0, drive0, drive1);
    const double T = (pi / 3.0) / std::abs(reduced.omega0);
    const ThreeLevelRun run = three_level_oracle(g, g, 1.0, drive0, drive1, T, 0.04);
    const QubitState two = evolve_analytic(prepare_state(0.0, 0.0), reduced, T);
    const double measured = std::abs(std::norm(run.final_state.c1) - std::norm(two.c1));
    return make_check("adiabatic-elimination", measured, 10.0 / (rho * rho),
                      "ground-pair populations, detuning 100x the coupling");
}

CheckResult check_sampler_moments(const ValidateOptions& options, Rng& rng) {
    const FieldPairSpec spec = reference_spec(1.0, std::polar(0.3, pi / 4.0));
    const int samples = std::max(100, static_cast<int>(std::ceil(4000 * options.sample_budget)));
    std::vector<FieldSample> draws;
    draws.reserve(static_cast<std::size_t>(samples));
    for (int m = 0; m < samples; ++m) draws.push_back(sample_field_modes(spec, rng));
    const cplx emp = empirical_mutual_coherence(draws, spec);
    const cplx exact = mutual_coherence(spec);
    const double i0 = irradiance_from_occupation(spec);
    const double bound = 5.0 * i0 / std::sqrt(static_cast<double>(spec.mode_count) * samples);
    return make_check("sampler-moments", std::abs(emp - exact), bound,
                      "empirical mutual coherence vs ensemble value, 5 sigma");
}

CheckResult check_windowed_moment(const ValidateOptions& options) {
    FieldPairSpec spec = reference_spec(1.0, cplx{1.0, 0.0});
    spec.mode_count = 16;
    const AtomCavityParams atom = reference_atom(spec);
    const double T = 2.0 * pi * spec.mode_count / spec.delta_omega;  // commensurate window
    const int samples = std::max(100, static_cast<int>(std::ceil(600 * options.sample_budget)));
    const WindowedRabiMoment moment =
        windowed_rabi_moment(atom, spec, T, samples, options.seed + 17, options.threads);
    const cplx omega0 = ensemble_rabi_frequency(atom, spec, mutual_coherence(spec));
    const double closed = rabi_variance(omega0, T, spec.delta_omega, spec.n_occ);
    const double measured = std::abs(moment.mean - closed) / closed;
    const double bound = 6.0 * moment.std_error / closed;
    return make_check("windowed-moment", measured, bound,
                      "Monte-Carlo drive moment vs closed form, 6 sigma");
}

CheckResult check_classical_recovery() {
    const cplx zeta = std::polar(0.3, pi / 4.0);
    const FieldPairSpec spec = reference_spec(1.0, zeta);
    const double i0 = irradiance_from_occupation(spec);
    PhaseScanMeasurement meas;
    meas.phases = symmetric_three_phases;
    for (double phi : meas.phases)
        meas.mean_irradiances.push_back(detector_irradiances(i0, zeta, phi));
    meas.integration_time = 1.0;
    const cplx est = estimate_coherence_three_phase(meas, i0);
    return make_check("classical-recovery", std::abs(est - zeta), 1e-12,
                      "noiseless three-phase least squares");
}

CheckResult check_nec_independence() {
    const FieldPairSpec spec = reference_spec(1.0, cplx{0.0, 0.0});
    const BudgetParams params = BudgetParams::from(spec, reference_atom(spec));
    const double reference =
        noise_equivalent_coherence(assemble_budget(params, 0.0, 1.0, 1e3).sigma_I_sq);
    double worst = 0.0;
    for (double zeta : {0.001, 0.01, 0.1, 1.0}) {
        const double nec =
            noise_equivalent_coherence(assemble_budget(params, zeta, 1.0, 1e3).sigma_I_sq);
        worst = std::max(worst, std::abs(nec - reference));
    }
    return make_check("nec-independence", worst, 0.0,
                      "detection floor must not depend on the coherence");
}

CheckResult check_balance_noiseless(const ValidateOptions& options) {
    const FieldPairSpec hidden = reference_spec(1.0, std::polar(0.2, 0.9));
    const AtomCavityParams atom = reference_atom(hidden);
    ControlSetting init;
    init.g02 = 2.0 * pi * 1e6;
    init.g12 = 2.0 * pi * 1e6;
    init.psi = 0.3;
    init.delta_l = atom.delta_l;
    BalanceOptions loop;
    loop.measurement_noise = false;
    loop.photon_noise = false;
    loop.tol = 1e-4;
    loop.max_iter = 200;
    const BalanceResult result = balance_loop(hidden, atom, init, loop, options.seed + 23);
    const cplx truth = mutual_coherence(hidden);
    const double measured =
        result.converged ? std::abs(result.gamma12_estimate - truth) / std::abs(truth) : 1.0;
    return make_check("balance-noiseless", measured, 1e-6,
                      "noise-free loop must recover the hidden coherence");
}

CheckResult check_coupling_roundtrip() {
    const FieldPairSpec spec = reference_spec(1.0, std::polar(0.4, -0.6));
    const AtomCavityParams atom(1.6e-29, 1.3 * 1.6e-29, 1e3 * spec.delta_omega,
                                1e3 * spec.delta_omega, 1.6e5, 1e18, 780e-9, spec.delta_omega);
    const cplx gamma = mutual_coherence(spec);
    const cplx omega0 = ensemble_rabi_frequency(atom, spec, gamma);
    const auto shifts = ac_stark_shifts(atom, spec);
    ControlSetting base;
    base.g02 = 2.0 * pi * 1e6;
    base.g12 = 2.0 * pi * 1e6;
    base.psi = 0.4;
    base.delta_l = atom.delta_l;
    const ControlSetting setting =
        control_for_rabi(-omega0, shifts.second - shifts.first, base);
    const ControlDrive drive = control_rabi(setting);
    double worst = std::abs(drive.omega1 + omega0) / std::abs(omega0);
    const double total0 = shifts.first + drive.delta0pp;
    const double total1 = shifts.second + drive.delta1pp;
    worst = std::max(worst, std::abs(total0 - total1) / std::abs(total0));
    worst = std::max(worst, std::abs(gamma_from_control(setting, atom, spec) - gamma) /
                                std::abs(gamma));
    return make_check("coupling-roundtrip", worst, 1e-12,
                      "drive inversion and light-shift degeneracy, unequal dipoles");
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(const ValidateOptions& options) {
    const AnalyticEvolver evolve =
        options.evolve ? options.evolve
                       : [](const QubitState& s, const RabiDrive& d, double T) {
                             return evolve_analytic(s, d, T);
                         };
    Rng rng(options.seed);

    std::vector<CheckResult> results;
    results.push_back(check_frozen_references());
    results.push_back(check_budget_identity());
    results.push_back(check_rotation_composition(evolve, rng));
    results.push_back(check_unitarity(evolve, rng));
    results.push_back(check_analytic_vs_numeric(evolve, rng));
    results.push_back(check_three_level_integrator());
    results.push_back(check_adiabatic_elimination());
    results.push_back(check_sampler_moments(options, rng));
    results.push_back(check_windowed_moment(options));
    results.push_back(check_classical_recovery());
    results.push_back(check_nec_independence());
    results.push_back(check_balance_noiseless(options));
    results.push_back(check_coupling_roundtrip());
    return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.passed; });
}

void print_check_table(const std::vector<CheckResult>& results, std::ostream& out) {
    for (const CheckResult& r : results) {
        out << (r.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(26) << r.name
            << std::right << "  measured " << std::scientific << std::setprecision(3)
            << r.measured << "  bound " << r.bound << "  " << r.note << "\n";
    }
    out.unsetf(std::ios::floatfield);
}

}  // namespace cohdet
