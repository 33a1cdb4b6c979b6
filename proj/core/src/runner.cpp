#include "cohdet/runner.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <string>
#include <vector>

#include "cohdet/balance.hpp"
#include "cohdet/csv.hpp"
#include "cohdet/errors.hpp"
#include "cohdet/interferometer.hpp"
#include "cohdet/noise_budget.hpp"
#include "cohdet/qubit.hpp"
#include "cohdet/rabi.hpp"
#include "cohdet/stats.hpp"
#include "cohdet/validate.hpp"

namespace cohdet {

namespace {

using cplx = std::complex<double>;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open output file '" + path + "'");
    return out;
}

// montecarlo.csv -> montecarlo.trajectory.csv
std::string trajectory_path(const std::string& out_path) {
    const std::string suffix = ".csv";
    if (out_path.size() > suffix.size() &&
        out_path.compare(out_path.size() - suffix.size(), suffix.size(), suffix) == 0)
        return out_path.substr(0, out_path.size() - suffix.size()) + ".trajectory.csv";
    return out_path + ".trajectory.csv";
}

void write_trajectory(const Scenario& s, const std::string& path) {
    const FieldPairSpec& spec = s.spec;
    Rng rng = Rng::stream(s.seed, 424242);
    const FieldSample sample = sample_field_modes(spec, rng);
    const auto shifts = ac_stark_shifts(sample, s.atom, spec);
    const double T = 2.0 * pi * s.window_modes / spec.delta_omega;

    auto omega_at = [&](double t) { return instantaneous_rabi(sample, s.atom, spec, t); };
    double peak = 0.0;
    for (int j = 0; j <= 4096; ++j)
        peak = std::max(peak, std::abs(omega_at(T * j / 4096.0)));
    const double rate = std::max({peak, std::abs(shifts.first), std::abs(shifts.second)});
    long long steps = std::max<long long>(400, static_cast<long long>(std::ceil(T * rate / 0.02)));
    if (steps > 20'000'000)
        throw config_error("trajectory would need " + std::to_string(steps) +
                           " integration steps; reduce window_modes or the field strength");
    const double dt = T / static_cast<double>(steps);

    std::ofstream out = open_out(path);
    CsvWriter csv(out, {"t", "re_c0", "im_c0", "re_c1", "im_c1", "x", "y", "z"});
    QubitState state = prepare_state(pi / 4.0, 0.0);
    auto emit = [&csv](double t, const QubitState& st) {
        const BlochVector b = bloch_vector(st);
        csv.cell(t).cell(st.c0.real()).cell(st.c0.imag()).cell(st.c1.real()).cell(st.c1.imag());
        csv.cell(b.x).cell(b.y).cell(b.z);
        csv.end_row();
    };
    emit(0.0, state);
    long long done = 0;
    while (done < steps) {
        const long long chunk = std::min(s.trajectory_stride, steps - done);
        const double t0 = static_cast<double>(done) * dt;
        state = evolve_numeric(
            state, [&](double u) { return omega_at(t0 + u); }, shifts.first, shifts.second,
            static_cast<double>(chunk) * dt, dt);
        done += chunk;
        emit(static_cast<double>(done) * dt, state);
    }
}

std::string complex_text(cplx z) {
    return "(" + csv_number(z.real()) + ", " + csv_number(z.imag()) + ")";
}

}  // namespace

int run_sweep(const Scenario& s, std::ostream& log) {
    echo_scenario(s, "sweep", log);
    const BudgetParams params = BudgetParams::from(s.spec, s.atom);
    const SweepResult result = sweep_qmc(s.sweep_n, s.sweep_zeta, s.n_T_grid, params);

    std::ofstream out = open_out(s.out_path);
    CsvWriter csv(out, {"n_occ", "zeta", "n_T", "log10_n_T", "Q_mc", "log10_Q_mc", "sigma_p_sq",
                        "sigma_L_sq", "sigma_sp_sq", "sigma_a_sq", "sigma_I_sq",
                        "dominant_term"});
    for (const SweepPoint& p : result.points) {
        csv.cell(p.n_occ).cell(p.zeta_mag).cell(p.n_T).cell(std::log10(p.n_T));
        csv.cell(p.Q_mc).cell(std::log10(p.Q_mc));
        csv.cell(p.budget.sigma_p_sq).cell(p.budget.sigma_L_sq).cell(p.budget.sigma_sp_sq);
        csv.cell(p.budget.sigma_a_sq).cell(p.budget.sigma_I_sq);
        csv.cell(std::string(to_string(p.dominant_term)));
        csv.end_row();
    }
    for (const std::string& err : result.errors) log << "# skipped point: " << err << "\n";
    log << "sweep rows = " << result.points.size() << ", skipped = " << result.errors.size()
        << ", written to " << s.out_path << "\n";
    return 0;
}

int run_balance(const Scenario& s, std::ostream& log) {
    echo_scenario(s, "balance", log);
    std::vector<LoopTraceRow> trace;
    std::vector<cplx> gammas;
    const cplx truth = mutual_coherence(s.spec);
    log << "# hidden gamma12 = " << complex_text(truth) << "\n";

    for (int run = 0; run < s.balance_repeats; ++run) {
        BalanceOptions options = s.balance;
        options.trace = (run == 0) ? &trace : nullptr;
        options.warnings = &log;
        const BalanceResult result =
            balance_loop(s.spec, s.atom, s.control_init, options, s.seed + static_cast<std::uint64_t>(run));
        gammas.push_back(result.gamma12_estimate);
        log << "run " << run << ": converged = " << (result.converged ? "true" : "false")
            << ", iterations = " << result.iterations << ", residual = "
            << csv_number(result.residual_signal) << "\n";
        log << "  omega1 = " << complex_text(result.omega1_final) << "\n";
        log << "  gamma12 = " << complex_text(result.gamma12_estimate) << "\n";
    }
    if (gammas.size() >= 2) {
        log << "aggregate: mean gamma12 = " << complex_text(mean(gammas))
            << ", complex variance = " << csv_number(complex_variance(gammas)) << "\n";
    }

    std::ofstream out = open_out(s.out_path);
    CsvWriter csv(out, {"iteration", "re_omega1", "im_omega1", "z_sin", "z_cos", "gain"});
    for (const LoopTraceRow& row : trace) {
        csv.cell(row.iteration).cell(row.omega1.real()).cell(row.omega1.imag());
        csv.cell(row.z_sin).cell(row.z_cos).cell(row.gain);
        csv.end_row();
    }
    log << "trace rows = " << trace.size() << ", written to " << s.out_path << "\n";
    return 0;
}

int run_montecarlo(const Scenario& s, std::ostream& log) {
    echo_scenario(s, "montecarlo", log);
    const FieldPairSpec& spec = s.spec;
    const BudgetParams params = BudgetParams::from(spec, s.atom);

    // Window-averaged drive moment against the closed form.
    const double window_T = 2.0 * pi * s.window_modes / spec.delta_omega;
    const WindowedRabiMoment moment =
        windowed_rabi_moment(s.atom, spec, window_T, s.mc_samples, s.seed, s.threads);
    const cplx omega0 = ensemble_rabi_frequency(s.atom, spec, mutual_coherence(spec));
    const double closed = rabi_variance(omega0, window_T, spec.delta_omega, spec.n_occ);
    const double denom = closed != 0.0 ? closed : 1.0;
    const double window_dev = std::abs(moment.mean - closed) / denom;

    // Classical three-phase estimator against the interferometric floor.
    const double i0 = params.irradiance(spec.n_occ);
    const double classical_T = params.integration_time(spec.n_occ, s.classical_n_T);
    Rng rng = Rng::stream(s.seed, 77);
    std::vector<cplx> scaled;
    scaled.reserve(static_cast<std::size_t>(s.classical_repeats));
    for (int rep = 0; rep < s.classical_repeats; ++rep) {
        const PhaseScanMeasurement meas =
            measure_phase_scan(spec, symmetric_three_phases, 1.0, classical_T, rng);
        scaled.push_back(estimate_coherence_three_phase(meas, i0) * i0);
    }
    const double sigma_i_sq =
        classical_variance(1.0, i0, spec.n_occ, spec.omega_c, classical_T, spec.area());
    const double classical_var = complex_variance(scaled);
    const double prediction = sigma_i_sq / 3.0;

    std::ofstream out = open_out(s.out_path);
    CsvWriter csv(out, {"quantity", "value"});
    auto row = [&csv](const std::string& name, double value) {
        csv.cell(name).cell(value);
        csv.end_row();
    };
    row("window_T", window_T);
    row("window_samples", static_cast<double>(moment.samples));
    row("window_moment_re", moment.mean.real());
    row("window_moment_im", moment.mean.imag());
    row("window_moment_std_error", moment.std_error);
    row("window_closed_form", closed);
    row("window_relative_deviation", window_dev);
    row("classical_repeats", static_cast<double>(s.classical_repeats));
    row("classical_T", classical_T);
    row("classical_complex_variance", classical_var);
    row("classical_prediction", prediction);
    row("classical_ratio", classical_var / prediction);
    row("nec", noise_equivalent_coherence(sigma_i_sq));

    log << "window moment = " << complex_text(moment.mean) << " +- "
        << csv_number(moment.std_error) << ", closed form = " << csv_number(closed)
        << ", relative deviation = " << csv_number(window_dev) << "\n";
    log << "classical estimator variance = " << csv_number(classical_var) << ", prediction = "
        << csv_number(prediction) << ", ratio = " << csv_number(classical_var / prediction)
        << "\n";

    if (s.trajectory_stride > 0) {
        const std::string path = trajectory_path(s.out_path);
        write_trajectory(s, path);
        log << "trajectory written to " << path << "\n";
    }
    log << "summary written to " << s.out_path << "\n";
    return 0;
}

int run_validate(const Scenario& s, std::ostream& log) {
    echo_scenario(s, "validate", log);
    ValidateOptions options;
    options.sample_budget = s.sample_budget;
    options.seed = s.seed;
    options.threads = s.threads;
    const std::vector<CheckResult> results = run_invariant_suite(options);
    print_check_table(results, log);

    if (!s.out_path.empty()) {
        std::ofstream out = open_out(s.out_path);
        CsvWriter csv(out, {"name", "passed", "measured", "bound", "note"});
        for (const CheckResult& r : results) {
            csv.cell(r.name).cell(r.passed ? 1 : 0).cell(r.measured).cell(r.bound).cell(r.note);
            csv.end_row();
        }
    }
    const bool ok = all_passed(results);
    log << (ok ? "all checks passed" : "CHECKS FAILED") << " (" << results.size() << " checks)"
        << "\n";
    return ok ? 0 : 1;
}

int run_mode(const Scenario& s, const std::string& mode, std::ostream& log) {
    if (mode == "sweep") return run_sweep(s, log);
    if (mode == "balance") return run_balance(s, log);
    if (mode == "montecarlo") return run_montecarlo(s, log);
    if (mode == "validate") return run_validate(s, log);
    throw config_error("unknown mode '" + mode + "'");
}

}  // namespace cohdet
