/**
 * Acceptance gate: end-to-end behavioral criteria for the detector model.
 *
 * Each criterion prints diagnostic detail followed by exactly one PASS or
 * FAIL line; the process exits nonzero if any selected criterion fails.
 * Run without arguments for the full gate, or pass criterion ids
 * (1 2a 2b 2c 3 4 5 6 7 8 9) to run a subset. Criterion 9 exercises the
 * command-line binary and needs COHDET_BIN to point at it.
 */

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "cohdet/balance.hpp"
#include "cohdet/constants.hpp"
#include "cohdet/field.hpp"
#include "cohdet/interferometer.hpp"
#include "cohdet/noise_budget.hpp"
#include "cohdet/qubit.hpp"
#include "cohdet/rabi.hpp"
#include "cohdet/rng.hpp"
#include "cohdet/stats.hpp"
#include "cohdet/three_level.hpp"

#include "test_support.hpp"

namespace {

using namespace cohdet;
using cplx = std::complex<double>;

const std::vector<double> study_n{10.0, 1.0, 0.01};
const std::vector<double> study_zeta{1.0, 0.1, 0.01, 0.001};

// 10^lo .. 10^hi inclusive, per_decade points per decade.
std::vector<double> log_grid(double lo, double hi, int per_decade) {
    std::vector<double> grid;
    const int count = static_cast<int>(std::lround((hi - lo) * per_decade));
    grid.reserve(static_cast<std::size_t>(count) + 1);
    for (int k = 0; k <= count; ++k)
        grid.push_back(std::pow(10.0, lo + static_cast<double>(k) / per_decade));
    return grid;
}

BudgetParams reference_params() {
    const FieldPairSpec spec = testsup::spec_780(1.0, 0.1);
    return BudgetParams::from(spec, testsup::atom_780(spec));
}

ControlSetting control_template(const AtomCavityParams& atom) {
    ControlSetting s;
    s.g02 = 2.0 * pi * 1e6;
    s.g12 = 2.0 * pi * 1e6;
    s.psi = 0.3;
    s.delta_l = atom.delta_l;
    return s;
}

// ---------------------------------------------------------------- criterion 1

bool budget_identity(std::ostream& os) {
    const BudgetParams params = reference_params();
    const std::vector<double> grid = log_grid(0.0, 8.0, 8);
    double worst = 0.0;
    int points = 0;
    for (double n : study_n)
        for (double zeta : study_zeta)
            for (double n_T : grid) {
                const NoiseBudget b = assemble_budget(params, zeta, n, n_T);
                const double direct = enhancement_factor(zeta, n, n_T, params);
                const double assembled = b.sigma_I_sq / b.sigma_Q_sq;
                worst = std::max(worst, std::abs(direct - assembled) / assembled);
                ++points;
            }
    os << "  " << points << " grid points, worst relative split between the closed formula\n"
       << "  and the term-by-term variance ratio = " << worst << " (bound 1e-10)\n";
    return worst <= 1e-10;
}

// ---------------------------------------------------------------- criterion 2

struct CurvePoint {
    double n_T;
    NoiseBudget budget;
};

std::vector<CurvePoint> budget_curve(const BudgetParams& params, double zeta, double n,
                                     const std::vector<double>& grid) {
    std::vector<CurvePoint> curve;
    curve.reserve(grid.size());
    for (double n_T : grid) curve.push_back({n_T, assemble_budget(params, zeta, n, n_T)});
    return curve;
}

// Wide grid: the projection-noise segment of the brightest curves sits well
// below one detected photon, so the shape checks extend the published range
// downward to cover it.
const double wide_lo = -6.0;
const double wide_hi = 8.0;

bool low_photon_slope(std::ostream& os) {
    const BudgetParams params = reference_params();
    const std::vector<double> grid = log_grid(wide_lo, wide_hi, 8);
    bool ok = true;
    for (double n : study_n)
        for (double zeta : study_zeta) {
            const std::vector<CurvePoint> curve = budget_curve(params, zeta, n, grid);
            std::vector<double> x, y;
            for (const CurvePoint& p : curve) {
                const double others = p.budget.sigma_Q_sq - p.budget.sigma_a_sq;
                if (p.budget.sigma_a_sq >= 10.0 * others) {
                    x.push_back(std::log10(p.n_T));
                    y.push_back(std::log10(p.budget.sigma_I_sq / p.budget.sigma_Q_sq));
                }
            }
            os << "  n=" << n << " zeta=" << zeta << ": " << x.size()
               << " projection-noise-dominated points";
            if (x.size() < 5) {
                os << " (need >= 5)\n";
                ok = false;
                continue;
            }
            const LineFit fit = linear_fit(x, y);
            os << ", log-log slope = " << fit.slope << "\n";
            if (!(fit.slope >= 0.95 && fit.slope <= 1.05)) ok = false;
        }
    os << "  slope band [0.95, 1.05] in the regime where projection noise carries >= 10x\n"
       << "  the rest of the variance budget\n";
    return ok;
}

bool plateau_level(std::ostream& os) {
    const BudgetParams params = reference_params();
    const std::vector<double> grid = log_grid(wide_lo, wide_hi, 8);

    // Ceiling check across all curves: 1/Q is bounded below by zeta^2/2, so
    // no curve can exceed the coherence-limited plateau 2/zeta^2.
    double worst_ceiling = 0.0;
    for (double n : study_n)
        for (double zeta : study_zeta) {
            double max_q = 0.0;
            for (const CurvePoint& p : budget_curve(params, zeta, n, grid))
                max_q = std::max(max_q, p.budget.sigma_I_sq / p.budget.sigma_Q_sq);
            worst_ceiling = std::max(worst_ceiling, max_q * zeta * zeta / 2.0);
        }
    os << "  every curve stays below its coherence-limited ceiling 2/|zeta|^2\n"
       << "  (largest fraction of ceiling reached anywhere = " << worst_ceiling << ")\n";

    const double zeta = 0.001;
    const double n = 0.01;
    double best_q = 0.0, best_nT = 0.0;
    NoiseBudget best{};
    for (const CurvePoint& p : budget_curve(params, zeta, n, grid)) {
        const double q = p.budget.sigma_I_sq / p.budget.sigma_Q_sq;
        if (q > best_q) {
            best_q = q;
            best_nT = p.n_T;
            best = p.budget;
        }
    }
    const double plateau = 2.0 / (zeta * zeta);
    const double required = 0.9 * plateau;
    os << "  weakest-coherence curve (zeta=" << zeta << ", n=" << n << "): largest enhancement = "
       << best_q << " at n_T = " << best_nT << "\n"
       << "  coherence-limited plateau 2/|zeta|^2 = " << plateau << ", 90% threshold = "
       << required << "\n";

    // Decompose the bracket 1/Q at the optimum to show what pins it.
    const double coherent_floor = 0.5 * zeta * zeta;
    const double readout = best.sigma_L_sq / best.sigma_I_sq;
    const double decay = (best.sigma_sp_sq + best.sigma_a_sq) / best.sigma_I_sq;
    os << "  bracket floor 1/Q at the optimum = " << 1.0 / best_q
       << " (coherent part " << coherent_floor << ", readout " << readout
       << ", decay-driven " << decay << ")\n";
    const double required_bracket = 1.0 / required;
    const double target_decay = required_bracket - coherent_floor - readout;
    if (target_decay > 0.0 && decay > 0.0) {
        // Both decay-driven terms scale as delta^2.
        const double feasible_delta = params.delta * std::sqrt(target_decay / decay);
        os << "  reaching the threshold needs the decay-driven part <= " << target_decay
           << ",\n  i.e. a two-photon detuning <= " << feasible_delta
           << " rad/s; the adiabatic-elimination domain\n"
           << "  enforced at construction requires >= " << 10.0 * params.delta_omega
           << " rad/s (" << (10.0 * params.delta_omega) / feasible_delta
           << "x larger), so the\n"
           << "  coherence-limited plateau is unreachable anywhere in this curve's parameter"
           << " domain\n";
    }
    return best_q >= required;
}

bool family_ordering(std::ostream& os) {
    const BudgetParams params = reference_params();
    const std::vector<double> grid = log_grid(wide_lo, wide_hi, 8);

    // q[i][j][k]: occupation i, coherence j, photon number k.
    std::vector<std::vector<std::vector<double>>> q;
    for (double n : study_n) {
        q.emplace_back();
        for (double zeta : study_zeta) {
            q.back().emplace_back();
            for (const CurvePoint& p : budget_curve(params, zeta, n, grid))
                q.back().back().push_back(p.budget.sigma_I_sq / p.budget.sigma_Q_sq);
        }
    }
    long long comparisons = 0, violations = 0;
    // study_n is descending, so larger occupation must give larger Q.
    for (std::size_t j = 0; j < study_zeta.size(); ++j)
        for (std::size_t i = 0; i + 1 < study_n.size(); ++i)
            for (std::size_t k = 0; k < grid.size(); ++k) {
                ++comparisons;
                if (!(q[i][j][k] >= q[i + 1][j][k])) ++violations;
            }
    // study_zeta is descending, so smaller coherence must give larger Q.
    for (std::size_t i = 0; i < study_n.size(); ++i)
        for (std::size_t j = 0; j + 1 < study_zeta.size(); ++j)
            for (std::size_t k = 0; k < grid.size(); ++k) {
                ++comparisons;
                if (!(q[i][j + 1][k] >= q[i][j][k])) ++violations;
            }
    os << "  " << comparisons << " pointwise comparisons across the occupation and coherence"
       << " families, " << violations << " ordering violations\n";
    return violations == 0;
}

// ---------------------------------------------------------------- criterion 3

bool numeric_matches_closed_form(std::ostream& os) {
    Rng rng(777);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double angle = rng.uniform(0.0, 2.0 * pi);  // |Omega| T with |Omega| = 1
        const double alpha = rng.uniform(0.0, pi);
        const double beta = rng.uniform(0.0, 2.0 * pi);
        const double phi = rng.uniform(0.0, 2.0 * pi);
        const RabiDrive drive{std::polar(1.0, phi), 0.0, 0.0};
        const QubitState init = prepare_state(alpha, beta);
        const QubitState exact = evolve_analytic(init, drive, angle);
        const QubitState numeric = evolve_numeric(
            init, [&](double) { return drive.omega0; }, 0.0, 0.0, angle, 0.002);
        worst = std::max({worst, std::abs(exact.c0 - numeric.c0),
                          std::abs(exact.c1 - numeric.c1)});
    }
    os << "  100 random preparations and drive phases, rotation angles up to 2 pi,\n"
       << "  worst per-amplitude difference = " << worst << " (bound 1e-8)\n";
    return worst <= 1e-8;
}

// ---------------------------------------------------------------- criterion 4

bool elimination_accuracy(std::ostream& os) {
    const double g = 1e-3;
    const cplx drive0{1.0, 0.0};
    const cplx drive1 = std::polar(1.0, 0.7);
    const std::vector<double> detunings{0.1, 0.31623, 1.0};  // detuning/coupling = 1e2..1e3

    std::vector<double> errors;
    bool ok = true;
    for (double delta : detunings) {
        const RabiDrive reduced = raman_effective_drive(g, g, delta, drive0, drive1);
        const double T = (pi / 3.0) / std::abs(reduced.omega0);
        const double dt = 0.04 / delta;
        const ThreeLevelRun run = three_level_oracle(g, g, delta, drive0, drive1, T, dt);
        const QubitState two = evolve_analytic(prepare_state(0.0, 0.0), reduced, T);
        const double err = std::abs(std::norm(run.final_state.c1) - std::norm(two.c1));
        errors.push_back(err);
        os << "  detuning/coupling = " << delta / g << ": population difference = " << err
           << ", time-averaged upper population = " << run.mean_upper_population << "\n";
        if (delta == detunings.back()) {
            if (!(err < 2e-2)) {
                os << "  population difference exceeds 2e-2 at ratio 1e3\n";
                ok = false;
            }
            if (!(run.mean_upper_population < 1e-5)) {
                os << "  upper-state leakage exceeds 1e-5 at ratio 1e3\n";
                ok = false;
            }
        }
    }
    const bool monotone = errors[0] > errors[1] && errors[1] > errors[2];
    if (!monotone) {
        os << "  elimination error does not shrink monotonically with the detuning\n";
        ok = false;
    }
    return ok;
}

// ---------------------------------------------------------------- criterion 5

bool drive_moment(std::ostream& os) {
    const int samples = 20000;
    bool ok = true;
    int combo = 0;
    for (int modes : {1, 10, 100}) {
        for (double n : {0.1, 1.0, 10.0}) {
            const FieldPairSpec spec = testsup::spec_780(n, 1.0, 0.0, modes);
            const AtomCavityParams atom = testsup::atom_780(spec);
            // Window matched to the mode comb: T * delta_omega / (2 pi) = modes.
            const double T = 2.0 * pi * modes / spec.delta_omega;
            const cplx omega0 = ensemble_rabi_frequency(atom, spec, mutual_coherence(spec));
            const double closed = rabi_variance(omega0, T, spec.delta_omega, n);
            const WindowedRabiMoment moment =
                windowed_rabi_moment(atom, spec, T, samples, 9000 + 17 * combo, 1);
            const double dev = std::abs(moment.mean - closed) / closed;
            os << "  modes=" << modes << " n=" << n << ": relative deviation = " << dev
               << " (standard error " << moment.std_error / closed << ")\n";
            if (!(dev <= 0.10)) ok = false;
            ++combo;
        }
    }
    os << "  " << samples << " samples per combination, deviation bound 10%\n";
    return ok;
}

// ---------------------------------------------------------------- criterion 6

bool classical_floor(std::ostream& os) {
    const FieldPairSpec spec = testsup::spec_780(1.0, 0.1);
    const BudgetParams params = BudgetParams::from(spec, testsup::atom_780(spec));
    const double i0 = params.irradiance(spec.n_occ);
    const double T = params.integration_time(spec.n_occ, 1e3);
    const double sigma_i_sq =
        classical_variance(1.0, i0, spec.n_occ, spec.omega_c, T, spec.area());

    Rng rng = Rng::stream(4242, 77);
    std::vector<cplx> scaled;
    scaled.reserve(1000);
    for (int rep = 0; rep < 1000; ++rep) {
        const PhaseScanMeasurement meas =
            measure_phase_scan(spec, symmetric_three_phases, 1.0, T, rng);
        scaled.push_back(estimate_coherence_three_phase(meas, i0) * i0);
    }
    // The three-phase least-squares estimator spreads the per-measurement
    // variance over its quadratures; its predicted total complex variance is
    // sigma_I^2 / 3.
    const double prediction = sigma_i_sq / 3.0;
    const double ratio = complex_variance(scaled) / prediction;
    os << "  " << scaled.size() << " scan repetitions: estimator variance / prediction = "
       << ratio << " (band [0.75, 1.25])\n";
    const bool ratio_ok = ratio >= 0.75 && ratio <= 1.25;

    // The detection floor depends on brightness only, never on the hidden
    // coherence: identical bits across the coherence grid.
    const std::vector<double> zetas{0.0, 0.001, 0.01, 0.1, 1.0};
    std::uint64_t first_bits = 0;
    bool bits_ok = true;
    for (std::size_t j = 0; j < zetas.size(); ++j) {
        const NoiseBudget b = assemble_budget(params, zetas[j], spec.n_occ, 1e3);
        const double nec = noise_equivalent_coherence(b.sigma_I_sq);
        const std::uint64_t bits = std::bit_cast<std::uint64_t>(nec);
        if (j == 0)
            first_bits = bits;
        else if (bits != first_bits)
            bits_ok = false;
    }
    os << "  noise-equivalent coherence bit-identical across |zeta| in {0, 1e-3, 1e-2, 0.1, 1}: "
       << (bits_ok ? "yes" : "no") << "\n";
    return ratio_ok && bits_ok;
}

// ---------------------------------------------------------------- criterion 7

bool loop_recovery(std::ostream& os) {
    bool ok = true;

    // Noiseless loop: exact recovery of the hidden coherence.
    Rng rng(555);
    double worst_rel = 0.0;
    int recovered = 0;
    for (int k = 0; k < 20; ++k) {
        const double mag = std::pow(10.0, rng.uniform(-3.0, 0.0));
        const double phase = rng.uniform(0.0, 2.0 * pi);
        const FieldPairSpec spec = testsup::spec_780(1.0, std::polar(mag, phase));
        const AtomCavityParams atom = testsup::atom_780(spec);
        BalanceOptions opt;
        opt.measurement_noise = false;
        opt.photon_noise = false;
        opt.tol = 1e-4;
        opt.max_iter = 200;
        const BalanceResult r =
            balance_loop(spec, atom, control_template(atom), opt, 1000 + k);
        const cplx truth = mutual_coherence(spec);
        const double rel = std::abs(r.gamma12_estimate - truth) / std::abs(truth);
        worst_rel = std::max(worst_rel, rel);
        if (r.converged && r.iterations <= 200 && rel < 1e-6) ++recovered;
    }
    os << "  noiseless loop: " << recovered << "/20 random coherences recovered within 200"
       << " iterations,\n  worst relative error = " << worst_rel << " (bound 1e-6)\n";
    if (recovered != 20) ok = false;

    // Noisy loop: the estimate variance must match the projection-noise
    // prediction for the same interaction time and atom number.
    const FieldPairSpec spec = testsup::spec_780(1.0, std::polar(0.1, 0.6));
    const AtomCavityParams atom = testsup::atom_780(spec);
    const cplx omega0 = ensemble_rabi_frequency(atom, spec, mutual_coherence(spec));
    const double T_fix = pi / (8.0 * std::abs(omega0));
    const double n_a = atoms_in_waist(atom.n0, spec.area(), atom.lambda);
    const double sigma_a_sq = atom_shot_noise(atom.delta, atom.d02, atom.d12, constants.Z0,
                                              T_fix, n_a, atom.finesse);

    std::vector<cplx> estimates;
    estimates.reserve(1000);
    for (int run = 0; run < 1000; ++run) {
        BalanceOptions opt;
        opt.interaction_time = T_fix;
        const BalanceResult r =
            balance_loop(spec, atom, control_template(atom), opt, 30000 + run);
        if (r.converged) estimates.push_back(r.gamma12_estimate);
    }
    os << "  noisy loop: " << estimates.size() << "/1000 runs converged\n";
    if (estimates.size() < 800) {
        os << "  too few converged runs for the variance comparison\n";
        return false;
    }
    const double ratio = complex_variance(estimates) / sigma_a_sq;
    os << "  estimate variance / projection-noise prediction = " << ratio
       << " (band [0.5, 2])\n";
    if (!(ratio >= 0.5 && ratio <= 2.0)) ok = false;

    // Scaling: variance must fall as 1/atom_count.
    std::vector<double> x, y;
    for (long long count : {25LL, 250LL, 2500LL}) {
        std::vector<cplx> batch;
        batch.reserve(300);
        for (int run = 0; run < 300; ++run) {
            BalanceOptions opt;
            opt.interaction_time = T_fix;
            opt.atom_count = count;
            const BalanceResult r = balance_loop(spec, atom, control_template(atom), opt,
                                                 50000 + 1000 * count + run);
            if (r.converged) batch.push_back(r.gamma12_estimate);
        }
        os << "  atom count " << count << ": " << batch.size() << "/300 converged, variance = "
           << complex_variance(batch) << "\n";
        if (batch.size() < 250) {
            os << "  too few converged runs at this atom count\n";
            return false;
        }
        x.push_back(std::log(static_cast<double>(count)));
        y.push_back(std::log(complex_variance(batch)));
    }
    const LineFit fit = linear_fit(x, y);
    os << "  variance vs atom count log-log slope = " << fit.slope
       << " (band [-1.2, -0.8])\n";
    if (!(fit.slope >= -1.2 && fit.slope <= -0.8)) ok = false;
    return ok;
}

// ---------------------------------------------------------------- criterion 8

bool brightness_independence(std::ostream& os) {
    std::vector<double> n_list;
    for (int j = 0; j < 5; ++j) n_list.push_back(3.0 * std::pow(10.0, j / 4.0));

    const BudgetParams params = reference_params();
    bool ok = true;

    // Direct interferometry: the estimator variance must grow with the
    // brightness (thermal noise scales as n(1+n) at fixed window).
    const double T_cl = params.integration_time(3.0, 1e3);
    std::vector<double> xc, yc;
    for (std::size_t point = 0; point < n_list.size(); ++point) {
        const double n = n_list[point];
        const FieldPairSpec spec = testsup::spec_780(n, 0.0);
        const double i0 = params.irradiance(n);
        Rng rng = Rng::stream(8800 + point, 0);
        std::vector<cplx> scaled;
        scaled.reserve(400);
        for (int rep = 0; rep < 400; ++rep) {
            const PhaseScanMeasurement meas =
                measure_phase_scan(spec, symmetric_three_phases, 1.0, T_cl, rng);
            scaled.push_back(estimate_coherence_three_phase(meas, i0) * i0);
        }
        xc.push_back(std::log(i0));
        yc.push_back(std::log(complex_variance(scaled)));
    }
    const LineFit classical = linear_fit(xc, yc);
    os << "  direct interferometry at a dark null: variance vs irradiance log-log slope = "
       << classical.slope << " (band [1.7, 2.3])\n";
    if (!(classical.slope >= 1.7 && classical.slope <= 2.3)) ok = false;

    // Balanced loop at the same dark null: projection noise knows nothing
    // about the brightness, so the fitted slope must be consistent with 0.
    const FieldPairSpec ref = testsup::spec_780(1.0, 0.1);
    const AtomCavityParams atom = testsup::atom_780(ref);
    const cplx omega_ref = ensemble_rabi_frequency(atom, ref, mutual_coherence(ref));
    const double T_fix = pi / (8.0 * std::abs(omega_ref));

    std::vector<double> xq, yq;
    for (std::size_t point = 0; point < n_list.size(); ++point) {
        const double n = n_list[point];
        const FieldPairSpec spec = testsup::spec_780(n, 0.0);
        const AtomCavityParams atom_n = testsup::atom_780(spec);
        std::vector<cplx> estimates;
        estimates.reserve(300);
        for (int run = 0; run < 300; ++run) {
            BalanceOptions opt;
            opt.interaction_time = T_fix;
            const BalanceResult r =
                balance_loop(spec, atom_n, control_template(atom_n), opt,
                             70000 + 100000 * static_cast<std::uint64_t>(point) + run);
            if (r.converged) estimates.push_back(r.gamma12_estimate);
        }
        if (estimates.size() < 250) {
            os << "  too few converged runs at occupation " << n << "\n";
            return false;
        }
        xq.push_back(std::log(params.irradiance(n)));
        yq.push_back(std::log(complex_variance(estimates)));
    }
    const LineFit quantum = linear_fit(xq, yq);
    os << "  balanced loop at the same null: slope = " << quantum.slope
       << " +- " << quantum.slope_se << " (must be 0 within 2 standard errors)\n";
    if (!(std::abs(quantum.slope) <= 2.0 * quantum.slope_se)) ok = false;
    return ok;
}

// ---------------------------------------------------------------- criterion 9

struct CommandRunner {
    std::string bin;

    bool run(const std::string& args) const {
        const std::string cmd = bin + " " + args + " > /dev/null 2>&1";
        const int rc = std::system(cmd.c_str());
        return rc != -1 && WIFEXITED(rc) && WEXITSTATUS(rc) == 0;
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool determinism(std::ostream& os) {
    // Integration norm checks first: never renormalized, only verified.
    Rng rng(99);
    double worst2 = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double angle = rng.uniform(0.1, 2.0 * pi);
        const QubitState init = prepare_state(rng.uniform(0.0, pi), rng.uniform(0.0, 2.0 * pi));
        const cplx omega = std::polar(1.0, rng.uniform(0.0, 2.0 * pi));
        const QubitState out =
            evolve_numeric(init, [&](double) { return omega; }, 0.0, 0.0, angle, 0.002);
        worst2 = std::max(worst2, std::abs(out.norm_sq() - 1.0));
    }
    const ThreeLevelRun run3 =
        three_level_oracle(1e-3, 1e-3, 1.0, {1.0, 0.0}, std::polar(1.0, 0.4), 1e4, 0.04);
    const double worst3 = std::abs(run3.final_state.norm_sq() - 1.0);
    os << "  norm drift: two-level " << worst2 << ", three-level " << worst3
       << " (bound 1e-8)\n";
    bool ok = worst2 <= 1e-8 && worst3 <= 1e-8;

    const char* bin = std::getenv("COHDET_BIN");
    if (bin == nullptr || *bin == '\0') {
        os << "  COHDET_BIN is not set; cannot check command-line reproducibility\n";
        return false;
    }
    const CommandRunner cli{bin};

    const std::string cfg = "/tmp/cohdet_acceptance_mc.cfg";
    {
        std::ofstream out(cfg);
        out << "mc_samples = 4000\n"
            << "mode_count = 32\n"
            << "classical_repeats = 300\n";
    }
    bool runs_ok = true;
    runs_ok &= cli.run("montecarlo --config " + cfg + " --seed 5 --threads 1 --out /tmp/cohdet_acc_mc1.csv");
    runs_ok &= cli.run("montecarlo --config " + cfg + " --seed 5 --threads 4 --out /tmp/cohdet_acc_mc2.csv");
    runs_ok &= cli.run("montecarlo --config " + cfg + " --seed 5 --threads 1 --out /tmp/cohdet_acc_mc3.csv");
    runs_ok &= cli.run("sweep --seed 3 --threads 1 --out /tmp/cohdet_acc_sw1.csv");
    runs_ok &= cli.run("sweep --seed 3 --threads 4 --out /tmp/cohdet_acc_sw2.csv");
    runs_ok &= cli.run("balance --seed 11 --out /tmp/cohdet_acc_bal1.csv");
    runs_ok &= cli.run("balance --seed 11 --out /tmp/cohdet_acc_bal2.csv");
    if (!runs_ok) {
        os << "  a command-line run exited nonzero\n";
        return false;
    }
    const std::string mc1 = slurp("/tmp/cohdet_acc_mc1.csv");
    const bool mc_threads = !mc1.empty() && mc1 == slurp("/tmp/cohdet_acc_mc2.csv");
    const bool mc_rerun = mc1 == slurp("/tmp/cohdet_acc_mc3.csv");
    const std::string sw1 = slurp("/tmp/cohdet_acc_sw1.csv");
    const bool sw_threads = !sw1.empty() && sw1 == slurp("/tmp/cohdet_acc_sw2.csv");
    const std::string b1 = slurp("/tmp/cohdet_acc_bal1.csv");
    const bool bal_rerun = !b1.empty() && b1 == slurp("/tmp/cohdet_acc_bal2.csv");
    os << "  sampling summary byte-identical across thread counts: " << (mc_threads ? "yes" : "no")
       << ", across reruns: " << (mc_rerun ? "yes" : "no") << "\n"
       << "  sweep output byte-identical across thread counts: " << (sw_threads ? "yes" : "no")
       << "\n"
       << "  balancing trace byte-identical across reruns: " << (bal_rerun ? "yes" : "no")
       << "\n";
    return ok && mc_threads && mc_rerun && sw_threads && bal_rerun;
}

// ----------------------------------------------------------------- harness

struct Criterion {
    const char* id;
    const char* label;
    std::function<bool(std::ostream&)> run;
    double time_budget_s;  // wall-clock budget enforced by the harness
};

const std::vector<Criterion>& gate() {
    static const std::vector<Criterion> criteria{
        {"1", "closed-form enhancement equals the assembled variance ratio", budget_identity,
         1.0},
        {"2a", "enhancement rises linearly with photon number under projection noise",
         low_photon_slope, 10.0},
        {"2b", "weakest-coherence curve reaches the coherence-limited plateau", plateau_level,
         10.0},
        {"2c", "enhancement curves stay ordered in occupation and coherence", family_ordering,
         10.0},
        {"3", "numeric two-level evolution matches the closed form", numeric_matches_closed_form,
         5.0},
        {"4", "upper-state elimination reproduces the full three-level dynamics",
         elimination_accuracy, 60.0},
        {"5", "sampled drive moment matches the window-averaged closed form", drive_moment,
         120.0},
        {"6", "direct-interferometry variance matches the detection floor", classical_floor,
         60.0},
        {"7", "null-balancing loop recovers the hidden coherence", loop_recovery, 300.0},
        {"8", "balanced readout noise is independent of the field brightness",
         brightness_independence, 300.0},
        {"9", "integration preserves norm and runs are byte-reproducible", determinism, 10.0},
    };
    return criteria;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> selected(argv + 1, argv + argc);
    if (selected.empty())
        for (const Criterion& c : gate()) selected.push_back(c.id);

    std::cout.precision(10);
    int failures = 0;
    for (const std::string& id : selected) {
        const auto it = std::find_if(gate().begin(), gate().end(),
                                     [&](const Criterion& c) { return id == c.id; });
        if (it == gate().end()) {
            std::cerr << "unknown criterion id '" << id << "'\n";
            return 2;
        }
        std::cout << "[" << it->id << "] " << it->label << "\n";
        bool passed = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            passed = it->run(std::cout);
        } catch (const std::exception& e) {
            std::cout << "  unexpected exception: " << e.what() << "\n";
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (passed && seconds > it->time_budget_s) {
            std::cout << "  completed correctly but exceeded the " << it->time_budget_s
                      << " s budget\n";
            passed = false;
        }
        std::cout << (passed ? "PASS" : "FAIL") << "  [" << it->id << "] " << it->label << " ("
                  << seconds << " s)\n\n";
        if (!passed) ++failures;
    }
    std::cout << (failures == 0 ? "acceptance gate clean" : "acceptance gate has failures")
              << ": " << (selected.size() - static_cast<std::size_t>(failures)) << "/"
              << selected.size() << " criteria passed\n";
    return failures == 0 ? 0 : 1;
}
