#include "cohdet/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <complex>
#include <set>

#include "cohdet/constants.hpp"
#include "cohdet/csv.hpp"
#include "cohdet/errors.hpp"

namespace cohdet {

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        // optical field pair
        "lambda", "omega_c", "delta_omega", "n_occ", "zeta_mag", "zeta_phase",
        "tau", "mode_count", "w0",
        // atom and cavity
        "d02", "d12", "delta", "delta_l", "finesse", "n0",
        // run plumbing
        "seed", "threads", "out",
        // sweep grids
        "sweep_n", "sweep_zeta", "n_T_min_exp", "n_T_max_exp", "n_T_per_decade",
        // balance loop
        "balance_repeats", "atom_count", "max_iter", "balance_tol", "gain0",
        "gain_decay", "smoothing", "interaction_time", "measurement_noise",
        "photon_noise", "control_g02", "control_g12", "control_psi",
        // monte carlo
        "mc_samples", "window_modes", "classical_repeats", "classical_n_T",
        "trajectory_stride",
        // validate
        "sample_budget",
    };
    return keys;
}

std::vector<double> log_grid(double min_exp, double max_exp, int per_decade) {
    if (per_decade < 1) throw config_error("n_T_per_decade must be at least 1");
    if (!(max_exp >= min_exp)) throw config_error("n_T_max_exp must be >= n_T_min_exp");
    const auto count = static_cast<long long>(std::llround((max_exp - min_exp) * per_decade));
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count) + 1);
    for (long long j = 0; j <= count; ++j)
        grid.push_back(std::pow(10.0, min_exp + static_cast<double>(j) / per_decade));
    return grid;
}

int positive_int(const Config& config, const std::string& key, long long fallback) {
    const long long value = config.integer_or(key, fallback);
    if (value <= 0) throw config_error(key + " must be positive");
    return static_cast<int>(value);
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        std::size_t lo = start, hi = end;
        while (lo < hi && std::isspace(static_cast<unsigned char>(text[lo]))) ++lo;
        while (hi > lo && std::isspace(static_cast<unsigned char>(text[hi - 1]))) --hi;
        if (lo == hi) throw config_error("empty entry in number list '" + text + "'");
        double value = 0.0;
        const char* first = text.data() + lo;
        const char* last = text.data() + hi;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last)
            throw config_error("bad number '" + std::string(first, last) + "' in list");
        values.push_back(value);
        if (end == text.size()) break;
        start = end + 1;
    }
    return values;
}

Scenario resolve_scenario(const Config& config, const std::string& mode) {
    if (mode != "sweep" && mode != "balance" && mode != "montecarlo" && mode != "validate")
        throw config_error("unknown mode '" + mode + "'");
    config.require_known(known_keys());

    Scenario s;

    const double lambda = config.number_or("lambda", 780e-9);
    if (lambda <= 0.0) throw config_error("lambda must be positive");
    const double omega_c = config.number_or("omega_c", 2.0 * pi * constants.c0 / lambda);
    const double delta_omega = config.number_or("delta_omega", 1e-7 * omega_c);

    FieldPairSpec spec;
    spec.omega_c = omega_c;
    spec.delta_omega = delta_omega;
    spec.n_occ = config.number_or("n_occ", 1.0);
    const double zeta_mag = config.number_or("zeta_mag", 0.1);
    const double zeta_phase = config.number_or("zeta_phase", 0.0);
    spec.zeta = std::polar(zeta_mag, zeta_phase);
    spec.tau = config.number_or("tau", 0.0);
    spec.mode_count = positive_int(config, "mode_count", 64);
    spec.w0 = config.number_or("w0", 1e-6);
    spec.validate();
    s.spec = spec;

    const double delta = config.number_or("delta", 1e3 * delta_omega);
    s.atom = AtomCavityParams(config.number_or("d02", 1.6e-29),
                              config.number_or("d12", 1.6e-29),
                              delta,
                              config.number_or("delta_l", delta),
                              config.number_or("finesse", 1.6e5),
                              config.number_or("n0", 1e18),
                              lambda,
                              spec.delta_omega);

    s.seed = config.seed_or("seed", 1);
    const long long threads = config.integer_or("threads", 1);
    if (threads < 1) throw config_error("threads must be at least 1");
    s.threads = static_cast<unsigned>(threads);
    s.out_path = config.text_or("out", mode == "validate" ? std::string{} : mode + ".csv");

    s.sweep_n = config.has("sweep_n") ? parse_number_list(config.text("sweep_n"))
                                      : std::vector<double>{10.0, 1.0, 0.01};
    s.sweep_zeta = config.has("sweep_zeta") ? parse_number_list(config.text("sweep_zeta"))
                                            : std::vector<double>{1.0, 0.1, 0.01, 0.001};
    s.n_T_grid = log_grid(config.number_or("n_T_min_exp", 0.0),
                          config.number_or("n_T_max_exp", 8.0),
                          positive_int(config, "n_T_per_decade", 8));

    BalanceOptions& b = s.balance;
    s.balance_repeats = positive_int(config, "balance_repeats", 1);
    const double waist_atoms = atoms_in_waist(s.atom.n0, spec.area(), s.atom.lambda);
    b.atom_count = positive_int(config, "atom_count",
                                std::max(2LL, static_cast<long long>(waist_atoms)));
    b.max_iter = positive_int(config, "max_iter", 200);
    if (config.has("balance_tol")) b.tol = config.number("balance_tol");
    b.gain0 = config.number_or("gain0", b.gain0);
    b.gain_decay = config.number_or("gain_decay", b.gain_decay);
    b.smoothing = config.number_or("smoothing", b.smoothing);
    if (config.has("interaction_time")) b.interaction_time = config.number("interaction_time");
    b.measurement_noise = config.flag_or("measurement_noise", true);
    b.photon_noise = config.flag_or("photon_noise", false);

    ControlSetting& c = s.control_init;
    c.g02 = config.number_or("control_g02", 2.0 * pi * 1e6);
    c.g12 = config.number_or("control_g12", 2.0 * pi * 1e6);
    c.psi = config.number_or("control_psi", 0.0);
    c.delta_l = s.atom.delta_l;
    c.alpha0 = 0.0;
    c.alpha1 = 0.0;
    c.validate();

    s.mc_samples = positive_int(config, "mc_samples", 20000);
    s.window_modes = config.number_or("window_modes", 10.0);
    if (s.window_modes <= 0.0) throw config_error("window_modes must be positive");
    s.classical_repeats = positive_int(config, "classical_repeats", 1000);
    s.classical_n_T = config.number_or("classical_n_T", 1e3);
    if (s.classical_n_T <= 0.0) throw config_error("classical_n_T must be positive");
    s.trajectory_stride = config.integer_or("trajectory_stride", 0);
    if (s.trajectory_stride < 0) throw config_error("trajectory_stride must be >= 0");

    s.sample_budget = config.number_or("sample_budget", 1.0);
    if (s.sample_budget <= 0.0) throw config_error("sample_budget must be positive");

    return s;
}

void echo_scenario(const Scenario& s, const std::string& mode, std::ostream& out) {
    auto line = [&out](const std::string& key, double value) {
        out << "# " << key << " = " << csv_number(value) << "\n";
    };
    out << "# mode = " << mode << "\n";
    out << "# seed = " << s.seed << "\n";
    out << "# threads = " << s.threads << "\n";
    if (!s.out_path.empty()) out << "# out = " << s.out_path << "\n";
    line("omega_c", s.spec.omega_c);
    line("delta_omega", s.spec.delta_omega);
    line("n_occ", s.spec.n_occ);
    line("zeta_mag", std::abs(s.spec.zeta));
    line("zeta_phase", std::arg(s.spec.zeta));
    line("tau", s.spec.tau);
    out << "# mode_count = " << s.spec.mode_count << "\n";
    line("w0", s.spec.w0);
    line("d02", s.atom.d02);
    line("d12", s.atom.d12);
    line("delta", s.atom.delta);
    line("delta_l", s.atom.delta_l);
    line("finesse", s.atom.finesse);
    line("n0", s.atom.n0);
    line("lambda", s.atom.lambda);
    if (mode == "sweep") {
        auto list_line = [&out](const std::string& key, const std::vector<double>& values) {
            out << "# " << key << " =";
            for (double v : values) out << ' ' << csv_number(v);
            out << "\n";
        };
        list_line("sweep_n", s.sweep_n);
        list_line("sweep_zeta", s.sweep_zeta);
        out << "# n_T_points = " << s.n_T_grid.size() << "\n";
        line("n_T_min", s.n_T_grid.front());
        line("n_T_max", s.n_T_grid.back());
    } else if (mode == "balance") {
        out << "# balance_repeats = " << s.balance_repeats << "\n";
        out << "# atom_count = " << s.balance.atom_count << "\n";
        out << "# max_iter = " << s.balance.max_iter << "\n";
        line("balance_tol", s.balance.tol);
        line("gain0", s.balance.gain0);
        line("gain_decay", s.balance.gain_decay);
        line("smoothing", s.balance.smoothing);
        line("interaction_time", s.balance.interaction_time);
        out << "# measurement_noise = " << (s.balance.measurement_noise ? "true" : "false") << "\n";
        out << "# photon_noise = " << (s.balance.photon_noise ? "true" : "false") << "\n";
        line("control_g02", s.control_init.g02);
        line("control_g12", s.control_init.g12);
        line("control_psi", s.control_init.psi);
    } else if (mode == "montecarlo") {
        out << "# mc_samples = " << s.mc_samples << "\n";
        line("window_modes", s.window_modes);
        out << "# classical_repeats = " << s.classical_repeats << "\n";
        line("classical_n_T", s.classical_n_T);
        out << "# trajectory_stride = " << s.trajectory_stride << "\n";
    } else if (mode == "validate") {
        line("sample_budget", s.sample_budget);
    }
}

}  // namespace cohdet
