#include "cohdet/noise_budget.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cohdet/constants.hpp"
#include "cohdet/errors.hpp"
#include "cohdet/interferometer.hpp"
#include "cohdet/stats.hpp"

namespace cohdet {

const char* to_string(NoiseTerm term) {
    switch (term) {
        case NoiseTerm::photon: return "photon";
        case NoiseTerm::readout: return "readout";
        case NoiseTerm::spontaneous: return "spontaneous";
        case NoiseTerm::atom_shot: return "atom_shot";
    }
    return "unknown";
}

NoiseTerm NoiseBudget::dominant_term() const {
    NoiseTerm term = NoiseTerm::photon;
    double best = sigma_p_sq;
    if (sigma_L_sq > best) { best = sigma_L_sq; term = NoiseTerm::readout; }
    if (sigma_sp_sq > best) { best = sigma_sp_sq; term = NoiseTerm::spontaneous; }
    if (sigma_a_sq > best) { best = sigma_a_sq; term = NoiseTerm::atom_shot; }
    return term;
}

BudgetParams BudgetParams::from(const FieldPairSpec& spec, const AtomCavityParams& atom) {
    spec.validate();
    BudgetParams p;
    p.omega_c = spec.omega_c;
    p.delta_omega = spec.delta_omega;
    p.area = spec.area();
    p.finesse = atom.finesse;
    p.delta = atom.delta;
    p.delta_l = atom.delta_l;
    p.lambda = atom.lambda;
    p.d02 = atom.d02;
    p.d12 = atom.d12;
    p.n0 = atom.n0;
    return p;
}

double BudgetParams::irradiance(double n_occ) const {
    return n_occ * constants.hbar * omega_c * delta_omega / (2.0 * pi * area);
}

double BudgetParams::atoms() const { return atoms_in_waist(n0, area, lambda); }

double BudgetParams::integration_time(double n_occ, double n_T) const {
    if (!(n_occ > 0.0) || !(n_T > 0.0))
        throw std::domain_error("BudgetParams: occupation and photon number must be positive");
    return 2.0 * pi * n_T / (n_occ * delta_omega);
}

double photon_noise(double gamma12_mag, double T, double delta_omega, double n_occ) {
    if (!(T > 0.0) || !(delta_omega > 0.0))
        throw std::domain_error("photon_noise: T and delta_omega must be positive");
    if (!(n_occ > 0.0)) throw std::domain_error("photon_noise: diverges at zero occupation");
    return gamma12_mag * gamma12_mag * (2.0 * pi / (T * delta_omega)) * (n_occ + 1.0) / n_occ;
}

double optical_readout_noise(double zeta_mag, double n_occ, double omega_c, double delta_omega,
                             double T, double area, double finesse, double delta,
                             double delta_l) {
    if (!(T > 0.0) || !(area > 0.0) || !(finesse > 0.0) || !(delta_omega > 0.0))
        throw std::domain_error("optical_readout_noise: arguments must be positive");
    if (delta_l == 0.0)
        throw std::domain_error("optical_readout_noise: delta_l must be nonzero");
    const double scale = constants.hbar * omega_c / (T * area) * pi / finesse;
    return zeta_mag * n_occ * scale * scale * (delta_omega * T / (2.0 * pi)) * (delta / delta_l);
}

double spontaneous_noise(double omega_c, double delta, double lambda, double finesse) {
    if (!(lambda > 0.0) || !(finesse > 0.0))
        throw std::domain_error("spontaneous_noise: lambda and finesse must be positive");
    const double value =
        4.0 * pi * pi * constants.hbar * omega_c * delta / (3.0 * lambda * lambda * finesse);
    return value * value;
}

double atom_shot_noise(double delta, double d02, double d12, double z0, double T, double n_a,
                       double finesse) {
    if (!(n_a > 0.0)) throw std::domain_error("atom_shot_noise: diverges at zero atom number");
    if (!(T > 0.0) || !(d02 > 0.0) || !(d12 > 0.0) || !(z0 > 0.0) || !(finesse > 0.0))
        throw std::domain_error("atom_shot_noise: arguments must be positive");
    const double scale =
        (pi / finesse) * constants.hbar * constants.hbar * delta / (d02 * d12 * z0 * T);
    return scale * scale / n_a;
}

double enhancement_factor(double zeta_mag, double n_occ, double n_T,
                          const BudgetParams& params) {
    if (!(n_occ > 0.0) || !(n_T > 0.0))
        throw std::domain_error("enhancement_factor: occupation and photon number must be positive");
    if (!(zeta_mag >= 0.0)) throw std::domain_error("enhancement_factor: |zeta| must be >= 0");
    if (params.delta_l == 0.0 || !(params.delta_omega > 0.0) || !(params.lambda > 0.0) ||
        !(params.n0 > 0.0) || !(params.finesse > 0.0) || !(params.omega_c > 0.0) ||
        !(params.d02 > 0.0) || !(params.d12 > 0.0))
        throw std::domain_error("enhancement_factor: zero denominator inside the bracket");

    const double cavity = pi / params.finesse;
    const double term_readout =
        zeta_mag * params.delta / (2.0 * (n_occ + 1.0) * params.delta_l);
    const double lambda_sq = params.lambda * params.lambda;
    const double term_spontaneous = 32.0 * std::pow(pi, 4) * params.delta * params.delta *
                                    params.area * params.area * n_T /
                                    (9.0 * lambda_sq * lambda_sq * n_occ * n_occ *
                                     (n_occ + 1.0) * params.delta_omega * params.delta_omega);
    const double dipole_chain = constants.hbar * params.delta /
                                (constants.Z0 * params.d02 * params.d12 * params.omega_c);
    const double term_atom = dipole_chain * dipole_chain * params.lambda /
                             (4.0 * params.n0 * (1.0 + n_occ) * n_T);
    const double bracket = 0.5 * zeta_mag * zeta_mag +
                           cavity * cavity * (term_readout + term_spontaneous + term_atom);
    if (!(bracket > 0.0))
        throw std::domain_error("enhancement_factor: degenerate noise bracket");
    return 1.0 / bracket;
}

NoiseBudget assemble_budget(const BudgetParams& params, double zeta_mag, double n_occ,
                            double n_T) {
    const double T = params.integration_time(n_occ, n_T);
    const double i0 = params.irradiance(n_occ);
    NoiseBudget budget;
    budget.sigma_p_sq = photon_noise(zeta_mag * i0, T, params.delta_omega, n_occ);
    budget.sigma_L_sq =
        optical_readout_noise(zeta_mag, n_occ, params.omega_c, params.delta_omega, T,
                              params.area, params.finesse, params.delta, params.delta_l);
    budget.sigma_sp_sq =
        spontaneous_noise(params.omega_c, params.delta, params.lambda, params.finesse);
    budget.sigma_a_sq = atom_shot_noise(params.delta, params.d02, params.d12, constants.Z0, T,
                                        params.atoms(), params.finesse);
    budget.sigma_Q_sq =
        budget.sigma_p_sq + budget.sigma_L_sq + budget.sigma_sp_sq + budget.sigma_a_sq;
    budget.sigma_I_sq = classical_variance(1.0, i0, n_occ, params.omega_c, T, params.area);
    budget.Q_mc = budget.sigma_I_sq / budget.sigma_Q_sq;
    return budget;
}

SweepResult sweep_qmc(const std::vector<double>& n_list, const std::vector<double>& zeta_list,
                      const std::vector<double>& n_T_grid, const BudgetParams& params) {
    if (n_list.empty() || zeta_list.empty() || n_T_grid.empty())
        throw std::domain_error("sweep_qmc: all grids must be non-empty");
    SweepResult result;
    result.points.reserve(n_list.size() * zeta_list.size() * n_T_grid.size());
    for (double n_occ : n_list) {
        for (double zeta_mag : zeta_list) {
            for (double n_T : n_T_grid) {
                try {
                    SweepPoint point;
                    point.n_occ = n_occ;
                    point.zeta_mag = zeta_mag;
                    point.n_T = n_T;
                    point.Q_mc = enhancement_factor(zeta_mag, n_occ, n_T, params);
                    point.budget = assemble_budget(params, zeta_mag, n_occ, n_T);
                    point.dominant_term = point.budget.dominant_term();
                    result.points.push_back(point);
                } catch (const std::exception& err) {
                    std::ostringstream msg;
                    msg << "n=" << n_occ << " zeta=" << zeta_mag << " n_T=" << n_T << ": "
                        << err.what();
                    result.errors.push_back(msg.str());
                }
            }
        }
    }
    return result;
}

BudgetCrossCheck cross_validate_budget(const std::vector<std::complex<double>>& classical_scaled,
                                       double sigma_I_sq,
                                       const std::vector<std::complex<double>>& gamma_estimates,
                                       double sigma_a_sq) {
    if (classical_scaled.size() < 100 || gamma_estimates.size() < 100)
        throw std::domain_error("cross_validate_budget: need at least 100 runs per configuration");
    if (!(sigma_I_sq > 0.0) || !(sigma_a_sq > 0.0))
        throw std::domain_error("cross_validate_budget: predictions must be positive");
    BudgetCrossCheck report;
    // Three symmetric scan phases spread sigma_I_sq evenly over the two
    // estimator quadratures: predicted total complex variance sigma_I_sq/3.
    report.classical_ratio = complex_variance(classical_scaled) / (sigma_I_sq / 3.0);
    report.quantum_ratio = complex_variance(gamma_estimates) / sigma_a_sq;
    report.classical_runs = static_cast<int>(classical_scaled.size());
    report.quantum_runs = static_cast<int>(gamma_estimates.size());
    return report;
}

}  // namespace cohdet
