/**
 * Closed-form noise budget of the balanced detector and its classical
 * comparison.
 *
 * Four variance terms limit the coherence readout: drive fluctuation of the
 * thermal field (photon), control-beam readout (readout), spontaneous decay
 * of the far-detuned upper state (spontaneous), and projection noise of the
 * finite atom number (atom shot). Their sum sigma_Q_sq against the direct
 * interferometric floor sigma_I_sq defines the enhancement factor
 * Q_mc = sigma_I_sq / sigma_Q_sq, also available as one closed formula;
 * the two evaluation paths agree to ~1e-15 relative and tests pin that.
 */

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "cohdet/field.hpp"

namespace cohdet {

enum class NoiseTerm { photon, readout, spontaneous, atom_shot };

const char* to_string(NoiseTerm term);

struct NoiseBudget {
    double sigma_p_sq = 0.0;   // (W/m^2)^2
    double sigma_L_sq = 0.0;
    double sigma_sp_sq = 0.0;
    double sigma_a_sq = 0.0;
    double sigma_Q_sq = 0.0;   // sum of the four terms
    double sigma_I_sq = 0.0;   // classical interferometric variance
    double Q_mc = 0.0;         // sigma_I_sq / sigma_Q_sq

    NoiseTerm dominant_term() const;
};

// Scalar parameter bundle for budget evaluation.
struct BudgetParams {
    double omega_c = 0.0;      // rad/s
    double delta_omega = 0.0;  // rad/s
    double area = 0.0;         // m^2
    double finesse = 0.0;
    double delta = 0.0;        // rad/s
    double delta_l = 0.0;      // rad/s
    double lambda = 0.0;       // m
    double d02 = 0.0;          // C*m
    double d12 = 0.0;
    double n0 = 0.0;           // m^-3

    static BudgetParams from(const FieldPairSpec& spec, const AtomCavityParams& atom);

    double irradiance(double n_occ) const;
    double atoms() const;
    // Integration time holding n_T photons at occupation n_occ.
    double integration_time(double n_occ, double n_T) const;
};

// Drive-fluctuation noise: sigma_p^2 = |Gamma12|^2 (2 pi / T dw) (n+1)/n.
double photon_noise(double gamma12_mag, double T, double delta_omega, double n_occ);

// Control-beam readout noise:
// sigma_L^2 = |zeta| n (hbar w_c/(T A) * pi/F)^2 (dw T / 2 pi) (delta/delta_l).
double optical_readout_noise(double zeta_mag, double n_occ, double omega_c, double delta_omega,
                             double T, double area, double finesse, double delta,
                             double delta_l);

// Spontaneous-decay noise: sigma_sp^2 = (4 pi^2 hbar w_c delta / (3 lambda^2 F))^2.
double spontaneous_noise(double omega_c, double delta, double lambda, double finesse);

// Projection noise of N_a atoms:
// sigma_a^2 = (pi/F)^2 (hbar^2 delta / (d02 d12 Z0 T))^2 / N_a.
double atom_shot_noise(double delta, double d02, double d12, double z0, double T, double n_a,
                       double finesse);

// Single-formula enhancement factor; an independent transcription of the
// same budget used to cross-check the term-by-term assembly.
double enhancement_factor(double zeta_mag, double n_occ, double n_T, const BudgetParams& params);

// Term-by-term budget at one operating point.
NoiseBudget assemble_budget(const BudgetParams& params, double zeta_mag, double n_occ,
                            double n_T);

struct SweepPoint {
    double n_occ = 0.0;
    double zeta_mag = 0.0;
    double n_T = 0.0;
    double Q_mc = 0.0;           // closed-formula path
    NoiseTerm dominant_term = NoiseTerm::photon;
    NoiseBudget budget;          // term-by-term path for the same point
};

struct SweepResult {
    std::vector<SweepPoint> points;  // row-major over (n, zeta, n_T), input order
    std::vector<std::string> errors;
};

// Full cross-product sweep; per-point failures are recorded and skipped.
SweepResult sweep_qmc(const std::vector<double>& n_list, const std::vector<double>& zeta_list,
                      const std::vector<double>& n_T_grid, const BudgetParams& params);

struct BudgetCrossCheck {
    double classical_ratio = 0.0;  // empirical var / prediction derived from sigma_I_sq
    double quantum_ratio = 0.0;    // empirical var / sigma_a_sq
    int classical_runs = 0;
    int quantum_runs = 0;
};

/**
 * Ties the closed-form budget to simulated estimator variances.
 *
 * classical_scaled: repeated draws of the phase-scan coherence estimate
 * times I0. The three-phase least-squares estimator spreads the detector
 * variance evenly over its two quadratures, so its predicted total complex
 * variance is sigma_I_sq / 3; the reported ratio is empirical over that.
 *
 * gamma_estimates: repeated balanced-loop coherence estimates; compared
 * directly against sigma_a_sq.
 *
 * Each list needs at least 100 entries (domain_error otherwise).
 */
BudgetCrossCheck cross_validate_budget(const std::vector<std::complex<double>>& classical_scaled,
                                       double sigma_I_sq,
                                       const std::vector<std::complex<double>>& gamma_estimates,
                                       double sigma_a_sq);

}  // namespace cohdet
