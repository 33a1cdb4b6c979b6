/**
 * Parameter records and statistical sampling for the partially coherent
 * field pair.
 *
 * Two quasi-monochromatic fields share a flat-top spectrum of K discrete
 * modes across a bandwidth delta_omega centered on omega_c. Their joint
 * statistics are fixed by a mean occupation n per mode and a normalized
 * mutual coherence zeta (|zeta| <= 1): each mode pair (b_k0, b_k1) is a
 * circularly symmetric complex Gaussian with per-mode covariance
 * [[n, conj(zeta) n], [zeta n, n]] -- the maximum-entropy distribution with
 * those second moments. A relative delay tau enters through the per-mode
 * phases phi_k = omega_k * tau.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "cohdet/rng.hpp"

namespace cohdet {

struct FieldPairSpec {
    double omega_c = 0.0;       // center frequency, rad/s
    double delta_omega = 0.0;   // full bandwidth, rad/s
    double n_occ = 0.0;         // mean photon occupation per mode
    std::complex<double> zeta;  // normalized mutual coherence, |zeta| <= 1
    double tau = 0.0;           // relative delay, s
    int mode_count = 64;        // K
    double w0 = 0.0;            // beam waist, m

    // Cross-sectional area; derived so the A = pi*w0^2 invariant cannot be
    // broken by construction.
    double area() const { return pi * w0 * w0; }

    // Throws std::domain_error on an unphysical record.
    void validate() const;
};

// One Monte-Carlo draw of both fields' mode amplitudes.
struct FieldSample {
    std::vector<double> mode_freqs;                // omega_k, rad/s
    std::vector<std::complex<double>> amplitudes0; // b_k0
    std::vector<std::complex<double>> amplitudes1; // b_k1
};

/**
 * Atom and cavity constants for the two-photon transition.
 *
 * Detunings are stored as angular frequencies (rad/s) everywhere in this
 * library; formulas quoted in cyclic frequency are converted at the point of
 * use and say so. The constructor enforces the large-detuning regime
 * (delta >= 10 * delta_omega) that every derived formula assumes, and the
 * spontaneous rate is always recomputed from the dipole inputs.
 */
struct AtomCavityParams {
    double d02 = 0.0;      // dipole moment |0> -> |2>, C*m
    double d12 = 0.0;      // dipole moment |1> -> |2>, C*m
    double delta = 0.0;    // Raman detuning, angular, rad/s
    double delta_l = 0.0;  // control-beam detuning, angular, rad/s
    double finesse = 0.0;  // cavity finesse
    double n0 = 0.0;       // atom number density, m^-3
    double lambda = 0.0;   // central wavelength, m

    AtomCavityParams() = default;

    // delta_omega is the field bandwidth the detuning must dominate.
    AtomCavityParams(double d02_, double d12_, double delta_, double delta_l_,
                     double finesse_, double n0_, double lambda_, double delta_omega);

    // Spontaneous emission rate of the upper state, evaluated at the optical
    // carrier 2*pi*c0/lambda with the geometric-mean dipole d02*d12.
    double spontaneous_rate() const;
};

// Bose-Einstein occupation 1/(exp(hbar*omega_c/(kB*theta)) - 1).
double occupation_from_temperature(double omega_c, double theta);

// Irradiance of either field: I0 = n * hbar * omega_c * delta_omega / (2 pi A).
// Normalized so that I0 * T * A / (hbar * omega_c) equals the total photon
// number n * delta_omega * T / (2 pi) -- see total_photons.
double irradiance_from_occupation(const FieldPairSpec& spec);

// Total photons detected in integration time T: n_T = n * delta_omega * T / (2 pi).
double total_photons(double n_occ, double delta_omega, double T);

// Atoms illuminated inside the beam waist: N_a = 2 * N0 * A^2 / lambda.
double atoms_in_waist(double n0, double area, double lambda);

// Mode grid: K midpoints uniformly covering [omega_c - dw/2, omega_c + dw/2].
std::vector<double> mode_frequencies(const FieldPairSpec& spec);

// Draws one correlated sample of all mode amplitudes. Consumes a fixed
// number of variates from rng, so sequences are reproducible.
FieldSample sample_field_modes(const FieldPairSpec& spec, Rng& rng);
FieldSample sample_field_modes(const FieldPairSpec& spec, std::uint64_t seed);

// Sample-averaged mutual coherence estimate: the expectation over the field
// ensemble equals zeta * I0 at tau = 0, and acquires the phase set by
// phi_k = omega_k * tau otherwise. Throws estimation_error on an empty list.
std::complex<double> empirical_mutual_coherence(const std::vector<FieldSample>& samples,
                                                const FieldPairSpec& spec);

// Ensemble mutual coherence: the exact expectation of the empirical
// estimator, zeta * I0 times the delay envelope averaged over the mode comb.
std::complex<double> mutual_coherence(const FieldPairSpec& spec);

}  // namespace cohdet
