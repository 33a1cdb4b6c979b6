#include "cohdet/field.hpp"

#include <cmath>
#include <stdexcept>

#include "cohdet/constants.hpp"
#include "cohdet/errors.hpp"

namespace cohdet {

void FieldPairSpec::validate() const {
    if (!(omega_c > 0.0)) throw std::domain_error("FieldPairSpec: omega_c must be positive");
    if (!(delta_omega > 0.0)) throw std::domain_error("FieldPairSpec: delta_omega must be positive");
    if (!(n_occ >= 0.0)) throw std::domain_error("FieldPairSpec: n_occ must be nonnegative");
    if (std::abs(zeta) > 1.0 + 1e-15)
        throw std::domain_error("FieldPairSpec: |zeta| > 1 has no positive-semidefinite covariance");
    if (mode_count < 1) throw std::domain_error("FieldPairSpec: mode_count must be >= 1");
    if (!(w0 > 0.0)) throw std::domain_error("FieldPairSpec: w0 must be positive");
}

AtomCavityParams::AtomCavityParams(double d02_, double d12_, double delta_, double delta_l_,
                                   double finesse_, double n0_, double lambda_,
                                   double delta_omega)
    : d02(d02_), d12(d12_), delta(delta_), delta_l(delta_l_), finesse(finesse_), n0(n0_),
      lambda(lambda_) {
    if (!(d02 > 0.0) || !(d12 > 0.0))
        throw std::domain_error("AtomCavityParams: dipole moments must be positive");
    if (!(finesse > 0.0)) throw std::domain_error("AtomCavityParams: finesse must be positive");
    if (!(n0 >= 0.0)) throw std::domain_error("AtomCavityParams: density must be nonnegative");
    if (!(lambda > 0.0)) throw std::domain_error("AtomCavityParams: lambda must be positive");
    if (delta_l == 0.0) throw std::domain_error("AtomCavityParams: delta_l must be nonzero");
    // Every closed form in this model is a leading order in delta_omega/delta.
    if (!(delta >= 10.0 * delta_omega))
        throw std::domain_error(
            "AtomCavityParams: detuning must satisfy delta >= 10 * delta_omega");
}

double AtomCavityParams::spontaneous_rate() const {
    const double omega = 2.0 * pi * constants.c0 / lambda;
    return d02 * d12 * omega * omega * omega /
           (3.0 * pi * constants.eps0 * constants.hbar *
            constants.c0 * constants.c0 * constants.c0);
}

double occupation_from_temperature(double omega_c, double theta) {
    if (!(theta > 0.0)) throw std::domain_error("occupation_from_temperature: theta must be > 0");
    if (!(omega_c > 0.0))
        throw std::domain_error("occupation_from_temperature: omega_c must be > 0");
    return 1.0 / std::expm1(constants.hbar * omega_c / (constants.kB * theta));
}

double irradiance_from_occupation(const FieldPairSpec& spec) {
    spec.validate();
    return spec.n_occ * constants.hbar * spec.omega_c * spec.delta_omega /
           (2.0 * pi * spec.area());
}

double total_photons(double n_occ, double delta_omega, double T) {
    if (!(T > 0.0)) throw std::domain_error("total_photons: T must be positive");
    return n_occ * delta_omega * T / (2.0 * pi);
}

double atoms_in_waist(double n0, double area, double lambda) {
    if (!(area > 0.0) || !(lambda > 0.0))
        throw std::domain_error("atoms_in_waist: area and lambda must be positive");
    if (!(n0 >= 0.0)) throw std::domain_error("atoms_in_waist: density must be nonnegative");
    return 2.0 * n0 * area * area / lambda;
}

std::vector<double> mode_frequencies(const FieldPairSpec& spec) {
    const int k_count = spec.mode_count;
    std::vector<double> freqs(static_cast<std::size_t>(k_count));
    const double step = spec.delta_omega / k_count;
    const double base = spec.omega_c - 0.5 * spec.delta_omega;
    // Midpoint grid: symmetric about omega_c for every K, so delay phases
    // average to a pure carrier rotation.
    for (int k = 0; k < k_count; ++k)
        freqs[static_cast<std::size_t>(k)] = base + (k + 0.5) * step;
    return freqs;
}

FieldSample sample_field_modes(const FieldPairSpec& spec, Rng& rng) {
    spec.validate();
    FieldSample sample;
    sample.mode_freqs = mode_frequencies(spec);
    const std::size_t k_count = sample.mode_freqs.size();
    sample.amplitudes0.resize(k_count);
    sample.amplitudes1.resize(k_count);
    const double amp = std::sqrt(spec.n_occ);
    const double zeta_mag = std::abs(spec.zeta);
    // Guard the sqrt against |zeta| = 1 + epsilon admitted by validate().
    const double residual = std::sqrt(std::max(0.0, 1.0 - zeta_mag * zeta_mag));
    for (std::size_t k = 0; k < k_count; ++k) {
        const std::complex<double> u = rng.complex_normal();
        const std::complex<double> v = rng.complex_normal();
        sample.amplitudes0[k] = amp * u;
        sample.amplitudes1[k] = amp * (spec.zeta * u + residual * v);
    }
    return sample;
}

FieldSample sample_field_modes(const FieldPairSpec& spec, std::uint64_t seed) {
    Rng rng(seed);
    return sample_field_modes(spec, rng);
}

std::complex<double> empirical_mutual_coherence(const std::vector<FieldSample>& samples,
                                                const FieldPairSpec& spec) {
    if (samples.empty()) throw estimation_error("empirical_mutual_coherence: no samples");
    spec.validate();
    if (spec.n_occ == 0.0) return 0.0;
    std::complex<double> acc = 0.0;
    for (const auto& sample : samples) {
        for (std::size_t k = 0; k < sample.mode_freqs.size(); ++k) {
            const double phi_k = sample.mode_freqs[k] * spec.tau;
            acc += std::conj(sample.amplitudes0[k]) * sample.amplitudes1[k] *
                   std::polar(1.0, phi_k);
        }
    }
    const double norm = irradiance_from_occupation(spec) /
                        (spec.n_occ * static_cast<double>(spec.mode_count));
    return acc * norm / static_cast<double>(samples.size());
}

std::complex<double> mutual_coherence(const FieldPairSpec& spec) {
    spec.validate();
    if (spec.n_occ == 0.0) return 0.0;
    std::complex<double> envelope = 0.0;
    for (double omega_k : mode_frequencies(spec)) envelope += std::polar(1.0, omega_k * spec.tau);
    envelope /= static_cast<double>(spec.mode_count);
    return spec.zeta * irradiance_from_occupation(spec) * envelope;
}

}  // namespace cohdet
