#include "cohdet/rabi.hpp"

#include <cmath>
#include <stdexcept>

#include "cohdet/constants.hpp"
#include "cohdet/errors.hpp"
#include "cohdet/parallel.hpp"
#include "cohdet/stats.hpp"

namespace cohdet {

namespace {

using cplx = std::complex<double>;

double frequency_ratio(const AtomCavityParams& atom, const FieldPairSpec& spec) {
    const double r = (spec.omega_c + atom.delta) / spec.omega_c;
    return r * r;
}

// Scalar part of the coupling chain common to every mode pair, without the
// per-mode detuning denominator.
double coupling_scale(const AtomCavityParams& atom, const FieldPairSpec& spec) {
    const double per_mode_irradiance =
        irradiance_from_occupation(spec) / (spec.n_occ * static_cast<double>(spec.mode_count));
    return constants.Z0 * atom.d02 * atom.d12 / (constants.hbar * constants.hbar) *
           frequency_ratio(atom, spec) * (atom.finesse / pi) * per_mode_irradiance;
}

inline double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

// Window kernel S(d) = (1/T) integral_0^T e^{i d t} dt.  sinc can go
// negative, so build the value from cos/sin rather than std::polar.
inline cplx window_kernel(double d, double T) {
    const double half = 0.5 * d * T;
    return sinc(half) * cplx{std::cos(half), std::sin(half)};
}

}  // namespace

std::complex<double> ensemble_rabi_frequency(const AtomCavityParams& atom,
                                             const FieldPairSpec& spec,
                                             std::complex<double> gamma12) {
    if (atom.delta == 0.0)
        throw std::domain_error("ensemble_rabi_frequency: zero detuning is singular");
    return constants.Z0 * atom.d02 * atom.d12 /
           (constants.hbar * constants.hbar * atom.delta) * frequency_ratio(atom, spec) *
           (atom.finesse / pi) * gamma12;
}

std::vector<double> mode_pair_weights(const AtomCavityParams& atom, const FieldPairSpec& spec) {
    spec.validate();
    if (spec.n_occ == 0.0)
        throw std::domain_error("mode_pair_weights: n_occ must be positive");
    const double scale = coupling_scale(atom, spec);
    const double omega_02 = spec.omega_c + atom.delta;
    const auto freqs = mode_frequencies(spec);
    std::vector<double> weights(freqs.size());
    for (std::size_t k = 0; k < freqs.size(); ++k) weights[k] = scale / (omega_02 - freqs[k]);
    return weights;
}

std::complex<double> instantaneous_rabi(const FieldSample& sample, const AtomCavityParams& atom,
                                        const FieldPairSpec& spec, double t) {
    const auto weights = mode_pair_weights(atom, spec);
    if (weights.size() != sample.mode_freqs.size())
        throw std::domain_error("instantaneous_rabi: sample does not match spec mode count");
    // Omega(t) = [sum_k conj(b_k0) e^{i w_k t}] [sum_k' W_k' b_k'1 e^{-i w_k' t + i phi_k'}]
    cplx left = 0.0, right = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        const double w = sample.mode_freqs[k];
        left += std::conj(sample.amplitudes0[k]) * std::polar(1.0, w * t);
        right += weights[k] * sample.amplitudes1[k] * std::polar(1.0, w * (spec.tau - t));
    }
    return left * right;
}

std::pair<double, double> ac_stark_shifts(const AtomCavityParams& atom,
                                          const FieldPairSpec& spec) {
    spec.validate();
    if (spec.n_occ == 0.0) return {0.0, 0.0};
    // Light shifts use the central detuning for every mode (the spread over
    // the band is a 1e-4-level correction); per-leg shifts scale with the
    // leg's own dipole squared while the shared chain carries d02*d12 once.
    const double base =
        coupling_scale(atom, spec) / atom.delta * spec.n_occ * static_cast<double>(spec.mode_count);
    return {base * atom.d02 / atom.d12, base * atom.d12 / atom.d02};
}

std::pair<double, double> ac_stark_shifts(const FieldSample& sample,
                                          const AtomCavityParams& atom,
                                          const FieldPairSpec& spec) {
    spec.validate();
    if (spec.n_occ == 0.0) throw std::domain_error("ac_stark_shifts: n_occ must be positive");
    if (sample.mode_freqs.size() != static_cast<std::size_t>(spec.mode_count))
        throw std::domain_error("ac_stark_shifts: sample does not match spec mode count");
    const double per_mode = coupling_scale(atom, spec) / atom.delta;
    double acc0 = 0.0, acc1 = 0.0;
    for (std::size_t k = 0; k < sample.mode_freqs.size(); ++k) {
        acc0 += std::norm(sample.amplitudes0[k]);
        acc1 += std::norm(sample.amplitudes1[k]);
    }
    return {per_mode * acc0 * atom.d02 / atom.d12, per_mode * acc1 * atom.d12 / atom.d02};
}

double rabi_variance(std::complex<double> omega0, double T, double delta_omega, double n_occ) {
    if (!(T > 0.0) || !(delta_omega > 0.0))
        throw std::domain_error("rabi_variance: T and delta_omega must be positive");
    if (n_occ == 0.0)
        throw std::domain_error("rabi_variance: diverges at zero occupation");
    const double excess = 2.0 * pi / (T * delta_omega) * (n_occ + 1.0) / n_occ;
    return std::norm(omega0) * (1.0 + excess);
}

WindowedRabiMoment windowed_rabi_moment(const AtomCavityParams& atom, const FieldPairSpec& spec,
                                        double T, int samples, std::uint64_t seed,
                                        unsigned threads) {
    spec.validate();
    if (!(T > 0.0)) throw std::domain_error("windowed_rabi_moment: T must be positive");
    if (samples < 2) throw std::domain_error("windowed_rabi_moment: need at least 2 samples");

    const auto freqs = mode_frequencies(spec);
    const auto weights = mode_pair_weights(atom, spec);
    const std::size_t k_count = freqs.size();

    // Window kernel matrix S[k][k'] = S(omega_k - omega_k'); the grid is
    // uniform, so it depends only on the index difference.
    std::vector<cplx> kernel_by_offset(2 * k_count - 1);
    const double step = spec.delta_omega / static_cast<double>(k_count);
    for (std::size_t idx = 0; idx < kernel_by_offset.size(); ++idx) {
        const auto offset = static_cast<double>(static_cast<long long>(idx) -
                                                static_cast<long long>(k_count) + 1);
        kernel_by_offset[idx] = window_kernel(offset * step, T);
    }
    const auto kernel = [&](std::size_t row, std::size_t col) {
        return kernel_by_offset[row - col + k_count - 1];
    };

    std::vector<cplx> phased_weights(k_count);  // W_k e^{i phi_k}
    for (std::size_t k = 0; k < k_count; ++k)
        phased_weights[k] = weights[k] * std::polar(1.0, freqs[k] * spec.tau);

    std::vector<cplx> estimates(static_cast<std::size_t>(samples));
    parallel_for(static_cast<std::size_t>(samples), threads, [&](std::size_t m) {
        Rng rng = Rng::stream(seed, m);
        const FieldSample sample = sample_field_modes(spec, rng);
        std::vector<cplx> weighted1(k_count);  // W_k' b_k'1 e^{i phi_k'}
        for (std::size_t k = 0; k < k_count; ++k)
            weighted1[k] = phased_weights[k] * sample.amplitudes1[k];

        // u_k' = sum_k conj(b_k0) S(omega_k - omega_k')
        // v_k' = sum_l' weighted1_l' S(omega_k' - omega_l')
        std::vector<cplx> u(k_count, 0.0), v(k_count, 0.0);
        for (std::size_t col = 0; col < k_count; ++col) {
            cplx acc_u = 0.0, acc_v = 0.0;
            for (std::size_t row = 0; row < k_count; ++row) {
                acc_u += std::conj(sample.amplitudes0[row]) * kernel(row, col);
                acc_v += weighted1[row] * kernel(col, row);
            }
            u[col] = acc_u;
            v[col] = acc_v;
        }
        cplx window_mean = 0.0, ordering = 0.0;
        for (std::size_t col = 0; col < k_count; ++col) {
            window_mean += u[col] * weighted1[col];
            ordering += u[col] * phased_weights[col] * v[col];
        }
        // Unconjugated square plus the single cross-field contraction of the
        // shared source (zeta per mode).
        estimates[m] = window_mean * window_mean + spec.zeta * ordering;
    });

    WindowedRabiMoment result;
    result.mean = mean(estimates);
    result.std_error = std::sqrt(complex_variance(estimates) / static_cast<double>(samples));
    result.samples = samples;
    return result;
}

}  // namespace cohdet
