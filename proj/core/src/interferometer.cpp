#include "cohdet/interferometer.hpp"

#include <cmath>
#include <stdexcept>

#include "cohdet/constants.hpp"
#include "cohdet/errors.hpp"

namespace cohdet {

std::pair<double, double> detector_irradiances(double i0, std::complex<double> zeta, double phi) {
    if (!(i0 >= 0.0)) throw std::domain_error("detector_irradiances: I0 must be nonnegative");
    if (std::abs(zeta) > 1.0 + 1e-15)
        throw std::domain_error("detector_irradiances: |zeta| must be <= 1");
    const double fringe = (zeta * std::polar(1.0, phi)).real();
    return {i0 * (1.0 + fringe), i0 * (1.0 - fringe)};
}

std::uint64_t simulate_photodetection(double irradiance, const FieldPairSpec& spec, double eta,
                                      double T, Rng& rng) {
    if (!(irradiance >= 0.0))
        throw std::domain_error("simulate_photodetection: irradiance must be nonnegative");
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::domain_error("simulate_photodetection: eta must be in [0, 1]");
    if (!(T > 0.0)) throw std::domain_error("simulate_photodetection: T must be positive");
    const double mean = eta * irradiance * T * spec.area() / (constants.hbar * spec.omega_c);
    if (mean == 0.0) return 0;
    const double modes = T * spec.delta_omega / (2.0 * pi);
    const double excess = mean / modes;  // = eta * n_occ at the working point I0
    if (mean > 50.0) {
        const double draw = rng.normal(mean, std::sqrt(mean * (1.0 + excess)));
        return draw <= 0.0 ? 0 : static_cast<std::uint64_t>(std::llround(draw));
    }
    if (excess < 1e-12) return rng.poisson(mean);
    // Gamma-mixed Poisson: lambda ~ Gamma(modes, mean/modes) then
    // Poisson(lambda), i.e. negative binomial with variance mean*(1+excess).
    const double lambda = rng.gamma(modes) * excess;
    return rng.poisson(lambda);
}

PhaseScanMeasurement measure_phase_scan(const FieldPairSpec& spec,
                                        const std::vector<double>& phases, double eta, double T,
                                        Rng& rng) {
    const double i0 = irradiance_from_occupation(spec);
    const double count_to_irr = constants.hbar * spec.omega_c / (eta * T * spec.area());
    PhaseScanMeasurement meas;
    meas.phases = phases;
    meas.integration_time = T;
    meas.eta = eta;
    meas.mean_irradiances.reserve(phases.size());
    for (double phi : phases) {
        const auto [i1, i2] = detector_irradiances(i0, spec.zeta, phi);
        const double m1 = static_cast<double>(simulate_photodetection(i1, spec, eta, T, rng));
        const double m2 = static_cast<double>(simulate_photodetection(i2, spec, eta, T, rng));
        meas.mean_irradiances.emplace_back(m1 * count_to_irr, m2 * count_to_irr);
    }
    return meas;
}

std::complex<double> estimate_coherence_three_phase(const PhaseScanMeasurement& meas, double i0) {
    const std::size_t j_count = meas.phases.size();
    if (j_count < 3 || meas.mean_irradiances.size() != j_count)
        throw estimation_error("estimate_coherence_three_phase: need >= 3 phase points");
    if (!(i0 > 0.0)) throw estimation_error("estimate_coherence_three_phase: I0 must be positive");
    // Model per phase j and detector s = +-1:
    //   I_s(phi_j) - I0 = s * I0 * (u cos phi_j - v sin phi_j),  zeta = u + i v.
    // Both detectors enter; their difference carries all the information, so
    // the normal equations reduce to sums over the difference signal.
    double scc = 0.0, sss = 0.0, scs = 0.0, rc = 0.0, rs = 0.0;
    for (std::size_t j = 0; j < j_count; ++j) {
        const double c = std::cos(meas.phases[j]);
        const double s = std::sin(meas.phases[j]);
        const double diff = meas.mean_irradiances[j].first - meas.mean_irradiances[j].second;
        scc += c * c;
        sss += s * s;
        scs += c * s;
        rc += c * diff;
        rs += s * diff;
    }
    // Normal matrix of the two-detector fit is 2*I0^2 * [[scc, -scs], [-scs, sss]].
    const double det = scc * sss - scs * scs;
    if (std::abs(det) < 1e-12 * (scc + sss) * (scc + sss))
        throw estimation_error("estimate_coherence_three_phase: degenerate phase set");
    const double u = (sss * rc - scs * rs) / (2.0 * i0 * det);
    const double v = (scs * rc - scc * rs) / (2.0 * i0 * det);
    return {u, v};
}

double classical_variance(double eta, double i0, double n_occ, double omega_c, double T,
                          double area) {
    if (!(T > 0.0) || !(area > 0.0))
        throw std::domain_error("classical_variance: T and A must be positive");
    if (!(eta >= 0.0) || !(i0 >= 0.0) || !(n_occ >= 0.0) || !(omega_c >= 0.0))
        throw std::domain_error("classical_variance: inputs must be nonnegative");
    return 2.0 * eta * i0 * (1.0 + eta * n_occ) * constants.hbar * omega_c / (T * area);
}

double noise_equivalent_coherence(double sigma_i_sq) {
    if (!(sigma_i_sq >= 0.0))
        throw std::domain_error("noise_equivalent_coherence: variance must be nonnegative");
    return std::sqrt(sigma_i_sq);
}

}  // namespace cohdet
