#include <cmath>
#include <complex>
#include <doctest.h>
#include <vector>

#include "cohdet/errors.hpp"
#include "cohdet/field.hpp"
#include "cohdet/rng.hpp"
#include "expected_values.hpp"
#include "test_support.hpp"

using cohdet::FieldPairSpec;
using cplx = std::complex<double>;

TEST_CASE("operating point reproduces the pinned base quantities") {
    const FieldPairSpec spec = testsup::spec_780(1.0, cplx{0.0});
    CHECK(spec.omega_c == doctest::Approx(expected::omega_c).epsilon(1e-14));
    CHECK(spec.delta_omega == doctest::Approx(expected::delta_omega).epsilon(1e-14));
    CHECK(spec.area() == doctest::Approx(expected::area).epsilon(1e-14));
}

TEST_CASE("thermal occupation at 6000 K") {
    const FieldPairSpec spec = testsup::spec_780(1.0, cplx{0.0});
    CHECK(cohdet::occupation_from_temperature(spec.omega_c, 6000.0) ==
          doctest::Approx(expected::n_bose_6000K).epsilon(1e-13));
    CHECK_THROWS_AS(cohdet::occupation_from_temperature(spec.omega_c, 0.0), std::domain_error);
    CHECK_THROWS_AS(cohdet::occupation_from_temperature(spec.omega_c, -5.0), std::domain_error);
}

TEST_CASE("irradiance and photon-number bridge") {
    const FieldPairSpec spec = testsup::spec_780(1.0, cplx{0.0});
    const double i0 = cohdet::irradiance_from_occupation(spec);
    CHECK(i0 == doctest::Approx(expected::i0_n1).epsilon(1e-13));

    FieldPairSpec doubled = spec;
    doubled.n_occ = 2.0;
    CHECK(cohdet::irradiance_from_occupation(doubled) == doctest::Approx(2.0 * i0).epsilon(1e-14));

    CHECK(cohdet::total_photons(1.0, spec.delta_omega, expected::T_nT_1e3) ==
          doctest::Approx(1e3).epsilon(1e-12));
}

TEST_CASE("atoms in the waist") {
    const FieldPairSpec spec = testsup::spec_780(1.0, cplx{0.0});
    CHECK(cohdet::atoms_in_waist(1e18, spec.area(), 780e-9) ==
          doctest::Approx(expected::atoms).epsilon(1e-13));
}

TEST_CASE("mode grid is a symmetric uniform comb") {
    const FieldPairSpec spec = testsup::spec_780(1.0, cplx{0.0}, 0.0, 32);
    const std::vector<double> freqs = cohdet::mode_frequencies(spec);
    REQUIRE(freqs.size() == 32);
    const double spacing = spec.delta_omega / 32.0;
    double sum = 0.0;
    for (std::size_t k = 0; k < freqs.size(); ++k) {
        sum += freqs[k];
        // Differences of ~2.4e15 rad/s frequencies carry ~0.5 rad/s of
        // representation rounding, i.e. ~7e-8 relative to the spacing.
        if (k > 0) CHECK(freqs[k] - freqs[k - 1] == doctest::Approx(spacing).epsilon(1e-6));
    }
    CHECK(sum / 32.0 == doctest::Approx(spec.omega_c).epsilon(1e-14));
    CHECK(freqs.front() > spec.omega_c - 0.5 * spec.delta_omega);
    CHECK(freqs.back() < spec.omega_c + 0.5 * spec.delta_omega);
}

TEST_CASE("sampling is reproducible per seed and differs across seeds") {
    const FieldPairSpec spec = testsup::spec_780(0.7, std::polar(0.5, 1.0));
    const auto a = cohdet::sample_field_modes(spec, 42u);
    const auto b = cohdet::sample_field_modes(spec, 42u);
    const auto c = cohdet::sample_field_modes(spec, 43u);
    REQUIRE(a.amplitudes0.size() == static_cast<std::size_t>(spec.mode_count));
    REQUIRE(a.amplitudes1.size() == a.amplitudes0.size());
    CHECK(a.amplitudes0 == b.amplitudes0);
    CHECK(a.amplitudes1 == b.amplitudes1);
    CHECK(a.amplitudes0 != c.amplitudes0);
}

TEST_CASE("sampled mode pairs carry the specified second moments") {
    const double n = 2.0;
    const cplx zeta = std::polar(0.6, 1.1);
    const FieldPairSpec spec = testsup::spec_780(n, zeta, 0.0, 16);
    cohdet::Rng rng(7);
    const int samples = 4000;
    double m00 = 0.0, m11 = 0.0;
    cplx cross = 0.0, pseudo = 0.0;
    for (int m = 0; m < samples; ++m) {
        const auto draw = cohdet::sample_field_modes(spec, rng);
        for (int k = 0; k < spec.mode_count; ++k) {
            m00 += std::norm(draw.amplitudes0[k]);
            m11 += std::norm(draw.amplitudes1[k]);
            cross += std::conj(draw.amplitudes0[k]) * draw.amplitudes1[k];
            pseudo += draw.amplitudes0[k] * draw.amplitudes1[k];
        }
    }
    const double count = static_cast<double>(samples) * spec.mode_count;
    // Standard error of each occupation estimate is n / sqrt(count).
    const double five_sigma = 5.0 * n / std::sqrt(count);
    CHECK(std::abs(m00 / count - n) < five_sigma);
    CHECK(std::abs(m11 / count - n) < five_sigma);
    CHECK(std::abs(cross / count - zeta * n) < 5.0 * n * std::sqrt(2.0 / count));
    CHECK(std::abs(pseudo / count) < 5.0 * n * std::sqrt(2.0 / count));
}

TEST_CASE("empirical mutual coherence estimates the ensemble value") {
    const cplx zeta = std::polar(0.4, -0.8);
    const FieldPairSpec spec = testsup::spec_780(1.5, zeta);
    cohdet::Rng rng(11);
    std::vector<cohdet::FieldSample> draws;
    for (int m = 0; m < 3000; ++m) draws.push_back(cohdet::sample_field_modes(spec, rng));
    const cplx emp = cohdet::empirical_mutual_coherence(draws, spec);
    const cplx exact = cohdet::mutual_coherence(spec);
    const double i0 = cohdet::irradiance_from_occupation(spec);
    CHECK(std::abs(emp - exact) <
          5.0 * i0 / std::sqrt(static_cast<double>(spec.mode_count) * draws.size()));
    CHECK_THROWS_AS(cohdet::empirical_mutual_coherence({}, spec), cohdet::estimation_error);
}

TEST_CASE("ensemble mutual coherence: zeta * I0 at zero delay, comb envelope otherwise") {
    const cplx zeta = std::polar(0.25, 0.3);
    const FieldPairSpec spec = testsup::spec_780(2.0, zeta);
    const double i0 = cohdet::irradiance_from_occupation(spec);
    CHECK(std::abs(cohdet::mutual_coherence(spec) - zeta * i0) < 1e-14 * i0);

    FieldPairSpec delayed = spec;
    delayed.tau = 3.0 / spec.delta_omega;
    const cplx shifted = cohdet::mutual_coherence(delayed);
    // Envelope from the public mode grid; phases phi_k = omega_k * tau.
    cplx envelope = 0.0;
    for (double w : cohdet::mode_frequencies(delayed)) envelope += std::polar(1.0, w * delayed.tau);
    envelope /= static_cast<double>(delayed.mode_count);
    CHECK(std::abs(shifted - zeta * i0 * envelope) < 1e-12 * i0);
    CHECK(std::abs(shifted) < std::abs(zeta) * i0);
}

TEST_CASE("field records reject unphysical values") {
    FieldPairSpec spec = testsup::spec_780(1.0, cplx{0.0});
    spec.zeta = cplx{1.2, 0.0};
    CHECK_THROWS_AS(spec.validate(), std::domain_error);
    spec = testsup::spec_780(1.0, cplx{0.0});
    spec.n_occ = -0.1;
    CHECK_THROWS_AS(spec.validate(), std::domain_error);
    spec = testsup::spec_780(1.0, cplx{0.0});
    spec.mode_count = 0;
    CHECK_THROWS_AS(spec.validate(), std::domain_error);
    spec = testsup::spec_780(1.0, cplx{0.0});
    spec.w0 = 0.0;
    CHECK_THROWS_AS(spec.validate(), std::domain_error);
}

TEST_CASE("atom record enforces the large-detuning regime") {
    const FieldPairSpec spec = testsup::spec_780(1.0, cplx{0.0});
    CHECK_THROWS_AS(cohdet::AtomCavityParams(1.6e-29, 1.6e-29, 5.0 * spec.delta_omega,
                                             1e3 * spec.delta_omega, 1.6e5, 1e18, 780e-9,
                                             spec.delta_omega),
                    std::domain_error);
    CHECK_THROWS_AS(cohdet::AtomCavityParams(1.6e-29, 1.6e-29, 1e3 * spec.delta_omega, 0.0,
                                             1.6e5, 1e18, 780e-9, spec.delta_omega),
                    std::domain_error);
}

TEST_CASE("spontaneous rate of the default dipole") {
    const FieldPairSpec spec = testsup::spec_780(1.0, cplx{0.0});
    const cohdet::AtomCavityParams atom = testsup::atom_780(spec);
    CHECK(atom.spontaneous_rate() == doctest::Approx(expected::gamma_sp).epsilon(1e-12));
}
