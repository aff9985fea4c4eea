#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gsl/gsl_integration.h>

#include <cmath>
#include <random>

#include "qradar/schemes.hpp"

using namespace qradar;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kJ1Root = 3.8317059702075123;

double rel_err(double a, double b) {
    return std::abs(a - b) / std::max(1.0, std::abs(b));
}

double gl_window_mean(const MeasurementSetting& s, const AntennaParams& p,
                      std::size_t nodes) {
    gsl_integration_glfixed_table* table =
        gsl_integration_glfixed_table_alloc(nodes);
    const double a = s.tau0 - s.delta_tau, b = s.tau0 + s.delta_tau;
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes; ++i) {
        double x, w;
        gsl_integration_glfixed_point(a, b, i, &x, &w, table);
        sum += w * setting_probability_at(s, p, x);
    }
    gsl_integration_glfixed_table_free(table);
    return sum / (b - a);
}

}  // namespace

TEST_CASE("first-kind Bessel function against pinned references") {
    CHECK(bessel_j1(0.0) == 0.0);
    CHECK(rel_err(bessel_j1(0.5), 0.24226845767487389) < 1e-10);
    CHECK(rel_err(bessel_j1(3.0), 0.33905895852593646) < 1e-10);
    CHECK(rel_err(bessel_j1(7.5), 0.13524842757970551) < 1e-10);
    CHECK(rel_err(bessel_j1(14.2), 0.16261073420017556) < 1e-10);
    CHECK(rel_err(bessel_j1(33.3), 0.12386214790148026) < 1e-10);
    CHECK(rel_err(bessel_j1(49.5), -0.11337219628326539) < 1e-10);
    CHECK(std::abs(bessel_j1(kJ1Root)) < 1e-9);
    CHECK(bessel_j1(-2.7) == doctest::Approx(-bessel_j1(2.7)).epsilon(1e-14));
}

TEST_CASE("sombrero function") {
    CHECK(somb(0.0) == 1.0);
    CHECK(std::abs(somb(kJ1Root)) < 1e-10);
    CHECK(somb(2.3) == doctest::Approx(somb(-2.3)).epsilon(1e-14));
    CHECK(somb(1e-8) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rotation amplitudes") {
    const AntennaParams p{1.0, 1.0};
    const DetectorAmplitudes a =
        amplitudes_rotation({0.0, 0.0}, p, kPi / 2);
    CHECK(std::abs(a.f2 - 1.0) < 1e-12);

    const DetectorAmplitudes b = amplitudes_rotation({0.0, 0.0}, p, 0.0);
    CHECK(b.f2.real() == doctest::Approx(std::cos(1.0)).epsilon(1e-14));
    CHECK(b.f2.imag() == doctest::Approx(-std::sin(1.0)).epsilon(1e-14));

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
    for (int i = 0; i < 20; ++i)
        CHECK(std::abs(amplitudes_rotation({ang(rng), 0.1}, p, ang(rng)).f2) ==
              doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("two-scatterer far-field amplitudes") {
    const AntennaParams p{1.0, 4.8};
    FarFieldTwoConfig cfg{1.2, 0.0, 1e3, 0.3, 0.3};
    const DetectorAmplitudes a = amplitudes_far_two(cfg, p, 0.3);
    CHECK(std::abs(a.f1 - 2.0) < 1e-14);
    CHECK(std::abs(a.f2 - 2.0 * std::exp(std::complex<double>(
                              0.0, -4.8 * std::cos(1.2)))) < 1e-12);

    cfg.kr = kPi;
    const DetectorAmplitudes b = amplitudes_far_two(cfg, p, 0.0);
    CHECK(std::abs(b.f1) < 1e-14);
}

TEST_CASE("coinciding two-scatterer geometry reduces to the rotated antenna") {
    const AntennaParams p{1.0, 4.8};
    const double theta = 1.2, tau = 0.75, kRo = 1e3;
    std::vector<double> devs;
    for (const double kr : {1e-2, 1e-3, 1e-4}) {
        const FarFieldTwoConfig cfg{theta, kr, kRo, kPi / 2, kPi / 2};
        const DetectorAmplitudes a = amplitudes_far_two(cfg, p, kPi / 2);
        // amplitudes carry the common factor 1+E -> 2, scaling the quartic
        // form by 2^4
        const double pfar = g2_probability(a, a, p, tau) / 16.0;
        const double da2 = 0.5 * kr / kRo;
        const double prot = rotation_probability_closed(theta, da2, p, tau);
        devs.push_back(std::abs(pfar - prot) / prot);
    }
    // quadratic approach to the rotation scheme
    const double slope01 = std::log(devs[0] / devs[1]) / std::log(10.0);
    CHECK(slope01 > 1.5);
    CHECK(devs[2] < devs[0]);
}

TEST_CASE("three-scatterer amplitudes") {
    const AntennaParams p{1.0, 4.8};
    const ThreeScattererConfig zero{1.2, 0.0, 0.0, 1e3, 0.4};
    const DetectorAmplitudes a = amplitudes_far_three(zero, p, 0.4);
    CHECK(std::abs(a.f1 - 3.0) < 1e-14);
    CHECK(std::abs(a.f2 - 3.0 * std::exp(std::complex<double>(
                              0.0, -4.8 * std::cos(1.2)))) < 1e-12);

    // phases at cube roots of unity cancel the object amplitude
    const double phi = 0.4;
    const double d = 2.0 * kPi / (3.0 * std::cos(phi));
    const ThreeScattererConfig null{1.2, d, d, 1e9, phi};
    CHECK(std::abs(amplitudes_far_three(null, p, phi).f1) < 1e-12);

    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    for (int i = 0; i < 20; ++i) {
        const ThreeScattererConfig c{1.2, u(rng), u(rng), 1e3, u(rng)};
        const DetectorAmplitudes amp = amplitudes_far_three(c, p, c.phi);
        CHECK(std::abs(amp.f1) <= 3.0 + 1e-12);
        CHECK(std::abs(amp.f2) <= 3.0 + 1e-12);
    }
}

TEST_CASE("near-field imaging amplitudes") {
    const AntennaParams p{1.0, 4.8};
    const NearFieldConfig coincide{1.2, 0.0, 5.0};
    const DetectorAmplitudes a = amplitudes_near(coincide, p);
    CHECK(std::abs(a.f1 - 2.0) < 1e-14);
    CHECK(std::abs(a.f2 - 2.0 * std::exp(std::complex<double>(
                              0.0, -4.8 * std::cos(1.2)))) < 1e-12);

    const NearFieldConfig blind{1.2, kJ1Root / 5.0, 5.0};
    CHECK(std::abs(amplitudes_near(blind, p).f1 - 1.0) < 1e-10);
    CHECK(amplitudes_near(blind, p).f1.imag() == 0.0);

    // flat point-spread maximum: somb contribution changes only to
    // second order in the hole separation
    const double x = 5.0;
    const double d3 = somb(1e-3 * x) - 1.0;
    const double d4 = somb(1e-4 * x) - 1.0;
    CHECK(d3 / d4 == doctest::Approx(100.0).epsilon(1e-2));
}

TEST_CASE("pair-detection probability, rotation checks") {
    const AntennaParams p{1.0, 1.0};
    const RotationConfig cfg{0.7, 0.0};
    const DetectorAmplitudes a = amplitudes_rotation(cfg, p, 0.7);
    CHECK(g2_probability(a, a, p, 0.0) == doctest::Approx(2.0).epsilon(1e-12));

    // two detector angles at zero delay: 1 + cos(phase difference)
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
    for (int i = 0; i < 30; ++i) {
        const double t1 = ang(rng), t2 = ang(rng);
        const DetectorAmplitudes a1 = amplitudes_rotation({0, 0}, p, t1);
        const DetectorAmplitudes a2 = amplitudes_rotation({0, 0}, p, t2);
        const double phase = p.zeta12 * (std::cos(t1) - std::cos(t2));
        const double expected = 1.0 + std::cos(phase);
        CHECK(g2_probability(a1, a2, p, 0.0) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("zero-delay factorization for every scheme") {
    const AntennaParams p{1.0, 4.8};
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    for (int i = 0; i < 30; ++i) {
        const FarFieldTwoConfig cfg{u(rng), u(rng), 1e3, u(rng), u(rng)};
        const DetectorAmplitudes a = amplitudes_far_two(cfg, p, cfg.phi1);
        const DetectorAmplitudes b = amplitudes_far_two(cfg, p, cfg.phi2);
        const double lhs = g2_probability(a, b, p, 0.0);
        const double rhs = 0.5 * std::norm(a.f1 * b.f2 + b.f1 * a.f2);
        CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, rhs));
    }
}

TEST_CASE("assembled probability equals the closed rotation form") {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> zdist(0.1, 6.0), tdist(0.0, 3.0),
        ang(0.0, 2 * kPi), da(-0.5, 0.5);
    for (int i = 0; i < 1000; ++i) {
        const AntennaParams p{1.0, zdist(rng)};
        const double theta = ang(rng), alpha = da(rng), tau = tdist(rng);
        const DetectorAmplitudes a =
            amplitudes_rotation({theta, alpha}, p, theta);
        const double lhs = g2_probability(a, a, p, tau);
        const double rhs = rotation_probability_closed(theta, alpha, p, tau);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("basis coefficients reproduce the assembled probability") {
    const AntennaParams p{1.0, 2.4};
    const CouplingCoefficients cc = couplings(p);
    const DetectorAmplitudes a = amplitudes_rotation({0.9, 0.2}, p, 0.9);
    const DetectorAmplitudes b = amplitudes_rotation({0.9, 0.2}, p, 1.4);
    const G2Coefficients co = g2_coefficients(a, b);
    for (const double tau : {0.0, 0.3, 1.1, 2.7}) {
        const double reconstructed =
            std::exp(-tau) * (co.a * std::cosh(cc.gamma12 * tau) +
                              co.b * std::sinh(cc.gamma12 * tau) +
                              co.c * std::cos(2.0 * cc.f12 * tau) +
                              co.d * std::sin(2.0 * cc.f12 * tau));
        CHECK(std::abs(reconstructed - g2_probability(a, b, p, tau)) < 1e-12);
    }
}

TEST_CASE("probability nonnegative over random settings") {
    std::mt19937 rng(33);
    std::uniform_real_distribution<double> u(0.1, 5.0), tdist(0.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const AntennaParams p{1.0, u(rng)};
        const FarFieldTwoConfig cfg{u(rng), u(rng), 1e3, u(rng), u(rng)};
        const DetectorAmplitudes a = amplitudes_far_two(cfg, p, cfg.phi1);
        const DetectorAmplitudes b = amplitudes_far_two(cfg, p, cfg.phi2);
        CHECK(g2_probability(a, b, p, tdist(rng)) >= 0.0);
    }
}

TEST_CASE("window averaging") {
    const AntennaParams p{1.0, 1.0};
    const MeasurementSetting sharp{RotationConfig{0.6, 0.1}, 0.75, 0.0};
    CHECK(time_averaged_probability(sharp, p) ==
          doctest::Approx(setting_probability_at(sharp, p, 0.75)).epsilon(1e-14));

    const MeasurementSetting window{RotationConfig{0.6, 0.1}, 0.75, 0.5};
    const double closed = time_averaged_probability(window, p);
    CHECK(rel_err(closed, gl_window_mean(window, p, 32)) < 1e-10);
    CHECK(rel_err(closed, gl_window_mean(window, p, 64)) < 1e-10);

    const MeasurementSetting narrow{RotationConfig{0.6, 0.1}, 0.75, 1e-8};
    CHECK(rel_err(time_averaged_probability(narrow, p),
                  setting_probability_at(narrow, p, 0.75)) < 1e-7);

    CHECK_THROWS_AS(
        time_averaged_probability({RotationConfig{0.6, 0.1}, 0.3, 0.4}, p),
        ConfigError);
}

TEST_CASE("window averaging survives fast beat frequencies") {
    // at small separations the beat is ~3/zeta^3 per unit delay; the
    // closed form must stay finite and within the pointwise envelope
    const AntennaParams p{1.0, 0.02};
    const MeasurementSetting s{AntennaDistanceConfig{kPi / 4}, 0.75, 0.05};
    const double mean = time_averaged_probability(s, p);
    CHECK(std::isfinite(mean));
    CHECK(mean >= 0.0);
    CHECK(mean < 4.0);
}
