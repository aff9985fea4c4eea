#include "qradar/schemes.hpp"

#include <gsl/gsl_sf_bessel.h>

#include <array>
#include <cmath>

namespace qradar {

namespace {

using cd = std::complex<double>;
constexpr cd kI(0.0, 1.0);

inline std::size_t idx(int j, int l, int m, int n) {
    return static_cast<std::size_t>(((j * 2 + l) * 2 + m) * 2 + n);
}

// Coefficients of each tensor entry in the {cos, cosh, sin, sinh} basis.
struct BasisTensors {
    std::array<cd, 16> cos_c{}, cosh_c{}, sin_c{}, sinh_c{};
};

const BasisTensors& basis_tensors() {
    static const BasisTensors bt = [] {
        BasisTensors b;
        for (int j = 0; j < 2; ++j)
            for (int n = 0; n < 2; ++n) {
                b.cos_c[idx(j, j, n, n)] = -1.0;
                b.cosh_c[idx(j, j, n, n)] = 1.0;
            }
        for (int j = 0; j < 2; ++j) {
            const int n = 1 - j;
            b.cos_c[idx(j, n, j, n)] = b.cos_c[idx(j, n, n, j)] = 1.0;
            b.cosh_c[idx(j, n, j, n)] = b.cosh_c[idx(j, n, n, j)] = 1.0;
            b.sin_c[idx(j, j, j, n)] = b.sin_c[idx(j, j, n, j)] = kI;
            b.sinh_c[idx(j, j, j, n)] = b.sinh_c[idx(j, j, n, j)] = -1.0;
            b.sin_c[idx(j, n, j, j)] = b.sin_c[idx(n, j, j, j)] = -kI;
            b.sinh_c[idx(j, n, j, j)] = b.sinh_c[idx(n, j, j, j)] = -1.0;
        }
        return b;
    }();
    return bt;
}

cd amp(const DetectorAmplitudes& a, int j) { return j == 0 ? a.f1 : a.f2; }

// exp(k*x0) * integral of exp(k*x) over [x0, x1], stable for k -> 0.
double integral_exp(double k, double x0, double x1) {
    const double dx = x1 - x0;
    if (k == 0.0) return dx;
    return std::exp(k * x0) * std::expm1(k * dx) / k;
}

}  // namespace

double bessel_j1(double y) { return gsl_sf_bessel_J1(y); }

double somb(double y) {
    if (y == 0.0) return 1.0;
    return 2.0 * gsl_sf_bessel_J1(y) / y;
}

DetectorAmplitudes amplitudes_rotation(const RotationConfig& cfg,
                                       const AntennaParams& params,
                                       double detector_angle) {
    params.validate();
    const double phase =
        params.zeta12 * std::cos(detector_angle + cfg.delta_alpha);
    return {1.0, std::exp(-kI * phase)};
}

DetectorAmplitudes amplitudes_far_two(const FarFieldTwoConfig& cfg,
                                      const AntennaParams& params, double phi_l) {
    params.validate();
    if (!(cfg.kRo > 0.0)) throw ConfigError("kRo must be > 0");
    if (cfg.kr < 0.0) throw ConfigError("kr must be >= 0");
    const double delta_alpha = cfg.kr / cfg.kRo;
    const cd e = std::exp(-kI * (cfg.kr * std::cos(phi_l)));
    const cd f1 = 1.0 + e;
    const cd f2 = std::exp(-kI * (params.zeta12 * std::cos(cfg.theta))) +
                  std::exp(-kI * (params.zeta12 * std::cos(cfg.theta + delta_alpha))) * e;
    return {f1, f2};
}

DetectorAmplitudes amplitudes_far_three(const ThreeScattererConfig& cfg,
                                        const AntennaParams& params, double phi) {
    params.validate();
    if (!(cfg.kRo > 0.0)) throw ConfigError("kRo must be > 0");
    if (cfg.kr1 < 0.0 || cfg.kr2 < 0.0) throw ConfigError("kr1, kr2 must be >= 0");
    const std::array<double, 3> kd = {0.0, cfg.kr1, cfg.kr1 + cfg.kr2};
    cd f1 = 0.0, f2 = 0.0;
    for (const double d : kd) {
        const cd e = std::exp(-kI * (d * std::cos(phi)));
        const double theta_j = cfg.theta + d / cfg.kRo;
        f1 += e;
        f2 += std::exp(-kI * (params.zeta12 * std::cos(theta_j))) * e;
    }
    return {f1, f2};
}

DetectorAmplitudes amplitudes_near(const NearFieldConfig& cfg,
                                   const AntennaParams& params) {
    params.validate();
    if (cfg.x < 0.0) throw ConfigError("lens parameter x must be >= 0");
    const double s = somb(cfg.delta_psi * cfg.x);
    const cd f1 = 1.0 + s;
    const cd f2 = std::exp(-kI * (params.zeta12 * std::cos(cfg.theta))) +
                  std::exp(-kI * (params.zeta12 * std::cos(cfg.theta + cfg.delta_psi))) * s;
    return {f1, f2};
}

G2Coefficients g2_coefficients(const DetectorAmplitudes& a,
                               const DetectorAmplitudes& b) {
    const BasisTensors& bt = basis_tensors();
    cd sc = 0.0, sch = 0.0, ss = 0.0, ssh = 0.0;
    for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l)
            for (int m = 0; m < 2; ++m)
                for (int n = 0; n < 2; ++n) {
                    const cd w = std::conj(amp(a, j)) * std::conj(amp(b, l)) *
                                 amp(b, m) * amp(a, n);
                    const std::size_t k = idx(j, l, m, n);
                    sc += w * bt.cos_c[k];
                    sch += w * bt.cosh_c[k];
                    ss += w * bt.sin_c[k];
                    ssh += w * bt.sinh_c[k];
                }
    return {0.25 * sch.real(), 0.25 * ssh.real(), 0.25 * sc.real(),
            0.25 * ss.real()};
}

double g2_probability(const DetectorAmplitudes& a, const DetectorAmplitudes& b,
                      const AntennaParams& params, double tau) {
    const UpsilonTensor u = upsilon(params, tau);
    cd sum = 0.0;
    for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l)
            for (int m = 0; m < 2; ++m)
                for (int n = 0; n < 2; ++n)
                    sum += std::conj(amp(a, j)) * std::conj(amp(b, l)) *
                           amp(b, m) * amp(a, n) * u(j, l, m, n);
    const cd value = 0.25 * std::exp(-params.gamma * tau) * sum;
    if (std::abs(value.imag()) > 1e-9 * std::max(1.0, std::abs(value)))
        throw NumericalError("pair-detection probability has imaginary residual");
    return std::max(value.real(), 0.0);
}

double rotation_probability_closed(double theta, double delta_alpha,
                                   const AntennaParams& params, double tau) {
    const CouplingCoefficients cc = couplings(params);
    const double phi = params.zeta12 * std::cos(theta + delta_alpha);
    const double cphi = std::cos(phi), sphi = std::sin(phi);
    const double g = cc.gamma12, w = beat_frequency(cc);
    return std::exp(-params.gamma * tau) *
           ((1.0 + cphi * cphi) * std::cosh(g * tau) -
            2.0 * cphi * std::sinh(g * tau) + sphi * sphi * std::cos(w * tau));
}

std::pair<DetectorAmplitudes, DetectorAmplitudes> setting_amplitudes(
    const MeasurementSetting& setting, const AntennaParams& params) {
    return std::visit(
        [&](const auto& cfg) -> std::pair<DetectorAmplitudes, DetectorAmplitudes> {
            using T = std::decay_t<decltype(cfg)>;
            if constexpr (std::is_same_v<T, RotationConfig>) {
                const auto a = amplitudes_rotation(cfg, params, cfg.theta);
                return {a, a};
            } else if constexpr (std::is_same_v<T, FarFieldTwoConfig>) {
                return {amplitudes_far_two(cfg, params, cfg.phi1),
                        amplitudes_far_two(cfg, params, cfg.phi2)};
            } else if constexpr (std::is_same_v<T, ThreeScattererConfig>) {
                const auto a = amplitudes_far_three(cfg, params, cfg.phi);
                return {a, a};
            } else if constexpr (std::is_same_v<T, NearFieldConfig>) {
                const auto a = amplitudes_near(cfg, params);
                return {a, a};
            } else {
                const RotationConfig rot{cfg.theta, 0.0};
                const auto a = amplitudes_rotation(rot, params, cfg.theta);
                return {a, a};
            }
        },
        setting.scheme);
}

double setting_probability_at(const MeasurementSetting& setting,
                              const AntennaParams& params, double tau) {
    const auto [a, b] = setting_amplitudes(setting, params);
    return g2_probability(a, b, params, tau);
}

double time_averaged_probability(const MeasurementSetting& setting,
                                 const AntennaParams& params) {
    setting.validate();
    if (setting.delta_tau == 0.0)
        return setting_probability_at(setting, params, setting.tau0);

    const auto [ampA, ampB] = setting_amplitudes(setting, params);
    const G2Coefficients co = g2_coefficients(ampA, ampB);
    const CouplingCoefficients cc = couplings(params);
    const double G = params.gamma, g = cc.gamma12, w = beat_frequency(cc);
    const double x0 = setting.tau0 - setting.delta_tau;
    const double x1 = setting.tau0 + setting.delta_tau;

    const double ip = integral_exp(g - G, x0, x1);
    const double im = integral_exp(-g - G, x0, x1);
    const double ich = 0.5 * (ip + im);
    const double ish = 0.5 * (ip - im);

    // Antiderivatives of e^{-Gx} cos(wx) and e^{-Gx} sin(wx).
    const double denom = G * G + w * w;
    const auto fc = [&](double x) {
        return std::exp(-G * x) * (w * std::sin(w * x) - G * std::cos(w * x)) / denom;
    };
    const auto fs = [&](double x) {
        return std::exp(-G * x) * (-G * std::sin(w * x) - w * std::cos(w * x)) / denom;
    };
    const double icos = fc(x1) - fc(x0);
    const double isin = fs(x1) - fs(x0);

    const double mean =
        (co.a * ich + co.b * ish + co.c * icos + co.d * isin) /
        (2.0 * setting.delta_tau);
    return std::max(mean, 0.0);
}

}  // namespace qradar
