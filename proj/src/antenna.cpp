#include "qradar/antenna.hpp"

#include <cmath>

namespace qradar {

namespace {

// Below this separation the direct formulas lose ~8 digits to
// cancellation; switch to 6th-order series.
constexpr double kSeriesThreshold = 1e-3;

double f12_series(double z) {
    const double z2 = z * z;
    return 1.5 / (z2 * z) - 0.75 / z +
           z * (9.0 / 16.0 + z2 * (-5.0 / 96.0 + z2 * (7.0 / 3840.0)));
}

double gamma12_series(double z) {
    const double z2 = z * z;
    return 1.0 + z2 * (-1.0 / 5.0 + z2 * (3.0 / 280.0 - z2 / 3780.0));
}

}  // namespace

CouplingCoefficients couplings(const AntennaParams& params) {
    params.validate();
    const double z = params.zeta12;
    double f, g;
    if (z < kSeriesThreshold) {
        f = f12_series(z);
        g = gamma12_series(z);
    } else {
        const double s = std::sin(z), c = std::cos(z);
        const double z2 = z * z, z3 = z2 * z;
        f = -1.5 * (c / z - (s / z2 + c / z3));
        g = 1.5 * (s / z - (s / z3 - c / z2));
    }
    return {params.gamma * f, params.gamma * g};
}

double coupling_f12(const AntennaParams& params) { return couplings(params).f12; }

double coupling_gamma12(const AntennaParams& params) {
    return couplings(params).gamma12;
}

UpsilonTensor upsilon(const AntennaParams& params, double tau) {
    params.validate();
    if (tau < 0.0) throw ConfigError("tau must be >= 0");
    const CouplingCoefficients cc = couplings(params);
    const double omega = beat_frequency(cc);
    const double c = std::cos(omega * tau), s = std::sin(omega * tau);
    const double ch = std::cosh(cc.gamma12 * tau), sh = std::sinh(cc.gamma12 * tau);
    const std::complex<double> i(0.0, 1.0);

    UpsilonTensor u;
    u.tau = tau;
    for (int j = 0; j < 2; ++j)
        for (int n = 0; n < 2; ++n) u.at(j, j, n, n) = -c + ch;
    for (int j = 0; j < 2; ++j) {
        const int n = 1 - j;
        u.at(j, n, j, n) = c + ch;
        u.at(j, n, n, j) = c + ch;
        u.at(j, j, j, n) = i * s - sh;
        u.at(j, j, n, j) = i * s - sh;
        u.at(j, n, j, j) = -i * s - sh;
        u.at(n, j, j, j) = -i * s - sh;
    }
    return u;
}

std::complex<double> pair_correlator(const AntennaParams& params, double t,
                                     double tau, int j, int l, int m, int n) {
    if (t < 0.0) throw ConfigError("t must be >= 0");
    const UpsilonTensor u = upsilon(params, tau);
    return 0.5 * std::exp(-params.gamma * (2.0 * t + tau)) * u(j, l, m, n);
}

}  // namespace qradar
