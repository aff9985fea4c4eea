#ifndef QRADAR_ANTENNA_HPP
#define QRADAR_ANTENNA_HPP

#include <array>
#include <complex>

#include "qradar/errors.hpp"

namespace qradar {

// Two identical two-level emitters separated by the dimensionless phase
// zeta12 = omega * d / c, decaying at rate gamma into a shared vacuum.
// gamma is the global time unit (defaults to 1).
struct AntennaParams {
    double gamma = 1.0;
    double zeta12 = 1.0;

    void validate() const {
        if (!(gamma > 0.0)) throw ConfigError("gamma must be > 0");
        if (!(zeta12 > 0.0)) throw ConfigError("zeta12 must be > 0");
    }
};

// Elastic (f12) and inelastic (gamma12) dipole-dipole couplings, in the
// same units as gamma.
struct CouplingCoefficients {
    double f12;
    double gamma12;
};

CouplingCoefficients couplings(const AntennaParams& params);
double coupling_f12(const AntennaParams& params);
double coupling_gamma12(const AntennaParams& params);

// Beat frequency of the delayed correlator. The single-excitation
// eigenstates are split by 2*f12, so all oscillatory terms carry
// cos/sin(2*f12*tau).
inline double beat_frequency(const CouplingCoefficients& c) { return 2.0 * c.f12; }

// Delay-dependent core of the four-operator emitter correlator.
// value(j,l,m,n) is the entry with lower index pair (j,n) and upper
// pair (l,m); indices are 0-based emitter labels.
struct UpsilonTensor {
    std::array<std::complex<double>, 16> values{};
    double tau = 0.0;

    std::complex<double> operator()(int j, int l, int m, int n) const {
        return values[static_cast<std::size_t>(((j * 2 + l) * 2 + m) * 2 + n)];
    }
    std::complex<double>& at(int j, int l, int m, int n) {
        return values[static_cast<std::size_t>(((j * 2 + l) * 2 + m) * 2 + n)];
    }
};

UpsilonTensor upsilon(const AntennaParams& params, double tau);

// <sigma_j^+(t) sigma_l^+(t+tau) sigma_m^-(t+tau) sigma_n^-(t)> for the
// doubly excited initial state.
std::complex<double> pair_correlator(const AntennaParams& params, double t,
                                     double tau, int j, int l, int m, int n);

}  // namespace qradar

#endif
