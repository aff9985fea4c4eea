#ifndef QRADAR_SCHEMES_HPP
#define QRADAR_SCHEMES_HPP

#include <complex>
#include <variant>

#include "qradar/antenna.hpp"

namespace qradar {

// Complex couplings of the two emitters to one detector.
struct DetectorAmplitudes {
    std::complex<double> f1;
    std::complex<double> f2;
};

// Antenna rotated by delta_alpha relative to the observation direction
// theta; both detectors share the observation angle.
struct RotationConfig {
    double theta = 0.0;
    double delta_alpha = 0.0;
};

// Two point scatterers in the far field, separation phase kr, antenna at
// angular distance kRo; detectors at phi1 and phi2.
struct FarFieldTwoConfig {
    double theta = 0.0;
    double kr = 0.0;
    double kRo = 1e3;
    double phi1 = 0.0;
    double phi2 = 0.0;
};

// Three collinear scatterers with separation phases kr1, kr2; both
// detectors at the common angle phi.
struct ThreeScattererConfig {
    double theta = 0.0;
    double kr1 = 0.0;
    double kr2 = 0.0;
    double kRo = 1e3;
    double phi = 0.0;
};

// Lens imaging of two pinholes at angular separation delta_psi; x is the
// dimensionless lens parameter, detectors at the shared image point.
struct NearFieldConfig {
    double theta = 0.0;
    double delta_psi = 0.0;
    double x = 0.0;
};

// The emitter separation itself is the inferred parameter; detectors at
// the common angle theta.
struct AntennaDistanceConfig {
    double theta = 0.0;
};

using SchemeConfig = std::variant<RotationConfig, FarFieldTwoConfig,
                                  ThreeScattererConfig, NearFieldConfig,
                                  AntennaDistanceConfig>;

// One detection configuration: geometry plus the delay gate, nominal
// delay tau0 with uniform timing uncertainty +-delta_tau.
struct MeasurementSetting {
    SchemeConfig scheme;
    double tau0 = 0.0;
    double delta_tau = 0.0;

    void validate() const {
        if (tau0 < 0.0 || delta_tau < 0.0 || tau0 - delta_tau < 0.0)
            throw ConfigError("delay window must satisfy tau0 >= delta_tau >= 0");
    }
};

double bessel_j1(double y);
double somb(double y);

DetectorAmplitudes amplitudes_rotation(const RotationConfig& cfg,
                                       const AntennaParams& params,
                                       double detector_angle);
DetectorAmplitudes amplitudes_far_two(const FarFieldTwoConfig& cfg,
                                      const AntennaParams& params, double phi_l);
DetectorAmplitudes amplitudes_far_three(const ThreeScattererConfig& cfg,
                                        const AntennaParams& params, double phi);
DetectorAmplitudes amplitudes_near(const NearFieldConfig& cfg,
                                   const AntennaParams& params);

// Coefficients of the delayed pair-detection probability in the basis
// p(tau) = e^{-G tau} (a cosh(g tau) + b sinh(g tau) + c cos(w tau)
//          + d sin(w tau)), g = gamma12, w = 2 f12.
// They depend on the detector amplitudes only.
struct G2Coefficients {
    double a, b, c, d;
};

G2Coefficients g2_coefficients(const DetectorAmplitudes& a,
                               const DetectorAmplitudes& b);

// Delayed two-photon detection probability (global constant stripped),
// assembled by contracting the correlator tensor with the amplitudes.
double g2_probability(const DetectorAmplitudes& a, const DetectorAmplitudes& b,
                      const AntennaParams& params, double tau);

// Closed form of the same quantity for the rotation scheme.
double rotation_probability_closed(double theta, double delta_alpha,
                                   const AntennaParams& params, double tau);

// Detector amplitude pair for one measurement setting. For two-angle
// schemes the pair differs, otherwise both detectors coincide.
std::pair<DetectorAmplitudes, DetectorAmplitudes> setting_amplitudes(
    const MeasurementSetting& setting, const AntennaParams& params);

// Probability of the setting at a sharp delay tau.
double setting_probability_at(const MeasurementSetting& setting,
                              const AntennaParams& params, double tau);

// Mean probability over the uniform delay window [tau0-dtau, tau0+dtau].
// Exact: the integrand is a fixed combination of exponentials and
// sinusoids, so the window integral is evaluated in closed form.
double time_averaged_probability(const MeasurementSetting& setting,
                                 const AntennaParams& params);

}  // namespace qradar

#endif
