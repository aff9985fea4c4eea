#ifndef QRADAR_COMMANDS_HPP
#define QRADAR_COMMANDS_HPP

#include <ostream>
#include <string>

#include "qradar/antenna.hpp"
#include "qradar/inference.hpp"
#include "qradar/montecarlo.hpp"
#include "qradar/runconfig.hpp"
#include "qradar/schemes.hpp"

namespace qradar {

// Rare-event Fisher information of one delay-gated setting with respect
// to the rotation angle (rotation scheme, evaluated at delta_alpha = 0).
double rotation_fisher(double theta, const AntennaParams& params, double tau0,
                       double delta_tau);

// Same quantity with respect to the emitter separation itself.
double antenna_distance_fisher(double zeta12, double theta, double gamma,
                               double tau0, double delta_tau);

// Two same-angle delayed measurements of the two-scatterer far field,
// normalized over the pair of settings; scalar parameter kr.
std::vector<double> far_two_pair_probabilities(const FarFieldTwoConfig& base,
                                               const AntennaParams& params,
                                               double tau1, double tau2,
                                               double kr);

// Four same-angle settings of the three-scatterer geometry; parameters
// (kr1, kr2).
std::vector<double> three_scatterer_probabilities(
    double theta, double kRo, const AntennaParams& params,
    const std::vector<double>& phis, const std::vector<double>& taus,
    double kr1, double kr2);

void cmd_coupling(const RunConfig& cfg, std::ostream& out);
void cmd_fisher(const RunConfig& cfg, std::ostream& out);
void cmd_crb_sweep(const RunConfig& cfg, std::ostream& out);
void cmd_estimate(const RunConfig& cfg, std::ostream& out,
                  const std::string& svg_path = "");

}  // namespace qradar

#endif
