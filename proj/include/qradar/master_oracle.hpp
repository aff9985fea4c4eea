#ifndef QRADAR_MASTER_ORACLE_HPP
#define QRADAR_MASTER_ORACLE_HPP

#include <Eigen/Dense>
#include <complex>

#include "qradar/antenna.hpp"

namespace qradar {

// Independent verification path for the closed-form correlators: build
// the Lindblad generator of the two-emitter master equation, propagate
// 4x4 operators in the product basis {|--),|-+),|+-),|++)} and evaluate
// two-time correlators via the quantum regression rule.
//
// Vectorization is column-stacking: vec(X)[col*4+row] = X(row, col).
namespace oracle {

using DensityMatrix = Eigen::Matrix4cd;
using Liouvillian = Eigen::Matrix<std::complex<double>, 16, 16>;

// Lowering operator of emitter j (0 or 1) in the product basis.
Eigen::Matrix4cd lowering(int j);

// Generator for explicit coupling values (test hook for limiting cases).
Liouvillian liouvillian_from_couplings(double gamma, double f12, double gamma12);

Liouvillian build_liouvillian(const AntennaParams& params);

// exp(L t) applied to rho0. Self-checks against a halved-step propagator
// and throws NumericalError above 1e-8 disagreement.
DensityMatrix propagate(const Liouvillian& L, const DensityMatrix& rho0, double t);

// Fixed-step RK4 cross-check path, dt in units of 1/gamma.
DensityMatrix propagate_rk4(const Liouvillian& L, const DensityMatrix& rho0,
                            double t, double dt = 1e-3);

// Tr[sigma_l^+ sigma_m^- exp(L tau)(sigma_n^- rho(t) sigma_j^+)] with
// rho(t) evolved from the doubly excited state.
std::complex<double> regression_correlator(const AntennaParams& params, double t,
                                           double tau, int j, int l, int m, int n);

}  // namespace oracle
}  // namespace qradar

#endif
