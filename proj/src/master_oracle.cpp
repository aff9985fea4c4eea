#include "qradar/master_oracle.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace qradar {
namespace oracle {

namespace {

using Mat4 = Eigen::Matrix4cd;
using Vec16 = Eigen::Matrix<std::complex<double>, 16, 1>;

Vec16 vec(const Mat4& m) {
    Vec16 v;
    for (int col = 0; col < 4; ++col)
        for (int row = 0; row < 4; ++row) v(col * 4 + row) = m(row, col);
    return v;
}

Mat4 unvec(const Vec16& v) {
    Mat4 m;
    for (int col = 0; col < 4; ++col)
        for (int row = 0; row < 4; ++row) m(row, col) = v(col * 4 + row);
    return m;
}

}  // namespace

Mat4 lowering(int j) {
    Eigen::Matrix2cd sm = Eigen::Matrix2cd::Zero();
    sm(0, 1) = 1.0;  // |ground><excited|
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    if (j == 0) return Eigen::kroneckerProduct(sm, id);
    if (j == 1) return Eigen::kroneckerProduct(id, sm);
    throw ConfigError("emitter index must be 0 or 1");
}

Liouvillian liouvillian_from_couplings(double gamma, double f12, double gamma12) {
    const std::complex<double> i(0.0, 1.0);
    const Mat4 s0 = lowering(0), s1 = lowering(1);
    const std::array<Mat4, 2> sm = {s0, s1};
    const std::array<Mat4, 2> sp = {s0.adjoint(), s1.adjoint()};
    const Mat4 id4 = Mat4::Identity();

    // Hamiltonian part: coherent excitation exchange.
    const Mat4 h = f12 * (sp[0] * sm[1] + sp[1] * sm[0]);
    Liouvillian L = -i * (Eigen::kroneckerProduct(id4, h) -
                          Eigen::kroneckerProduct(h.transpose(), id4));

    Eigen::Matrix2d rates;
    rates << gamma, gamma12, gamma12, gamma;
    for (int j = 0; j < 2; ++j) {
        for (int l = 0; l < 2; ++l) {
            const Mat4 pl = sp[j] * sm[l];
            L += 0.5 * rates(j, l) *
                 (2.0 * Eigen::kroneckerProduct(sp[l].transpose(), sm[j]) -
                  Eigen::kroneckerProduct(id4, pl) -
                  Eigen::kroneckerProduct(pl.transpose(), id4));
        }
    }
    return L;
}

Liouvillian build_liouvillian(const AntennaParams& params) {
    const CouplingCoefficients cc = couplings(params);
    return liouvillian_from_couplings(params.gamma, cc.f12, cc.gamma12);
}

DensityMatrix propagate(const Liouvillian& L, const DensityMatrix& rho0, double t) {
    if (t < 0.0) throw ConfigError("propagation time must be >= 0");
    if (t == 0.0) return rho0;
    const Liouvillian full = (L * t).exp();
    const Liouvillian half = (L * (0.5 * t)).exp();
    const Vec16 v0 = vec(rho0);
    const Vec16 v1 = full * v0;
    const Vec16 v2 = half * (half * v0);
    const double err = (v1 - v2).norm() / std::max(1.0, v2.norm());
    if (err > 1e-8)
        throw NumericalError("propagator step-halving disagreement " +
                             std::to_string(err));
    return unvec(v2);
}

DensityMatrix propagate_rk4(const Liouvillian& L, const DensityMatrix& rho0,
                            double t, double dt) {
    Vec16 v = vec(rho0);
    const long steps = std::max(1L, static_cast<long>(std::ceil(t / dt)));
    const double h = t / static_cast<double>(steps);
    for (long s = 0; s < steps; ++s) {
        const Vec16 k1 = L * v;
        const Vec16 k2 = L * (v + 0.5 * h * k1);
        const Vec16 k3 = L * (v + 0.5 * h * k2);
        const Vec16 k4 = L * (v + h * k3);
        v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return unvec(v);
}

std::complex<double> regression_correlator(const AntennaParams& params, double t,
                                           double tau, int j, int l, int m, int n) {
    const Liouvillian L = build_liouvillian(params);
    Mat4 rho0 = Mat4::Zero();
    rho0(3, 3) = 1.0;  // both emitters excited
    const Mat4 rho_t = propagate(L, rho0, t);
    const Mat4 op = lowering(n) * rho_t * lowering(j).adjoint();
    const Mat4 op_tau = propagate(L, op, tau);
    return (lowering(l).adjoint() * lowering(m) * op_tau).trace();
}

}  // namespace oracle
}  // namespace qradar
