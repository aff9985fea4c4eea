#ifndef QRADAR_INFERENCE_HPP
#define QRADAR_INFERENCE_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "qradar/errors.hpp"

namespace qradar {

// Vector of unnormalized outcome probabilities as a function of the
// inferred parameters.
using OutcomeModel =
    std::function<std::vector<double>(const std::vector<double>&)>;
using ScalarModel = std::function<double(double)>;

struct GradientResult {
    Eigen::MatrixXd jacobian;  // outcomes x parameters
    bool confident = true;     // Richardson check within 1e-6 relative
};

// Central differences with a half-step Richardson check. Steps default to
// 1e-6 * max(1, |x_k|) per coordinate; callers resolving oscillatory
// models pass explicit smaller steps. Disagreement above 1e-3 relative
// throws, above 1e-6 clears the confidence flag.
GradientResult finite_difference_gradient(
    const OutcomeModel& model, const std::vector<double>& x,
    const std::vector<double>& steps = {});

double finite_difference_scalar(const ScalarModel& fn, double x,
                                double step = 0.0, bool* confident = nullptr);

// Fisher information of the rare-outcome model {p, 1-p}, p << 1:
// (dp/dx)^2 / p.
double fisher_rare_event(const ScalarModel& prob_fn, double x, double step = 0.0);

struct FisherResult {
    Eigen::MatrixXd matrix;
    double min_eigenvalue = 0.0;
    double trace_inverse = 0.0;
    bool singular = false;  // the Rayleigh-catastrophe signal, not an error

    double crb_total(double n_counts) const;
};

// FIM of the outcome distribution normalized over all settings,
// F_kl = sum_j q_j^{-1} dq_j/dx_k dq_j/dx_l with q = p / sum(p).
FisherResult fisher_matrix(const OutcomeModel& model, const std::vector<double>& x,
                           const std::vector<double>& steps = {});

// Builds a FisherResult from an explicit matrix (test and report paths).
FisherResult fisher_from_matrix(const Eigen::MatrixXd& f);

struct CrbBounds {
    double trace_bound;  // Tr[F^-1] / N
    double eigen_bound;  // 1 / (N f_min)
};

CrbBounds crb(const FisherResult& f, double n_counts);

}  // namespace qradar

#endif
