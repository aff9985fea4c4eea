#include "qradar/inference.hpp"

#include <cmath>
#include <limits>

namespace qradar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::VectorXd central_diff(const OutcomeModel& model, std::vector<double> x,
                             int k, double h) {
    const double xk = x[static_cast<std::size_t>(k)];
    x[static_cast<std::size_t>(k)] = xk + h;
    const std::vector<double> pp = model(x);
    x[static_cast<std::size_t>(k)] = xk - h;
    const std::vector<double> pm = model(x);
    if (pp.size() != pm.size())
        throw NumericalError("outcome model changed dimension under perturbation");
    Eigen::VectorXd d(static_cast<Eigen::Index>(pp.size()));
    for (std::size_t j = 0; j < pp.size(); ++j)
        d(static_cast<Eigen::Index>(j)) = (pp[j] - pm[j]) / (2.0 * h);
    return d;
}

}  // namespace

GradientResult finite_difference_gradient(const OutcomeModel& model,
                                          const std::vector<double>& x,
                                          const std::vector<double>& steps) {
    const std::size_t m = x.size();
    if (!steps.empty() && steps.size() != m)
        throw ConfigError("step vector size must match parameter count");

    GradientResult out;
    for (std::size_t k = 0; k < m; ++k) {
        const double h =
            steps.empty() ? 1e-6 * std::max(1.0, std::abs(x[k])) : steps[k];
        if (!(h > 0.0)) throw ConfigError("finite-difference step must be > 0");
        const Eigen::VectorXd d1 = central_diff(model, x, static_cast<int>(k), h);
        const Eigen::VectorXd d2 =
            central_diff(model, x, static_cast<int>(k), 0.5 * h);
        if (out.jacobian.size() == 0)
            out.jacobian.resize(d1.size(), static_cast<Eigen::Index>(m));
        const double rel =
            (d1 - d2).norm() / std::max(1.0, d2.norm());
        if (rel > 1e-3)
            throw NumericalError(
                "derivative step-halving disagreement, model not smooth at "
                "this step size");
        if (rel > 1e-6) out.confident = false;
        out.jacobian.col(static_cast<Eigen::Index>(k)) = d2;
    }
    return out;
}

double finite_difference_scalar(const ScalarModel& fn, double x, double step,
                                bool* confident) {
    const OutcomeModel model = [&fn](const std::vector<double>& v) {
        return std::vector<double>{fn(v[0])};
    };
    const std::vector<double> steps =
        step > 0.0 ? std::vector<double>{step} : std::vector<double>{};
    const GradientResult g = finite_difference_gradient(model, {x}, steps);
    if (confident) *confident = g.confident;
    return g.jacobian(0, 0);
}

double fisher_rare_event(const ScalarModel& prob_fn, double x, double step) {
    const double p = prob_fn(x);
    if (!(p > 0.0)) throw ConfigError("rare-event probability must be > 0");
    const double d = finite_difference_scalar(prob_fn, x, step);
    return d * d / p;
}

double FisherResult::crb_total(double n_counts) const {
    if (singular) return kInf;
    return trace_inverse / n_counts;
}

FisherResult fisher_from_matrix(const Eigen::MatrixXd& f) {
    FisherResult out;
    out.matrix = 0.5 * (f + f.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.matrix);
    out.min_eigenvalue = es.eigenvalues().minCoeff();
    const double tr = out.matrix.trace();
    if (out.min_eigenvalue < 1e-12 * std::max(tr, 0.0) ||
        out.min_eigenvalue <= 0.0) {
        out.singular = true;
        out.trace_inverse = kInf;
        return out;
    }
    if (out.matrix.rows() == 1) {
        out.trace_inverse = 1.0 / out.matrix(0, 0);
    } else if (out.matrix.rows() == 2) {
        const double det = out.matrix(0, 0) * out.matrix(1, 1) -
                           out.matrix(0, 1) * out.matrix(1, 0);
        out.trace_inverse = (out.matrix(0, 0) + out.matrix(1, 1)) / det;
    } else {
        out.trace_inverse = out.matrix.inverse().trace();
    }
    return out;
}

FisherResult fisher_matrix(const OutcomeModel& model, const std::vector<double>& x,
                           const std::vector<double>& steps) {
    const OutcomeModel normalized = [&model](const std::vector<double>& v) {
        std::vector<double> p = model(v);
        double sum = 0.0;
        for (const double pj : p) sum += pj;
        if (!(sum > 0.0))
            throw NumericalError("outcome probabilities sum to zero");
        for (double& pj : p) pj /= sum;
        return p;
    };

    const std::vector<double> q = normalized(x);
    for (const double qj : q)
        if (!(qj > 0.0))
            throw ConfigError("all normalized outcome probabilities must be > 0");

    const GradientResult grad = finite_difference_gradient(normalized, x, steps);
    const Eigen::Index m = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index k = 0; k < m; ++k)
        for (Eigen::Index l = 0; l < m; ++l)
            for (std::size_t j = 0; j < q.size(); ++j)
                f(k, l) += grad.jacobian(static_cast<Eigen::Index>(j), k) *
                           grad.jacobian(static_cast<Eigen::Index>(j), l) / q[j];
    return fisher_from_matrix(f);
}

CrbBounds crb(const FisherResult& f, double n_counts) {
    if (!(n_counts >= 1.0)) throw ConfigError("count N must be >= 1");
    if (f.singular) return {kInf, kInf};
    const double trace_bound = f.trace_inverse / n_counts;
    const double eigen_bound = 1.0 / (n_counts * f.min_eigenvalue);
    if (trace_bound < eigen_bound * (1.0 - 1e-12))
        throw NumericalError("bound ordering violated, FIM inversion suspect");
    return {trace_bound, eigen_bound};
}

}  // namespace qradar
