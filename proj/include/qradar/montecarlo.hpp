#ifndef QRADAR_MONTECARLO_HPP
#define QRADAR_MONTECARLO_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qradar/errors.hpp"

namespace qradar {

// Algorithm identifier written into output metadata so runs are
// reproducible across implementations.
inline constexpr const char* kRngId = "gsl-mt19937+splitmix64";

std::uint64_t splitmix64(std::uint64_t x);

// Independent stream seed for one (grid point, repetition) task.
std::uint64_t task_seed(std::uint64_t base, std::uint64_t grid_index,
                        std::uint64_t repetition);

// Multinomial draw of N counts over the normalized distribution q.
std::vector<std::uint64_t> sample_counts(const std::vector<double>& q,
                                         std::uint64_t n, std::uint64_t seed);

// Normalized model probabilities as a function of the scalar parameter.
using NormalizedModel = std::function<std::vector<double>(double)>;

struct EstimateResult {
    double x = 0.0;
    bool boundary_hit = false;
};

// Least-squares fit of the scalar parameter: argmin over [lo, hi] of the
// squared distance between model probabilities and observed frequencies.
// Coarse grid of 1000 points, then golden-section refinement to 1e-6.
EstimateResult estimate_parameter(const std::vector<double>& frequencies,
                                  const NormalizedModel& model, double lo,
                                  double hi);

struct EstimationRun {
    std::uint64_t seed = 0;
    std::uint64_t n = 0;
    double true_x = 0.0;
    double estimate = 0.0;
    double crb_bound = 0.0;  // total-variance lower bound at this truth
    bool boundary_hit = false;
};

struct SweepConfig {
    NormalizedModel model;
    std::function<double(double)> crb_fn;  // truth -> CRB
    std::vector<double> grid;              // true parameter values
    double lo = 0.0, hi = 1.0;             // search bounds
    std::uint64_t n = 0;                   // counts per grid point
    int seeds = 100;
    std::uint64_t base_seed = 1;
    int threads = 0;  // 0 = hardware concurrency
};

// One estimation per (grid point, repetition); deterministic ordering
// and content for a fixed base seed regardless of thread count.
std::vector<EstimationRun> sweep_estimation(const SweepConfig& cfg);

}  // namespace qradar

#endif
