#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qradar/commands.hpp"
#include "qradar/montecarlo.hpp"

using namespace qradar;

namespace {

constexpr double kPi = 3.14159265358979323846;

NormalizedModel fig4_model(double tau1, double tau2) {
    const AntennaParams p{1.0, 4.8};
    const FarFieldTwoConfig base{1.2, 0.0, 2.0, kPi / 2.15,
                                 kPi / 2.15 + kPi / 50};
    return [=](double kr) {
        std::vector<double> q =
            far_two_pair_probabilities(base, p, tau1, tau2, kr);
        const double sum = q[0] + q[1];
        q[0] /= sum;
        q[1] /= sum;
        return q;
    };
}

}  // namespace

TEST_CASE("task seeds are deterministic and well spread") {
    CHECK(task_seed(1, 0, 0) == task_seed(1, 0, 0));
    CHECK(task_seed(1, 0, 0) != task_seed(1, 0, 1));
    CHECK(task_seed(1, 0, 0) != task_seed(1, 1, 0));
    CHECK(task_seed(1, 0, 0) != task_seed(2, 0, 0));
    CHECK(task_seed(1, 0, 0) != 0);
}

TEST_CASE("multinomial sampling") {
    CHECK(sample_counts({1.0, 0.0}, 1000, 42) ==
          std::vector<std::uint64_t>{1000, 0});

    const auto a = sample_counts({0.5, 0.5}, 1000000, 42);
    CHECK(a[0] + a[1] == 1000000);
    const double freq = static_cast<double>(a[0]) / 1e6;
    CHECK(std::abs(freq - 0.5) < 5.0 * 0.5 / 1000.0);

    CHECK(sample_counts({0.5, 0.5}, 1000000, 42) == a);
    CHECK(sample_counts({0.5, 0.5}, 1000000, 43) != a);

    CHECK_THROWS_AS(sample_counts({0.6, 0.5}, 10, 1), ConfigError);
    CHECK_THROWS_AS(sample_counts({1.2, -0.2}, 10, 1), ConfigError);
    CHECK_THROWS_AS(sample_counts({}, 10, 1), ConfigError);
    CHECK_THROWS_AS(sample_counts({1.0}, 0, 1), ConfigError);
}

TEST_CASE("noiseless frequencies identify the parameter") {
    const NormalizedModel model = fig4_model(0.75, 0.5);
    for (const double truth : {0.05, 0.2, 0.6}) {
        const EstimateResult est =
            estimate_parameter(model(truth), model, 0.0, 1.3);
        CHECK(std::abs(est.x - truth) < 2e-6);
        CHECK(!est.boundary_hit);
    }
}

TEST_CASE("boundary hits are flagged") {
    // frequencies beyond anything the model can produce on the interval
    const NormalizedModel ramp = [](double x) {
        return std::vector<double>{0.2 + 0.1 * x, 0.8 - 0.1 * x};
    };
    const EstimateResult est = estimate_parameter({0.9, 0.1}, ramp, 0.0, 1.0);
    CHECK(est.boundary_hit);
    CHECK(est.x > 0.99);

    CHECK_THROWS_AS(estimate_parameter({1.0, 0.0}, ramp, 1.0, 1.0), ConfigError);
}

TEST_CASE("estimation sweep is reproducible and ordered") {
    SweepConfig cfg;
    cfg.model = fig4_model(0.75, 0.5);
    cfg.crb_fn = [](double) { return 1e-6; };
    cfg.grid = {0.1, 0.3};
    cfg.lo = 0.0;
    cfg.hi = 1.3;
    cfg.n = 1000000;
    cfg.seeds = 3;
    cfg.base_seed = 99;

    const auto runs1 = sweep_estimation(cfg);
    cfg.threads = 1;
    const auto runs2 = sweep_estimation(cfg);
    REQUIRE(runs1.size() == 6);
    for (std::size_t i = 0; i < runs1.size(); ++i) {
        CHECK(runs1[i].seed == runs2[i].seed);
        CHECK(runs1[i].estimate == runs2[i].estimate);
        CHECK(runs1[i].true_x == runs2[i].true_x);
    }
    // grid-major ordering
    CHECK(runs1[0].true_x == 0.1);
    CHECK(runs1[3].true_x == 0.3);
    // estimates track the truth at this sample size
    for (const EstimationRun& r : runs1)
        CHECK(std::abs(r.estimate - r.true_x) < 0.1);
}
