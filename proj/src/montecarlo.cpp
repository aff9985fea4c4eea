#include "qradar/montecarlo.hpp"

#include <gsl/gsl_randist.h>
#include <gsl/gsl_rng.h>

#include <atomic>
#include <cmath>
#include <memory>
#include <thread>

namespace qradar {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t task_seed(std::uint64_t base, std::uint64_t grid_index,
                        std::uint64_t repetition) {
    std::uint64_t s = splitmix64(base);
    s = splitmix64(s ^ (grid_index + 0x9E3779B97F4A7C15ULL));
    s = splitmix64(s ^ repetition);
    return s == 0 ? 1 : s;  // gsl maps seed 0 to a fixed default
}

std::vector<std::uint64_t> sample_counts(const std::vector<double>& q,
                                         std::uint64_t n, std::uint64_t seed) {
    if (n < 1) throw ConfigError("sample count N must be >= 1");
    if (q.empty()) throw ConfigError("probability vector must be nonempty");
    double sum = 0.0;
    for (const double qi : q) {
        if (!(qi >= 0.0) || !std::isfinite(qi))
            throw ConfigError("probabilities must be finite and >= 0");
        sum += qi;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw ConfigError("probability vector must sum to 1");

    const std::unique_ptr<gsl_rng, decltype(&gsl_rng_free)> rng(
        gsl_rng_alloc(gsl_rng_mt19937), gsl_rng_free);
    gsl_rng_set(rng.get(), seed);

    std::vector<unsigned int> counts(q.size());
    gsl_ran_multinomial(rng.get(), q.size(), static_cast<unsigned int>(n),
                        q.data(), counts.data());
    return {counts.begin(), counts.end()};
}

namespace {

double objective(const std::vector<double>& freq, const NormalizedModel& model,
                 double x) {
    const std::vector<double> q = model(x);
    if (q.size() != freq.size())
        throw NumericalError("model outcome count does not match frequencies");
    double d = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) {
        const double r = q[j] - freq[j];
        d += r * r;
    }
    return d;
}

}  // namespace

EstimateResult estimate_parameter(const std::vector<double>& frequencies,
                                  const NormalizedModel& model, double lo,
                                  double hi) {
    if (!(hi > lo)) throw ConfigError("search bounds must satisfy hi > lo");
    constexpr int kGrid = 1000;

    int best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    std::vector<double> xs(kGrid);
    for (int i = 0; i < kGrid; ++i) {
        xs[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / (kGrid - 1);
        const double v = objective(frequencies, model, xs[static_cast<std::size_t>(i)]);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }

    EstimateResult out;
    out.boundary_hit = (best == 0 || best == kGrid - 1);
    double a = xs[static_cast<std::size_t>(std::max(best - 1, 0))];
    double b = xs[static_cast<std::size_t>(std::min(best + 1, kGrid - 1))];

    // golden-section to 1e-6 absolute
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = objective(frequencies, model, c);
    double fd = objective(frequencies, model, d);
    while (b - a > 1e-6) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = objective(frequencies, model, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = objective(frequencies, model, d);
        }
    }
    out.x = 0.5 * (a + b);
    return out;
}

std::vector<EstimationRun> sweep_estimation(const SweepConfig& cfg) {
    if (cfg.grid.empty()) throw ConfigError("sweep grid must be nonempty");
    if (cfg.seeds < 1) throw ConfigError("seed count must be >= 1");
    if (cfg.n < 1) throw ConfigError("counts per grid point must be >= 1");

    const std::size_t tasks = cfg.grid.size() * static_cast<std::size_t>(cfg.seeds);
    std::vector<EstimationRun> out(tasks);

    std::vector<double> crbs(cfg.grid.size());
    for (std::size_t g = 0; g < cfg.grid.size(); ++g)
        crbs[g] = cfg.crb_fn ? cfg.crb_fn(cfg.grid[g]) : 0.0;

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks) return;
            const std::size_t g = i / static_cast<std::size_t>(cfg.seeds);
            const std::size_t r = i % static_cast<std::size_t>(cfg.seeds);
            const double truth = cfg.grid[g];
            const std::uint64_t seed = task_seed(cfg.base_seed, g, r);

            const std::vector<double> q = cfg.model(truth);
            const std::vector<std::uint64_t> counts = sample_counts(q, cfg.n, seed);
            std::vector<double> freq(counts.size());
            for (std::size_t j = 0; j < counts.size(); ++j)
                freq[j] = static_cast<double>(counts[j]) /
                          static_cast<double>(cfg.n);

            const EstimateResult est =
                estimate_parameter(freq, cfg.model, cfg.lo, cfg.hi);
            out[i] = {seed, cfg.n, truth, est.x, crbs[g], est.boundary_hit};
        }
    };

    unsigned int nthreads = cfg.threads > 0
                                ? static_cast<unsigned int>(cfg.threads)
                                : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min<unsigned int>(nthreads, static_cast<unsigned int>(tasks));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    return out;
}

}  // namespace qradar
