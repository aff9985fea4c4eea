#include "qradar/commands.hpp"

#include <cmath>
#include <fstream>

#include "qradar/csv.hpp"

namespace qradar {

double rotation_fisher(double theta, const AntennaParams& params, double tau0,
                       double delta_tau) {
    const ScalarModel pfn = [&](double delta_alpha) {
        MeasurementSetting s{RotationConfig{theta, delta_alpha}, tau0, delta_tau};
        return time_averaged_probability(s, params);
    };
    return fisher_rare_event(pfn, 0.0);
}

namespace {

// Values of the four delay-basis functions, averaged over the gate
// window, together with their partial derivatives in the cross-damping
// rate g and the beat frequency w.
struct BasisValues {
    double ch, sh, c, s;        // window means of e^{-G tau} {cosh, sinh, cos, sin}
    double ch_g, sh_g, c_w, s_w;
};

// integral of x e^{kx} over [x0, x1], stable for k -> 0
double integral_exp_x(double k, double x0, double x1) {
    if (std::abs(k) * std::max(std::abs(x0), std::abs(x1)) < 1e-4) {
        const auto pw = [&](int n) {
            return (std::pow(x1, n) - std::pow(x0, n)) / n;
        };
        return pw(2) + k * pw(3) + 0.5 * k * k * pw(4) +
               k * k * k * pw(5) / 6.0;
    }
    const auto f = [&](double x) { return std::exp(k * x) * (k * x - 1.0); };
    return (f(x1) - f(x0)) / (k * k);
}

BasisValues basis_values(double G, double g, double w, double tau0,
                         double delta_tau) {
    BasisValues b;
    if (delta_tau == 0.0) {
        const double e = std::exp(-G * tau0);
        b.ch = e * std::cosh(g * tau0);
        b.sh = e * std::sinh(g * tau0);
        b.c = e * std::cos(w * tau0);
        b.s = e * std::sin(w * tau0);
        b.ch_g = tau0 * b.sh;
        b.sh_g = tau0 * b.ch;
        b.c_w = -tau0 * b.s;
        b.s_w = tau0 * b.c;
        return b;
    }
    const double x0 = tau0 - delta_tau, x1 = tau0 + delta_tau;
    const double width = 2.0 * delta_tau;
    const double ip = [&] {  // integral of e^{(g-G)x}
        const double k = g - G;
        if (k == 0.0) return x1 - x0;
        return std::exp(k * x0) * std::expm1(k * (x1 - x0)) / k;
    }();
    const double im = [&] {
        const double k = -g - G;
        if (k == 0.0) return x1 - x0;
        return std::exp(k * x0) * std::expm1(k * (x1 - x0)) / k;
    }();
    const double ipx = integral_exp_x(g - G, x0, x1);
    const double imx = integral_exp_x(-g - G, x0, x1);
    b.ch = 0.5 * (ip + im) / width;
    b.sh = 0.5 * (ip - im) / width;
    b.ch_g = 0.5 * (ipx - imx) / width;
    b.sh_g = 0.5 * (ipx + imx) / width;

    const double D = G * G + w * w;
    const auto fc = [&](double x) {
        return std::exp(-G * x) * (w * std::sin(w * x) - G * std::cos(w * x)) /
               D;
    };
    const auto fs = [&](double x) {
        return std::exp(-G * x) * (-G * std::sin(w * x) - w * std::cos(w * x)) /
               D;
    };
    const auto fc_w = [&](double x) {
        const double sn = std::sin(w * x), cn = std::cos(w * x);
        return std::exp(-G * x) * ((sn + w * x * cn + G * x * sn) / D -
                                   2.0 * w * (w * sn - G * cn) / (D * D));
    };
    const auto fs_w = [&](double x) {
        const double sn = std::sin(w * x), cn = std::cos(w * x);
        return std::exp(-G * x) * ((-G * x * cn - cn + w * x * sn) / D -
                                   2.0 * w * (-G * sn - w * cn) / (D * D));
    };
    b.c = (fc(x1) - fc(x0)) / width;
    b.s = (fs(x1) - fs(x0)) / width;
    b.c_w = (fc_w(x1) - fc_w(x0)) / width;
    b.s_w = (fs_w(x1) - fs_w(x0)) / width;
    return b;
}

}  // namespace

double antenna_distance_fisher(double zeta12, double theta, double gamma,
                               double tau0, double delta_tau) {
    // A plain stencil in zeta12 is hopeless at small separations: the beat
    // frequency grows as 1/zeta^3, so the oscillation-resolving step drops
    // below the evaluation noise of the probability itself. Instead the
    // derivative is assembled by the chain rule through the basis
    // decomposition, where every factor is smooth in its own variable.
    const auto coefs = [&](double z) {
        const AntennaParams p{gamma, z};
        const MeasurementSetting s{AntennaDistanceConfig{theta}, tau0,
                                   delta_tau};
        const auto [a, b] = setting_amplitudes(s, p);
        return g2_coefficients(a, b);
    };

    const AntennaParams params{gamma, zeta12};
    const CouplingCoefficients cc = couplings(params);
    const BasisValues bv = basis_values(gamma, cc.gamma12, beat_frequency(cc),
                                        tau0, delta_tau);

    const G2Coefficients co = coefs(zeta12);
    const double p_mean =
        co.a * bv.ch + co.b * bv.sh + co.c * bv.c + co.d * bv.s;
    if (!(p_mean > 0.0))
        throw ConfigError("rare-event information needs positive probability");

    const double hz = 1e-6 * std::max(1.0, zeta12);
    const G2Coefficients cp = coefs(zeta12 + hz), cm = coefs(zeta12 - hz);

    const double hc = 1e-4 * zeta12;
    AntennaParams pp = params, pm = params;
    pp.zeta12 = zeta12 + hc;
    pm.zeta12 = zeta12 - hc;
    const CouplingCoefficients ccp = couplings(pp), ccm = couplings(pm);
    const double dg = (ccp.gamma12 - ccm.gamma12) / (2.0 * hc);
    const double dw = (beat_frequency(ccp) - beat_frequency(ccm)) / (2.0 * hc);

    const double dp = (cp.a - cm.a) / (2.0 * hz) * bv.ch +
                      (cp.b - cm.b) / (2.0 * hz) * bv.sh +
                      (cp.c - cm.c) / (2.0 * hz) * bv.c +
                      (cp.d - cm.d) / (2.0 * hz) * bv.s +
                      (co.a * bv.ch_g + co.b * bv.sh_g) * dg +
                      (co.c * bv.c_w + co.d * bv.s_w) * dw;
    return dp * dp / p_mean;
}

std::vector<double> far_two_pair_probabilities(const FarFieldTwoConfig& base,
                                               const AntennaParams& params,
                                               double tau1, double tau2,
                                               double kr) {
    FarFieldTwoConfig cfg = base;
    cfg.kr = kr;
    std::vector<double> p(2);
    const double taus[2] = {tau1, tau2};
    const double phis[2] = {base.phi1, base.phi2};
    for (int i = 0; i < 2; ++i) {
        const DetectorAmplitudes a = amplitudes_far_two(cfg, params, phis[i]);
        p[static_cast<std::size_t>(i)] = g2_probability(a, a, params, taus[i]);
    }
    return p;
}

std::vector<double> three_scatterer_probabilities(
    double theta, double kRo, const AntennaParams& params,
    const std::vector<double>& phis, const std::vector<double>& taus,
    double kr1, double kr2) {
    if (phis.size() != taus.size())
        throw ConfigError("phis and delay lists must have equal length");
    std::vector<double> p(phis.size());
    for (std::size_t i = 0; i < phis.size(); ++i) {
        const ThreeScattererConfig cfg{theta, kr1, kr2, kRo, phis[i]};
        const DetectorAmplitudes a = amplitudes_far_three(cfg, params, phis[i]);
        p[i] = g2_probability(a, a, params, taus[i]);
    }
    return p;
}

void cmd_coupling(const RunConfig& cfg, std::ostream& out) {
    const double gamma = cfg.get_double("gamma", 1.0);
    const std::vector<double> grid = cfg.grid();
    CsvWriter csv(out, {"zeta12", "f12", "gamma12"});
    for (const double z : grid) {
        const CouplingCoefficients cc = couplings({gamma, z});
        csv.row({z, cc.f12, cc.gamma12});
    }
}

void cmd_fisher(const RunConfig& cfg, std::ostream& out) {
    const std::string scheme = cfg.get_string("scheme");
    const double gamma = cfg.get_double("gamma", 1.0);
    const double tau0 = cfg.get_double("tau0");
    const std::vector<double> dtaus = cfg.get_list("delta_taus");
    const std::vector<double> grid = cfg.grid();
    const std::string sweep = cfg.get_string("sweep");

    std::vector<std::string> columns{sweep};
    for (const double dt : dtaus) columns.push_back("fi_dtau_" + format_value(dt));
    CsvWriter csv(out, columns);

    if (scheme == "rotation") {
        if (sweep != "theta")
            throw ConfigError("key 'sweep': rotation scheme sweeps theta");
        const AntennaParams params{gamma, cfg.get_double("zeta12")};
        for (const double theta : grid) {
            std::vector<double> row{theta};
            for (const double dt : dtaus)
                row.push_back(rotation_fisher(theta, params, tau0, dt));
            csv.row(row);
        }
    } else if (scheme == "antenna_distance") {
        if (sweep != "zeta12")
            throw ConfigError("key 'sweep': antenna_distance scheme sweeps zeta12");
        const double theta = cfg.get_double("theta");
        for (const double z : grid) {
            std::vector<double> row{z};
            for (const double dt : dtaus)
                row.push_back(antenna_distance_fisher(z, theta, gamma, tau0, dt));
            csv.row(row);
        }
    } else {
        throw ConfigError("key 'scheme': must be rotation or antenna_distance");
    }
}

void cmd_crb_sweep(const RunConfig& cfg, std::ostream& out) {
    const double gamma = cfg.get_double("gamma", 1.0);
    const AntennaParams params{gamma, cfg.get_double("zeta12")};
    const double theta = cfg.get_double("theta");
    const double kRo = cfg.get_double("kRo", 1e3);
    const std::vector<double> phis = cfg.get_list("phis");
    const std::vector<double> taus_delayed = cfg.get_list("taus_delayed");
    const std::vector<double> taus_zero(phis.size(), 0.0);
    const std::vector<double> grid = cfg.grid();

    const auto trinv_at = [&](const std::vector<double>& taus, double kr) {
        const OutcomeModel model = [&](const std::vector<double>& x) {
            return three_scatterer_probabilities(theta, kRo, params, phis, taus,
                                                 x[0], x[1]);
        };
        // constraint kr1 = kr2/2 = kr
        const FisherResult f = fisher_matrix(model, {kr, 2.0 * kr});
        return f.trace_inverse;
    };

    CsvWriter csv(out, {"kr", "trinv_delayed", "trinv_zero"});
    for (const double kr : grid)
        csv.row({kr, trinv_at(taus_delayed, kr), trinv_at(taus_zero, kr)});
}

namespace {

void write_estimation_svg(const std::vector<EstimationRun>& runs,
                          const std::string& path) {
    std::ofstream svg(path);
    if (!svg) throw ConfigError("cannot write SVG file: " + path);
    double lo = 1e300, hi = -1e300;
    for (const EstimationRun& r : runs) {
        lo = std::min({lo, r.true_x, r.estimate});
        hi = std::max({hi, r.true_x, r.estimate});
    }
    if (!(hi > lo)) hi = lo + 1.0;
    const double w = 600.0, h = 600.0, margin = 50.0;
    const auto px = [&](double v) {
        return margin + (v - lo) / (hi - lo) * (w - 2 * margin);
    };
    const auto py = [&](double v) {
        return h - margin - (v - lo) / (hi - lo) * (h - 2 * margin);
    };
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
        << "\" height=\"" << h << "\">\n";
    svg << "<line x1=\"" << px(lo) << "\" y1=\"" << py(lo) << "\" x2=\""
        << px(hi) << "\" y2=\"" << py(hi)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    // CRB envelope: truth +- sqrt(bound), per distinct truth
    std::map<double, double> envelope;
    for (const EstimationRun& r : runs) envelope[r.true_x] = r.crb_bound;
    for (const int sign : {-1, 1}) {
        svg << "<polyline fill=\"none\" stroke=\"gray\" stroke-dasharray=\"4\" "
               "points=\"";
        for (const auto& [t, b] : envelope) {
            const double dev = std::isfinite(b) ? std::sqrt(b) : 0.0;
            svg << px(t) << "," << py(t + sign * dev) << " ";
        }
        svg << "\"/>\n";
    }
    for (const EstimationRun& r : runs)
        svg << "<circle cx=\"" << px(r.true_x) << "\" cy=\"" << py(r.estimate)
            << "\" r=\"1.5\" fill=\"steelblue\" fill-opacity=\"0.5\"/>\n";
    svg << "</svg>\n";
}

}  // namespace

void cmd_estimate(const RunConfig& cfg, std::ostream& out,
                  const std::string& svg_path) {
    const double gamma = cfg.get_double("gamma", 1.0);
    const AntennaParams params{gamma, cfg.get_double("zeta12")};
    const FarFieldTwoConfig base{cfg.get_double("theta"), 0.0,
                                 cfg.get_double("kRo", 1e3),
                                 cfg.get_double("phi1"), cfg.get_double("phi2")};
    const double tau1 = cfg.get_double("tau1");
    const double tau2 = cfg.get_double("tau2");
    const std::uint64_t n = static_cast<std::uint64_t>(cfg.get_int("n"));
    const int seeds = static_cast<int>(cfg.get_int("seeds", 100));
    const std::uint64_t base_seed =
        static_cast<std::uint64_t>(cfg.get_int("base_seed", 1));
    const int threads = static_cast<int>(cfg.get_int("threads", 0));

    SweepConfig sweep;
    sweep.model = [=](double kr) {
        std::vector<double> p =
            far_two_pair_probabilities(base, params, tau1, tau2, kr);
        const double sum = p[0] + p[1];
        if (!(sum > 0.0)) throw NumericalError("vanishing total probability");
        p[0] /= sum;
        p[1] /= sum;
        return p;
    };
    sweep.crb_fn = [=, model = sweep.model](double kr) {
        const OutcomeModel m = [&model](const std::vector<double>& x) {
            return model(x[0]);
        };
        const FisherResult f = fisher_matrix(m, {kr});
        return f.crb_total(static_cast<double>(n));
    };
    sweep.grid = cfg.grid();
    sweep.lo = cfg.get_double("bound_lo");
    sweep.hi = cfg.get_double("bound_hi");
    sweep.n = n;
    sweep.seeds = seeds;
    sweep.base_seed = base_seed;
    sweep.threads = threads;

    const std::vector<EstimationRun> runs = sweep_estimation(sweep);

    std::map<std::string, std::string> meta;
    meta["rng"] = kRngId;
    meta["base_seed"] = std::to_string(base_seed);
    meta["n"] = std::to_string(n);
    meta["seeds"] = std::to_string(seeds);
    CsvWriter csv(out, {"true_kr", "rep", "estimate", "crb", "boundary_hit"},
                  meta);
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const EstimationRun& r = runs[i];
        const double rep =
            static_cast<double>(i % static_cast<std::size_t>(seeds));
        csv.row({r.true_x, rep, r.estimate, r.crb_bound,
                 r.boundary_hit ? 1.0 : 0.0});
    }
    if (!svg_path.empty()) write_estimation_svg(runs, svg_path);
}

}  // namespace qradar
