#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "qradar/commands.hpp"

namespace {

struct CommonOpts {
    std::string config;
    std::vector<std::string> sets;
    std::string out_path;
    std::string svg_path;
    long long seeds = -1;
    long long threads = -1;
};

void add_common(CLI::App* app, CommonOpts& opts, bool with_svg) {
    app->add_option("--config", opts.config,
                    "Config file path or bundled preset name");
    app->add_option("--set", opts.sets, "Override key=value (repeatable)");
    app->add_option("--out", opts.out_path, "Output CSV path (default stdout)");
    if (with_svg)
        app->add_option("--svg", opts.svg_path, "Optional SVG scatter output");
    app->add_option("--seeds", opts.seeds, "Number of repetitions per grid point");
    app->add_option("--threads", opts.threads, "Worker threads (0 = auto)");
}

qradar::RunConfig build_config(const CommonOpts& opts) {
    qradar::RunConfig cfg;
    if (!opts.config.empty()) cfg = qradar::RunConfig::resolve(opts.config);
    for (const std::string& s : opts.sets) cfg.set_pair(s);
    if (opts.seeds >= 0) cfg.set("seeds", std::to_string(opts.seeds));
    if (opts.threads >= 0) cfg.set("threads", std::to_string(opts.threads));
    return cfg;
}

template <typename Fn>
int run_to_out(const CommonOpts& opts, Fn&& fn) {
    if (opts.out_path.empty()) {
        fn(std::cout);
        return 0;
    }
    std::ofstream file(opts.out_path);
    if (!file) throw qradar::ConfigError("cannot write: " + opts.out_path);
    fn(file);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Delayed photon-correlation superresolution toolkit"};
    app.require_subcommand(1);

    CommonOpts coupling_opts, fisher_opts, crb_opts, est_opts;
    CLI::App* coupling = app.add_subcommand("coupling",
                                            "Tabulate emitter coupling coefficients");
    add_common(coupling, coupling_opts, false);
    CLI::App* fisher = app.add_subcommand("fisher",
                                          "Fisher information sweeps");
    add_common(fisher, fisher_opts, false);
    CLI::App* crb = app.add_subcommand("crb-sweep",
                                       "Three-scatterer error-bound sweep");
    add_common(crb, crb_opts, false);
    CLI::App* estimate = app.add_subcommand("estimate",
                                            "Monte-Carlo parameter estimation");
    add_common(estimate, est_opts, true);

    try {
        app.parse(argc, argv);
        if (coupling->parsed())
            return run_to_out(coupling_opts, [&](std::ostream& os) {
                qradar::cmd_coupling(build_config(coupling_opts), os);
            });
        if (fisher->parsed())
            return run_to_out(fisher_opts, [&](std::ostream& os) {
                qradar::cmd_fisher(build_config(fisher_opts), os);
            });
        if (crb->parsed())
            return run_to_out(crb_opts, [&](std::ostream& os) {
                qradar::cmd_crb_sweep(build_config(crb_opts), os);
            });
        if (estimate->parsed())
            return run_to_out(est_opts, [&](std::ostream& os) {
                qradar::cmd_estimate(build_config(est_opts), os,
                                     est_opts.svg_path);
            });
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    } catch (const qradar::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qradar::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
