#include <cstdio>
#include <exception>
#include <functional>
#include <string>

#include <CLI11.hpp>

#include "fbmchaos/cli.hpp"
#include "fbmchaos/errors.hpp"

namespace {

using fbmchaos::cli::RunConfig;

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--hurst", cfg.hurst, "Hurst parameter in (0,1)");
    sub->add_option("--t", cfg.t, "time of the predicted value");
    sub->add_option("--jmin", cfg.j_min, "lower basis index");
    sub->add_option("--jmax", cfg.j_max, "upper basis index");
    sub->add_option("--grid-l", cfg.grid_l, "grid half-width");
    sub->add_option("--grid-n", cfg.grid_n, "grid point count (max 4096)");
    sub->add_option("--paths", cfg.n_paths, "Monte Carlo path count");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--tol-abs", cfg.tol_abs, "absolute quadrature tolerance");
    sub->add_option("--tol-rel", cfg.tol_rel, "relative quadrature tolerance");
    sub->add_option("--out", cfg.out, "output path stem");
    sub->add_option("--format", cfg.format, "output format: csv, svg or both");
    sub->set_config("--config", "", "key=value config file; flags win");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chaos-basis prediction toolkit for fractional Brownian motion"};
    app.require_subcommand(1);

    RunConfig cfg;
    int rc = 0;
    std::function<int()> action;

    auto* coeffs = app.add_subcommand("coeffs", "expansion coefficient table and plot");
    add_common(coeffs, cfg);
    coeffs->callback([&] { action = [&] { return fbmchaos::cli::cmd_coeffs(cfg); }; });

    auto* curve = app.add_subcommand("error-curve", "truncated prediction error curve");
    add_common(curve, cfg);
    curve->callback([&] { action = [&] { return fbmchaos::cli::cmd_error_curve(cfg); }; });

    auto* render = app.add_subcommand("render-path", "split one path into past/future parts");
    add_common(render, cfg);
    render->parse_complete_callback([&] {});
    render->callback([&] {
        if (!render->count("--jmin")) cfg.j_min = -40;
        if (!render->count("--jmax")) cfg.j_max = 40;
        if (!render->count("--grid-l")) cfg.grid_l = 2.0;
        action = [&] { return fbmchaos::cli::cmd_render_path(cfg); };
    });

    auto* sim = app.add_subcommand("simulate", "draw one exact sample path");
    add_common(sim, cfg);
    sim->callback([&] { action = [&] { return fbmchaos::cli::cmd_simulate(cfg); }; });

    auto* gram = app.add_subcommand("gram", "Monte Carlo orthonormality check");
    add_common(gram, cfg);
    gram->callback([&] {
        if (!gram->count("--jmin")) cfg.j_min = -4;
        if (!gram->count("--jmax")) cfg.j_max = 4;
        if (!gram->count("--grid-l")) cfg.grid_l = 16.0;
        if (!gram->count("--grid-n")) cfg.grid_n = 2049;
        action = [&] { return fbmchaos::cli::cmd_gram(cfg); };
    });

    auto* fh = app.add_subcommand("finite-horizon", "bounded-interval basis diagnostics");
    add_common(fh, cfg);
    fh->add_option("--horizon", cfg.horizon, "interval half-width T");
    fh->add_option("--count", cfg.count, "number of basis elements (max 20)");
    fh->callback([&] { action = [&] { return fbmchaos::cli::cmd_finite_horizon(cfg); }; });

    auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
    add_common(verify, cfg);
    verify->add_flag("--quick", cfg.quick, "skip the Monte Carlo criteria");
    verify->add_flag("--inject-phase-flip", cfg.inject_phase_flip,
                     "corrupt the outer-function phase (self-test of the checks)")
        ->group("");  // hidden
    verify->callback([&] { action = [&] { return fbmchaos::cli::cmd_verify(cfg); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        rc = action ? action() : 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const fbmchaos::NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return rc;
}
