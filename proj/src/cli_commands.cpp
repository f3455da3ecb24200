#include "fbmchaos/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "fbmchaos/io.hpp"
#include "fbmchaos/verify.hpp"

namespace fbmchaos::cli {

namespace {

using io::fmt17;

void write_outputs(const RunConfig& cfg, const std::string& suffix,
                   const std::string& csv_content, const io::SvgPlot* plot) {
    if (cfg.out.empty()) return;
    if (cfg.format == "csv" || cfg.format == "both")
        io::write_file(cfg.out + suffix + ".csv", csv_content);
    if (plot && (cfg.format == "svg" || cfg.format == "both"))
        plot->write(cfg.out + suffix + ".svg");
}

}  // namespace

void RunConfig::validate() const {
    if (!(hurst > 0.0 && hurst < 1.0))
        throw std::invalid_argument("hurst must be in (0,1)");
    if (grid_n < 2 || grid_n > 4096)
        throw std::invalid_argument("grid-n must be in [2, 4096]");
    if (j_min > j_max) throw std::invalid_argument("jmin must be <= jmax");
    if (j_min < -4096 || j_max > 4096)
        throw std::invalid_argument("index window must lie in [-4096, 4096]");
    if (!(grid_l > 0.0)) throw std::invalid_argument("grid-l must be positive");
    if (!(tol_abs > 0.0 && tol_rel > 0.0))
        throw std::invalid_argument("tolerances must be positive");
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
    if (count < 1 || count > 20) throw std::invalid_argument("count must be in [1, 20]");
    if (format != "csv" && format != "svg" && format != "both")
        throw std::invalid_argument("format must be csv, svg or both");
    if (n_paths < 1) throw std::invalid_argument("paths must be >= 1");
}

quad::QuadratureSpec RunConfig::quad_spec() const {
    quad::QuadratureSpec q;
    q.abs_tol = tol_abs;
    q.rel_tol = tol_rel;
    return q;
}

Grid symmetric_grid(double l, int n_points) {
    if (n_points % 2 == 0) ++n_points;  // keep 0 on the grid
    return Grid::uniform(-l, l, n_points);
}

Grid prediction_grid(double l, double t, int n_points) {
    if (!(t > 0.0)) throw std::invalid_argument("prediction_grid: t must be positive");
    int m_t = std::max(8, static_cast<int>(std::lround(n_points * t / (l + t))));
    double dt = t / m_t;
    int n_l = static_cast<int>(std::ceil(l / dt - 1e-9));
    while (n_l + m_t + 1 > 4097) {
        m_t = std::max(8, m_t / 2);
        dt = t / m_t;
        n_l = static_cast<int>(std::ceil(l / dt - 1e-9));
    }
    return Grid::uniform(-n_l * dt, t, n_l + m_t + 1);
}

CoeffsData run_coeffs(const RunConfig& cfg) {
    cfg.validate();
    const auto m = SpectralModel::fbm(cfg.hurst);
    CoeffsData out;
    out.table = coeff_table(m, cfg.t, cfg.j_min, cfg.j_max, cfg.quad_spec());
    out.energy = out.table.total_energy();
    out.variance = std::pow(std::abs(cfg.t), 2.0 * cfg.hurst);
    std::vector<std::vector<std::string>> rows;
    for (int j = cfg.j_min; j <= cfg.j_max; ++j)
        rows.push_back({std::to_string(j), fmt17(out.table.value(j)),
                        fmt17(out.table.error(j)),
                        out.table.is_past(j) ? "past" : "future"});
    out.csv = io::csv("j,r,abs_err,class", rows);
    return out;
}

int cmd_coeffs(const RunConfig& cfg) {
    CoeffsData d = run_coeffs(cfg);
    io::SvgPlot plot("expansion coefficients  H=" + std::to_string(cfg.hurst) +
                         "  t=" + std::to_string(cfg.t),
                     "j", "r_j");
    std::vector<double> xp, yp, xf, yf;
    for (int j = cfg.j_min; j <= cfg.j_max; ++j) {
        if (d.table.is_past(j)) {
            xp.push_back(j);
            yp.push_back(d.table.value(j));
        } else {
            xf.push_back(j);
            yf.push_back(d.table.value(j));
        }
    }
    if (!xp.empty()) plot.stems(xp, yp, "#1f77b4", "past class");
    if (!xf.empty()) plot.stems(xf, yf, "#d62728", "future class");
    write_outputs(cfg, "", d.csv, &plot);
    std::printf("coeffs: window [%d, %d], boundary j<=%d, sum r^2 = %.6f (var %.6f)\n",
                cfg.j_min, cfg.j_max, d.table.boundary, d.energy, d.variance);
    return 0;
}

ErrorCurveData run_error_curve(const RunConfig& cfg) {
    cfg.validate();
    const auto m = SpectralModel::fbm(cfg.hurst);
    ErrorCurveData out;
    CoefficientTable tbl = coeff_table(m, cfg.t, cfg.j_min, cfg.j_max, cfg.quad_spec());
    out.exact = exact_error(m, std::abs(cfg.t));

    std::vector<double> past_sq;
    for (int j = cfg.j_min; j <= cfg.j_max; ++j)
        if (tbl.is_past(j)) past_sq.push_back(tbl.value(j) * tbl.value(j));
    std::sort(past_sq.rbegin(), past_sq.rend());

    double residual = std::pow(std::abs(cfg.t), 2.0 * cfg.hurst);
    out.residual.push_back(residual);
    for (double sq : past_sq) {
        residual -= sq;
        out.residual.push_back(residual);
    }
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < out.residual.size(); ++k)
        rows.push_back({std::to_string(k), fmt17(out.residual[k]), fmt17(out.exact)});
    out.csv = io::csv("k,residual_after_k_coeffs,exact", rows);
    return out;
}

int cmd_error_curve(const RunConfig& cfg) {
    ErrorCurveData d = run_error_curve(cfg);
    io::SvgPlot plot("prediction error vs retained coefficients  H=" +
                         std::to_string(cfg.hurst),
                     "number of coefficients", "error");
    std::vector<double> ks(d.residual.size());
    for (std::size_t k = 0; k < ks.size(); ++k) ks[k] = static_cast<double>(k);
    plot.polyline(ks, d.residual, "#1f77b4", "truncated");
    plot.hline(d.exact, "#d62728", "exact");
    write_outputs(cfg, "", d.csv, &plot);
    std::printf("error-curve: %zu past coefficients, final residual %.6f, exact %.6f\n",
                d.residual.size() - 1, d.residual.back(), d.exact);
    return 0;
}

RenderPathData run_render_path(const RunConfig& cfg) {
    cfg.validate();
    const auto m = SpectralModel::fbm(cfg.hurst);
    const auto spec = cfg.quad_spec();

    const double lr = std::max(1.0, cfg.grid_l);
    Grid sim = symmetric_grid(8.0 * lr, 1201);
    FbmSampler sampler(m, sim);
    SamplePath path = sampler.sample(cfg.seed, 0);

    CoefficientTable tbl = coeff_table(m, cfg.t, cfg.j_min, cfg.j_max, spec);

    std::vector<double> integrals;
    for (int j = cfg.j_min; j <= cfg.j_max; ++j)
        integrals.push_back(pathwise_integral(path, xi_time(m, j, sim, spec)));

    RenderPathData out;
    const int stride = std::max(1, static_cast<int>(sim.t.size()) / 160);
    for (int k = 0; k < sim.size(); k += stride) {
        const double tk = sim.t[k];
        if (tk < -cfg.grid_l - 1e-12 || tk > cfg.grid_l + 1e-12) continue;
        double past = 0.0, future = 0.0;
        for (int j = cfg.j_min; j <= cfg.j_max; ++j) {
            const double rj = coeff_r(m, j, tk, spec).value;
            const double contrib = rj * integrals[static_cast<std::size_t>(j - cfg.j_min)];
            if (tbl.is_past(j))
                past += contrib;
            else
                future += contrib;
        }
        out.t.push_back(tk);
        out.past.push_back(past);
        out.future.push_back(future);
        out.total.push_back(past + future);
    }
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < out.t.size(); ++i)
        rows.push_back({fmt17(out.t[i]), fmt17(out.past[i]), fmt17(out.future[i]),
                        fmt17(out.total[i])});
    out.csv = io::csv("t,past_component,future_component,total", rows);
    return out;
}

int cmd_render_path(const RunConfig& cfg) {
    RenderPathData d = run_render_path(cfg);
    io::SvgPlot plot("sample path split into past and future components  H=" +
                         std::to_string(cfg.hurst),
                     "t", "value");
    plot.polyline(d.t, d.total, "#444444", "total");
    plot.polyline(d.t, d.past, "#1f77b4", "past component");
    plot.polyline(d.t, d.future, "#d62728", "future component");
    write_outputs(cfg, "", d.csv, &plot);
    std::printf("render-path: %zu points on [%g, %g], window [%d, %d]\n", d.t.size(),
                -cfg.grid_l, cfg.grid_l, cfg.j_min, cfg.j_max);
    return 0;
}

SimulateData run_simulate(const RunConfig& cfg) {
    cfg.validate();
    const auto m = SpectralModel::fbm(cfg.hurst);
    SimulateData out;
    out.path = fbm_sample(m, symmetric_grid(cfg.grid_l, cfg.grid_n), cfg.seed);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < out.path.x.size(); ++k)
        rows.push_back({fmt17(out.path.grid.t[k]), fmt17(out.path.x[k])});
    out.csv = io::csv("t,x", rows);
    return out;
}

int cmd_simulate(const RunConfig& cfg) {
    SimulateData d = run_simulate(cfg);
    io::SvgPlot plot("sample path  H=" + std::to_string(cfg.hurst), "t", "x");
    plot.polyline(d.path.grid.t, d.path.x, "#1f77b4", "");
    write_outputs(cfg, "", d.csv, &plot);
    std::printf("simulate: %d points on [%g, %g], seed %llu\n", d.path.grid.size(),
                d.path.grid.t.front(), d.path.grid.t.back(),
                static_cast<unsigned long long>(cfg.seed));
    return 0;
}

GramData run_gram(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.j_max - cfg.j_min + 1 > 17)
        throw std::invalid_argument("gram: index window may hold at most 17 elements");
    const auto m = SpectralModel::fbm(cfg.hurst);
    GramData out;
    out.gram = mc_gram(m, cfg.j_min, cfg.j_max, symmetric_grid(cfg.grid_l, cfg.grid_n),
                       cfg.n_paths, cfg.seed, cfg.quad_spec());
    std::vector<std::vector<std::string>> rows;
    const int nb = cfg.j_max - cfg.j_min + 1;
    for (int a = 0; a < nb; ++a)
        for (int b = 0; b < nb; ++b)
            rows.push_back({std::to_string(cfg.j_min + a), std::to_string(cfg.j_min + b),
                            fmt17(out.gram.mean[a][b]), fmt17(out.gram.se[a][b]),
                            fmt17(out.gram.exact[a][b])});
    out.csv = io::csv("n,m,estimate,se,exact", rows);
    return out;
}

int cmd_gram(const RunConfig& cfg) {
    GramData d = run_gram(cfg);
    write_outputs(cfg, "", d.csv, nullptr);
    double max_dev = 0.0;
    const std::size_t nb = d.gram.mean.size();
    for (std::size_t a = 0; a < nb; ++a)
        for (std::size_t b = 0; b < nb; ++b)
            max_dev = std::max(max_dev,
                               std::abs(d.gram.mean[a][b] - (a == b ? 1.0 : 0.0)));
    std::printf("gram: indices [%d, %d], %zu paths, max |G - I| = %.4f\n", cfg.j_min,
                cfg.j_max, cfg.n_paths, max_dev);
    return 0;
}

FiniteHorizonData run_finite_horizon(const RunConfig& cfg) {
    cfg.validate();
    const auto m = SpectralModel::fbm(cfg.hurst);
    FiniteHorizonData out;
    out.basis = make_horizon_basis(m, cfg.horizon, cfg.count, cfg.quad_spec());
    out.gram = fh_basis_gram(m, cfg.horizon, cfg.count, cfg.quad_spec());
    std::vector<std::vector<std::string>> zrows;
    for (std::size_t k = 0; k < out.basis.zeros.size(); ++k)
        zrows.push_back({std::to_string(k + 1), fmt17(out.basis.zeros[k])});
    out.zeros_csv = io::csv("k,zero", zrows);
    std::vector<std::vector<std::string>> grows;
    for (int a = 0; a < cfg.count; ++a)
        for (int b = 0; b < cfg.count; ++b)
            grows.push_back({std::to_string(a + 1), std::to_string(b + 1),
                             fmt17(out.gram[a][b])});
    out.gram_csv = io::csv("n,m,value", grows);
    return out;
}

int cmd_finite_horizon(const RunConfig& cfg) {
    FiniteHorizonData d = run_finite_horizon(cfg);
    if (!cfg.out.empty()) {
        io::write_file(cfg.out + "_zeros.csv", d.zeros_csv);
        io::write_file(cfg.out + "_gram.csv", d.gram_csv);
    }
    double max_off = 0.0;
    for (int a = 0; a < cfg.count; ++a)
        for (int b = 0; b < cfg.count; ++b)
            if (a != b) max_off = std::max(max_off, std::abs(d.gram[a][b]));
    std::printf("finite-horizon: T=%g, %d elements, max off-diagonal %.2e\n", cfg.horizon,
                cfg.count, max_off);
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    verify::Options opt;
    opt.quick = cfg.quick;
    opt.inject_phase_flip = cfg.inject_phase_flip;
    opt.seed = cfg.seed;
    opt.scratch_dir = cfg.out;
    auto results = verify::run_all(opt);
    std::fputs(verify::format_report(results).c_str(), stdout);
    return verify::all_pass(results) ? 0 : 1;
}

}  // namespace fbmchaos::cli
