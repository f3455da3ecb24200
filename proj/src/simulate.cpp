#include "fbmchaos/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fbmchaos/kernels.hpp"

namespace fbmchaos {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxGridPoints = 4097;

}  // namespace

Grid Grid::uniform(double t_min, double t_max, int n_points) {
    if (n_points < 2 || n_points > kMaxGridPoints)
        throw std::domain_error("Grid: point count out of [2, 4097]");
    if (!(t_min < t_max)) throw std::domain_error("Grid: t_min must be < t_max");
    Grid g;
    g.dt = (t_max - t_min) / (n_points - 1);
    g.t.resize(n_points);
    g.zero_index = -1;
    for (int k = 0; k < n_points; ++k) {
        g.t[k] = t_min + k * g.dt;
        if (std::abs(g.t[k]) < 1e-12 * std::max(1.0, std::abs(t_max))) {
            g.t[k] = 0.0;
            g.zero_index = k;
        }
    }
    if (g.zero_index < 0) throw std::domain_error("Grid: grid must contain t = 0");
    return g;
}

namespace {

std::uint64_t splitmix_finalize(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) {
    base_ = splitmix_finalize(seed ^ splitmix_finalize(stream + 0x6A09E667F3BCC909ULL));
}

double CounterRng::uniform() {
    const std::uint64_t bits =
        splitmix_finalize(base_ + counter_++ * 0x9E3779B97F4A7C15ULL);
    return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
}

double CounterRng::normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

FbmSampler::FbmSampler(const SpectralModel& m, Grid grid)
    : model_(m), grid_(std::move(grid)) {
    n_ = grid_.size() - 1;  // zero point pinned
    std::vector<double> s;  // off-zero grid times
    s.reserve(n_);
    for (int k = 0; k < grid_.size(); ++k)
        if (k != grid_.zero_index) s.push_back(grid_.t[k]);

    const std::size_t packed = static_cast<std::size_t>(n_) * (n_ + 1) / 2;
    chol_.assign(packed, 0.0);
    auto row = [&](int i) { return chol_.data() + static_cast<std::size_t>(i) * (i + 1) / 2; };

    const double base_jitter = 1e-12;
    double jitter = 0.0;
    for (int attempt = 0;; ++attempt) {
        bool ok = true;
        for (int i = 0; i < n_ && ok; ++i) {
            double* li = row(i);
            for (int j = 0; j < i; ++j) {
                const double a = model_.covariance(s[i], s[j]);
                li[j] = (a - kern::dot(li, row(j), j)) / row(j)[j];
            }
            const double a = model_.covariance(s[i], s[i]) + jitter;
            const double d = a - kern::dot(li, li, i);
            if (d <= 0.0 || !std::isfinite(d)) {
                ok = false;
                break;
            }
            li[i] = std::sqrt(d);
        }
        if (ok) break;
        if (attempt >= 4)
            throw NumericalError("FbmSampler: covariance not positive definite "
                                 "after regularization");
        jitter = (jitter == 0.0) ? base_jitter : jitter * 100.0;
    }
}

SamplePath FbmSampler::sample(std::uint64_t seed, std::uint64_t path_index) const {
    CounterRng rng(seed, path_index);
    std::vector<double> z(n_);
    for (int i = 0; i < n_; ++i) z[i] = rng.normal();

    SamplePath p;
    p.hurst = model_.hurst();
    p.grid = grid_;
    p.x.assign(grid_.size(), 0.0);
    int i = 0;
    for (int k = 0; k < grid_.size(); ++k) {
        if (k == grid_.zero_index) continue;
        const double* li = chol_.data() + static_cast<std::size_t>(i) * (i + 1) / 2;
        p.x[k] = kern::dot(li, z.data(), i + 1);
        ++i;
    }
    return p;
}

SamplePath fbm_sample(const SpectralModel& m, const Grid& grid, std::uint64_t seed) {
    return FbmSampler(m, grid).sample(seed, 0);
}

namespace {

struct KernelIntegrand {
    double h, c_h, theta, mobius, scale;

    double modulus(double g) const {
        return scale * std::pow(g, h - 0.5) / std::sqrt(1.0 + g * g);
    }
    double arg(double g) const { return theta + mobius * 2.0 * std::atan(g); }
    double at(double g, double t) const {
        return modulus(g) * std::cos(arg(g) - g * t) / kPi;
    }
};

double kernel_point(const KernelIntegrand& f, double t, double dt,
                    const quad::QuadratureSpec& spec, double* err) {
    const double two_m = 2.0 * f.mobius;
    if (t == 0.0) {
        // band-limited regularization at the jump/singular point
        const double cut = std::max(spec.gamma_max, kPi / dt);
        auto head = quad::integrate_adaptive([&](double g) { return f.at(g, 0.0); }, 0.0,
                                             cut, spec, quad::geometric_seeds(0.0, cut));
        double v = head.value, e = head.error;
        if (f.h < 0.5) {
            auto tail = quad::tail_algebraic([&](double g) { return f.at(g, 0.0); }, cut, spec);
            v += tail.value;
            e += tail.error;
        }
        if (err) *err = e;
        return v;
    }

    double head_end = spec.gamma_max;
    const double q = 2.0 * std::abs(two_m / t);
    if (q > 1.0) head_end = std::max(head_end, std::sqrt(q - 1.0) + 4.0);

    std::vector<double> seeds = quad::geometric_seeds(0.0, head_end);
    const double abs_t = std::abs(t);
    double x = 0.0;
    while (x < head_end && seeds.size() < 30000) {
        x += kPi / (abs_t + std::abs(two_m) / (1.0 + x * x));
        if (x < head_end) seeds.push_back(x);
    }

    auto head = quad::integrate_adaptive([&](double g) { return f.at(g, t); }, 0.0,
                                         head_end, spec, seeds);
    auto tail = quad::tail_oscillatory([&](double g) { return f.at(g, t); }, head_end, t,
                                       spec);
    if (err) *err = head.error + tail.error;
    return head.value + tail.value;
}

}  // namespace

TimeKernel xi_time(const SpectralModel& m, int n, const Grid& grid,
                   const quad::QuadratureSpec& spec) {
    spec.validate();
    TimeKernel k;
    k.n = n;
    k.hurst = m.hurst();
    k.grid = grid;
    k.values.assign(grid.t.size(), 0.0);
    // |xi_hat|^2 dgamma is integrable for every H in (0,1); its closed form
    // 1/(c_h sin(pi H)) is recorded for the Parseval checks.
    k.freq_l2_norm_sq = 1.0 / (m.c_h() * std::sin(kPi * m.hurst()));

    KernelIntegrand f;
    f.h = m.hurst();
    f.c_h = m.c_h();
    f.theta = kPi * (2.0 * m.hurst() - 1.0) / 4.0;
    f.mobius = n + 1.5;
    f.scale = 1.0 / std::sqrt(kPi * m.c_h());

    double max_err = 0.0;
    for (std::size_t i = 0; i < grid.t.size(); ++i) {
        double e = 0.0;
        k.values[i] = kernel_point(f, grid.t[i], grid.dt, spec, &e);
        max_err = std::max(max_err, e);
    }
    k.value_error_bound = max_err;
    const double scale = std::sqrt(
        kern::sum_sq(k.values.data(), k.values.size()) / static_cast<double>(grid.t.size()));
    k.tail_energy_bound = max_err / std::max(scale, 1e-12);
    if (k.tail_energy_bound > 1e-4)
        throw NumericalError("xi_time: kernel value error bound exceeds 1e-4 of scale; "
                             "raise gamma_max or loosen the grid");
    return k;
}

double pathwise_integral(const SamplePath& p, const TimeKernel& k) {
    if (p.grid.t.size() != k.grid.t.size() || std::abs(p.grid.dt - k.grid.dt) > 1e-12 ||
        p.grid.t.front() != k.grid.t.front())
        throw std::domain_error("pathwise_integral: grid mismatch");
    const std::size_t cells = p.x.size() - 1;
    std::vector<double> dx(cells);
    for (std::size_t i = 0; i < cells; ++i) dx[i] = p.x[i + 1] - p.x[i];
    return kern::dot(k.values.data(), dx.data(), cells);
}

// The increments of a stationary-increment process on a uniform grid form a
// Toeplitz covariance, so one matrix-vector pass per kernel suffices.
std::vector<std::vector<double>> exact_discrete_gram(const SpectralModel& m,
                                                     const std::vector<TimeKernel>& ks) {
    const std::size_t cells = ks.front().grid.t.size() - 1;
    const double dt = ks.front().grid.dt;
    const double two_h = 2.0 * m.hurst();
    std::vector<double> c(cells);
    for (std::size_t d = 0; d < cells; ++d) {
        const double dd = static_cast<double>(d);
        c[d] = 0.5 * std::pow(dt, two_h) *
               (std::pow(std::abs(dd + 1.0), two_h) + std::pow(std::abs(dd - 1.0), two_h) -
                2.0 * std::pow(dd, two_h));
    }
    // w_m = T v_m, then G_nm = v_n . w_m
    std::vector<std::vector<double>> w(ks.size(), std::vector<double>(cells, 0.0));
    for (std::size_t m_i = 0; m_i < ks.size(); ++m_i) {
        const auto& v = ks[m_i].values;
        for (std::size_t k = 0; k < cells; ++k) {
            double acc = 0.0;
            for (std::size_t l = 0; l < cells; ++l)
                acc += c[k >= l ? k - l : l - k] * v[l];
            w[m_i][k] = acc;
        }
    }
    std::vector<std::vector<double>> g(ks.size(), std::vector<double>(ks.size(), 0.0));
    for (std::size_t a = 0; a < ks.size(); ++a)
        for (std::size_t b = 0; b < ks.size(); ++b)
            g[a][b] = kern::dot(ks[a].values.data(), w[b].data(), cells);
    return g;
}

GramEstimate mc_gram(const SpectralModel& m, int n_lo, int n_hi, const Grid& grid,
                     std::size_t n_paths, std::uint64_t seed,
                     const quad::QuadratureSpec& spec) {
    if (n_hi - n_lo + 1 > 17) throw std::domain_error("mc_gram: window wider than 17");
    if (n_paths < 1000) throw std::domain_error("mc_gram: need at least 1000 paths");

    std::vector<TimeKernel> ks;
    for (int n = n_lo; n <= n_hi; ++n) ks.push_back(xi_time(m, n, grid, spec));
    const std::size_t nb = ks.size();

    FbmSampler sampler(m, grid);
    const std::size_t cells = grid.t.size() - 1;
    std::vector<double> dx(cells);
    std::vector<std::vector<double>> ints(nb, std::vector<double>(n_paths, 0.0));
    for (std::size_t p = 0; p < n_paths; ++p) {
        SamplePath path = sampler.sample(seed, p);
        for (std::size_t i = 0; i < cells; ++i) dx[i] = path.x[i + 1] - path.x[i];
        for (std::size_t a = 0; a < nb; ++a)
            ints[a][p] = kern::dot(ks[a].values.data(), dx.data(), cells);
    }

    GramEstimate out;
    out.n_lo = n_lo;
    out.n_hi = n_hi;
    out.n_paths = n_paths;
    out.mean.assign(nb, std::vector<double>(nb, 0.0));
    out.se.assign(nb, std::vector<double>(nb, 0.0));
    const double pn = static_cast<double>(n_paths);
    for (std::size_t a = 0; a < nb; ++a)
        for (std::size_t b = a; b < nb; ++b) {
            const double mean = kern::dot(ints[a].data(), ints[b].data(), n_paths) / pn;
            double var = 0.0;
            for (std::size_t p = 0; p < n_paths; ++p) {
                const double d = ints[a][p] * ints[b][p] - mean;
                var += d * d;
            }
            const double se = std::sqrt(var / (pn - 1.0) / pn);
            out.mean[a][b] = out.mean[b][a] = mean;
            out.se[a][b] = out.se[b][a] = se;
        }
    out.exact = exact_discrete_gram(m, ks);
    return out;
}

PredictionReport mc_prediction_experiment(const SpectralModel& m, double t, int j_min,
                                          int j_max, const Grid& grid,
                                          std::size_t n_paths, std::uint64_t seed,
                                          const quad::QuadratureSpec& spec) {
    const double need = 8.0 * std::max(1.0, t);
    if (grid.t.front() > -need + 1e-9 || grid.t.back() < t - 1e-12)
        throw std::domain_error("mc_prediction_experiment: grid must cover [-8 max(1,t), t]");
    int t_index = -1;
    for (int k = 0; k < grid.size(); ++k)
        if (std::abs(grid.t[k] - t) < 1e-9) t_index = k;
    if (t_index < 0)
        throw std::domain_error("mc_prediction_experiment: t must lie on the grid");

    CoefficientTable tbl = coeff_table(m, t, j_min, j_max, spec);

    // kernels for the past class; their mass lives on (-inf, 0] and the
    // predictor may only read samples there, so integrate cells below 0.
    std::vector<int> past_idx;
    for (int j = j_min; j <= j_max; ++j)
        if (tbl.is_past(j)) past_idx.push_back(j);

    const std::size_t cells_past = static_cast<std::size_t>(grid.zero_index);
    std::vector<std::vector<double>> kv;
    for (int j : past_idx) {
        TimeKernel k = xi_time(m, j, grid, spec);
        k.values.resize(cells_past);  // left points strictly below 0
        kv.push_back(std::move(k.values));
    }

    FbmSampler sampler(m, grid);
    std::vector<double> dx(cells_past);
    std::vector<double> residuals(n_paths, 0.0);
    std::vector<std::vector<double>> past_samples;
    std::vector<int> probe_cols;
    for (int c = 1; c <= 12; ++c) {
        int k = grid.zero_index * c / 12;
        if (k > 0 && (probe_cols.empty() || k != probe_cols.back())) probe_cols.push_back(k);
    }
    past_samples.assign(probe_cols.size(), std::vector<double>(n_paths, 0.0));

    for (std::size_t p = 0; p < n_paths; ++p) {
        SamplePath path = sampler.sample(seed, p);
        for (std::size_t i = 0; i < cells_past; ++i) dx[i] = path.x[i + 1] - path.x[i];
        double predictor = 0.0;
        for (std::size_t a = 0; a < past_idx.size(); ++a)
            predictor += tbl.value(past_idx[a]) * kern::dot(kv[a].data(), dx.data(), cells_past);
        residuals[p] = path.x[t_index] - predictor;
        for (std::size_t c = 0; c < probe_cols.size(); ++c)
            past_samples[c][p] = path.x[probe_cols[c]];
    }

    PredictionReport rep;
    rep.n_paths = n_paths;
    rep.n_past_coeffs = static_cast<int>(past_idx.size());
    rep.predictor_energy = tbl.past_energy();
    const double pn = static_cast<double>(n_paths);
    rep.ms_residual = kern::sum_sq(residuals.data(), n_paths) / pn;
    double var = 0.0;
    for (double r : residuals) {
        const double d = r * r - rep.ms_residual;
        var += d * d;
    }
    rep.ms_residual_se = std::sqrt(var / (pn - 1.0) / pn);
    rep.exact_error = exact_error(m, t);
    rep.ratio = rep.ms_residual / rep.exact_error;

    const double res_mean = kern::sum(residuals.data(), n_paths) / pn;
    const double res_sd = std::sqrt(std::max(rep.ms_residual - res_mean * res_mean, 1e-300));
    double max_z = 0.0;
    for (const auto& col : past_samples) {
        const double s_mean = kern::sum(col.data(), n_paths) / pn;
        double cov = 0.0, svar = 0.0;
        for (std::size_t p = 0; p < n_paths; ++p) {
            cov += (residuals[p] - res_mean) * (col[p] - s_mean);
            svar += (col[p] - s_mean) * (col[p] - s_mean);
        }
        cov /= pn;
        svar /= pn;
        const double corr = cov / (res_sd * std::sqrt(std::max(svar, 1e-300)));
        max_z = std::max(max_z, std::abs(corr) * std::sqrt(pn));
    }
    rep.max_past_corr_z = max_z;
    return rep;
}

}  // namespace fbmchaos
