#include "fbmchaos/prediction.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "fbmchaos/kernels.hpp"

namespace fbmchaos {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPastThreshold = 1e-3;
constexpr double kFutureThreshold = 1e-4;

struct CoeffIntegrand {
    double h;           // hurst
    double c;           // 4 sqrt(c_h / pi)
    double t;
    double theta;       // pi (2H-1)/4
    double mobius;      // j + 3/2

    double amplitude(double g) const {
        return std::pow(g, -0.5 - h) / std::sqrt(1.0 + g * g);
    }
    double psi(double g) const { return theta + mobius * 2.0 * std::atan(g); }

    // head form: 4 sqrt(c_h/pi) A(g) sin(gt/2) cos(gt/2 - psi)
    double head(double g) const {
        const double a = 0.5 * g * t;
        return c * amplitude(g) * std::sin(a) * std::cos(a - psi(g));
    }
    // tail split: 2 A(g) [sin(g t - psi) + sin psi]
    double tail_osc(double g) const {
        return 0.5 * c * amplitude(g) * std::sin(g * t - psi(g));
    }
    double tail_smooth(double g) const {
        return 0.5 * c * amplitude(g) * std::sin(psi(g));
    }
};

}  // namespace

CoeffValue coeff_r(const SpectralModel& m, int j, double t,
                   const quad::QuadratureSpec& spec) {
    spec.validate();
    if (!std::isfinite(t)) throw std::domain_error("coeff_r: t must be finite");
    if (t == 0.0) return {0.0, 0.0};

    CoeffIntegrand f;
    f.h = m.hurst();
    f.c = 4.0 * std::sqrt(m.c_h() / kPi);
    f.t = t;
    f.theta = kPi * (2.0 * m.hurst() - 1.0) / 4.0;
    f.mobius = j + 1.5;

    // Phase gt - psi(g) must be monotone past the head so the tail can be
    // panelled by half-periods: push the split beyond the stationary point.
    const double two_j3 = 2.0 * f.mobius;  // 2j + 3
    double head_end = spec.gamma_max;
    const double q = 2.0 * std::abs(two_j3 / t);
    if (q > 1.0) head_end = std::max(head_end, std::sqrt(q - 1.0) + 4.0);

    std::vector<double> seeds = quad::geometric_seeds(0.0, head_end);
    {
        const double abs_t = std::abs(t);
        double x = 0.0;
        while (x < head_end && seeds.size() < 30000) {
            const double slope = abs_t + std::abs(two_j3) / (1.0 + x * x);
            x += kPi / slope;
            if (x < head_end) seeds.push_back(x);
        }
    }

    auto head = quad::integrate_adaptive([&f](double g) { return f.head(g); }, 0.0,
                                         head_end, spec, seeds);
    auto osc = quad::tail_oscillatory([&f](double g) { return f.tail_osc(g); }, head_end,
                                      t, spec);
    auto smooth = quad::tail_algebraic([&f](double g) { return f.tail_smooth(g); },
                                       head_end, spec);
    return {head.value + osc.value + smooth.value, head.error + osc.error + smooth.error};
}

namespace {

double past_correlation(const SpectralModel& m, int j, const quad::QuadratureSpec& spec) {
    static const double probes[] = {-0.25, -0.5, -1.0, -2.0, -4.0};
    double best = 0.0;
    for (double t : probes) {
        const double norm = std::pow(std::abs(t), m.hurst());
        best = std::max(best, std::abs(coeff_r(m, j, t, spec).value) / norm);
    }
    return best;
}

enum class Claz { past, future };

Claz classify_one(const SpectralModel& m, int j, const quad::QuadratureSpec& spec) {
    const double corr = past_correlation(m, j, spec);
    if (corr > kPastThreshold) return Claz::past;
    if (corr < kFutureThreshold) return Claz::future;
    throw NumericalError("classify_past: ambiguous correlation " + std::to_string(corr) +
                         " for j=" + std::to_string(j) +
                         "; tighten the quadrature tolerances");
}

}  // namespace

int past_boundary(const SpectralModel& m, const quad::QuadratureSpec& spec) {
    const int scan_hi = 6, scan_lo = -10;
    int boundary = scan_lo - 1;
    for (int j = scan_hi; j >= scan_lo; --j) {
        if (classify_one(m, j, spec) == Claz::past) {
            boundary = j;
            break;
        }
    }
    if (boundary < scan_lo)
        throw NumericalError("past_boundary: no past-correlated element found in scan window");
    // half-line sanity: the two elements below the boundary must be past too
    for (int j = boundary - 1; j >= boundary - 2; --j)
        if (classify_one(m, j, spec) != Claz::past)
            throw NumericalError("past_boundary: classification is not a half-line near j=" +
                                 std::to_string(j));
    return boundary;
}

bool classify_past(const SpectralModel& m, int j, const quad::QuadratureSpec& spec) {
    return j <= past_boundary(m, spec);
}

double CoefficientTable::total_energy() const {
    return kern::sum_sq(r.data(), r.size());
}

double CoefficientTable::past_energy() const {
    const std::size_t n_past =
        static_cast<std::size_t>(std::clamp(boundary - j_min + 1, 0, j_max - j_min + 1));
    return kern::sum_sq(r.data(), n_past);
}

double CoefficientTable::future_energy() const {
    const std::size_t n_past =
        static_cast<std::size_t>(std::clamp(boundary - j_min + 1, 0, j_max - j_min + 1));
    return kern::sum_sq(r.data() + n_past, r.size() - n_past);
}

CoefficientTable coeff_table(const SpectralModel& m, double t, int j_min, int j_max,
                             const quad::QuadratureSpec& spec) {
    if (j_min > j_max) throw std::invalid_argument("coeff_table: empty index window");
    CoefficientTable tbl;
    tbl.hurst = m.hurst();
    tbl.t = t;
    tbl.j_min = j_min;
    tbl.j_max = j_max;
    const std::size_t n = static_cast<std::size_t>(j_max - j_min + 1);
    tbl.r.assign(n, 0.0);
    tbl.abs_err.assign(n, 0.0);

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned n_threads = std::min<unsigned>(hw, 8);
    auto work = [&](unsigned tid) {
        for (std::size_t k = tid; k < n; k += n_threads) {
            const auto cv = coeff_r(m, j_min + static_cast<int>(k), t, spec);
            tbl.r[k] = cv.value;
            tbl.abs_err[k] = cv.abs_err;
        }
    };
    if (n_threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(work, i);
        for (auto& th : pool) th.join();
    }

    tbl.boundary = past_boundary(m, spec);

    const double var = std::pow(std::abs(t), 2.0 * m.hurst());
    if (t != 0.0 && tbl.total_energy() > var * 1.01)
        throw NumericalError("coeff_table: window energy exceeds the process variance");
    return tbl;
}

double error_variance_truncated(const CoefficientTable& tbl) {
    if (tbl.r.empty()) throw std::invalid_argument("error_variance_truncated: empty table");
    return tbl.future_energy();
}

double exact_error(const SpectralModel& m, double t) {
    if (t < 0.0) throw std::domain_error("exact_error: t must be >= 0");
    const double h = m.hurst();
    const double x = h - 0.5;
    // sin(pi x)/(pi x) with the removable point at x = 0
    const double px = kPi * x;
    const double sinc = std::abs(px) < 1e-8 ? 1.0 - px * px / 6.0 : std::sin(px) / px;
    const double g32 = euler_gamma(1.5 - h);
    const double g22 = euler_gamma(2.0 - 2.0 * h);
    return sinc * g32 * g32 / g22 * std::pow(t, 2.0 * h);
}

PredictionResult conditional_expansions(const SpectralModel& m, double t, int j_min,
                                        int j_max, const quad::QuadratureSpec& spec) {
    PredictionResult out;
    out.table = coeff_table(m, t, j_min, j_max, spec);
    const PastSet past = PastSet::half_line(out.table.boundary);

    out.predictor = ChaosExpansion(j_min, j_max, 12);
    std::map<int, double> coeffs;
    for (int j = j_min; j <= j_max; ++j) {
        const double rj = out.table.value(j);
        coeffs[j] = rj;
        if (out.table.is_past(j)) out.predictor.set_coefficient(MultiIndex::unit(j), rj);
    }
    out.predictor_variance = out.table.past_energy();
    out.residual_variance = out.table.future_energy();
    out.exact_error = exact_error(m, std::abs(t));

    const double var = std::pow(std::abs(t), 2.0 * m.hurst());
    out.conditioned_square = chaos_condition(wick_square(coeffs, var), past);
    return out;
}

}  // namespace fbmchaos
