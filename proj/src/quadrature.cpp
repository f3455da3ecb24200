#include "fbmchaos/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace fbmchaos::quad {

namespace {

// 15-point Kronrod nodes on [0,1] and weights; odd positions carry the
// embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename T>
struct PanelT {
    double a, b;
    T value;
    double error;
};

template <typename T, typename Fn>
PanelT<T> gk15_panel(const Fn& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    T fc = f(c);
    T k15 = kWgk[7] * fc;
    T g7 = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        T fsum = f(c - dx) + f(c + dx);
        k15 += kWgk[i] * fsum;
        if (i % 2 == 1) g7 += kWg[i / 2] * fsum;
    }
    k15 *= h;
    g7 *= h;
    return {a, b, k15, std::abs(k15 - g7)};
}

template <typename T, typename Fn>
void run_adaptive(const Fn& f, double a, double b, const QuadratureSpec& spec,
                  const std::vector<double>& seeds, T& value, double& error, int& npanels) {
    spec.validate();
    auto cmp = [](const PanelT<T>& x, const PanelT<T>& y) { return x.error < y.error; };
    std::priority_queue<PanelT<T>, std::vector<PanelT<T>>, decltype(cmp)> heap(cmp);

    std::vector<double> edges;
    edges.push_back(a);
    for (double s : seeds)
        if (s > a && s < b) edges.push_back(s);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    T total{};
    double total_err = 0.0;
    npanels = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        auto p = gk15_panel<T>(f, edges[i], edges[i + 1]);
        total += p.value;
        total_err += p.error;
        heap.push(p);
        ++npanels;
    }

    auto tol = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
    while (total_err > tol()) {
        if (npanels >= spec.max_panels || heap.empty())
            throw NumericalError("integrate_adaptive: panel budget exhausted (err=" +
                                 std::to_string(total_err) + ", panels=" +
                                 std::to_string(npanels) + ")");
        PanelT<T> worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // panel at floating-point resolution; keep its contribution
            continue;
        }
        total -= worst.value;
        total_err -= worst.error;
        auto left = gk15_panel<T>(f, worst.a, mid);
        auto right = gk15_panel<T>(f, mid, worst.b);
        total += left.value + right.value;
        total_err += left.error + right.error;
        heap.push(left);
        heap.push(right);
        ++npanels;
    }
    value = total;
    error = total_err;
}

template <typename T>
Extrapolated epsilon_impl(const std::vector<T>& sums);

template <>
Extrapolated epsilon_impl<double>(const std::vector<double>& s) {
    const double huge = std::numeric_limits<double>::max();
    if (s.empty()) return {0.0, huge};
    if (s.size() == 1) return {s[0], huge};

    std::vector<double> prev(s.size() + 1, 0.0);  // column -1
    std::vector<double> cur = s;                  // column 0
    double best = s.back();
    double best_err = std::abs(s[s.size() - 1] - s[s.size() - 2]);
    for (std::size_t k = 1; k < s.size(); ++k) {
        std::vector<double> next(s.size() - k);
        bool degenerate = false;
        for (std::size_t j = 0; j + k < s.size(); ++j) {
            const double denom = cur[j + 1] - cur[j];
            if (std::abs(denom) < 1e-300 || !std::isfinite(denom)) {
                degenerate = true;
                break;
            }
            next[j] = prev[j + 1] + 1.0 / denom;
        }
        if (degenerate || next.empty()) break;
        if (k % 2 == 0) {
            const double cand = next.back();
            const double err = std::abs(cand - best);
            if (std::isfinite(cand) && err <= best_err) {
                best_err = err;
                best = cand;
            }
        }
        prev = std::move(cur);
        cur = std::move(next);
    }
    return {best, best_err};
}

template <typename T, typename Fn>
void run_tail_osc(const Fn& f, double start, double omega, const QuadratureSpec& spec,
                  int max_half_periods, T& value, double& error, int& npanels) {
    spec.validate();
    if (omega == 0.0) throw NumericalError("tail_oscillatory: zero frequency");
    const double step = M_PI / std::abs(omega);
    QuadratureSpec panel_spec = spec;
    panel_spec.abs_tol = spec.abs_tol * 0.1;
    panel_spec.max_panels = 64;

    std::vector<double> re_sums, im_sums;
    T total{};
    double quad_err = 0.0;
    npanels = 0;
    double x = start;
    T last_term{};
    for (int k = 0; k < max_half_periods; ++k) {
        T term{};
        double terr = 0.0;
        int tp = 0;
        run_adaptive<T>(f, x, x + step, panel_spec, {}, term, terr, tp);
        npanels += tp;
        quad_err += terr;
        total += term;
        last_term = term;
        x += step;
        if constexpr (std::is_same_v<T, double>) {
            re_sums.push_back(total);
        } else {
            re_sums.push_back(total.real());
            im_sums.push_back(total.imag());
        }
        if (k >= 7 && k % 4 == 3) {
            if constexpr (std::is_same_v<T, double>) {
                auto ex = epsilon_impl<double>(re_sums);
                if (ex.error < std::max(spec.abs_tol, spec.rel_tol * std::abs(ex.value))) {
                    value = ex.value;
                    error = ex.error + quad_err;
                    return;
                }
            } else {
                auto exr = epsilon_impl<double>(re_sums);
                auto exi = epsilon_impl<double>(im_sums);
                const double err = exr.error + exi.error;
                std::complex<double> v{exr.value, exi.value};
                if (err < std::max(spec.abs_tol, spec.rel_tol * std::abs(v))) {
                    value = T(v);
                    error = err + quad_err;
                    return;
                }
            }
        }
        // plain convergence without acceleration (very fast decay)
        if (std::abs(last_term) < 0.05 * spec.abs_tol && k >= 3) {
            value = total;
            error = quad_err + std::abs(last_term);
            return;
        }
    }
    throw NumericalError("tail_oscillatory: extrapolation failed to converge after " +
                         std::to_string(max_half_periods) + " half-periods");
}

template <typename T, typename Fn>
void run_tail_alg(const Fn& f, double start, const QuadratureSpec& spec, T& value,
                  double& error, int& npanels) {
    if (start <= 0.0) throw NumericalError("tail_algebraic: start must be positive");
    auto g = [&](double u) -> T { return f(1.0 / u) * (1.0 / (u * u)); };
    const double ub = 1.0 / start;
    run_adaptive<T>(g, 0.0, ub, spec, geometric_seeds(0.0, ub), value, error, npanels);
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw std::domain_error("QuadratureSpec: tolerances must be positive");
    if (!(gamma_max >= 1.0)) throw std::domain_error("QuadratureSpec: gamma_max must be >= 1");
    if (max_panels < 4) throw std::domain_error("QuadratureSpec: max_panels too small");
}

Result gk15(const RealFn& f, double a, double b) {
    auto p = gk15_panel<double>(f, a, b);
    return {p.value, p.error, 1};
}

ComplexResult gk15(const ComplexFn& f, double a, double b) {
    auto p = gk15_panel<std::complex<double>>(f, a, b);
    return {p.value, p.error, 1};
}

Result integrate_adaptive(const RealFn& f, double a, double b, const QuadratureSpec& spec,
                          const std::vector<double>& seeds) {
    Result r;
    run_adaptive<double>(f, a, b, spec, seeds, r.value, r.error, r.panels);
    return r;
}

ComplexResult integrate_adaptive(const ComplexFn& f, double a, double b,
                                 const QuadratureSpec& spec,
                                 const std::vector<double>& seeds) {
    ComplexResult r;
    run_adaptive<std::complex<double>>(f, a, b, spec, seeds, r.value, r.error, r.panels);
    return r;
}

Extrapolated wynn_epsilon(const std::vector<double>& partial_sums) {
    return epsilon_impl<double>(partial_sums);
}

Result tail_oscillatory(const RealFn& f, double start, double omega,
                        const QuadratureSpec& spec, int max_half_periods) {
    Result r;
    run_tail_osc<double>(f, start, omega, spec, max_half_periods, r.value, r.error, r.panels);
    return r;
}

ComplexResult tail_oscillatory(const ComplexFn& f, double start, double omega,
                               const QuadratureSpec& spec, int max_half_periods) {
    ComplexResult r;
    run_tail_osc<std::complex<double>>(f, start, omega, spec, max_half_periods, r.value,
                                       r.error, r.panels);
    return r;
}

Result tail_algebraic(const RealFn& f, double start, const QuadratureSpec& spec) {
    Result r;
    run_tail_alg<double>(f, start, spec, r.value, r.error, r.panels);
    return r;
}

ComplexResult tail_algebraic(const ComplexFn& f, double start, const QuadratureSpec& spec) {
    ComplexResult r;
    run_tail_alg<std::complex<double>>(f, start, spec, r.value, r.error, r.panels);
    return r;
}

std::vector<double> phase_breakpoints(const std::function<double(double)>& phase,
                                      const std::function<double(double)>& dphase,
                                      double a, double b, int max_points) {
    (void)phase;
    std::vector<double> pts;
    double x = a;
    while (x < b && static_cast<int>(pts.size()) < max_points) {
        const double slope = std::abs(dphase(x));
        double dx = M_PI / (slope + 1e-12);
        dx = std::min(dx, b - x);
        dx = std::max(dx, (b - a) * 1e-9);
        x += dx;
        if (x < b) pts.push_back(x);
    }
    return pts;
}

std::vector<double> geometric_seeds(double a, double b, int levels) {
    std::vector<double> pts;
    double w = b - a;
    for (int k = 1; k <= levels; ++k) {
        w *= 0.5;
        if (a + w <= a) break;
        pts.push_back(a + w);
    }
    return pts;
}

}  // namespace fbmchaos::quad
