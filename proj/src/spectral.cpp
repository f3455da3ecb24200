#include "fbmchaos/spectral.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fbmchaos {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Lanczos g = 7 coefficients (Godfrey).
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_gamma(double x) {
    if (x < 0.5) {
        const double s = std::sin(kPi * x);
        return kPi / (s * lanczos_gamma(1.0 - x));
    }
    x -= 1.0;
    double a = kLanczos[0];
    for (int k = 1; k < 9; ++k) a += kLanczos[k] / (x + k);
    const double t = x + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

double euler_gamma(double x) {
    if (x <= 0.0 && x == std::floor(x))
        throw std::domain_error("euler_gamma: pole at nonpositive integer " +
                                std::to_string(x));
    return lanczos_gamma(x);
}

SpectralModel SpectralModel::fbm(double hurst) {
    if (!(hurst > 0.0 && hurst < 1.0))
        throw std::domain_error("SpectralModel: hurst must be in (0,1)");
    SpectralModel m;
    m.hurst_ = hurst;
    m.c_h_ = euler_gamma(1.0 + 2.0 * hurst) * std::sin(kPi * hurst) / (2.0 * kPi);
    return m;
}

double SpectralModel::density(double gamma) const {
    if (gamma == 0.0) {
        if (hurst_ > 0.5) return std::numeric_limits<double>::infinity();
        if (hurst_ < 0.5) return 0.0;
        return c_h_;
    }
    return c_h_ * std::pow(std::abs(gamma), 1.0 - 2.0 * hurst_);
}

double SpectralModel::covariance(double t, double s) const {
    const double two_h = 2.0 * hurst_;
    return 0.5 * (std::pow(std::abs(t), two_h) + std::pow(std::abs(s), two_h) -
                  std::pow(std::abs(t - s), two_h));
}

std::complex<double> SpectralModel::outer(double gamma) const {
    if (gamma == 0.0) throw std::domain_error("outer: gamma = 0 is singular");
    const double theta = kPi * (2.0 * hurst_ - 1.0) / 4.0 * sign(gamma);
    const std::complex<double> phase{std::cos(theta), std::sin(theta)};
    const double mag = std::sqrt(c_h_) * std::pow(std::abs(gamma), 0.5 - hurst_) /
                       (1.0 + gamma * gamma);
    return phase * std::complex<double>{-gamma, 1.0} * mag;
}

std::complex<double> laguerre_freq(int n, double gamma) {
    // polar form: (1+ig)/(1-ig) = e^{i phi}, 1/(1-ig) = e^{i phi/2}/sqrt(1+g^2)
    const double phi = 2.0 * std::atan(gamma);
    const double arg = (n + 0.5) * phi;
    const double mag = 1.0 / std::sqrt(kPi * (1.0 + gamma * gamma));
    return {mag * std::cos(arg), mag * std::sin(arg)};
}

std::complex<double> xi_hat(const SpectralModel& m, int n, double gamma) {
    if (gamma == 0.0) throw std::domain_error("xi_hat: gamma = 0 is singular");
    const std::complex<double> denom =
        std::complex<double>{gamma, 1.0} * std::conj(m.outer(gamma));
    return laguerre_freq(n, gamma) / denom;
}

std::complex<double> FrequencyFunction::operator()(double gamma) const {
    std::complex<double> v{0.0, 0.0};
    for (const auto& c : components) v += c.eval(gamma);
    return v;
}

FrequencyFunction FrequencyFunction::z_hat(double t) {
    FrequencyFunction f;
    f.symmetry = Symmetry::hermitian;
    f.sing_exponent_zero = 0.0;  // the two components cancel at 0
    f.sing_exponent_inf = -1.0;
    f.components.push_back({t, [t](double g) -> std::complex<double> {
                                const std::complex<double> ig{0.0, g};
                                return std::exp(std::complex<double>{0.0, g * t}) / ig;
                            }});
    f.components.push_back({0.0, [](double g) -> std::complex<double> {
                                return std::complex<double>{0.0, 1.0 / g};  // -1/(ig)
                            }});
    return f;
}

FrequencyFunction FrequencyFunction::xi_hat_fn(const SpectralModel& m, int n) {
    FrequencyFunction f;
    f.symmetry = Symmetry::hermitian;
    f.sing_exponent_zero = m.hurst() - 0.5;
    f.sing_exponent_inf = m.hurst() - 1.5;
    f.components.push_back(
        {0.0, [m, n](double g) { return xi_hat(m, n, g); }});
    return f;
}

FrequencyFunction FrequencyFunction::laguerre(int n) {
    FrequencyFunction f;
    f.symmetry = Symmetry::hermitian;
    f.sing_exponent_zero = 0.0;
    f.sing_exponent_inf = -1.0;
    f.components.push_back({0.0, [n](double g) { return laguerre_freq(n, g); }});
    return f;
}

namespace {

// Folded tail integrand for one component pair: 2 Re[ca conj(cb) density].
quad::Result pair_tail_hermitian(const FrequencyComponent& ca, const FrequencyComponent& cb,
                                 const SpectralModel& m, const quad::QuadratureSpec& spec,
                                 double start, double decay_exponent) {
    const double omega = ca.phase_slope - cb.phase_slope;
    auto folded = [&](double g) {
        return 2.0 * std::real(ca.eval(g) * std::conj(cb.eval(g)) * m.density(g));
    };
    if (std::abs(omega) > 1e-8) return quad::tail_oscillatory(folded, start, omega, spec);
    if (decay_exponent >= -1.0)
        throw NumericalError("inner_product_delta: non-oscillatory tail does not decay");
    return quad::tail_algebraic(folded, start, spec);
}

quad::ComplexResult pair_tail_general(const FrequencyComponent& ca,
                                      const FrequencyComponent& cb, const SpectralModel& m,
                                      const quad::QuadratureSpec& spec, double start,
                                      double decay_exponent, int side) {
    // side = +1 integrates (start, inf), side = -1 integrates (-inf, -start)
    const double omega = side * (ca.phase_slope - cb.phase_slope);
    auto fn = [&, side](double g) {
        const double x = side * g;
        return ca.eval(x) * std::conj(cb.eval(x)) * m.density(x);
    };
    if (std::abs(omega) > 1e-8) return quad::tail_oscillatory(fn, start, omega, spec);
    if (decay_exponent >= -1.0)
        throw NumericalError("inner_product_delta: non-oscillatory tail does not decay");
    return quad::tail_algebraic(fn, start, spec);
}

}  // namespace

quad::ComplexResult inner_product_delta(const FrequencyFunction& f, const FrequencyFunction& g,
                                        const SpectralModel& m,
                                        const quad::QuadratureSpec& spec) {
    spec.validate();
    const double h = m.hurst();
    const double zero_exp = f.sing_exponent_zero + g.sing_exponent_zero + (1.0 - 2.0 * h);
    if (zero_exp <= -1.0)
        throw std::domain_error("inner_product_delta: integrand not integrable at 0 "
                                "(declared exponent " + std::to_string(zero_exp) + ")");
    const double inf_exp = f.sing_exponent_inf + g.sing_exponent_inf + (1.0 - 2.0 * h);

    const double head_end = spec.gamma_max;
    double max_slope = 0.0;
    for (const auto& a : f.components)
        for (const auto& b : g.components)
            max_slope = std::max(max_slope, std::abs(a.phase_slope - b.phase_slope));

    std::vector<double> seeds = quad::geometric_seeds(0.0, head_end);
    if (max_slope > 0.0) {
        const double step = kPi / max_slope;
        for (double x = step; x < head_end; x += step) seeds.push_back(x);
    }

    const bool fold = (f.symmetry == Symmetry::hermitian && g.symmetry == Symmetry::hermitian);

    quad::ComplexResult total;
    if (fold) {
        auto head = [&](double x) {
            return 2.0 * std::real(f(x) * std::conj(g(x)) * m.density(x));
        };
        auto hr = quad::integrate_adaptive(quad::RealFn(head), 0.0, head_end, spec, seeds);
        total.value = hr.value;
        total.error = hr.error;
        total.panels = hr.panels;
        for (const auto& a : f.components)
            for (const auto& b : g.components) {
                auto tr = pair_tail_hermitian(a, b, m, spec, head_end, inf_exp);
                total.value += tr.value;
                total.error += tr.error;
                total.panels += tr.panels;
            }
        return total;
    }

    // general two-sided path
    auto head_pos = [&](double x) { return f(x) * std::conj(g(x)) * m.density(x); };
    auto head_neg = [&](double x) { return f(-x) * std::conj(g(-x)) * m.density(-x); };
    auto hp = quad::integrate_adaptive(quad::ComplexFn(head_pos), 0.0, head_end, spec, seeds);
    auto hn = quad::integrate_adaptive(quad::ComplexFn(head_neg), 0.0, head_end, spec, seeds);
    total.value = hp.value + hn.value;
    total.error = hp.error + hn.error;
    total.panels = hp.panels + hn.panels;
    for (const auto& a : f.components)
        for (const auto& b : g.components)
            for (int side : {+1, -1}) {
                auto tr = pair_tail_general(a, b, m, spec, head_end, inf_exp, side);
                total.value += tr.value;
                total.error += tr.error;
                total.panels += tr.panels;
            }
    return total;
}

}  // namespace fbmchaos
