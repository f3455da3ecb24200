#include "fbmchaos/finite_horizon.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fbmchaos {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_order(double nu) {
    if (!(nu > -1.0 && nu < 2.0))
        throw std::domain_error("bessel_j: order must be in (-1, 2)");
}

double bessel_series(double nu, double x) {
    // sum_k (-1)^k (x/2)^(2k+nu) / (k! Gamma(k+nu+1))
    const double x2 = 0.5 * x;
    double term = std::pow(x2, nu) / euler_gamma(nu + 1.0);
    double sum = term;
    const double q = x2 * x2;
    for (int k = 1; k <= 60; ++k) {
        term *= -q / (k * (k + nu));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
    }
    return sum;
}

double bessel_hankel(double nu, double x) {
    const double mu = 4.0 * nu * nu;
    const double omega = x - (0.5 * nu + 0.25) * kPi;
    double t = 1.0, p = 1.0, q = 0.0;
    double prev = 1.0;
    for (int k = 1; k <= 30; ++k) {
        t *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
        if (std::abs(t) > prev) break;  // asymptotic series started diverging
        prev = std::abs(t);
        switch (k % 4) {
            case 1: q += t; break;
            case 2: p -= t; break;
            case 3: q -= t; break;
            case 0: p += t; break;
        }
        if (std::abs(t) < 1e-17) break;
    }
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(omega) - q * std::sin(omega));
}

}  // namespace

double bessel_j(double nu, double x) {
    check_order(nu);
    if (x < 0.0) throw std::domain_error("bessel_j: x must be >= 0");
    if (x == 0.0) {
        if (nu > 0.0) return 0.0;
        if (nu == 0.0) return 1.0;
        return std::numeric_limits<double>::infinity();
    }
    if (x <= 12.0) return bessel_series(nu, x);
    return bessel_hankel(nu, x);
}

namespace {

double bessel_j_derivative(double nu, double x) {
    // J'_nu = J_{nu-1} - (nu/x) J_nu; fall back to central differences when
    // the shifted order leaves the supported range.
    if (nu - 1.0 > -1.0) return bessel_j(nu - 1.0, x) - nu / x * bessel_j(nu, x);
    const double h = 1e-6 * std::max(1.0, x);
    return (bessel_j(nu, x + h) - bessel_j(nu, x - h)) / (2.0 * h);
}

}  // namespace

std::vector<double> bessel_zeros(double nu, int count) {
    check_order(nu);
    if (count < 1 || count > 200)
        throw std::domain_error("bessel_zeros: count must be in [1, 200]");
    std::vector<double> zeros;
    zeros.reserve(count);
    const double mu = 4.0 * nu * nu;
    for (int k = 1; k <= count; ++k) {
        const double beta = (k + 0.5 * nu - 0.25) * kPi;
        double x = beta - (mu - 1.0) / (8.0 * beta) -
                   4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * std::pow(8.0 * beta, 3));
        // bracket around the estimate, then safeguarded Newton
        double lo = std::max(x - 1.2, 1e-6), hi = x + 1.2;
        if (!zeros.empty()) lo = std::max(lo, zeros.back() + 1e-8);
        double flo = bessel_j(nu, lo), fhi = bessel_j(nu, hi);
        for (int widen = 0; flo * fhi > 0.0 && widen < 30; ++widen) {
            lo = std::max(lo - 0.3, zeros.empty() ? 1e-6 : zeros.back() + 1e-8);
            hi += 0.3;
            flo = bessel_j(nu, lo);
            fhi = bessel_j(nu, hi);
        }
        if (flo * fhi > 0.0)
            throw NumericalError("bessel_zeros: bracketing failed near k=" +
                                 std::to_string(k));
        for (int it = 0; it < 80; ++it) {
            const double f = bessel_j(nu, x);
            if (f == 0.0) break;
            if (f * flo < 0.0)
                hi = x;
            else {
                lo = x;
                flo = f;
            }
            const double step = f / bessel_j_derivative(nu, x);
            double next = x - step;
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (std::abs(next - x) < 1e-13 * std::max(1.0, x)) {
                x = next;
                break;
            }
            x = next;
        }
        zeros.push_back(x);
    }
    return zeros;
}

namespace {

struct EntirePair {
    double a, b;
};

// series for A and B in powers of (Tg/2)^2, valid for small arguments
EntirePair entire_series(double h, double u_half) {
    // u_half = T g / 2 (signed)
    const double q = u_half * u_half;
    double ta = 1.0;                 // Gamma(1-H) * 1/(0! Gamma(1-H))
    double tb = u_half / (1.0 - h);  // Gamma(1-H) * u/2 / Gamma(2-H)
    double a = ta, b = tb;
    for (int k = 1; k <= 40; ++k) {
        ta *= -q / (k * (k - h));
        tb *= -q / (k * (k + 1.0 - h));
        a += ta;
        b += tb;
        if (std::abs(ta) + std::abs(tb) < 1e-17 * (std::abs(a) + std::abs(b)) + 1e-300)
            break;
    }
    return {a, b};
}

}  // namespace

double horizon_entire_a(const SpectralModel& m, double T, double g) {
    const double h = m.hurst();
    const double u = T * std::abs(g);
    if (u < 0.5) return entire_series(h, 0.5 * T * g).a;
    return euler_gamma(1.0 - h) * std::pow(0.5 * u, h) * bessel_j(-h, u);
}

double horizon_entire_b(const SpectralModel& m, double T, double g) {
    const double h = m.hurst();
    const double u = T * std::abs(g);
    if (u < 0.5) return entire_series(h, 0.5 * T * g).b;
    const double sgn = g >= 0.0 ? 1.0 : -1.0;
    return sgn * euler_gamma(1.0 - h) * std::pow(0.5 * u, h) * bessel_j(1.0 - h, u);
}

std::complex<double> kernel_S(const SpectralModel& m, double T, double eta, double g) {
    if (!(T > 0.0)) throw std::domain_error("kernel_S: T must be positive");
    const double h = m.hurst();
    if (std::abs(g - eta) < 1e-8 * std::max(1.0, std::abs(g))) {
        const double mid = 0.5 * (g + eta);
        const double u = T * std::abs(mid);
        double diag;
        if (u < 0.5) {
            // Wronskian of the series forms: (A B' - A' B) / T
            const double uh = 0.5 * T * mid;
            const double q = uh * uh;
            double ta = 1.0, tb = uh / (1.0 - h);
            double a = ta, b = tb;
            double tap = 0.0, tbp = 0.5 * T / (1.0 - h);
            double ap = 0.0, bp = tbp;
            for (int k = 1; k <= 40; ++k) {
                ta *= -q / (k * (k - h));
                tb *= -q / (k * (k + 1.0 - h));
                a += ta;
                b += tb;
                tap = ta * (2.0 * k) / (mid == 0.0 ? 1.0 : mid);
                tbp = tb * (2.0 * k + 1.0) / (mid == 0.0 ? 1.0 : mid);
                if (mid != 0.0) {
                    ap += tap;
                    bp += tbp;
                }
                if (std::abs(ta) + std::abs(tb) < 1e-17 * (std::abs(a) + std::abs(b)) + 1e-300)
                    break;
            }
            if (mid == 0.0) {
                ap = 0.0;
                bp = 0.5 * T / (1.0 - h);
            }
            diag = (2.0 - 2.0 * h) * (a * bp - ap * b) / T;
        } else {
            const double jm = bessel_j(-h, u);
            const double jp = bessel_j(1.0 - h, u);
            const double w = euler_gamma(1.0 - h) * std::pow(0.5 * u, h);
            diag = (2.0 - 2.0 * h) * w * w *
                   (jm * jm + jp * jp + (2.0 * h - 1.0) / u * jm * jp);
        }
        return {diag, 0.0};
    }
    const double num = horizon_entire_a(m, T, eta) * horizon_entire_b(m, T, g) -
                       horizon_entire_b(m, T, eta) * horizon_entire_a(m, T, g);
    const double phase = T * (g - eta);
    return std::complex<double>{std::cos(phase), std::sin(phase)} * num / (T * (g - eta));
}

std::complex<double> horizon_pair(const SpectralModel& m, double T, double node_a,
                                  double node_b, const quad::QuadratureSpec& spec) {
    spec.validate();
    auto section = [&](double node, double g) { return kernel_S(m, T, node, g); };
    auto integrand = [&](double g) {
        return section(node_a, g) * std::conj(section(node_b, g)) * m.density(g);
    };
    const double head_end = std::max(spec.gamma_max, 4.0 * std::max(node_a, node_b) + 16.0);
    std::vector<double> seeds = quad::geometric_seeds(0.0, head_end);
    const double step = kPi / (2.0 * T);
    for (double x = step; x < head_end; x += step) seeds.push_back(x);

    quad::ComplexResult total;
    for (int side : {+1, -1}) {
        auto f = [&](double g) { return integrand(side * g); };
        auto head = quad::integrate_adaptive(quad::ComplexFn(f), 0.0, head_end, spec, seeds);
        auto tail = quad::tail_oscillatory(quad::ComplexFn(f), head_end, 2.0 * T, spec, 500);
        total.value += head.value + tail.value;
        total.error += head.error + tail.error;
        total.panels += head.panels + tail.panels;
    }
    return total.value;
}

HorizonBasis make_horizon_basis(const SpectralModel& m, double T, int count,
                                const quad::QuadratureSpec& spec) {
    if (count < 1 || count > 20)
        throw std::domain_error("make_horizon_basis: count must be in [1, 20]");
    HorizonBasis basis;
    basis.hurst = m.hurst();
    basis.T = T;
    basis.zeros = bessel_zeros(1.0 - m.hurst(), count);
    for (double z : basis.zeros) basis.nodes.push_back(z / T);
    for (double node : basis.nodes) {
        const auto g = horizon_pair(m, T, node, node, spec);
        basis.norms.push_back(std::sqrt(std::abs(g.real())));
    }
    return basis;
}

std::vector<std::vector<double>> fh_basis_gram(const SpectralModel& m, double T, int count,
                                               const quad::QuadratureSpec& spec) {
    HorizonBasis basis = make_horizon_basis(m, T, count, spec);
    std::vector<std::vector<double>> gram(count, std::vector<double>(count, 0.0));
    for (int a = 0; a < count; ++a) {
        gram[a][a] = 1.0;  // self-normalized
        for (int b = a + 1; b < count; ++b) {
            const auto v = horizon_pair(m, T, basis.nodes[a], basis.nodes[b], spec);
            const double normalized = std::abs(v) / (basis.norms[a] * basis.norms[b]);
            gram[a][b] = gram[b][a] = normalized;
        }
    }
    return gram;
}

}  // namespace fbmchaos
