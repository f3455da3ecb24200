#pragma once

#include <complex>
#include <vector>

#include "fbmchaos/quadrature.hpp"

namespace fbmchaos {

// Euler Gamma via a Lanczos rational approximation (g = 7, 9 terms),
// reflection formula below 1/2. Poles at nonpositive integers throw.
double euler_gamma(double x);

// Spectral model of fractional Brownian motion with Hurst parameter H:
// density c_h |gamma|^(1-2H) with c_h = Gamma(1+2H) sin(pi H) / (2 pi).
class SpectralModel {
public:
    static SpectralModel fbm(double hurst);

    double hurst() const { return hurst_; }
    double c_h() const { return c_h_; }

    // Density at gamma; at gamma = 0 returns +inf for H > 1/2, 0 for
    // H < 1/2 and c_h for H = 1/2.
    double density(double gamma) const;

    // Closed-form covariance (|t|^2H + |s|^2H - |t-s|^2H) / 2.
    double covariance(double t, double s) const;

    // Outer factor h of density/(1+gamma^2) normalized so that the inverse
    // transform of (gamma - i) h is a real distribution:
    //   h(gamma) = sqrt(c_h) exp(i pi (2H-1)/4 sign gamma)
    //              * (i - gamma)/(1+gamma^2) * |gamma|^(1/2 - H).
    // gamma = 0 is a singular point and throws.
    std::complex<double> outer(double gamma) const;

private:
    double hurst_ = 0.5;
    double c_h_ = 0.0;
};

// Orthonormal basis of L2(dgamma) built from Moebius powers:
// e_n(gamma) = (1/sqrt(pi)) (1/(1-i gamma)) ((1+i gamma)/(1-i gamma))^n.
// Evaluated in polar form, exact modulus 1/sqrt(pi (1+gamma^2)) for any n.
std::complex<double> laguerre_freq(int n, double gamma);

// Frequency-domain image of the n-th element of the orthonormal basis that
// splits past from future: xi_hat_n = e_n / ((gamma + i) conj(h)).
// Singular at gamma = 0; modulus ~ |gamma|^(H-1/2) (1+gamma^2)^(-1/2).
std::complex<double> xi_hat(const SpectralModel& m, int n, double gamma);

// A function of frequency given as a sum of components amp_k(gamma), each
// carrying the slope of its dominant linear phase (amp ~ smooth * e^{i w g}).
// The slopes drive the choice of tail treatment in the weighted inner
// product; the declared endpoint exponents gate integrability.
struct FrequencyComponent {
    double phase_slope = 0.0;
    quad::ComplexFn eval;
};

enum class Symmetry { hermitian, even, none };

struct FrequencyFunction {
    std::vector<FrequencyComponent> components;
    Symmetry symmetry = Symmetry::hermitian;
    double sing_exponent_zero = 0.0;  // |f| ~ gamma^e as gamma -> 0
    double sing_exponent_inf = 0.0;   // component amplitudes ~ gamma^e at inf

    std::complex<double> operator()(double gamma) const;

    // Image of the increment indicator 1_t under the Fourier transform:
    // (e^{i gamma t} - 1)/(i gamma). Components: e^{igt}/(ig) and -1/(ig).
    static FrequencyFunction z_hat(double t);
    static FrequencyFunction xi_hat_fn(const SpectralModel& m, int n);
    static FrequencyFunction laguerre(int n);
};

// Inner product in the spectral Hilbert space:
//   (f, g) = integral f(gamma) conj(g(gamma)) density(gamma) dgamma over R.
// Head region (0, gamma_max] panelled adaptively; each component-pair tail
// summed by half-periods of its combined phase slope and extrapolated, or
// mapped through u = 1/gamma when it does not oscillate. Throws on
// non-integrable declared exponents or failed tail extrapolation.
quad::ComplexResult inner_product_delta(const FrequencyFunction& f,
                                        const FrequencyFunction& g,
                                        const SpectralModel& m,
                                        const quad::QuadratureSpec& spec);

}  // namespace fbmchaos
