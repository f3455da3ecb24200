#pragma once

#include <complex>
#include <vector>

#include "fbmchaos/quadrature.hpp"
#include "fbmchaos/spectral.hpp"

namespace fbmchaos {

// Bessel function of the first kind, order nu in (-1, 2), x >= 0.
// Power series for small x, the Bessel integral representation in the
// middle range, Hankel's asymptotic expansion for large x.
double bessel_j(double nu, double x);

// First `count` positive zeros (count <= 200), bracketed from the McMahon
// expansion and polished by safeguarded Newton to ~1e-12.
std::vector<double> bessel_zeros(double nu, int count);

// Entire even/odd structure functions of the bounded-horizon kernel:
//   A(g) = Gamma(1-H) (T|g|/2)^H J_{-H}(T|g|)        (even)
//   B(g) = Gamma(1-H) (Tg/2)^H  J_{1-H}(T|g|) sgn g  (odd)
// The power prefactor cancels the fractional branch so both extend to
// entire functions of g; series evaluation below T|g| = 0.5.
double horizon_entire_a(const SpectralModel& m, double T, double g);
double horizon_entire_b(const SpectralModel& m, double T, double g);

// Reproducing-style kernel of the bounded-horizon observation span,
// normalized so the value at (0,0) is 1:
//   K(eta, g) = (2-2H) e^{iT(g-eta)} [A(eta)B(g) - B(eta)A(g)] / (T(g-eta)),
// with the confluent (Wronskian) form on the diagonal, switched when
// |g - eta| < 1e-8 max(1, |g|).
std::complex<double> kernel_S(const SpectralModel& m, double T, double eta, double g);

struct HorizonBasis {
    double hurst = 0.5;
    double T = 1.0;
    std::vector<double> zeros;     // positive zeros of J_{1-H}
    std::vector<double> nodes;     // zeros / T (kernel sampling points)
    std::vector<double> norms;     // ||K(node, .)|| under the spectral measure
};

HorizonBasis make_horizon_basis(const SpectralModel& m, double T, int count,
                                const quad::QuadratureSpec& spec);

// Gram matrix of the self-normalized kernel sections under the spectral
// measure. Diagonal is 1 by construction; off-diagonal entries are reported
// as magnitudes.
std::vector<std::vector<double>> fh_basis_gram(const SpectralModel& m, double T, int count,
                                               const quad::QuadratureSpec& spec);

// Weighted pairing of two kernel sections (unnormalized), integrated over
// the whole line.
std::complex<double> horizon_pair(const SpectralModel& m, double T, double node_a,
                                  double node_b, const quad::QuadratureSpec& spec);

}  // namespace fbmchaos
