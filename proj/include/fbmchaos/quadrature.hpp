#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "fbmchaos/errors.hpp"

namespace fbmchaos::quad {

// Tolerances and budget for the integration routines. gamma_max is the end
// of the directly panelled frequency range; everything beyond is handled by
// tail summation/extrapolation.
struct QuadratureSpec {
    double abs_tol = 1e-8;
    double rel_tol = 1e-6;
    double gamma_max = 64.0;
    int max_panels = 40000;

    void validate() const;
};

struct Result {
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
};

struct ComplexResult {
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;
    int panels = 0;
};

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<std::complex<double>(double)>;

// 15-point Gauss-Kronrod rule on [a,b]; error from the embedded 7-point rule.
Result gk15(const RealFn& f, double a, double b);
ComplexResult gk15(const ComplexFn& f, double a, double b);

// Adaptive bisection driven by per-panel error, worst panel first.
// `seeds` are optional interior breakpoints for the initial panelling
// (oscillation half-periods, singularity guards). Throws NumericalError
// when the panel budget is exhausted before reaching tolerance.
Result integrate_adaptive(const RealFn& f, double a, double b,
                          const QuadratureSpec& spec,
                          const std::vector<double>& seeds = {});
ComplexResult integrate_adaptive(const ComplexFn& f, double a, double b,
                                 const QuadratureSpec& spec,
                                 const std::vector<double>& seeds = {});

// Wynn epsilon table. Returns the accelerated limit of the sequence of
// partial sums and an error estimate from the last diagonal step.
struct Extrapolated {
    double value = 0.0;
    double error = 0.0;
};
Extrapolated wynn_epsilon(const std::vector<double>& partial_sums);

// Tail of an oscillatory integral: sums panel integrals of f over
// consecutive intervals of length pi/|omega| starting at `start` and
// accelerates the partial sums with the epsilon algorithm. Throws
// NumericalError if extrapolation fails to settle.
Result tail_oscillatory(const RealFn& f, double start, double omega,
                        const QuadratureSpec& spec, int max_half_periods = 320);
ComplexResult tail_oscillatory(const ComplexFn& f, double start, double omega,
                               const QuadratureSpec& spec, int max_half_periods = 320);

// Tail of a smooth monotone-decaying integrand: substitutes u = 1/x and
// integrates adaptively on (0, 1/start]. The integrand must not oscillate
// beyond `start`.
Result tail_algebraic(const RealFn& f, double start, const QuadratureSpec& spec);
ComplexResult tail_algebraic(const ComplexFn& f, double start, const QuadratureSpec& spec);

// Breakpoints x in (a,b) at which `phase` passes multiples of pi, assuming
// phase is monotone on [a,b]. Used to seed panels for oscillatory heads.
std::vector<double> phase_breakpoints(const std::function<double(double)>& phase,
                                      const std::function<double(double)>& dphase,
                                      double a, double b, int max_points = 20000);

// Geometric subdivision points toward `a` (for integrable endpoint
// singularities): a + (b-a)*2^-k, k = 1..levels.
std::vector<double> geometric_seeds(double a, double b, int levels = 40);

}  // namespace fbmchaos::quad
