#pragma once

#include <vector>

#include "fbmchaos/chaos.hpp"
#include "fbmchaos/quadrature.hpp"
#include "fbmchaos/spectral.hpp"

namespace fbmchaos {

struct CoeffValue {
    double value = 0.0;
    double abs_err = 0.0;
};

// Expansion coefficient of the process value at time t against the n-th
// split basis element: the weighted inner product of the increment
// indicator transform with xi_hat_j. Computed as a folded real integral
// (hermitian symmetry makes the imaginary part vanish identically): head
// region panelled adaptively with phase-aware seeding, oscillatory tail
// summed by half-periods of the e^{i gamma t} phase and extrapolated,
// the residual smooth tail mapped through u = 1/gamma.
CoeffValue coeff_r(const SpectralModel& m, int j, double t,
                   const quad::QuadratureSpec& spec);

// Largest index whose basis element carries energy of the observed past,
// determined empirically: j is past-correlated when
//   max over probe times t in {-1/4,-1/2,-1,-2,-4} of |r_j(t)| / |t|^H
// exceeds 1e-3, future when below 1e-4, ambiguous in between (throws,
// demanding tighter quadrature). The scan verifies the classification is a
// half-line {j <= boundary} near the transition and fails loudly otherwise.
int past_boundary(const SpectralModel& m, const quad::QuadratureSpec& spec);

bool classify_past(const SpectralModel& m, int j, const quad::QuadratureSpec& spec);

struct CoefficientTable {
    double hurst = 0.5;
    double t = 0.0;
    int j_min = 0;
    int j_max = 0;
    int boundary = 0;  // past = { j <= boundary }
    std::vector<double> r;        // indexed by j - j_min
    std::vector<double> abs_err;  // quadrature error estimates

    double value(int j) const { return r[static_cast<std::size_t>(j - j_min)]; }
    double error(int j) const { return abs_err[static_cast<std::size_t>(j - j_min)]; }
    bool is_past(int j) const { return j <= boundary; }
    double total_energy() const;   // sum of r_j^2 over the window
    double past_energy() const;
    double future_energy() const;
};

// All coefficients on [j_min, j_max] plus the empirical past classification.
// Rows are independent; evaluation may be spread over threads, results are
// deterministic and order-independent.
CoefficientTable coeff_table(const SpectralModel& m, double t, int j_min, int j_max,
                             const quad::QuadratureSpec& spec);

// Sum of squared coefficients over the future class: the prediction error
// of the window-truncated expansion.
double error_variance_truncated(const CoefficientTable& tbl);

// Closed-form mean-square prediction error for the observed-past problem:
//   sin(pi(H-1/2)) Gamma(3/2-H)^2 / (pi (H-1/2) Gamma(2-2H)) * t^{2H},
// with the removable H = 1/2 singularity evaluated by its limit (= t).
double exact_error(const SpectralModel& m, double t);

struct PredictionResult {
    ChaosExpansion predictor;          // first-order, past-class indices
    ChaosExpansion conditioned_square; // conditional expansion of the square
    double predictor_variance = 0.0;
    double residual_variance = 0.0;    // truncated error (future energy)
    double exact_error = 0.0;
    CoefficientTable table;
};

PredictionResult conditional_expansions(const SpectralModel& m, double t, int j_min,
                                        int j_max, const quad::QuadratureSpec& spec);

}  // namespace fbmchaos
