#pragma once

#include <cstdint>
#include <vector>

#include "fbmchaos/prediction.hpp"
#include "fbmchaos/quadrature.hpp"
#include "fbmchaos/spectral.hpp"

namespace fbmchaos {

// Uniform time grid containing 0. At most 4097 points (the exact sampler
// factors a dense covariance matrix).
struct Grid {
    std::vector<double> t;
    double dt = 0.0;
    int zero_index = 0;

    static Grid uniform(double t_min, double t_max, int n_points);
    int size() const { return static_cast<int>(t.size()); }
};

struct SamplePath {
    double hurst = 0.5;
    Grid grid;
    std::vector<double> x;  // x[zero_index] == 0 exactly
};

// Counter-based generator: value k of a stream is a splitmix64 finalizer
// applied to seed-derived state plus k times the 64-bit golden ratio.
// Normals come from the Box-Muller transform on two consecutive uniforms.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream);
    double uniform();  // in (0, 1]
    double normal();

private:
    std::uint64_t base_;
    std::uint64_t counter_ = 0;
};

// Exact sampler: factors the fBm covariance of the off-zero grid points once
// (Cholesky, with a small diagonal jitter retry if the matrix is numerically
// indefinite) and then draws paths as L z with per-path seeded streams.
class FbmSampler {
public:
    FbmSampler(const SpectralModel& m, Grid grid);
    SamplePath sample(std::uint64_t seed, std::uint64_t path_index = 0) const;
    const Grid& grid() const { return grid_; }

private:
    SpectralModel model_;
    Grid grid_;
    std::vector<double> chol_;  // packed lower triangle, row-major
    int n_ = 0;                 // grid points excluding the pinned zero
};

SamplePath fbm_sample(const SpectralModel& m, const Grid& grid, std::uint64_t seed);

// Time-domain basis element sampled on a grid, from the inverse transform
//   xi_n(t) = (1/pi) Re integral_0^inf xi_hat_n(g) e^{-igt} dg.
// The oscillatory tail is extrapolated; at t = 0 (where the inverse
// transform has a singular point for H >= 1/2) the value is the recorded
// band-limited regularization at gamma <= pi/dt.
struct TimeKernel {
    int n = 0;
    double hurst = 0.5;
    Grid grid;
    std::vector<double> values;
    double value_error_bound = 0.0;   // max per-point quadrature error
    double freq_l2_norm_sq = 0.0;     // closed form of |xi_hat|^2 d gamma
    double tail_energy_bound = 0.0;   // relative, from the value error bounds
};

TimeKernel xi_time(const SpectralModel& m, int n, const Grid& grid,
                   const quad::QuadratureSpec& spec);

// Left-point Riemann-Stieltjes sum over the grid cells [t_k, t_{k+1}):
// sum_k kernel(t_k) (x_{k+1} - x_k). Grids must match.
double pathwise_integral(const SamplePath& p, const TimeKernel& k);

struct GramEstimate {
    int n_lo = 0, n_hi = 0;
    std::size_t n_paths = 0;
    std::vector<std::vector<double>> mean;   // empirical E[I_n I_m]
    std::vector<std::vector<double>> se;     // standard errors
    std::vector<std::vector<double>> exact;  // Gram of the discretized kernels
};

// Gram of the discretized kernels under the exact process covariance: the
// covariance of the left-point sums, computed without sampling. This is the
// Monte Carlo estimator's true target, including truncation and
// discretization bias.
std::vector<std::vector<double>> exact_discrete_gram(const SpectralModel& m,
                                                     const std::vector<TimeKernel>& kernels);

// Monte Carlo check that the pathwise integrals of the basis kernels are
// orthonormal. `exact` carries exact_discrete_gram of the same kernels.
GramEstimate mc_gram(const SpectralModel& m, int n_lo, int n_hi, const Grid& grid,
                     std::size_t n_paths, std::uint64_t seed,
                     const quad::QuadratureSpec& spec);

struct PredictionReport {
    std::size_t n_paths = 0;
    double ms_residual = 0.0;
    double ms_residual_se = 0.0;
    double exact_error = 0.0;
    double ratio = 0.0;           // ms_residual / exact_error
    double predictor_energy = 0.0;
    double max_past_corr_z = 0.0; // max |corr(residual, past sample)| in SE units
    int n_past_coeffs = 0;
};

// Simulates paths on a grid covering [-L, t], builds the chaos predictor
// from the past-class coefficients using only samples at times < 0, and
// compares the empirical mean-square residual at time t with the
// closed-form prediction error.
PredictionReport mc_prediction_experiment(const SpectralModel& m, double t, int j_min,
                                          int j_max, const Grid& grid,
                                          std::size_t n_paths, std::uint64_t seed,
                                          const quad::QuadratureSpec& spec);

}  // namespace fbmchaos
