#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fbmchaos/prediction.hpp"
#include "fbmchaos/simulate.hpp"

namespace fbmchaos::cli {

struct RunConfig {
    double hurst = 0.7;
    double t = 1.0;
    double horizon = 1.0;  // finite-horizon half-width T
    int j_min = -512;
    int j_max = 512;
    double grid_l = 8.0;
    int grid_n = 1025;
    std::size_t n_paths = 10000;
    std::uint64_t seed = 12345;
    double tol_abs = 1e-8;
    double tol_rel = 1e-6;
    int count = 5;  // finite-horizon basis size
    std::string out = "";       // output stem; empty = no files
    std::string format = "both";  // csv | svg | both
    bool quick = false;
    bool inject_phase_flip = false;  // verification mutation hook

    void validate() const;  // throws std::invalid_argument on bad usage
    quad::QuadratureSpec quad_spec() const;
};

// Grid helpers: symmetric grids get an odd point count so 0 is a node;
// prediction grids place both 0 and t on the grid exactly.
Grid symmetric_grid(double l, int n_points);
Grid prediction_grid(double l, double t, int n_points);

struct CoeffsData {
    CoefficientTable table;
    std::string csv;  // j,r,abs_err,class
    double energy = 0.0;
    double variance = 0.0;  // |t|^{2H}
};
CoeffsData run_coeffs(const RunConfig& cfg);

struct ErrorCurveData {
    std::vector<double> residual;  // residual after k retained past coefficients
    double exact = 0.0;
    std::string csv;  // k,residual_after_k_coeffs,exact
};
ErrorCurveData run_error_curve(const RunConfig& cfg);

struct RenderPathData {
    std::vector<double> t;
    std::vector<double> past, future, total;
    std::string csv;  // t,past_component,future_component,total
};
RenderPathData run_render_path(const RunConfig& cfg);

struct SimulateData {
    SamplePath path;
    std::string csv;  // t,x
};
SimulateData run_simulate(const RunConfig& cfg);

struct GramData {
    GramEstimate gram;
    std::string csv;  // n,m,estimate,se,exact
};
GramData run_gram(const RunConfig& cfg);

struct FiniteHorizonData {
    HorizonBasis basis;
    std::vector<std::vector<double>> gram;
    std::string zeros_csv;  // k,zero
    std::string gram_csv;   // n,m,value
};
FiniteHorizonData run_finite_horizon(const RunConfig& cfg);

// Command wrappers: compute, write files per cfg.out/cfg.format, print a
// short summary. Return process exit codes (0 ok; throwing callees are
// mapped by the frontend: 2 usage, 3 numerical).
int cmd_coeffs(const RunConfig& cfg);
int cmd_error_curve(const RunConfig& cfg);
int cmd_render_path(const RunConfig& cfg);
int cmd_simulate(const RunConfig& cfg);
int cmd_gram(const RunConfig& cfg);
int cmd_finite_horizon(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);  // 0 all pass, 1 any failure

}  // namespace fbmchaos::cli
