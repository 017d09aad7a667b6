#pragma once

#include <string>

#include "carl/matrix.hpp"
#include "carl/model.hpp"

namespace carl {

struct Trajectory {
    std::vector<double> times;
    Matrix states;     // K x N
    Matrix algebraics; // K x M (0 columns for lifted-linear runs)
    std::string model_name;
    std::string method; // "nonlinear" or "linear-orderL"
    int order = 0;
};

struct CompareReport {
    std::vector<double> rms;     // per state
    std::vector<double> max_abs; // per state
};

/// Matrix exponential by scaling and squaring with a diagonal Pade approximant.
Matrix expm(const Matrix& a);

/// RK4 on x with z re-solved by Newton on h(x,z)=0 at every stage (index-1
/// semi-explicit treatment), warm-started from the previous z. Every stored point
/// satisfies ||h||_inf <= 1e-10. `z_warm` seeds the initial Newton solve.
Trajectory simulate_dae(const ModelSpec& model, const std::vector<double>& x0,
                        const std::vector<double>& z_warm, double T, double dt);

/// Propagate the lifted linear system from [dx0, dx0^[2], ...] with expm(A dt)
/// applied stepwise; returns the first N coordinates shifted by x_sep.
Trajectory simulate_linear(const Matrix& a, const std::vector<double>& delta_x0,
                           const std::vector<double>& x_sep, int order, double T, double dt);

/// Componentwise RMS and sup-norm state differences; grids must match.
CompareReport compare(const Trajectory& a, const Trajectory& b);

} // namespace carl
