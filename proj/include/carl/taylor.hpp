#pragma once

#include <array>

#include "carl/kron.hpp"
#include "carl/model.hpp"

namespace carl {

struct Equilibrium {
    std::vector<double> x_sep;
    std::vector<double> z_sep;
    double residual_norm = 0.0;
    int newton_iters = 0;
};

/// Per-block axis layout of the 9 column bases:
///   1: x      2: xx     3: xxx    4: z      5: xz
///   6: zz     7: xxz    8: xzz    9: zzz
/// Coefficient at each ordered Kronecker slot of a Dx^[j] (x) Dz^[k] block is
/// (mixed partial) / (j! k!), identical across permuted slots.
struct CoefficientSet {
    std::size_t N = 0;
    std::size_t M = 0;
    std::array<Matrix, 10> G; // G[1..9]; G[0] unused
    std::array<Matrix, 10> H; // H[1..9]; H[0] unused
    double det_H14 = 0.0;

    /// Axis specs (kind, dim) of column block j.
    std::vector<std::pair<VarKind, std::size_t>> block_axes(int j) const;
};

/// Damped Newton on the stacked residual [g; h] = 0 from the model's guess.
/// Converges to ||r||_inf <= 1e-10 within 100 iterations or throws numeric_error.
Equilibrium find_equilibrium(const ModelSpec& model);

/// All 18 coefficient blocks at the equilibrium, via exact symbolic mixed partials.
/// Throws regularity_error if det(H_{1,4}) == 0; warns on stderr if |det| is
/// outside [1e-8, 1e8].
CoefficientSet coefficient_matrices(const ModelSpec& model, const Equilibrium& eq);

enum class Func { G, H };

/// Central finite-difference mixed partial (step 1e-4, Richardson-extrapolated once)
/// of g or h row `row` with respect to the named variables, at the equilibrium.
double fd_oracle(const ModelSpec& model, const Equilibrium& eq, Func which, std::size_t row,
                 const std::vector<std::string>& multiindex);

} // namespace carl
