#pragma once

#include "carl/kron.hpp"

namespace carl {

/// Truncated Carleman extension of an ODE over the basis [Dx, Dx^[2], ..., Dx^[L]].
struct CarlemanOdeSystem {
    int order = 0;
    std::size_t n = 0;       // state dimension
    Matrix a_nord;           // block upper-triangular lifted matrix
    MonomialBasis basis;     // lifted state basis

    std::size_t dim() const { return a_nord.rows; }
};

/// Assemble A_nord from the base row A_{1,1..L}. a1[k] holds A_{1,k} (1-based).
/// Blocks A_{i,j} with j - i + 1 > L are truncated to zero. Order must be in {1,2,3}.
CarlemanOdeSystem build_extended_ode(const std::vector<Matrix>& a1, std::size_t n, int order);

} // namespace carl
