#pragma once

#include <map>

#include "carl/carleman_ode.hpp"
#include "carl/taylor.hpp"

namespace carl {

/// Lifted G blocks keyed by (i, j): the coefficient of the j-th column family in
/// the derivative of the i-th x family (1: Dx, 2: Dx^[2], 3: Dx^[3]).
using GBlocks = std::map<std::pair<int, int>, Matrix>;

/// Auxiliary constraint blocks keyed by (i, j). Row families i:
/// 1: Dh, 2: Dh(x)Dx, 3: Dh^[2], 4: Dh(x)Dx^[2], 5: Dh^[2](x)Dx, 6: Dh^[3].
using HBlocks = std::map<std::pair<int, int>, Matrix>;

struct CarlemanDaeSystem {
    std::size_t N = 0;
    std::size_t M = 0;
    int order = 0;
    Matrix F11, F12, F21, F22;
    std::vector<std::size_t> x_dims; // [N, N^2, (N^3)]
    std::vector<std::size_t> z_dims; // [M, NM, M^2, (N^2 M, N M^2, M^3)]
    MonomialBasis x_basis;
    double det_H14 = 0.0;
};

struct ReducedOde {
    Matrix ftilde11;
    std::vector<Matrix> htilde; // H~_{1,1..order}, M x N^j
    double det_H14 = 0.0;
    double det_F22 = 0.0;
    double cond_F22 = 0.0;
    MonomialBasis x_basis;
    std::size_t N = 0;
    int order = 0;
};

struct DetReport {
    double det_direct = 0.0;
    double det_product = 0.0;
    double rel_error = 0.0;               // |direct - product| / max(|direct|, |product|)
    std::map<std::string, double> identity_rel_errors; // per power identity
};

/// Lifted G blocks {(2,2),(2,5)} at order 2; adds {(2,3),(3,3),(2,7),(2,8),(3,7)} at order 3.
GBlocks build_g_blocks(const CoefficientSet& c, int order);

/// Auxiliary H blocks; order 2 builds families {2,3} over columns {2,5,6},
/// order 3 adds families {4,5,6} and the third-order columns.
HBlocks build_h_blocks(const CoefficientSet& c, int order);

/// Assemble the squared extended DAE (F11 F12; F21 F22). Order must be in {1,2,3};
/// order 1 gives F11 = G_{1,1}, F12 = G_{1,4}, F21 = H_{1,1}, F22 = H_{1,4}.
CarlemanDaeSystem assemble(const CoefficientSet& c, const GBlocks& gb, const HBlocks& hb,
                           int order);

/// Schur complement F~11 = F11 - F12 F22^{-1} F21 via LU solves, with
/// H~_{1,j} = -(first M rows of F22^{-1} F21) so that Dz = sum_j H~_{1,j} Dx^[j].
/// Throws regularity_error if F22 is singular; numeric_error if cond_1(F22) > 1e12.
ReducedOde kron_reduce(const CarlemanDaeSystem& sys);

/// det(F22) computed directly vs. the block-triangular product using the
/// Kronecker power identities of the auxiliary diagonal blocks. Order-3 only.
DetReport det_product_check(const CoefficientSet& c);

/// ||condensed(F~11) - condensed(A_nord)||_F / ||condensed(A_nord)||_F * 100.
double validate_against_ode(const ReducedOde& reduced, const CarlemanOdeSystem& reference);

} // namespace carl
