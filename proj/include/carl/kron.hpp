#pragma once

#include <cstdint>
#include <vector>

#include "carl/matrix.hpp"

namespace carl {

enum class VarKind : std::uint8_t { State, Algebraic };

/// One coordinate of a lifted basis: an ordered tuple of (kind, index) axes.
struct BasisTuple {
    std::vector<std::pair<VarKind, std::size_t>> axes;

    bool operator==(const BasisTuple&) const = default;
};

/// Ordered coordinates of a lifted vector (Kronecker order, leftmost axis slowest).
struct MonomialBasis {
    std::vector<BasisTuple> tuples;

    std::size_t size() const { return tuples.size(); }

    /// Basis of [x, x^[2], ..., x^[order]] over N states.
    static MonomialBasis lifted_state(std::size_t n, int order);
    /// Basis of a single pure Kronecker block with the given axis dims/kinds.
    static MonomialBasis block(const std::vector<std::pair<VarKind, std::size_t>>& axis_specs);
};

struct CondensedMatrix {
    Matrix matrix;
    MonomialBasis row_basis; // canonical multiset representatives
    MonomialBasis col_basis;
};

/// Kronecker product. Throws numeric_error if the result exceeds the entry cap (1e8).
Matrix kron_product(const Matrix& a, const Matrix& b);

/// v^[n] in lexicographic Kronecker order; n >= 1.
std::vector<double> kron_power_vec(const std::vector<double>& v, int n);

/// Index map p with (P w)[i] = w[p[i]] realizing P(v1⊗...⊗vk) = v_{perm(0)}⊗...⊗v_{perm(k-1)}.
std::vector<std::size_t> axis_permutation_map(const std::vector<std::size_t>& dims,
                                              const std::vector<std::size_t>& perm);

/// The same permutation as an explicit matrix.
Matrix axis_permutation(const std::vector<std::size_t>& dims,
                        const std::vector<std::size_t>& perm);

/// Apply a permutation map to a matrix's columns: out(:, j) = a(:, p^{-1}...).
/// Equivalent to a * P where P = axis_permutation(dims, perm), without forming P.
Matrix permute_columns(const Matrix& a, const std::vector<std::size_t>& map);

/// Carleman block A_{i,j} built from the base row A_{1,1..L}; a1[k] holds A_{1,k}
/// (1-based; a1[0] unused). Recursion:
///   A_{i,j} = A_{1,j-i+1} ⊗ I_{n^{i-1}} + I_n ⊗ A_{i-1,j-1},  grounded at i = 1.
Matrix carleman_block(const std::vector<Matrix>& a1, int i, int j, std::size_t n);

/// Merge columns with identical index multisets (summing), deduplicate rows
/// (verifying equality within 1e-9). Throws numeric_error on row disagreement.
CondensedMatrix condense(const Matrix& m, const MonomialBasis& row_basis,
                         const MonomialBasis& col_basis);

} // namespace carl
