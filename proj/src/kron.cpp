#include "carl/kron.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace carl {

namespace {
constexpr std::size_t kEntryCap = 100'000'000; // 1e8 entries
}

MonomialBasis MonomialBasis::block(
    const std::vector<std::pair<VarKind, std::size_t>>& axis_specs) {
    MonomialBasis b;
    std::size_t size = 1;
    for (const auto& [kind, dim] : axis_specs) size *= dim;
    b.tuples.reserve(size);
    std::vector<std::size_t> idx(axis_specs.size(), 0);
    for (std::size_t flat = 0; flat < size; ++flat) {
        BasisTuple t;
        for (std::size_t a = 0; a < axis_specs.size(); ++a)
            t.axes.emplace_back(axis_specs[a].first, idx[a]);
        b.tuples.push_back(std::move(t));
        // increment mixed-radix counter, rightmost axis fastest
        for (std::size_t a = axis_specs.size(); a-- > 0;) {
            if (++idx[a] < axis_specs[a].second) break;
            idx[a] = 0;
        }
    }
    return b;
}

MonomialBasis MonomialBasis::lifted_state(std::size_t n, int order) {
    MonomialBasis b;
    for (int k = 1; k <= order; ++k) {
        std::vector<std::pair<VarKind, std::size_t>> specs(
            static_cast<std::size_t>(k), {VarKind::State, n});
        MonomialBasis blk = block(specs);
        b.tuples.insert(b.tuples.end(), blk.tuples.begin(), blk.tuples.end());
    }
    return b;
}

Matrix kron_product(const Matrix& a, const Matrix& b) {
    std::size_t r = a.rows * b.rows, c = a.cols * b.cols;
    if (a.rows != 0 && a.cols != 0 && (r > kEntryCap / std::max<std::size_t>(c, 1)))
        throw numeric_error("kron_product: result exceeds entry cap");
    Matrix out(r, c);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) {
            double aij = a(i, j);
            if (aij == 0.0) continue;
            for (std::size_t p = 0; p < b.rows; ++p)
                for (std::size_t q = 0; q < b.cols; ++q)
                    out(i * b.rows + p, j * b.cols + q) = aij * b(p, q);
        }
    return out;
}

std::vector<double> kron_power_vec(const std::vector<double>& v, int n) {
    if (n < 1) throw numeric_error("kron_power_vec: order must be >= 1");
    std::vector<double> out = v;
    for (int k = 2; k <= n; ++k) {
        if (out.size() > kEntryCap / std::max<std::size_t>(v.size(), 1))
            throw numeric_error("kron_power_vec: result exceeds entry cap");
        std::vector<double> next(out.size() * v.size());
        for (std::size_t i = 0; i < out.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j) next[i * v.size() + j] = out[i] * v[j];
        out = std::move(next);
    }
    return out;
}

std::vector<std::size_t> axis_permutation_map(const std::vector<std::size_t>& dims,
                                              const std::vector<std::size_t>& perm) {
    const std::size_t k = dims.size();
    if (perm.size() != k) throw numeric_error("axis_permutation: permutation length mismatch");
    std::vector<bool> seen(k, false);
    for (std::size_t p : perm) {
        if (p >= k || seen[p]) throw numeric_error("axis_permutation: invalid permutation");
        seen[p] = true;
    }
    std::size_t size = 1;
    for (std::size_t d : dims) size *= d;

    // Output tuple (over dims[perm[0..k-1]]) at row r reads input axis perm[a] at position a:
    // row = sum over a of i_{perm[a]} scaled; equivalently map[row] = flat index of source tuple.
    std::vector<std::size_t> map(size);
    std::vector<std::size_t> idx(k, 0); // tuple over the input dims
    std::vector<std::size_t> out_dims(k);
    for (std::size_t a = 0; a < k; ++a) out_dims[a] = dims[perm[a]];
    for (std::size_t flat = 0; flat < size; ++flat) {
        std::size_t row = 0;
        for (std::size_t a = 0; a < k; ++a) row = row * out_dims[a] + idx[perm[a]];
        map[row] = flat;
        for (std::size_t a = k; a-- > 0;) {
            if (++idx[a] < dims[a]) break;
            idx[a] = 0;
        }
    }
    return map;
}

Matrix axis_permutation(const std::vector<std::size_t>& dims,
                        const std::vector<std::size_t>& perm) {
    std::vector<std::size_t> map = axis_permutation_map(dims, perm);
    Matrix p(map.size(), map.size());
    for (std::size_t i = 0; i < map.size(); ++i) p(i, map[i]) = 1.0;
    return p;
}

Matrix permute_columns(const Matrix& a, const std::vector<std::size_t>& map) {
    if (a.cols != map.size()) throw numeric_error("permute_columns: dimension mismatch");
    // a * P with P(i, map[i]) = 1: column map[i] of the result is column i of a.
    Matrix out(a.rows, a.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) out(i, map[j]) = a(i, j);
    return out;
}

Matrix carleman_block(const std::vector<Matrix>& a1, int i, int j, std::size_t n) {
    if (i < 1 || j < i) throw numeric_error("carleman_block: require 1 <= i <= j");
    auto base = [&](int k) -> const Matrix& {
        if (k < 1 || static_cast<std::size_t>(k) >= a1.size() || a1[k].rows == 0)
            throw numeric_error("carleman_block: missing base matrix A_{1," + std::to_string(k) +
                                "}");
        return a1[static_cast<std::size_t>(k)];
    };
    if (i == 1) return base(j);
    std::size_t n_pow = 1;
    for (int k = 0; k < i - 1; ++k) n_pow *= n;
    return kron_product(base(j - i + 1), Matrix::identity(n_pow)) +
           kron_product(Matrix::identity(n), carleman_block(a1, i - 1, j - 1, n));
}

namespace {

// Canonical key: tuple length, then the sorted multiset of (kind, index) axes.
using CanonKey = std::vector<std::pair<int, std::size_t>>;

CanonKey canon_key(const BasisTuple& t) {
    CanonKey k;
    k.reserve(t.axes.size() + 1);
    k.emplace_back(-1, t.axes.size());
    for (const auto& [kind, idx] : t.axes) k.emplace_back(static_cast<int>(kind), idx);
    std::sort(k.begin() + 1, k.end());
    return k;
}

struct CondensePlan {
    std::vector<std::size_t> group;  // original index -> condensed index
    std::vector<std::size_t> rep;    // condensed index -> first original index
    MonomialBasis basis;
};

CondensePlan plan(const MonomialBasis& b) {
    CondensePlan p;
    std::map<CanonKey, std::size_t> seen;
    p.group.reserve(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        CanonKey key = canon_key(b.tuples[i]);
        auto [it, inserted] = seen.emplace(std::move(key), p.rep.size());
        if (inserted) {
            p.rep.push_back(i);
            p.basis.tuples.push_back(b.tuples[i]);
        }
        p.group.push_back(it->second);
    }
    return p;
}

} // namespace

CondensedMatrix condense(const Matrix& m, const MonomialBasis& row_basis,
                         const MonomialBasis& col_basis) {
    if (m.rows != row_basis.size() || m.cols != col_basis.size())
        throw numeric_error("condense: basis does not describe the matrix");
    CondensePlan rows = plan(row_basis);
    CondensePlan cols = plan(col_basis);

    // Sum merged columns first.
    Matrix summed(m.rows, cols.rep.size());
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) summed(i, cols.group[j]) += m(i, j);

    // Then keep the first representative of each row group, verifying duplicates agree.
    CondensedMatrix out;
    out.matrix = Matrix(rows.rep.size(), cols.rep.size());
    out.row_basis = std::move(rows.basis);
    out.col_basis = std::move(cols.basis);
    for (std::size_t i = 0; i < m.rows; ++i) {
        std::size_t g = rows.group[i];
        if (rows.rep[g] == i) {
            for (std::size_t j = 0; j < summed.cols; ++j) out.matrix(g, j) = summed(i, j);
        } else {
            for (std::size_t j = 0; j < summed.cols; ++j)
                if (std::abs(summed(i, j) - out.matrix(g, j)) > 1e-9)
                    throw numeric_error("condense: redundant rows disagree beyond tolerance");
        }
    }
    return out;
}

} // namespace carl
