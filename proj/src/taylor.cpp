#include "carl/taylor.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>

namespace carl {

namespace {

std::vector<double> stacked_residual(const ModelSpec& m, const std::vector<std::string>& names,
                                     const std::vector<double>& v) {
    std::vector<double> r;
    r.reserve(m.odes.size() + m.constraints.size());
    for (const auto& e : m.odes) r.push_back(eval(e, names, v));
    for (const auto& e : m.constraints) r.push_back(eval(e, names, v));
    return r;
}

} // namespace

Equilibrium find_equilibrium(const ModelSpec& model) {
    const std::vector<std::string> names = model.all_names();
    const std::size_t n = names.size();

    // Symbolic Jacobian of the stacked residual, computed once.
    std::vector<Expr> funcs = model.odes;
    funcs.insert(funcs.end(), model.constraints.begin(), model.constraints.end());
    std::vector<std::vector<Expr>> jac(n, std::vector<Expr>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) jac[i][j] = differentiate(funcs[i], names[j]);

    std::vector<double> v = model.guess_x;
    v.insert(v.end(), model.guess_z.begin(), model.guess_z.end());

    constexpr double tol = 1e-10;
    constexpr int max_iters = 100;
    std::vector<double> r = stacked_residual(model, names, v);
    double rnorm = inf_norm(r);
    int it = 0;
    for (; it < max_iters && rnorm > tol; ++it) {
        Matrix J(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) J(i, j) = eval(jac[i][j], names, v);
        LuFactor f = lu_factor(std::move(J));
        if (f.singular()) throw numeric_error("find_equilibrium: singular Jacobian");
        std::vector<double> neg_r(n);
        for (std::size_t i = 0; i < n; ++i) neg_r[i] = -r[i];
        std::vector<double> step = lu_solve(f, neg_r);

        // Damping: halve the step until the residual norm decreases.
        double alpha = 1.0;
        for (int half = 0; half < 60; ++half) {
            std::vector<double> trial(n);
            for (std::size_t i = 0; i < n; ++i) trial[i] = v[i] + alpha * step[i];
            try {
                std::vector<double> rt = stacked_residual(model, names, trial);
                double tnorm = inf_norm(rt);
                if (tnorm < rnorm) {
                    v = std::move(trial);
                    r = std::move(rt);
                    rnorm = tnorm;
                    break;
                }
            } catch (const domain_error&) {
                // overshot the function domain; keep halving
            }
            alpha *= 0.5;
            if (half == 59) throw numeric_error("find_equilibrium: damping failed to make progress");
        }
    }
    if (rnorm > tol) throw numeric_error("find_equilibrium: no convergence in 100 iterations");

    Equilibrium eq;
    eq.x_sep.assign(v.begin(), v.begin() + static_cast<long>(model.n_states()));
    eq.z_sep.assign(v.begin() + static_cast<long>(model.n_states()), v.end());
    eq.residual_norm = rnorm;
    eq.newton_iters = it;
    return eq;
}

std::vector<std::pair<VarKind, std::size_t>> CoefficientSet::block_axes(int j) const {
    static const char* specs[10] = {"",  "x",  "xx",  "xxx", "z",
                                    "xz", "zz", "xxz", "xzz", "zzz"};
    std::vector<std::pair<VarKind, std::size_t>> out;
    for (const char* c = specs[j]; *c; ++c)
        out.emplace_back(*c == 'x' ? VarKind::State : VarKind::Algebraic,
                         *c == 'x' ? N : M);
    return out;
}

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// Memoized mixed partials: derivatives only depend on the multiset of variables.
class PartialCache {
public:
    PartialCache(Expr root) : root_(std::move(root)) {}

    const Expr& get(std::vector<std::string> vars) {
        std::sort(vars.begin(), vars.end());
        auto it = cache_.find(vars);
        if (it != cache_.end()) return it->second;
        Expr d;
        if (vars.empty()) {
            d = root_;
        } else {
            std::string last = vars.back();
            std::vector<std::string> rest(vars.begin(), vars.end() - 1);
            d = differentiate(get(rest), last);
        }
        return cache_.emplace(std::move(vars), std::move(d)).first->second;
    }

private:
    Expr root_;
    std::map<std::vector<std::string>, Expr> cache_;
};

void build_block(const ModelSpec& model, PartialCache& cache,
                   const std::vector<std::pair<VarKind, std::size_t>>& axes,
                   const std::vector<std::string>& names, const std::vector<double>& point,
                   std::size_t row, Matrix& dst) {
    int nx = 0, nz = 0;
    for (const auto& [kind, dim] : axes) (kind == VarKind::State ? nx : nz)++;
    const double fact = factorial(nx) * factorial(nz);

    std::vector<std::size_t> idx(axes.size(), 0);
    for (std::size_t col = 0; col < dst.cols; ++col) {
        std::vector<std::string> vars;
        for (std::size_t a = 0; a < axes.size(); ++a)
            vars.push_back(axes[a].first == VarKind::State ? model.states[idx[a]]
                                                           : model.algebraics[idx[a]]);
        dst(row, col) = eval(cache.get(std::move(vars)), names, point) / fact;
        for (std::size_t a = axes.size(); a-- > 0;) {
            if (++idx[a] < axes[a].second) break;
            idx[a] = 0;
        }
    }
}

} // namespace

CoefficientSet coefficient_matrices(const ModelSpec& model, const Equilibrium& eq) {
    CoefficientSet c;
    c.N = model.n_states();
    c.M = model.n_algebraics();
    const std::vector<std::string> names = model.all_names();
    std::vector<double> point = eq.x_sep;
    point.insert(point.end(), eq.z_sep.begin(), eq.z_sep.end());

    for (int j = 1; j <= 9; ++j) {
        auto axes = c.block_axes(j);
        std::size_t cols = 1;
        for (const auto& [kind, dim] : axes) cols *= dim;
        c.G[j] = Matrix(c.N, cols);
        c.H[j] = Matrix(c.M, cols);
    }
    for (std::size_t r = 0; r < c.N; ++r) {
        PartialCache cache(model.odes[r]);
        for (int j = 1; j <= 9; ++j)
            build_block(model, cache, c.block_axes(j), names, point, r, c.G[j]);
    }
    for (std::size_t r = 0; r < c.M; ++r) {
        PartialCache cache(model.constraints[r]);
        for (int j = 1; j <= 9; ++j)
            build_block(model, cache, c.block_axes(j), names, point, r, c.H[j]);
    }

    c.det_H14 = c.M == 0 ? 1.0 : determinant(c.H[4]);
    if (c.M > 0) {
        if (c.det_H14 == 0.0)
            throw regularity_error(
                "coefficient_matrices: det(dh/dz) = 0, constraints do not define z locally");
        double mag = std::abs(c.det_H14);
        if (mag < 1e-8 || mag > 1e8)
            std::cerr << "warning: |det(dh/dz)| = " << mag
                      << " suggests an ill-conditioned constraint Jacobian\n";
    }
    return c;
}

namespace {

double fd_recursive(const ModelSpec& model, const std::vector<std::string>& names, Func which,
                    std::size_t row, const std::vector<std::string>& multiindex,
                    std::vector<double>& point, double h, std::size_t depth) {
    if (depth == multiindex.size()) {
        const Expr& f =
            which == Func::G ? model.odes[row] : model.constraints[row];
        return eval(f, names, point);
    }
    std::size_t vi = 0;
    while (names[vi] != multiindex[depth]) ++vi;
    double saved = point[vi];
    point[vi] = saved + h;
    double fp = fd_recursive(model, names, which, row, multiindex, point, h, depth + 1);
    point[vi] = saved - h;
    double fm = fd_recursive(model, names, which, row, multiindex, point, h, depth + 1);
    point[vi] = saved;
    return (fp - fm) / (2.0 * h);
}

} // namespace

double fd_oracle(const ModelSpec& model, const Equilibrium& eq, Func which, std::size_t row,
                 const std::vector<std::string>& multiindex) {
    if (multiindex.size() > 3)
        throw numeric_error("fd_oracle: multiindex order above 3 not supported");
    const std::vector<std::string> names = model.all_names();
    std::vector<double> point = eq.x_sep;
    point.insert(point.end(), eq.z_sep.begin(), eq.z_sep.end());

    // Extrapolate from steps h and 2h (rather than h/2) so that the finest
    // step stays at 1e-4: third-order stencils divide by (2h)^3, and smaller
    // steps let floating-point roundoff dominate the result.
    const double h = 1e-4;
    double coarse = fd_recursive(model, names, which, row, multiindex, point, 2.0 * h, 0);
    double fine = fd_recursive(model, names, which, row, multiindex, point, h, 0);
    // one Richardson step for the O(h^2) central-difference error
    return (4.0 * fine - coarse) / 3.0;
}

} // namespace carl
