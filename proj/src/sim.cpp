#include "carl/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "carl/kron.hpp"

namespace carl {

Matrix expm(const Matrix& a) {
    if (a.rows != a.cols) throw numeric_error("expm: matrix not square");
    const std::size_t n = a.rows;

    // Scale so ||A/2^s||_inf <= 0.5, apply the [6/6] Pade approximant, square back.
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += std::abs(a(i, j));
        norm = std::max(norm, s);
    }
    int s = 0;
    if (norm > 0.5) s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    Matrix x = std::ldexp(1.0, -s) * a;

    constexpr int q = 6;
    double c = 1.0;
    Matrix num = Matrix::identity(n), den = Matrix::identity(n), pow = Matrix::identity(n);
    for (int k = 1; k <= q; ++k) {
        c *= static_cast<double>(q - k + 1) / static_cast<double>(k * (2 * q - k + 1));
        pow = pow * x;
        num = num + c * pow;
        den = (k % 2 == 0) ? den + c * pow : den - c * pow;
    }
    Matrix e = lu_solve(lu_factor(std::move(den)), num);
    for (int k = 0; k < s; ++k) e = e * e;
    if (!e.all_finite()) throw numeric_error("expm: non-finite result");
    return e;
}

namespace {

class ConstraintSolver {
public:
    explicit ConstraintSolver(const ModelSpec& model)
        : model_(model), names_(model.all_names()) {
        const std::size_t m = model.n_algebraics();
        jac_.resize(m, std::vector<Expr>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                jac_[i][j] = differentiate(model.constraints[i], model.algebraics[j]);
    }

    /// Newton on h(x, z) = 0 in z, starting from z; tolerance 1e-12.
    std::vector<double> solve(const std::vector<double>& x, std::vector<double> z) const {
        const std::size_t n = model_.n_states(), m = model_.n_algebraics();
        if (m == 0) return z;
        std::vector<double> point(n + m);
        std::copy(x.begin(), x.end(), point.begin());
        for (int it = 0; it < 50; ++it) {
            std::copy(z.begin(), z.end(), point.begin() + static_cast<long>(n));
            std::vector<double> r(m);
            for (std::size_t i = 0; i < m; ++i)
                r[i] = eval(model_.constraints[i], names_, point);
            if (inf_norm(r) < 1e-12) return z;
            Matrix J(m, m);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) J(i, j) = eval(jac_[i][j], names_, point);
            LuFactor f = lu_factor(std::move(J));
            if (f.singular())
                throw numeric_error("simulate_dae: singular constraint Jacobian along trajectory");
            for (double& v : r) v = -v;
            std::vector<double> step = lu_solve(f, r);
            for (std::size_t i = 0; i < m; ++i) z[i] += step[i];
        }
        throw numeric_error("simulate_dae: Newton for z failed to converge");
    }

    std::vector<double> g(const std::vector<double>& x, const std::vector<double>& z) const {
        std::vector<double> point(x);
        point.insert(point.end(), z.begin(), z.end());
        std::vector<double> out(model_.n_states());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = eval(model_.odes[i], names_, point);
        return out;
    }

private:
    const ModelSpec& model_;
    std::vector<std::string> names_;
    std::vector<std::vector<Expr>> jac_;
};

} // namespace

Trajectory simulate_dae(const ModelSpec& model, const std::vector<double>& x0,
                        const std::vector<double>& z_warm, double T, double dt) {
    if (dt <= 0.0 || T <= 0.0) throw std::invalid_argument("simulate_dae: require T > 0, dt > 0");
    if (x0.size() != model.n_states() || z_warm.size() != model.n_algebraics())
        throw numeric_error("simulate_dae: initial condition dimension mismatch");

    ConstraintSolver cs(model);
    const std::size_t K = static_cast<std::size_t>(std::llround(T / dt));
    const std::size_t N = model.n_states(), M = model.n_algebraics();

    Trajectory tr;
    tr.model_name = model.name;
    tr.method = "nonlinear";
    tr.times.resize(K + 1);
    tr.states = Matrix(K + 1, N);
    tr.algebraics = Matrix(K + 1, M);

    std::vector<double> x = x0;
    std::vector<double> z = cs.solve(x, z_warm);
    auto store = [&](std::size_t k) {
        tr.times[k] = static_cast<double>(k) * dt;
        for (std::size_t j = 0; j < N; ++j) {
            if (!std::isfinite(x[j])) throw numeric_error("simulate_dae: non-finite state");
            tr.states(k, j) = x[j];
        }
        for (std::size_t j = 0; j < M; ++j) tr.algebraics(k, j) = z[j];
    };
    store(0);

    std::vector<double> zc;
    auto f = [&](const std::vector<double>& xv) {
        zc = cs.solve(xv, zc);
        return cs.g(xv, zc);
    };
    auto axpy = [&](const std::vector<double>& base, double s, const std::vector<double>& d) {
        std::vector<double> out(base);
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += s * d[j];
        return out;
    };
    for (std::size_t k = 0; k < K; ++k) {
        zc = z;
        std::vector<double> k1 = f(x);
        std::vector<double> k2 = f(axpy(x, dt / 2.0, k1));
        std::vector<double> k3 = f(axpy(x, dt / 2.0, k2));
        std::vector<double> k4 = f(axpy(x, dt, k3));
        for (std::size_t j = 0; j < N; ++j)
            x[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        z = cs.solve(x, zc);
        store(k + 1);
    }
    return tr;
}

Trajectory simulate_linear(const Matrix& a, const std::vector<double>& delta_x0,
                           const std::vector<double>& x_sep, int order, double T, double dt) {
    if (dt <= 0.0 || T <= 0.0)
        throw std::invalid_argument("simulate_linear: require T > 0, dt > 0");
    const std::size_t N = delta_x0.size();
    std::size_t dim = 0, p = 1;
    for (int k = 1; k <= order; ++k) {
        p *= N;
        dim += p;
    }
    if (a.rows != dim || a.cols != dim || x_sep.size() != N)
        throw numeric_error("simulate_linear: dimension mismatch with lifted basis");

    std::vector<double> y;
    y.reserve(dim);
    for (int k = 1; k <= order; ++k) {
        std::vector<double> pw = kron_power_vec(delta_x0, k);
        y.insert(y.end(), pw.begin(), pw.end());
    }

    Matrix e = expm(dt * a);
    const std::size_t K = static_cast<std::size_t>(std::llround(T / dt));

    Trajectory tr;
    tr.method = "linear-order" + std::to_string(order);
    tr.order = order;
    tr.times.resize(K + 1);
    tr.states = Matrix(K + 1, N);
    tr.algebraics = Matrix(K + 1, 0);
    for (std::size_t k = 0; k <= K; ++k) {
        tr.times[k] = static_cast<double>(k) * dt;
        for (std::size_t j = 0; j < N; ++j) {
            double v = x_sep[j] + y[j];
            if (!std::isfinite(v)) throw numeric_error("simulate_linear: non-finite state");
            tr.states(k, j) = v;
        }
        if (k < K) y = e * y;
    }
    return tr;
}

CompareReport compare(const Trajectory& a, const Trajectory& b) {
    if (a.times.size() != b.times.size() || a.states.cols != b.states.cols)
        throw numeric_error("compare: trajectory grids do not match");
    for (std::size_t k = 0; k < a.times.size(); ++k)
        if (std::abs(a.times[k] - b.times[k]) > 1e-12)
            throw numeric_error("compare: trajectory grids do not match");

    const std::size_t K = a.times.size(), N = a.states.cols;
    CompareReport rep;
    rep.rms.assign(N, 0.0);
    rep.max_abs.assign(N, 0.0);
    for (std::size_t j = 0; j < N; ++j) {
        double sq = 0.0, mx = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            double d = a.states(k, j) - b.states(k, j);
            sq += d * d;
            mx = std::max(mx, std::abs(d));
        }
        rep.rms[j] = std::sqrt(sq / static_cast<double>(K));
        rep.max_abs[j] = mx;
    }
    return rep;
}

} // namespace carl
