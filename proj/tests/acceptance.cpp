// Acceptance gate: each criterion is one self-contained check with pinned
// tolerances, run as `acceptance --criterion N`, printing exactly one
// PASS/FAIL line and exiting 0/1.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "carl/carleman_dae.hpp"
#include "carl/carleman_ode.hpp"
#include "carl/expr.hpp"
#include "carl/fixtures.hpp"
#include "carl/sim.hpp"
#include "carl/spectral.hpp"

using namespace carl;

namespace {

std::mt19937 rng(987654321u);

double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Matrix random_matrix(std::size_t r, std::size_t c, double lo = -1.0, double hi = 1.0) {
    Matrix m(r, c);
    for (double& v : m.data) v = uniform(lo, hi);
    return m;
}

Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

double max_diff(const Matrix& a, const Matrix& b) { return max_abs(a - b); }

struct Pipeline {
    ModelSpec model;
    Equilibrium eq;
    CoefficientSet c;
};

Pipeline load(const std::string& fixture) {
    Pipeline p{fixture_model(fixture), {}, {}};
    p.eq = find_equilibrium(p.model);
    p.c = coefficient_matrices(p.model, p.eq);
    return p;
}

ReducedOde reduce(const CoefficientSet& c, int order) {
    return kron_reduce(assemble(c, build_g_blocks(c, order), build_h_blocks(c, order), order));
}

Matrix first_order_matrix(const CoefficientSet& c) {
    if (c.M == 0) return c.G[1];
    return c.G[1] - c.G[4] * lu_solve(lu_factor(c.H[4]), c.H[1]);
}

Matrix condensed(const Matrix& a, std::size_t n, int order) {
    MonomialBasis b = MonomialBasis::lifted_state(n, order);
    return condense(a, b, b).matrix;
}

// ---------------------------------------------------------------------------

/// Criterion 1: the squared order-2 extension of the first bundled DAE equals
/// the reference 10x10 matrix entrywise within 1e-12.
bool criterion1(std::string& detail) {
    Pipeline p = load("test1");
    CarlemanDaeSystem sys =
        assemble(p.c, build_g_blocks(p.c, 2), build_h_blocks(p.c, 2), 2);
    Matrix full(10, 10);
    set_block(full, 0, 0, sys.F11);
    set_block(full, 0, 6, sys.F12);
    set_block(full, 6, 0, sys.F21);
    set_block(full, 6, 6, sys.F22);
    Matrix expect = from_rows({
        {-2.0, -0.5, 0.2, 0.0, 0.0, 0.0, 0.1, 0.0, 0.0, 0.0},
        {-2.0, -2.2, 0.3, 0.05, 0.05, -0.15, -0.1, 0.0, 0.0, 0.0},
        {0.0, 0.0, -4.0, -0.5, -0.5, 0.0, 0.0, 0.2, 0.0, 0.0},
        {0.0, 0.0, -2.0, -4.2, 0.0, -0.5, 0.0, -0.1, 0.1, 0.0},
        {0.0, 0.0, -2.0, 0.0, -4.2, -0.5, 0.0, -0.1, 0.1, 0.0},
        {0.0, 0.0, 0.0, -2.0, -2.0, -4.4, 0.0, 0.0, -0.2, 0.0},
        {-1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0},
        {0.0, 0.0, -1.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0},
        {0.0, 0.0, 0.0, -1.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0},
        {0.0, 0.0, 1.0, -1.0, -1.0, 1.0, 0.0, -2.0, 2.0, 1.0},
    });
    double err = max_diff(full, expect);
    detail = "extended 10x10 max entry error " + std::to_string(err) + " (tol 1e-12)";
    return err <= 1e-12;
}

/// Criterion 2: the Kron-reduced order-2 matrix equals the reference 6x6 values
/// within 1e-12, and its condensation matches the condensed pre-substituted ODE
/// lift within 1e-10.
bool criterion2(std::string& detail) {
    Pipeline p = load("test1");
    ReducedOde red = reduce(p.c, 2);
    Matrix expect = from_rows({{-1.9, -0.6, 0.2, 0.0, 0.0, 0.0},
                               {-2.1, -2.1, 0.3, 0.05, 0.05, -0.15},
                               {0.0, 0.0, -3.8, -0.5, -0.7, 0.0},
                               {0.0, 0.0, -2.1, -4.1, 0.1, -0.6},
                               {0.0, 0.0, -2.1, 0.1, -4.1, -0.6},
                               {0.0, 0.0, 0.0, -2.2, -2.0, -4.2}});
    double err = max_diff(red.ftilde11, expect);

    Pipeline ode = load("test1-ode");
    std::vector<Matrix> a1{Matrix(), ode.c.G[1], ode.c.G[2]};
    Matrix ode_lift = build_extended_ode(a1, 2, 2).a_nord;
    double cond_err = max_diff(condensed(red.ftilde11, 2, 2), condensed(ode_lift, 2, 2));
    detail = "reduced 6x6 error " + std::to_string(err) + " (tol 1e-12), condensed-vs-ODE " +
             std::to_string(cond_err) + " (tol 1e-10)";
    return err <= 1e-12 && cond_err <= 1e-10;
}

/// Criterion 3: reducing the second bundled DAE at orders 2 and 3 reproduces
/// the pre-substituted ODE lift with relative Frobenius error below 1e-10 %.
bool criterion3(std::string& detail) {
    Pipeline dae = load("test2");
    Pipeline ode = load("test2-ode");
    std::ostringstream os;
    bool ok = true;
    for (int order : {2, 3}) {
        std::vector<Matrix> a1(static_cast<std::size_t>(order) + 1);
        for (int k = 1; k <= order; ++k) a1[static_cast<std::size_t>(k)] = ode.c.G[k];
        double pct = validate_against_ode(reduce(dae.c, order),
                                          build_extended_ode(a1, ode.c.N, order));
        os << " order " << order << ": " << pct << "%";
        ok = ok && pct < 1e-10;
    }
    detail = "DAE-vs-ODE relative error" + os.str() + " (tol 1e-10 %)";
    return ok;
}

/// Criterion 4: the algebraic coupling block of the second bundled DAE and its
/// Kronecker-reordered expansion match the reference values within 1e-3.
bool criterion4(std::string& detail) {
    Pipeline p = load("test2");
    Matrix g14 = from_rows({{-0.3807, 0.1369}, {0.0, 1.0008}, {0.0180, 0.0}});
    double err1 = max_diff(p.c.G[4], g14);

    Matrix reordered = permute_columns(kron_product(p.c.G[4], Matrix::identity(3)),
                                       axis_permutation_map({3, 2}, {1, 0}));
    Matrix expect = from_rows({{-0.38, 0.137, 0.0, 0.0, 0.0, 0.0},
                               {0.0, 0.0, -0.38, 0.137, 0.0, 0.0},
                               {0.0, 0.0, 0.0, 0.0, -0.38, 0.137},
                               {0.0, 1.0, 0.0, 0.0, 0.0, 0.0},
                               {0.0, 0.0, 0.0, 1.0, 0.0, 0.0},
                               {0.0, 0.0, 0.0, 0.0, 0.0, 1.0},
                               {0.018, 0.0, 0.0, 0.0, 0.0, 0.0},
                               {0.0, 0.0, 0.018, 0.0, 0.0, 0.0},
                               {0.0, 0.0, 0.0, 0.0, 0.018, 0.0}});
    double err2 = max_diff(reordered, expect);
    detail = "coupling block error " + std::to_string(err1) + ", reordered 9x6 error " +
             std::to_string(err2) + " (tol 1e-3)";
    return err1 <= 1e-3 && err2 <= 1e-3;
}

/// Criterion 5: the first-order modes of the third bundled system match the
/// reference spectrum {-1.0708, -0.133 +/- j1.7165} within 1e-3, with the
/// oscillatory mode at 0.2732 Hz (tol 1e-3) and 7.7266 % damping (tol 0.01 pp).
///
/// The circulated statement of this system has no real equilibrium; the bundled fixture
/// uses the sign-corrected vector field, whose spectrum differs. This check
/// asserts the reference numbers faithfully and is expected to fail.
bool criterion5(std::string& detail) {
    Pipeline p = load("test3");
    std::vector<Complex> eigs = eigenvalues(first_order_matrix(p.c));
    std::vector<Complex> reference{Complex(-1.0708, 0.0), Complex(-0.133, 1.7165),
                                   Complex(-0.133, -1.7165)};
    MatchReport match = match_spectra(eigs, reference, 1e-3);

    bool mode_ok = false;
    double freq = 0.0, damp = 0.0;
    for (const Mode& m : mode_report(eigs).modes) {
        if (!m.frequency_hz || m.eigenvalue.imag() <= 0.0) continue;
        freq = *m.frequency_hz;
        damp = m.damping * 100.0;
        mode_ok = std::abs(freq - 0.2732) <= 1e-3 && std::abs(damp - 7.7266) <= 0.01;
    }
    std::ostringstream os;
    os << "computed eigenvalues:";
    for (Complex l : eigs) os << " (" << l.real() << (l.imag() < 0 ? "" : "+") << l.imag() << "j)";
    os << ", oscillatory mode " << freq << " Hz / " << damp
       << " % damping; reference {-1.0708, -0.133+/-1.7165j} / 0.2732 Hz / 7.7266 %"
       << " (spectrum tol 1e-3, max matched distance " << match.max_distance << ")";
    detail = os.str();
    return match.pass && mode_ok;
}

/// Criterion 6: for the third bundled system at orders 2 and 3, the condensed
/// reduced spectrum equals the combination spectrum of the first-order modes
/// within 1e-6.
bool criterion6(std::string& detail) {
    Pipeline p = load("test3");
    std::vector<Complex> base = eigenvalues(first_order_matrix(p.c));
    std::ostringstream os;
    bool ok = true;
    for (int order : {2, 3}) {
        ReducedOde red = reduce(p.c, order);
        std::vector<Complex> got = eigenvalues(condensed(red.ftilde11, p.c.N, order));
        MatchReport match = match_spectra(got, combination_spectrum(base, order), 1e-6);
        os << " order " << order << ": max distance " << match.max_distance;
        ok = ok && match.pass;
    }
    detail = "condensed spectra vs combination spectra" + os.str() + " (tol 1e-6)";
    return ok;
}

/// Criterion 7: for the third bundled system with perturbation (-0.05 each),
/// T = 10, dt = 0.01, per-state RMS error is monotone in the truncation order
/// (cubic <= quadratic <= linear), strictly for at least 2 of the 3 states.
bool criterion7(std::string& detail) {
    Pipeline p = load("test3");
    std::vector<double> dx0(p.c.N, -0.05);
    std::vector<double> x0 = p.eq.x_sep;
    for (std::size_t i = 0; i < x0.size(); ++i) x0[i] += dx0[i];
    Trajectory truth = simulate_dae(p.model, x0, p.eq.z_sep, 10.0, 0.01);

    std::vector<std::vector<double>> rms;
    for (int order : {1, 2, 3}) {
        Matrix a = order == 1 ? first_order_matrix(p.c) : reduce(p.c, order).ftilde11;
        Trajectory lin = simulate_linear(a, dx0, p.eq.x_sep, order, 10.0, 0.01);
        rms.push_back(compare(truth, lin).rms);
    }
    bool monotone = true;
    int strict = 0;
    std::ostringstream os;
    for (std::size_t j = 0; j < p.c.N; ++j) {
        monotone = monotone && rms[2][j] <= rms[1][j] && rms[1][j] <= rms[0][j];
        if (rms[2][j] < rms[1][j] && rms[1][j] < rms[0][j]) ++strict;
        os << " x" << j + 1 << ": " << rms[0][j] << " / " << rms[1][j] << " / " << rms[2][j];
    }
    detail = "RMS linear/quadratic/cubic" + os.str() + "; strict improvements " +
             std::to_string(strict) + "/3 (need >= 2)";
    return monotone && strict >= 2;
}

CoefficientSet random_coefficients(std::size_t N, std::size_t M) {
    CoefficientSet c;
    c.N = N;
    c.M = M;
    std::vector<std::size_t> dims{0, N,     N * N, N * N * N, M,
                                  N * M,   M * M, N * N * M, N * M * M,
                                  M * M * M};
    for (int j = 1; j <= 9; ++j) {
        c.G[j] = random_matrix(N, dims[static_cast<std::size_t>(j)]);
        c.H[j] = random_matrix(M, dims[static_cast<std::size_t>(j)]);
    }
    c.det_H14 = determinant(c.H[4]);
    return c;
}

/// Hadamard bound on |det|: product of row 2-norms.
double hadamard_bound(const Matrix& a) {
    double prod = 1.0;
    for (std::size_t i = 0; i < a.rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols; ++j) s += a(i, j) * a(i, j);
        prod *= std::sqrt(s);
    }
    return prod;
}

/// Criterion 8: on 20 random order-3 systems (N = 2, M in {1, 2}) the direct
/// determinant of the algebraic block equals the block product within 1e-6
/// relative error; singular constraint Jacobians give |det F22| below
/// 1e-10 x Hadamard bound and make the reduction throw regularity_error.
bool criterion8(std::string& detail) {
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t M = rep % 2 == 0 ? 1 : 2;
        CoefficientSet c = random_coefficients(2, M);
        if (std::abs(c.det_H14) < 0.05) {
            --rep; // re-draw near-singular cases; they are covered separately below
            continue;
        }
        DetReport r = det_product_check(c);
        worst = std::max(worst, r.rel_error);
    }

    bool singular_ok = true;
    for (std::size_t M : {std::size_t(1), std::size_t(2)}) {
        CoefficientSet c = random_coefficients(2, M);
        c.H[4] = Matrix(M, M);
        for (std::size_t i = 0; i < M; ++i)
            for (std::size_t j = 0; j < M; ++j) c.H[4](i, j) = 1.0; // rank one: det exactly 0
        if (M == 1) c.H[4](0, 0) = 0.0;
        c.det_H14 = determinant(c.H[4]);
        CarlemanDaeSystem sys =
            assemble(c, build_g_blocks(c, 3), build_h_blocks(c, 3), 3);
        double det = determinant(sys.F22);
        singular_ok = singular_ok && std::abs(det) <= 1e-10 * hadamard_bound(sys.F22);
        bool threw = false;
        try {
            kron_reduce(sys);
        } catch (const regularity_error&) {
            threw = true;
        }
        singular_ok = singular_ok && threw;
    }
    detail = "20 random systems: worst det rel error " + std::to_string(worst) +
             " (tol 1e-6); singular cases " + (singular_ok ? "detected" : "MISSED");
    return worst <= 1e-6 && singular_ok;
}

/// Criterion 9: on all three bundled fixtures every coefficient entry matches a
/// Richardson-extrapolated central-difference oracle within 1e-4, and the
/// third-order Taylor reconstruction of the vector field is accurate to
/// 10 ||delta||^4 at 50 random perturbations with ||delta|| <= 0.01.
bool criterion9(std::string& detail) {
    auto factorial = [](int n) { return n <= 1 ? 1.0 : n == 2 ? 2.0 : 6.0; };
    double worst_fd = 0.0, worst_taylor = 0.0;
    for (const char* name : {"test1", "test2", "test3"}) {
        Pipeline p = load(name);
        const std::size_t N = p.c.N, M = p.c.M;
        for (int j = 1; j <= 9; ++j) {
            auto axes = p.c.block_axes(j);
            int nx = 0, nz = 0;
            for (const auto& ax : axes) (ax.first == VarKind::State ? nx : nz)++;
            double fact = factorial(nx) * factorial(nz);
            std::vector<std::size_t> idx(axes.size(), 0);
            for (std::size_t col = 0; col < p.c.G[j].cols; ++col) {
                std::vector<std::string> multi;
                for (std::size_t a = 0; a < axes.size(); ++a)
                    multi.push_back(axes[a].first == VarKind::State
                                        ? p.model.states[idx[a]]
                                        : p.model.algebraics[idx[a]]);
                for (std::size_t r = 0; r < N; ++r)
                    worst_fd = std::max(
                        worst_fd, std::abs(p.c.G[j](r, col) -
                                           fd_oracle(p.model, p.eq, Func::G, r, multi) / fact));
                for (std::size_t r = 0; r < M; ++r)
                    worst_fd = std::max(
                        worst_fd, std::abs(p.c.H[j](r, col) -
                                           fd_oracle(p.model, p.eq, Func::H, r, multi) / fact));
                for (std::size_t a = axes.size(); a-- > 0;) {
                    if (++idx[a] < axes[a].second) break;
                    idx[a] = 0;
                }
            }
        }

        // Taylor reconstruction of g at random perturbations of states and algebraics
        std::vector<std::string> names = p.model.all_names();
        for (int rep = 0; rep < 50; ++rep) {
            std::vector<double> delta(N + M);
            double nrm = 0.0;
            for (double& d : delta) {
                d = uniform(-1.0, 1.0);
                nrm += d * d;
            }
            nrm = std::sqrt(nrm);
            double target = uniform(1e-4, 0.01);
            for (double& d : delta) d *= target / nrm;

            std::vector<double> point(N + M);
            for (std::size_t i = 0; i < N; ++i) point[i] = p.eq.x_sep[i] + delta[i];
            for (std::size_t i = 0; i < M; ++i) point[N + i] = p.eq.z_sep[i] + delta[N + i];

            std::vector<double> recon(N, 0.0);
            for (int j = 1; j <= 9; ++j) {
                auto axes = p.c.block_axes(j);
                std::vector<std::size_t> idx(axes.size(), 0);
                for (std::size_t col = 0; col < p.c.G[j].cols; ++col) {
                    double mono = 1.0;
                    for (std::size_t a = 0; a < axes.size(); ++a)
                        mono *= axes[a].first == VarKind::State ? delta[idx[a]]
                                                                : delta[N + idx[a]];
                    for (std::size_t r = 0; r < N; ++r) recon[r] += p.c.G[j](r, col) * mono;
                    for (std::size_t a = axes.size(); a-- > 0;) {
                        if (++idx[a] < axes[a].second) break;
                        idx[a] = 0;
                    }
                }
            }
            double norm4 = target * target * target * target;
            for (std::size_t r = 0; r < N; ++r) {
                double direct = eval(p.model.odes[r], names, point);
                worst_taylor = std::max(worst_taylor, std::abs(direct - recon[r]) / norm4);
            }
        }
    }
    detail = "worst coefficient-vs-oracle error " + std::to_string(worst_fd) +
             " (tol 1e-4); worst Taylor residual " + std::to_string(worst_taylor) +
             " x ||delta||^4 (tol 10)";
    return worst_fd <= 1e-4 && worst_taylor <= 10.0;
}

/// Criterion 10: nonlinear trajectories keep ||h||_inf <= 1e-10 at every stored
/// point on all three fixtures, and the second fixture's transcendental guard
/// expressions stay inside their principal domains along the trajectory.
bool criterion10(std::string& detail) {
    double worst_h = 0.0;
    bool guards_ok = true;
    for (const char* name : {"test1", "test2", "test3"}) {
        Pipeline p = load(name);
        std::vector<double> x0 = p.eq.x_sep;
        for (double& v : x0) v -= 0.05;
        Trajectory t = simulate_dae(p.model, x0, p.eq.z_sep, 10.0, 0.01);
        std::vector<std::string> names = p.model.all_names();
        for (std::size_t k = 0; k < t.times.size(); ++k) {
            std::vector<double> point;
            for (std::size_t i = 0; i < p.c.N; ++i) point.push_back(t.states(k, i));
            for (std::size_t i = 0; i < p.c.M; ++i) point.push_back(t.algebraics(k, i));
            for (const Expr& h : p.model.constraints)
                worst_h = std::max(worst_h, std::abs(eval(h, names, point)));
            if (std::strcmp(name, "test2") == 0) {
                double x1 = t.states(k, 0), z2 = t.algebraics(k, 1);
                guards_ok = guards_ok && std::abs(x1 + z2) < M_PI / 2.0;
                double prod = x1 * z2;
                guards_ok = guards_ok && prod > -M_PI && prod <= M_PI;
            }
        }
    }
    detail = "worst ||h||_inf along trajectories " + std::to_string(worst_h) +
             " (tol 1e-10); transcendental guards " + (guards_ok ? "inside" : "OUTSIDE") +
             " principal domains";
    return worst_h <= 1e-10 && guards_ok;
}

} // namespace

int main(int argc, char** argv) {
    int criterion = 0;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::strcmp(argv[i], "--criterion") == 0) criterion = std::atoi(argv[i + 1]);
    if (criterion < 1 || criterion > 10) {
        std::fprintf(stderr, "usage: acceptance --criterion N   (N in 1..10)\n");
        return 2;
    }

    using Fn = bool (*)(std::string&);
    static const Fn checks[10] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                  criterion6, criterion7, criterion8, criterion9, criterion10};
    std::string detail;
    bool pass = false;
    try {
        pass = checks[criterion - 1](detail);
    } catch (const std::exception& e) {
        detail = std::string("unexpected exception: ") + e.what();
    }
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    return pass ? 0 : 1;
}
