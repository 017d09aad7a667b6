#include "carl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace carl {

namespace {

/// Minimal dense complex matrix used only inside the eigensolver.
class CMat {
public:
    CMat(std::size_t n) : n_(n), d_(n * n) {}
    Complex& operator()(std::size_t i, std::size_t j) { return d_[i * n_ + j]; }
    Complex operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
    std::size_t n() const { return n_; }

private:
    std::size_t n_;
    std::vector<Complex> d_;
};

/// Householder reduction to upper Hessenberg form (similarity transform).
void hessenberg(CMat& a) {
    const std::size_t n = a.n();
    if (n < 3) return;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        // reflector zeroing a(k+2.., k)
        double scale = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) scale += std::norm(a(i, k));
        if (scale == 0.0) continue;
        Complex x0 = a(k + 1, k);
        double xnorm = std::sqrt(scale);
        Complex phase = (x0 == Complex(0.0)) ? Complex(1.0) : x0 / std::abs(x0);
        Complex alpha = -phase * xnorm;
        std::vector<Complex> v(n, Complex(0.0));
        for (std::size_t i = k + 1; i < n; ++i) v[i] = a(i, k);
        v[k + 1] -= alpha;
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 == 0.0) continue;
        // A <- (I - 2 v v^H / v^H v) A
        for (std::size_t j = 0; j < n; ++j) {
            Complex s(0.0);
            for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * a(i, j);
            s *= 2.0 / vnorm2;
            for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= s * v[i];
        }
        // A <- A (I - 2 v v^H / v^H v)
        for (std::size_t i = 0; i < n; ++i) {
            Complex s(0.0);
            for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
            s *= 2.0 / vnorm2;
            for (std::size_t i2 = k + 1; i2 < n; ++i2) a(i, i2) -= s * std::conj(v[i2]);
        }
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = Complex(0.0);
    }
}

struct Givens {
    double c;
    Complex s;
};

Givens make_givens(Complex f, Complex g) {
    double fa = std::abs(f), ga = std::abs(g);
    if (ga == 0.0) return {1.0, Complex(0.0)};
    if (fa == 0.0) return {0.0, Complex(1.0)};
    double r = std::hypot(fa, ga);
    return {fa / r, (f / fa) * std::conj(g) / r};
}

/// Wilkinson shift from the trailing 2x2 block [[a,b],[c,d]].
Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
    Complex delta = (a - d) * 0.5;
    Complex sd = std::sqrt(delta * delta + b * c);
    Complex den1 = delta + sd, den2 = delta - sd;
    Complex den = std::abs(den1) >= std::abs(den2) ? den1 : den2;
    if (den == Complex(0.0)) return d;
    return d - (b * c) / den;
}

/// Shifted QR on the Hessenberg window [lo, hi] (inclusive), in place.
void qr_step(CMat& a, std::size_t lo, std::size_t hi, Complex mu) {
    for (std::size_t i = lo; i <= hi; ++i) a(i, i) -= mu;
    std::vector<Givens> rots;
    rots.reserve(hi - lo);
    for (std::size_t k = lo; k < hi; ++k) {
        Givens g = make_givens(a(k, k), a(k + 1, k));
        rots.push_back(g);
        for (std::size_t j = k; j <= hi; ++j) {
            Complex u = a(k, j), v = a(k + 1, j);
            a(k, j) = g.c * u + g.s * v;
            a(k + 1, j) = -std::conj(g.s) * u + g.c * v;
        }
    }
    for (std::size_t k = lo; k < hi; ++k) {
        const Givens& g = rots[k - lo];
        std::size_t top = std::min(hi, k + 1);
        for (std::size_t i = lo; i <= top; ++i) {
            Complex u = a(i, k), v = a(i, k + 1);
            a(i, k) = g.c * u + std::conj(g.s) * v;
            a(i, k + 1) = -g.s * u + g.c * v;
        }
    }
    for (std::size_t i = lo; i <= hi; ++i) a(i, i) += mu;
}

/// Enforce conjugate-pair closure of a real matrix's computed spectrum.
void symmetrize_pairs(std::vector<Complex>& eigs, double scale) {
    const double tol = std::max(1e-9, 1e-9 * scale);
    std::vector<bool> used(eigs.size(), false);
    for (std::size_t i = 0; i < eigs.size(); ++i) {
        if (used[i] || eigs[i].imag() == 0.0) continue;
        std::size_t best = eigs.size();
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < eigs.size(); ++j) {
            if (j == i || used[j]) continue;
            double d = std::abs(eigs[j] - std::conj(eigs[i]));
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        if (best < eigs.size() && best_d <= 1e-6 * std::max(1.0, scale)) {
            Complex avg = (eigs[i] + std::conj(eigs[best])) * 0.5;
            eigs[i] = avg;
            eigs[best] = std::conj(avg);
            used[i] = used[best] = true;
        } else if (std::abs(eigs[i].imag()) <= tol) {
            eigs[i] = Complex(eigs[i].real(), 0.0);
            used[i] = true;
        }
    }
}

} // namespace

std::vector<Complex> eigenvalues(const Matrix& m) {
    if (m.rows != m.cols) throw numeric_error("eigenvalues: matrix not square");
    if (!m.all_finite()) throw numeric_error("eigenvalues: non-finite entries");
    const std::size_t n = m.rows;
    if (n == 0) return {};
    if (n == 1) return {Complex(m(0, 0), 0.0)};

    CMat a(n);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = Complex(m(i, j), 0.0);
            scale = std::max(scale, std::abs(m(i, j)));
        }
    if (scale == 0.0) return std::vector<Complex>(n, Complex(0.0));
    hessenberg(a);

    constexpr double eps = 1e-15;
    constexpr int iter_cap = 100;
    std::vector<Complex> eigs;
    eigs.reserve(n);
    std::size_t hi = n - 1;
    int iters = 0;
    while (true) {
        // deflate converged trailing eigenvalues
        while (hi > 0) {
            double off = std::abs(a(hi, hi - 1));
            double diag = std::abs(a(hi, hi)) + std::abs(a(hi - 1, hi - 1));
            if (off <= eps * std::max(diag, scale)) {
                a(hi, hi - 1) = Complex(0.0);
                eigs.push_back(a(hi, hi));
                --hi;
                iters = 0;
            } else {
                break;
            }
        }
        if (hi == 0) {
            eigs.push_back(a(0, 0));
            break;
        }
        // find the window start: first zero subdiagonal above hi
        std::size_t lo = hi;
        while (lo > 0) {
            double off = std::abs(a(lo, lo - 1));
            double diag = std::abs(a(lo, lo)) + std::abs(a(lo - 1, lo - 1));
            if (off <= eps * std::max(diag, scale)) {
                a(lo, lo - 1) = Complex(0.0);
                break;
            }
            --lo;
        }
        if (++iters > iter_cap)
            throw numeric_error("eigenvalues: QR iteration failed to converge");
        Complex mu = (iters % 20 == 0)
                         // occasional exceptional shift to break symmetry stalls
                         ? a(hi, hi) + Complex(std::abs(a(hi, hi - 1)), 0.0)
                         : wilkinson_shift(a(hi - 1, hi - 1), a(hi - 1, hi), a(hi, hi - 1),
                                           a(hi, hi));
        qr_step(a, lo, hi, mu);
    }

    symmetrize_pairs(eigs, scale);
    std::sort(eigs.begin(), eigs.end(), [](const Complex& x, const Complex& y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    return eigs;
}

SpectrumReport mode_report(const std::vector<Complex>& eigs, const std::string& source) {
    SpectrumReport rep;
    rep.source = source;
    for (const Complex& lam : eigs) {
        Mode m;
        m.eigenvalue = lam;
        if (lam.imag() != 0.0) m.frequency_hz = std::abs(lam.imag()) / (2.0 * std::numbers::pi);
        double mag = std::abs(lam);
        m.damping = mag == 0.0 ? 0.0 : -lam.real() / mag;
        rep.modes.push_back(m);
    }
    return rep;
}

std::vector<Complex> combination_spectrum(const std::vector<Complex>& base, int order) {
    if (order < 1 || order > 3)
        throw numeric_error("combination_spectrum: order must be 1, 2, or 3");
    std::vector<Complex> out;
    const std::size_t n = base.size();
    for (std::size_t i = 0; i < n; ++i) out.push_back(base[i]);
    if (order >= 2)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) out.push_back(base[i] + base[j]);
    if (order >= 3)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                for (std::size_t k = j; k < n; ++k) out.push_back(base[i] + base[j] + base[k]);
    return out;
}

MatchReport match_spectra(const std::vector<Complex>& a, const std::vector<Complex>& b,
                          double tol) {
    if (a.size() != b.size()) throw numeric_error("match_spectra: cardinality mismatch");
    const std::size_t n = a.size();
    MatchReport rep;
    if (n == 0) {
        rep.pass = true;
        return rep;
    }

    // Hungarian algorithm with potentials, O(n^3).
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) cost[i][j] = std::abs(a[i] - b[j]);

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> p(n + 1, n), way(n + 1, n);
    for (std::size_t i = 0; i < n; ++i) {
        p[n] = i;
        std::size_t j0 = n;
        std::vector<double> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            std::size_t i0 = p[j0], j1 = n;
            double delta = inf;
            for (std::size_t j = 0; j < n; ++j) {
                if (used[j]) continue;
                double cur = cost[i0][j] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != n);
        do {
            std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != n);
    }

    rep.assignment.assign(n, 0);
    for (std::size_t j = 0; j < n; ++j) rep.assignment[p[j]] = j;
    for (std::size_t i = 0; i < n; ++i)
        rep.max_distance = std::max(rep.max_distance, cost[i][rep.assignment[i]]);
    rep.pass = rep.max_distance <= tol;
    return rep;
}

} // namespace carl
