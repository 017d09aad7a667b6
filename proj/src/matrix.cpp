#include "carl/matrix.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace carl {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

bool Matrix::all_finite() const {
    for (double x : data)
        if (!std::isfinite(x)) return false;
    return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) throw numeric_error("matrix product: dimension mismatch");
    Matrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw numeric_error("matrix sum: dimension mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] += b.data[i];
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw numeric_error("matrix difference: dimension mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] -= b.data[i];
    return c;
}

Matrix operator*(double s, const Matrix& a) {
    Matrix c = a;
    for (double& x : c.data) x *= s;
    return c;
}

std::vector<double> operator*(const Matrix& a, const std::vector<double>& v) {
    if (a.cols != v.size()) throw numeric_error("matrix-vector product: dimension mismatch");
    std::vector<double> out(a.rows, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols; ++j) s += a(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

double frobenius_norm(const Matrix& a) {
    double s = 0.0;
    for (double x : a.data) s += x * x;
    return std::sqrt(s);
}

double one_norm(const Matrix& a) {
    double best = 0.0;
    for (std::size_t j = 0; j < a.cols; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.rows; ++i) s += std::abs(a(i, j));
        if (s > best) best = s;
    }
    return best;
}

double max_abs(const Matrix& a) {
    double best = 0.0;
    for (double x : a.data) best = std::max(best, std::abs(x));
    return best;
}

double inf_norm(const std::vector<double>& v) {
    double best = 0.0;
    for (double x : v) best = std::max(best, std::abs(x));
    return best;
}

void set_block(Matrix& dst, std::size_t r0, std::size_t c0, const Matrix& block) {
    if (r0 + block.rows > dst.rows || c0 + block.cols > dst.cols)
        throw numeric_error("set_block: block exceeds destination bounds");
    for (std::size_t i = 0; i < block.rows; ++i)
        for (std::size_t j = 0; j < block.cols; ++j)
            dst(r0 + i, c0 + j) = block(i, j);
}

Matrix get_block(const Matrix& src, std::size_t r0, std::size_t c0,
                 std::size_t r, std::size_t c) {
    if (r0 + r > src.rows || c0 + c > src.cols)
        throw numeric_error("get_block: block exceeds source bounds");
    Matrix out(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) out(i, j) = src(r0 + i, c0 + j);
    return out;
}

double LuFactor::determinant() const {
    double d = static_cast<double>(pivot_sign);
    for (std::size_t i = 0; i < lu.rows; ++i) d *= lu(i, i);
    return d;
}

bool LuFactor::singular() const {
    for (std::size_t i = 0; i < lu.rows; ++i)
        if (lu(i, i) == 0.0) return true;
    return false;
}

LuFactor lu_factor(Matrix a) {
    if (a.rows != a.cols) throw numeric_error("lu_factor: matrix not square");
    const std::size_t n = a.rows;
    LuFactor f;
    f.piv.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
        f.piv[k] = p;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            f.pivot_sign = -f.pivot_sign;
        }
        double pivot = a(k, k);
        if (pivot == 0.0) continue;
        for (std::size_t i = k + 1; i < n; ++i) {
            a(i, k) /= pivot;
            double lik = a(i, k);
            if (lik == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= lik * a(k, j);
        }
    }
    f.lu = std::move(a);
    return f;
}

Matrix lu_solve(const LuFactor& f, const Matrix& b) {
    const std::size_t n = f.lu.rows;
    if (b.rows != n) throw numeric_error("lu_solve: right-hand side dimension mismatch");
    if (f.singular()) throw numeric_error("lu_solve: singular matrix");
    Matrix x = b;
    for (std::size_t k = 0; k < n; ++k) {
        if (f.piv[k] != k)
            for (std::size_t j = 0; j < x.cols; ++j) std::swap(x(k, j), x(f.piv[k], j));
    }
    // forward: L y = P b
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = k + 1; i < n; ++i) {
            double lik = f.lu(i, k);
            if (lik == 0.0) continue;
            for (std::size_t j = 0; j < x.cols; ++j) x(i, j) -= lik * x(k, j);
        }
    // backward: U x = y
    for (std::size_t k = n; k-- > 0;) {
        double ukk = f.lu(k, k);
        for (std::size_t j = 0; j < x.cols; ++j) x(k, j) /= ukk;
        for (std::size_t i = 0; i < k; ++i) {
            double uik = f.lu(i, k);
            if (uik == 0.0) continue;
            for (std::size_t j = 0; j < x.cols; ++j) x(i, j) -= uik * x(k, j);
        }
    }
    return x;
}

std::vector<double> lu_solve(const LuFactor& f, const std::vector<double>& b) {
    Matrix col(b.size(), 1);
    col.data = b;
    Matrix x = lu_solve(f, col);
    return x.data;
}

double determinant(const Matrix& a) {
    return lu_factor(a).determinant();
}

double condition_estimate(const LuFactor& f, double a_one_norm) {
    if (f.singular()) return std::numeric_limits<double>::infinity();
    const std::size_t n = f.lu.rows;
    Matrix inv = lu_solve(f, Matrix::identity(n));
    return a_one_norm * one_norm(inv);
}

} // namespace carl
