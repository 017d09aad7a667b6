#pragma once

#include <cstddef>
#include <vector>

#include "carl/errors.hpp"

namespace carl {

/// Dense real matrix, row-major storage.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static Matrix identity(std::size_t n);
    static Matrix zeros(std::size_t r, std::size_t c) { return Matrix(r, c); }

    bool all_finite() const;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

std::vector<double> operator*(const Matrix& a, const std::vector<double>& v);

double frobenius_norm(const Matrix& a);
double one_norm(const Matrix& a);
double max_abs(const Matrix& a);
double inf_norm(const std::vector<double>& v);

/// Copy `block` into `dst` with upper-left corner (r0, c0).
void set_block(Matrix& dst, std::size_t r0, std::size_t c0, const Matrix& block);
Matrix get_block(const Matrix& src, std::size_t r0, std::size_t c0,
                 std::size_t r, std::size_t c);

/// LU factorization with partial pivoting (PA = LU).
struct LuFactor {
    Matrix lu;
    std::vector<std::size_t> piv;
    int pivot_sign = 1;

    double determinant() const;
    bool singular() const;
};

LuFactor lu_factor(Matrix a);

/// Solve A X = B using a precomputed factorization. Throws numeric_error if singular.
Matrix lu_solve(const LuFactor& f, const Matrix& b);
std::vector<double> lu_solve(const LuFactor& f, const std::vector<double>& b);

double determinant(const Matrix& a);

/// 1-norm condition estimate ||A||_1 * ||A^-1||_1 from an existing factorization.
double condition_estimate(const LuFactor& f, double a_one_norm);

} // namespace carl
