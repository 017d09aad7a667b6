#pragma once

#include <random>

#include "carl/matrix.hpp"

namespace testutil {

inline std::mt19937& rng() {
    static std::mt19937 gen(20240915u);
    return gen;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline carl::Matrix random_matrix(std::size_t r, std::size_t c, double lo = -1.0,
                                  double hi = 1.0) {
    carl::Matrix m(r, c);
    for (double& v : m.data) v = uniform(lo, hi);
    return m;
}

inline std::vector<double> random_vector(std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::vector<double> v(n);
    for (double& x : v) x = uniform(lo, hi);
    return v;
}

inline double max_abs_diff(const carl::Matrix& a, const carl::Matrix& b) {
    return carl::max_abs(a - b);
}

inline carl::Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    carl::Matrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

} // namespace testutil
