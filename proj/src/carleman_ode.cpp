#include "carl/carleman_ode.hpp"

#include <stdexcept>

namespace carl {

CarlemanOdeSystem build_extended_ode(const std::vector<Matrix>& a1, std::size_t n, int order) {
    if (order < 1 || order > 3)
        throw std::invalid_argument("build_extended_ode: order must be 1, 2, or 3");
    for (int k = 1; k <= order; ++k) {
        if (static_cast<std::size_t>(k) >= a1.size())
            throw numeric_error("build_extended_ode: missing A_{1," + std::to_string(k) + "}");
        std::size_t cols = 1;
        for (int p = 0; p < k; ++p) cols *= n;
        const Matrix& b = a1[static_cast<std::size_t>(k)];
        if (b.rows != n || b.cols != cols)
            throw numeric_error("build_extended_ode: A_{1," + std::to_string(k) +
                                "} has inconsistent shape");
    }

    std::vector<std::size_t> dims, offs{0};
    std::size_t p = 1;
    for (int k = 1; k <= order; ++k) {
        p *= n;
        dims.push_back(p);
        offs.push_back(offs.back() + p);
    }

    CarlemanOdeSystem sys;
    sys.order = order;
    sys.n = n;
    sys.basis = MonomialBasis::lifted_state(n, order);
    sys.a_nord = Matrix(offs.back(), offs.back());
    for (int i = 1; i <= order; ++i)
        for (int j = i; j <= order; ++j) {
            if (j - i + 1 > order) continue; // truncation
            set_block(sys.a_nord, offs[static_cast<std::size_t>(i - 1)],
                      offs[static_cast<std::size_t>(j - 1)], carleman_block(a1, i, j, n));
        }
    return sys;
}

} // namespace carl
