#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "carl/carleman_ode.hpp"
#include "carl/fixtures.hpp"
#include "carl/spectral.hpp"
#include "carl/taylor.hpp"
#include "helpers.hpp"

using namespace carl;
using testutil::from_rows;

TEST_CASE("order 1 returns the plain Jacobian") {
    std::vector<Matrix> a1(2);
    a1[1] = testutil::random_matrix(3, 3);
    CarlemanOdeSystem sys = build_extended_ode(a1, 3, 1);
    CHECK(sys.dim() == 3);
    CHECK(testutil::max_abs_diff(sys.a_nord, a1[1]) == 0.0);
}

TEST_CASE("extended matrix of the first bundled ODE matches the reference values") {
    ModelSpec m = fixture_model("test1-ode");
    CoefficientSet c = coefficient_matrices(m, find_equilibrium(m));
    std::vector<Matrix> a1{Matrix(), c.G[1], c.G[2]};
    CarlemanOdeSystem sys = build_extended_ode(a1, 2, 2);
    Matrix expect = from_rows({{-1.9, -0.6, 0.2, 0.0, 0.0, 0.0},
                               {-2.1, -2.1, 0.3, 0.05, 0.05, -0.15},
                               {0.0, 0.0, -3.8, -0.6, -0.6, 0.0},
                               {0.0, 0.0, -2.1, -4.0, 0.0, -0.6},
                               {0.0, 0.0, -2.1, 0.0, -4.0, -0.6},
                               {0.0, 0.0, 0.0, -2.1, -2.1, -4.2}});
    CHECK(testutil::max_abs_diff(sys.a_nord, expect) <= 1e-12);

    CondensedMatrix cd = condense(sys.a_nord, sys.basis, sys.basis);
    CHECK(cd.matrix.rows == 5);
    CHECK(cd.matrix.cols == 5);
}

TEST_CASE("blocks below the diagonal are zero") {
    std::vector<Matrix> a1{Matrix(), testutil::random_matrix(2, 2),
                           testutil::random_matrix(2, 4), testutil::random_matrix(2, 8)};
    CarlemanOdeSystem sys = build_extended_ode(a1, 2, 3);
    REQUIRE(sys.dim() == 14);
    std::vector<std::size_t> offsets{0, 2, 6, 14};
    for (int bi = 0; bi < 3; ++bi)
        for (int bj = 0; bj < bi; ++bj)
            for (std::size_t r = offsets[bi]; r < offsets[bi + 1]; ++r)
                for (std::size_t col = offsets[bj]; col < offsets[bj + 1]; ++col)
                    CHECK(sys.a_nord(r, col) == 0.0);
}

TEST_CASE("spectrum of the condensed lifted matrix is the combination spectrum") {
    Matrix a = from_rows({{-1.3, 0.4}, {0.2, -2.1}});
    std::vector<Matrix> a1{Matrix(), a, Matrix(2, 4), Matrix(2, 8)};
    CarlemanOdeSystem sys = build_extended_ode(a1, 2, 3);
    CondensedMatrix cd = condense(sys.a_nord, sys.basis, sys.basis);
    std::vector<Complex> expect = combination_spectrum(eigenvalues(a), 3);
    MatchReport rep = match_spectra(eigenvalues(cd.matrix), expect, 1e-8);
    CHECK(rep.pass);
    CHECK(rep.max_distance <= 1e-8);
}

TEST_CASE("invalid inputs are rejected") {
    std::vector<Matrix> a1(2);
    a1[1] = Matrix::identity(2);
    CHECK_THROWS_AS(build_extended_ode(a1, 2, 4), std::invalid_argument);
    CHECK_THROWS_AS(build_extended_ode(a1, 2, 0), std::invalid_argument);
    // order 2 needs A_{1,2} for the top row
    CHECK_THROWS_AS(build_extended_ode(a1, 2, 2), numeric_error);
}
