#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "carl/carleman_dae.hpp"
#include "carl/expr.hpp"
#include "carl/fixtures.hpp"
#include "carl/sim.hpp"
#include "helpers.hpp"

using namespace carl;
using testutil::from_rows;

namespace {

ReducedOde reduce_fixture(const std::string& name, int order) {
    ModelSpec m = fixture_model(name);
    CoefficientSet c = coefficient_matrices(m, find_equilibrium(m));
    return kron_reduce(assemble(c, build_g_blocks(c, order), build_h_blocks(c, order), order));
}

} // namespace

TEST_CASE("expm matches closed forms") {
    CHECK(testutil::max_abs_diff(expm(Matrix(3, 3)), Matrix::identity(3)) == 0.0);

    Matrix rot(2, 2);
    rot(0, 1) = 1.0;
    rot(1, 0) = -1.0; // generator of a rotation
    Matrix e = expm(2.0 * rot);
    Matrix expect = from_rows({{std::cos(2.0), std::sin(2.0)}, {-std::sin(2.0), std::cos(2.0)}});
    CHECK(testutil::max_abs_diff(e, expect) <= 1e-13);

    Matrix d(2, 2);
    d(0, 0) = -3.0;
    d(1, 1) = 0.5;
    Matrix ed = expm(d);
    CHECK(ed(0, 0) == doctest::Approx(std::exp(-3.0)).epsilon(1e-13));
    CHECK(ed(1, 1) == doctest::Approx(std::exp(0.5)).epsilon(1e-13));
    CHECK(ed(0, 1) == 0.0);
}

TEST_CASE("scalar linear propagation tracks the exponential decay") {
    Matrix a = from_rows({{-1.0}});
    Trajectory t = simulate_linear(a, {0.5}, {0.0}, 1, 5.0, 0.01);
    REQUIRE(t.times.size() == 501);
    for (std::size_t k = 0; k < t.times.size(); ++k)
        CHECK(std::abs(t.states(k, 0) - 0.5 * std::exp(-t.times[k])) <= 1e-9);
}

TEST_CASE("nonlinear DAE trajectories decay to equilibrium and respect constraints") {
    ModelSpec m = fixture_model("test1");
    Trajectory t = simulate_dae(m, {0.1, 0.1}, m.guess_z, 20.0, 0.01);
    std::size_t last = t.times.size() - 1;
    CHECK(std::abs(t.states(last, 0)) <= 1e-6);
    CHECK(std::abs(t.states(last, 1)) <= 1e-6);

    std::vector<std::string> names = m.all_names();
    for (std::size_t k = 0; k < t.times.size(); k += 50) {
        std::vector<double> point;
        for (std::size_t i = 0; i < m.states.size(); ++i) point.push_back(t.states(k, i));
        for (std::size_t i = 0; i < m.algebraics.size(); ++i)
            point.push_back(t.algebraics(k, i));
        for (const Expr& h : m.constraints)
            CHECK(std::abs(eval(h, names, point)) <= 1e-10);
    }
}

TEST_CASE("starting at the equilibrium produces no drift") {
    for (const char* name : {"test1", "test2", "test3"}) {
        ModelSpec m = fixture_model(name);
        Equilibrium eq = find_equilibrium(m);
        Trajectory t = simulate_dae(m, eq.x_sep, eq.z_sep, 2.0, 0.01);
        std::size_t last = t.times.size() - 1;
        for (std::size_t i = 0; i < m.states.size(); ++i)
            CHECK(std::abs(t.states(last, i) - eq.x_sep[i]) <= 1e-9);
    }
}

TEST_CASE("compare reports exact zero for identical runs and the offset otherwise") {
    ModelSpec m = fixture_model("test1");
    Trajectory a = simulate_dae(m, {0.1, 0.05}, m.guess_z, 1.0, 0.01);
    Trajectory b = a;
    CompareReport same = compare(a, b);
    for (double v : same.rms) CHECK(v == 0.0);
    for (double v : same.max_abs) CHECK(v == 0.0);

    for (std::size_t k = 0; k < b.times.size(); ++k) b.states(k, 1) += 0.25;
    CompareReport off = compare(a, b);
    CHECK(off.rms[0] == 0.0);
    CHECK(off.rms[1] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(off.max_abs[1] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("the integrator converges at fourth order") {
    ModelSpec m = fixture_model("test1");
    auto endpoint = [&](double dt) {
        Trajectory t = simulate_dae(m, {0.1, 0.1}, m.guess_z, 1.0, dt);
        std::size_t last = t.times.size() - 1;
        return std::pair<double, double>(t.states(last, 0), t.states(last, 1));
    };
    auto [a0, a1] = endpoint(0.02);
    auto [b0, b1] = endpoint(0.01);
    auto [c0, c1] = endpoint(0.005);
    double coarse = std::max(std::abs(a0 - b0), std::abs(a1 - b1));
    double fine = std::max(std::abs(b0 - c0), std::abs(b1 - c1));
    CHECK(coarse <= 16.0 * fine * 1.5 + 1e-14); // allow 50% slack over the asymptotic rate
    CHECK(coarse >= 16.0 * fine / 4.0);         // but it must clearly beat second order
}

TEST_CASE("lifting a linear system adds nothing: order 3 equals order 1 exactly") {
    ModelSpec m = parse_model(R"({"name":"lin","states":["x1","x2"],"algebraics":[],
        "odes":["-x1 + 0.5*x2","0.25*x1 - 2*x2"],"constraints":[],
        "guess":{"x":[0.0,0.0],"z":[]}})");
    Equilibrium eq = find_equilibrium(m);
    CoefficientSet c = coefficient_matrices(m, eq);
    std::vector<Matrix> a1{Matrix(), c.G[1], c.G[2], c.G[3]};
    Matrix lifted = build_extended_ode(a1, 2, 3).a_nord;
    std::vector<double> dx0{0.07, -0.04};
    Trajectory t3 = simulate_linear(lifted, dx0, eq.x_sep, 3, 5.0, 0.01);
    Trajectory t1 = simulate_linear(c.G[1], dx0, eq.x_sep, 1, 5.0, 0.01);
    CompareReport rep = compare(t1, t3);
    for (double v : rep.max_abs) CHECK(v <= 1e-12);
}

TEST_CASE("higher truncation orders track the nonlinear DAE more closely") {
    ModelSpec m = fixture_model("test2");
    Equilibrium eq = find_equilibrium(m);
    std::vector<double> dx0{-0.05, -0.05, -0.05};
    std::vector<double> x0 = eq.x_sep;
    for (std::size_t i = 0; i < x0.size(); ++i) x0[i] += dx0[i];
    Trajectory truth = simulate_dae(m, x0, eq.z_sep, 10.0, 0.01);

    ReducedOde r1 = reduce_fixture("test2", 1);
    ReducedOde r3 = reduce_fixture("test2", 3);
    Trajectory lin1 = simulate_linear(r1.ftilde11, dx0, eq.x_sep, 1, 10.0, 0.01);
    Trajectory lin3 = simulate_linear(r3.ftilde11, dx0, eq.x_sep, 3, 10.0, 0.01);
    CompareReport e1 = compare(truth, lin1);
    CompareReport e3 = compare(truth, lin3);
    for (std::size_t i = 0; i < e1.rms.size(); ++i) CHECK(e3.rms[i] < e1.rms[i]);
}
