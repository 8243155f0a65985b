#include <chrono>
#include <cmath>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "fracfem/assembly.hpp"
#include "fracfem/tridiagonal.hpp"

using namespace fracfem;

TEST_CASE("build_mesh produces the uniform triadic meshes") {
    const Mesh1D m2 = build_mesh(2);
    REQUIRE(m2.size() == 10);
    for (std::size_t k = 0; k < 10; ++k) CHECK(m2.node(k) == static_cast<double>(k) / 9.0);

    CHECK(build_mesh(6).size() == 730);
    const Mesh1D m0 = build_mesh(0);
    REQUIRE(m0.size() == 2);
    CHECK(m0.node(0) == 0.0);
    CHECK(m0.node(1) == 1.0);
}

TEST_CASE("cantor points land exactly on triadic mesh nodes") {
    for (int n : {3, 6, 9}) {
        const Microstructure micro = Microstructure::cantor_extremes(n);
        const Mesh1D mesh = build_mesh(n);
        for (const Rational& b : micro.points(n)) CHECK(mesh.find_node(b.to_double()));
    }
}

TEST_CASE("mesh validation") {
    CHECK_THROWS_AS(Mesh1D({0.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(Mesh1D({0.0, 0.5, 0.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(Mesh1D({0.0}), std::invalid_argument);
}

TEST_CASE("assemble: zero data on {0,1/2,1} gives the bare stiffness") {
    const Mesh1D mesh({0.0, 0.5, 1.0});
    const Microstructure micro = Microstructure::cantor_extremes(0);
    const PointFunction zero_beta = PointFunction::zero(micro, 0);
    const PointFunction zero_f = PointFunction::zero(micro, 0);
    const TridiagonalSystem sys =
        assemble(mesh, micro, 0, zero_beta, {}, zero_f, BoundaryConditions::dirichlet_neumann,
                 EndpointMode::exclude);
    REQUIRE(sys.size() == 2);
    CHECK(sys.diag[0] == 4.0);
    CHECK(sys.diag[1] == 2.0);
    CHECK(sys.sub[0] == -2.0);
    CHECK(sys.super[0] == -2.0);
    CHECK(sys.rhs[0] == 0.0);
    CHECK(sys.rhs[1] == 0.0);
    const std::vector<double> u = solve_tridiagonal(sys);
    CHECK(u[0] == 0.0);
    CHECK(u[1] == 0.0);
}

TEST_CASE("assemble: single interface point toy problem") {
    // b = 1/2 with beta = 1, f = 1; develop {1/2} by zero stages
    const Mesh1D mesh({0.0, 0.5, 1.0});
    const Microstructure micro =
        Microstructure::develop(cantor_ifs(), {Rational(1, 2)}, 0);
    const PointFunction beta(micro, 0, {1.0});
    const PointFunction f(micro, 0, {1.0});
    const TridiagonalSystem sys = assemble(mesh, micro, 0, beta, {}, f,
                                           BoundaryConditions::dirichlet_neumann,
                                           EndpointMode::exclude);
    REQUIRE(sys.size() == 2);
    CHECK(sys.diag[0] == 5.0);
    CHECK(sys.diag[1] == 2.0);
    CHECK(sys.rhs[0] == 1.0);
    CHECK(sys.rhs[1] == 0.0);
    const std::vector<double> u = solve_tridiagonal(sys);
    CHECK(u[0] == Catch::Approx(1.0 / 3.0).margin(1e-15));
    CHECK(u[1] == Catch::Approx(1.0 / 3.0).margin(1e-15));
}

TEST_CASE("assemble rejects microstructure points off the mesh") {
    const Mesh1D mesh({0.0, 0.5, 1.0});
    const Microstructure micro = Microstructure::cantor_extremes(1);  // contains 1/3
    const PointFunction beta = PointFunction::zero(micro, 1);
    const PointFunction f = PointFunction::zero(micro, 1);
    CHECK_THROWS_AS(assemble(mesh, micro, 1, beta, {}, f,
                             BoundaryConditions::dirichlet_neumann, EndpointMode::exclude),
                    std::invalid_argument);
}

TEST_CASE("volume load F=1 under dirichlet_dirichlet is nodally exact") {
    // -p'' = 1, p(0) = p(1) = 0 has p(x) = x(1-x)/2; P1 with exact load
    // integration interpolates it at the nodes.
    for (int stage : {1, 2, 3}) {
        const Microstructure micro = Microstructure::cantor_extremes(0);
        const Mesh1D mesh = build_mesh(stage);
        const PointFunction beta = PointFunction::zero(micro, 0);
        const PointFunction f = PointFunction::zero(micro, 0);
        const PiecewiseLinearFn p =
            solve_with_tables(mesh, micro, 0, beta, [](double) { return 1.0; }, f,
                              BoundaryConditions::dirichlet_dirichlet, EndpointMode::include);
        for (std::size_t i = 0; i < mesh.size(); ++i) {
            const double x = mesh.node(i);
            CHECK(p.values[i] == Catch::Approx(0.5 * x * (1.0 - x)).margin(1e-14));
        }
    }
}

TEST_CASE("solve_tridiagonal basics") {
    TridiagonalSystem identity;
    identity.diag = {1.0, 1.0, 1.0};
    identity.sub = {0.0, 0.0};
    identity.super = {0.0, 0.0};
    identity.rhs = {3.0, -1.0, 2.0};
    CHECK(solve_tridiagonal(identity) == std::vector<double>{3.0, -1.0, 2.0});

    TridiagonalSystem toy;
    toy.diag = {5.0, 2.0};
    toy.sub = {-2.0};
    toy.super = {-2.0};
    toy.rhs = {1.0, 0.0};
    const std::vector<double> u = solve_tridiagonal(toy);
    CHECK(u[0] == Catch::Approx(1.0 / 3.0).margin(1e-15));
    CHECK(u[1] == Catch::Approx(1.0 / 3.0).margin(1e-15));

    TridiagonalSystem singular;
    singular.diag = {0.0, 1.0};
    singular.sub = {0.0};
    singular.super = {0.0};
    singular.rhs = {1.0, 1.0};
    CHECK_THROWS_AS(solve_tridiagonal(singular), std::runtime_error);
}

TEST_CASE("thomas solve leaves tiny residuals on random dominant systems") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> off(-1.0, 1.0);
    std::uniform_real_distribution<double> load(-10.0, 10.0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng() % 300;
        TridiagonalSystem sys;
        sys.sub.resize(n - 1);
        sys.super.resize(n - 1);
        sys.diag.resize(n);
        sys.rhs.resize(n);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            sys.sub[i] = off(rng);
            sys.super[i] = off(rng);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double row = (i > 0 ? std::abs(sys.sub[i - 1]) : 0.0) +
                               (i + 1 < n ? std::abs(sys.super[i]) : 0.0);
            sys.diag[i] = row + 1.0 + std::abs(off(rng));
            sys.rhs[i] = load(rng);
        }
        const std::vector<double> x = solve_tridiagonal(sys);
        double scale = 0.0;
        for (double v : sys.rhs) scale = std::max(scale, std::abs(v));
        CHECK(residual_max_norm(sys, x) <= 1e-12 * (1.0 + scale));
    }
}

TEST_CASE("solve_problem with forcing off gives the zero solution") {
    const PiecewiseLinearFn p =
        solve_problem(3, ConstantCoefficient{1.0}, false, {},
                      BoundaryConditions::dirichlet_neumann, EndpointMode::include);
    for (double v : p.values) CHECK(v == 0.0);
}

TEST_CASE("endpoint mode switches the Robin closure at b = 1") {
    // Under include, constant beta adds a mass at the last node; under exclude
    // the natural condition dp(1) = 0 holds exactly (zero last slope).
    const PiecewiseLinearFn inc =
        solve_problem(2, ConstantCoefficient{1.0}, true, {},
                      BoundaryConditions::dirichlet_neumann, EndpointMode::include);
    const PiecewiseLinearFn exc =
        solve_problem(2, ConstantCoefficient{1.0}, true, {},
                      BoundaryConditions::dirichlet_neumann, EndpointMode::exclude);
    const std::size_t last_el = exc.mesh.element_count() - 1;
    CHECK(element_slope(exc, last_el) == Catch::Approx(0.0).margin(1e-15));
    CHECK(element_slope(inc, last_el) != 0.0);
    // Robin closure: dp(1) + beta(1) p(1) = f(1) = 0
    CHECK(element_slope(inc, last_el) + inc.values.back() ==
          Catch::Approx(0.0).margin(1e-13));
}

TEST_CASE("evaluate: values and one-sided slopes") {
    const PiecewiseLinearFn fn(Mesh1D({0.0, 0.5, 1.0}), {0.0, 1.0 / 3.0, 1.0 / 3.0});
    CHECK(evaluate(fn, 0.25) == Catch::Approx(1.0 / 6.0).margin(1e-16));
    CHECK(evaluate(fn, 0.5, EvalMode::slope_left) == Catch::Approx(2.0 / 3.0).margin(1e-16));
    CHECK(evaluate(fn, 0.5, EvalMode::slope_right) == 0.0);
    CHECK(evaluate(fn, 0.5) == 1.0 / 3.0);   // nodal values are exact
    CHECK(evaluate(fn, 1.0) == 1.0 / 3.0);
    CHECK_THROWS_AS(evaluate(fn, -0.1), std::domain_error);
    CHECK_THROWS_AS(evaluate(fn, 0.0, EvalMode::slope_left), std::domain_error);
    CHECK_THROWS_AS(evaluate(fn, 1.0, EvalMode::slope_right), std::domain_error);
}

TEST_CASE("stage-9 solve stays under the time budget") {
    const auto start = std::chrono::steady_clock::now();
    const PiecewiseLinearFn p =
        solve_problem(9, ConstantCoefficient{1.0}, true, {},
                      BoundaryConditions::dirichlet_neumann, EndpointMode::include);
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    CHECK(p.mesh.size() == 19684);
    CHECK(elapsed.count() < 1.0);
}
