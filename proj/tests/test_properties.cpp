#include <cmath>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "fracfem/fracfem.hpp"

using namespace fracfem;

namespace {

// Random nonnegative stage-function tables on the Cantor development.
PointFunction random_stage_table(const Microstructure& micro, int stage, std::mt19937_64& rng,
                                 double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> per_stage(static_cast<std::size_t>(stage) + 1);
    for (double& v : per_stage) v = dist(rng);
    std::vector<double> values;
    values.reserve(micro.points(stage).size());
    for (const Rational& b : micro.points(stage))
        values.push_back(per_stage[static_cast<std::size_t>(micro.stage_of(b))]);
    return PointFunction(micro, stage, std::move(values));
}

}  // namespace

TEST_CASE("discrete maximum principle: nonnegative data gives nonnegative solutions") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 120; ++trial) {
        const int stage = 1 + static_cast<int>(rng() % 4);
        const Microstructure micro = Microstructure::cantor_extremes(stage);
        const Mesh1D mesh = build_mesh(stage);
        const PointFunction beta = random_stage_table(micro, stage, rng, 0.0, 3.0);
        const PointFunction f = random_stage_table(micro, stage, rng, 0.0, 2.0);
        const bool dd = rng() % 2 == 0;
        const auto bc = dd ? BoundaryConditions::dirichlet_dirichlet
                           : BoundaryConditions::dirichlet_neumann;
        const auto ep = rng() % 2 ? EndpointMode::include : EndpointMode::exclude;
        const double load = 0.5 * static_cast<double>(rng() % 5);
        const PiecewiseLinearFn p = solve_with_tables(
            mesh, micro, stage, beta, [load](double) { return load; }, f, bc, ep);
        for (double v : p.values) CHECK(v >= -1e-13);
    }
}

TEST_CASE("symmetry: symmetric data under dirichlet_dirichlet gives symmetric solutions") {
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 120; ++trial) {
        const int stage = 1 + static_cast<int>(rng() % 4);
        const Microstructure micro = Microstructure::cantor_extremes(stage);
        const Mesh1D mesh = build_mesh(stage);
        // stage functions are symmetric about 1/2 because the development is
        const PointFunction beta = random_stage_table(micro, stage, rng, 0.0, 2.0);
        const PointFunction f = random_stage_table(micro, stage, rng, -1.0, 1.0);
        const PiecewiseLinearFn p =
            solve_with_tables(mesh, micro, stage, beta, {}, f,
                              BoundaryConditions::dirichlet_dirichlet, EndpointMode::include);
        const std::size_t n = p.values.size();
        for (std::size_t i = 0; i < n; ++i) {
            const double a = p.values[i];
            const double b = p.values[n - 1 - i];
            CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
        }
    }
}

TEST_CASE("linearity: doubling all data doubles the solution") {
    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 120; ++trial) {
        const int stage = 1 + static_cast<int>(rng() % 4);
        const Microstructure micro = Microstructure::cantor_extremes(stage);
        const Mesh1D mesh = build_mesh(stage);
        const PointFunction beta = random_stage_table(micro, stage, rng, 0.0, 2.0);
        const PointFunction f = random_stage_table(micro, stage, rng, -1.0, 1.0);
        std::vector<double> doubled(f.values());
        for (double& v : doubled) v *= 2.0;
        const PointFunction f2(micro, stage, std::move(doubled));
        const double load = 0.25 * static_cast<double>(rng() % 4);
        const auto ep = rng() % 2 ? EndpointMode::include : EndpointMode::exclude;

        const PiecewiseLinearFn p1 = solve_with_tables(
            mesh, micro, stage, beta, [load](double) { return load; }, f,
            BoundaryConditions::dirichlet_neumann, ep);
        const PiecewiseLinearFn p2 = solve_with_tables(
            mesh, micro, stage, beta, [load](double) { return 2.0 * load; }, f2,
            BoundaryConditions::dirichlet_neumann, ep);
        for (std::size_t i = 0; i < p1.values.size(); ++i)
            CHECK(std::abs(p2.values[i] - 2.0 * p1.values[i]) <=
                  1e-12 * std::max(1.0, std::abs(p2.values[i])));
    }
}

TEST_CASE("injection preserves functions and norms on nested meshes") {
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int trial = 0; trial < 120; ++trial) {
        const int coarse_stage = static_cast<int>(rng() % 4);
        const int fine_stage = coarse_stage + 1 + static_cast<int>(rng() % 2);
        const Mesh1D coarse = build_mesh(coarse_stage);
        std::vector<double> values(coarse.size());
        for (double& v : values) v = dist(rng);
        const PiecewiseLinearFn fn(coarse, std::move(values));
        const PiecewiseLinearFn lifted = inject(fn, build_mesh(fine_stage));

        std::uniform_real_distribution<double> xs(0.0, 1.0);
        for (int probe = 0; probe < 5; ++probe) {
            const double x = xs(rng);
            CHECK(std::abs(evaluate(lifted, x) - evaluate(fn, x)) <= 1e-13);
        }
        const NormTriple before = norms(fn);
        const NormTriple after = norms(lifted);
        CHECK(std::abs(after.l2 - before.l2) <= 1e-14 * std::max(1.0, before.l2));
        CHECK(std::abs(after.h1_semi - before.h1_semi) <=
              1e-14 * std::max(1.0, before.h1_semi));
    }
}

TEST_CASE("random sampling is deterministic per (seed, realization)") {
    std::mt19937_64 rng(505);
    const Microstructure micro = Microstructure::cantor_extremes(5);
    for (int trial = 0; trial < 120; ++trial) {
        const std::uint64_t seed = rng();
        const std::uint64_t realization = rng() % 1000;
        const PointFunction a = sample_random_beta(micro, 5, 0.75, 1.25, seed, realization);
        const PointFunction b = sample_random_beta(micro, 5, 0.75, 1.25, seed, realization);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
        const PointFunction c =
            sample_random_beta(micro, 5, 0.75, 1.25, seed, realization + 1);
        bool differs = false;
        for (std::size_t i = 0; i < a.size(); ++i) differs |= (a[i] != c[i]);
        CHECK(differs);
    }
}

TEST_CASE("energy identity a(p,p) = l(p) holds for random solves") {
    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 100; ++trial) {
        const int stage = 1 + static_cast<int>(rng() % 4);
        const Microstructure micro = Microstructure::cantor_extremes(stage);
        const Mesh1D mesh = build_mesh(stage);
        const PointFunction beta = random_stage_table(micro, stage, rng, 0.0, 2.0);
        const PointFunction f = random_stage_table(micro, stage, rng, -1.0, 1.0);
        const auto ep = rng() % 2 ? EndpointMode::include : EndpointMode::exclude;
        const auto bc = rng() % 2 ? BoundaryConditions::dirichlet_neumann
                                  : BoundaryConditions::dirichlet_dirichlet;
        const PiecewiseLinearFn p = solve_with_tables(mesh, micro, stage, beta, {}, f, bc, ep);

        const NormTriple t = norms(p);
        double energy = t.h1_semi * t.h1_semi;
        double load = 0.0;
        const std::vector<Rational>& pts = micro.points(stage);
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const Rational& b = pts[k];
            if (ep == EndpointMode::exclude && (b == kZero || b == kOne)) continue;
            if (bc == BoundaryConditions::dirichlet_dirichlet && b == kOne) continue;
            const double pb = evaluate(p, b.to_double());
            energy += beta[k] * pb * pb;
            load += f[k] * pb;
        }
        CHECK(std::abs(energy - load) <= 1e-10 * (1.0 + std::abs(load)));
    }
}
