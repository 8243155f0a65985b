#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "fracfem/coefficients.hpp"
#include "fracfem/mesh.hpp"
#include "fracfem/piecewise_linear.hpp"
#include "fracfem/point_function.hpp"
#include "fracfem/tridiagonal.hpp"

namespace fracfem {

enum class BoundaryConditions { dirichlet_neumann, dirichlet_dirichlet };

/// Whether the interface sums keep the terms at b = 0 and b = 1.
///
/// The variational sums run over all of B_n (include); the strong-form
/// interface conditions hold at interior points only (exclude). Under
/// dirichlet_neumann the two differ at b = 1, where `include` turns the
/// natural condition into the Robin closure dp(1) + beta(1) p(1) = f(1).
enum class EndpointMode { include, exclude };

using VolumeForcing = std::function<double(double)>;

/// P1 Galerkin assembly of
///   int dp dq + sum_{b in B_n} beta(b) p(b) q(b)
///     = int F q + sum_{b in B_n} f(b) q(b)
/// on a mesh whose nodes contain B_n exactly. Point terms hit single diagonal
/// and right-hand-side entries (nodal evaluation is exact in P1); the volume
/// load uses two-point Gauss per element; Dirichlet nodes are eliminated by
/// row removal, which keeps point-data solves bitwise clean for the oracle
/// cross-checks.
template <class Real = double>
BasicTridiagonalSystem<Real> assemble(const Mesh1D& mesh, const Microstructure& micro,
                                      int stage, const PointFunction& beta,
                                      const VolumeForcing& F, const PointFunction& f,
                                      BoundaryConditions bc, EndpointMode endpoint) {
    if (beta.stage() != stage || f.stage() != stage)
        throw std::invalid_argument("assemble: point data stage mismatch");
    const std::size_t last = mesh.size() - 1;
    const std::size_t free_lo = 1;
    const std::size_t free_hi = bc == BoundaryConditions::dirichlet_neumann ? last : last - 1;
    if (free_hi < free_lo) throw std::invalid_argument("assemble: no free nodes");
    const std::size_t n = free_hi - free_lo + 1;

    BasicTridiagonalSystem<Real> sys;
    sys.sub.assign(n - 1, Real(0));
    sys.diag.assign(n, Real(0));
    sys.super.assign(n - 1, Real(0));
    sys.rhs.assign(n, Real(0));

    const auto is_free = [&](std::size_t node) { return node >= free_lo && node <= free_hi; };

    for (std::size_t e = 0; e < mesh.element_count(); ++e) {
        const Real w = Real(1) / Real(mesh.width(e));
        const std::size_t i = e, j = e + 1;
        if (is_free(i)) sys.diag[i - free_lo] += w;
        if (is_free(j)) sys.diag[j - free_lo] += w;
        if (is_free(i) && is_free(j)) {
            sys.sub[i - free_lo] -= w;
            sys.super[i - free_lo] -= w;
        }
    }

    if (F) {
        // two-point Gauss per element, exact for linear F times a hat function
        constexpr double g = 0.28867513459481287;  // 1/(2*sqrt(3))
        for (std::size_t e = 0; e < mesh.element_count(); ++e) {
            const double h = mesh.width(e);
            const double x0 = mesh.node(e);
            for (const double t : {0.5 - g, 0.5 + g}) {
                const double x = x0 + t * h;
                const double Fx = F(x);
                const double wq = 0.5 * h;
                if (is_free(e)) sys.rhs[e - free_lo] += Real(wq * Fx * (1.0 - t));
                if (is_free(e + 1)) sys.rhs[e + 1 - free_lo] += Real(wq * Fx * t);
            }
        }
    }

    const std::vector<Rational>& pts = micro.points(stage);
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const Rational& b = pts[k];
        if (endpoint == EndpointMode::exclude && (b == kZero || b == kOne)) continue;
        const auto node = mesh.find_node(b.to_double());
        if (!node)
            throw std::invalid_argument(
                "assemble: microstructure point " + b.to_string() + " is not a mesh node");
        if (!is_free(*node)) continue;  // Dirichlet value is zero; nothing to move to the rhs
        sys.diag[*node - free_lo] += Real(beta[k]);
        sys.rhs[*node - free_lo] += Real(f[k]);
    }
    return sys;
}

inline PiecewiseLinearFn solve_with_tables(const Mesh1D& mesh, const Microstructure& micro,
                                           int stage, const PointFunction& beta,
                                           const VolumeForcing& F, const PointFunction& f,
                                           BoundaryConditions bc, EndpointMode endpoint) {
    const auto sys = assemble<long double>(mesh, micro, stage, beta, F, f, bc, endpoint);
    const std::vector<long double> u = solve_tridiagonal(sys);
    std::vector<double> values(mesh.size(), 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) values[i + 1] = static_cast<double>(u[i]);
    // Dirichlet nodes stay exactly zero
    return PiecewiseLinearFn(mesh, std::move(values));
}

/// Solve the stage-n problem on the Cantor-extremes microstructure with the
/// uniform 3^n-element mesh.
inline PiecewiseLinearFn solve_problem(int stage, const CoefficientSpec& spec, bool forcing_on,
                                       const VolumeForcing& F, BoundaryConditions bc,
                                       EndpointMode endpoint, double forcing_ratio = 1.0 / 3.0) {
    const Microstructure micro = Microstructure::cantor_extremes(stage);
    const Mesh1D mesh = build_mesh(stage);
    const PointFunction beta = make_beta_table(spec, micro, stage);
    const PointFunction f = forcing_on ? make_forcing_table(micro, stage, forcing_ratio)
                                       : PointFunction::zero(micro, stage);
    return solve_with_tables(mesh, micro, stage, beta, F, f, bc, endpoint);
}

}  // namespace fracfem
