#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fracfem/assembly.hpp"

namespace fracfem {
namespace oracle {

/// Robin data for the right end: dp(1) + beta1 * p(1) = f1.
struct RightEndTerms {
    double beta1 = 0.0;
    double f1 = 0.0;
};

/// Exact solution of the F = 0 transmission problem: piecewise linear between
/// consecutive interface points, reconstructed from values and slopes.
struct ExactSolution {
    std::vector<double> breakpoints;  // 0 = x_0 < ... < x_{m+1} = 1
    std::vector<double> values;       // one per breakpoint
    std::vector<double> slopes;       // one per subinterval

    double operator()(double x) const {
        if (x < 0.0 || x > 1.0) throw std::domain_error("ExactSolution: x outside [0,1]");
        const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
        std::size_t seg = static_cast<std::size_t>(it - breakpoints.begin());
        if (seg > 0) --seg;
        seg = std::min(seg, slopes.size() - 1);
        return values[seg] + slopes[seg] * (x - breakpoints[seg]);
    }
};

namespace detail {

/// Banded LU with partial pivoting for a tridiagonal matrix (one fill-in
/// superdiagonal appears when rows swap). Deliberately not the Thomas code
/// used by the Galerkin path: the oracle must not share a code path with the
/// solver it checks. Extended-precision elimination keeps the ground truth
/// accurate to double roundoff.
inline std::vector<double> solve_banded(std::vector<long double> low,
                                        const std::vector<long double>& mid_in,
                                        const std::vector<long double>& up_in,
                                        std::vector<long double> rhs) {
    const std::size_t n = mid_in.size();
    std::vector<long double> mid(mid_in.begin(), mid_in.end());
    low.resize(n, 0.0L);
    std::vector<long double> up2(n, 0.0L);  // second superdiagonal fill-in
    std::vector<long double> upper(n, 0.0L);
    for (std::size_t i = 0; i + 1 < n; ++i) upper[i] = up_in[i];

    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pivot_row = k;
        if (std::abs(static_cast<double>(low[k])) > std::abs(static_cast<double>(mid[k])))
            pivot_row = k + 1;
        if (pivot_row != k) {
            std::swap(mid[k], low[k]);
            std::swap(upper[k], mid[k + 1]);
            if (k + 2 < n) std::swap(up2[k], upper[k + 1]);
            std::swap(rhs[k], rhs[k + 1]);
        }
        if (mid[k] == 0.0L) throw std::runtime_error("oracle: singular interface system");
        const long double m = low[k] / mid[k];
        mid[k + 1] -= m * upper[k];
        if (k + 2 < n) upper[k + 1] -= m * up2[k];
        rhs[k + 1] -= m * rhs[k];
        low[k] = 0.0L;
    }
    if (mid[n - 1] == 0.0L) throw std::runtime_error("oracle: singular interface system");

    std::vector<long double> x(n, 0.0L);
    for (std::size_t i = n; i-- > 0;) {
        long double acc = rhs[i];
        if (i + 1 < n) acc -= upper[i] * x[i + 1];
        if (i + 2 < n) acc -= up2[i] * x[i + 2];
        x[i] = acc / mid[i];
    }
    return std::vector<double>(x.begin(), x.end());
}

}  // namespace detail

/// Solve -p'' = 0 between interface points with continuity and the flux-jump
/// conditions
///   (p_k - p_{k-1})/h_k - (p_{k+1} - p_k)/h_{k+1} + beta_k p_k = f_k,
/// closed by p(0) = 0 on the left and, on the right, by zero slope
/// (dirichlet_neumann), the Robin terms (when right_end is given), or p(1) = 0
/// (dirichlet_dirichlet). Assembled from the physics, not from basis
/// functions.
inline ExactSolution exact_solve(const std::vector<double>& interior_points,
                                 const std::vector<double>& beta, const std::vector<double>& f,
                                 BoundaryConditions bc,
                                 std::optional<RightEndTerms> right_end = std::nullopt) {
    const std::size_t m = interior_points.size();
    if (beta.size() != m || f.size() != m)
        throw std::invalid_argument("exact_solve: data sizes do not match point count");
    for (std::size_t i = 0; i < m; ++i) {
        if (!(interior_points[i] > 0.0 && interior_points[i] < 1.0))
            throw std::invalid_argument("exact_solve: points must lie strictly inside (0,1)");
        if (i > 0 && !(interior_points[i - 1] < interior_points[i]))
            throw std::invalid_argument("exact_solve: points must be strictly sorted");
        if (!(beta[i] >= 0.0)) throw std::invalid_argument("exact_solve: beta must be >= 0");
    }
    if (bc == BoundaryConditions::dirichlet_dirichlet && right_end)
        throw std::invalid_argument("exact_solve: Robin right end contradicts p(1) = 0");

    std::vector<double> xs;
    xs.reserve(m + 2);
    xs.push_back(0.0);
    xs.insert(xs.end(), interior_points.begin(), interior_points.end());
    xs.push_back(1.0);
    std::vector<double> h(m + 1);
    for (std::size_t i = 0; i <= m; ++i) h[i] = xs[i + 1] - xs[i];

    const bool robin = bc == BoundaryConditions::dirichlet_neumann && right_end.has_value();
    const std::size_t unknowns = robin ? m + 1 : m;

    ExactSolution sol;
    sol.breakpoints = xs;
    sol.values.assign(m + 2, 0.0);
    sol.slopes.assign(m + 1, 0.0);
    if (unknowns == 0) return sol;  // no interface data: the zero solution

    std::vector<long double> low(unknowns, 0.0L), mid(unknowns, 0.0L), up(unknowns, 0.0L),
        rhs(unknowns, 0.0L);
    for (std::size_t k = 0; k < m; ++k) {
        const long double wl = 1.0L / static_cast<long double>(h[k]);
        const long double wr = 1.0L / static_cast<long double>(h[k + 1]);
        if (bc == BoundaryConditions::dirichlet_neumann && !robin && k == m - 1) {
            // zero slope on the last subinterval: the (p_{k+1}-p_k)/h term drops
            mid[k] = wl + beta[k];
        } else {
            mid[k] = wl + wr + beta[k];
            if (k + 1 < unknowns) up[k] = -wr;
        }
        if (k > 0) low[k - 1] = -wl;
        rhs[k] = f[k];
    }
    if (robin) {
        const long double w = 1.0L / static_cast<long double>(h[m]);
        mid[m] = w + right_end->beta1;
        if (m > 0) low[m - 1] = -w;
        rhs[m] = right_end->f1;
    }

    low.resize(unknowns > 0 ? unknowns - 1 : 0);
    up.resize(unknowns > 0 ? unknowns - 1 : 0);
    const std::vector<double> p = detail::solve_banded(low, mid, up, rhs);

    for (std::size_t k = 0; k < m; ++k) sol.values[k + 1] = p[k];
    if (robin) {
        sol.values[m + 1] = p[m];
    } else if (bc == BoundaryConditions::dirichlet_neumann) {
        sol.values[m + 1] = m > 0 ? p[m - 1] : 0.0;  // zero slope at the end
    }  // dirichlet_dirichlet keeps p(1) = 0

    for (std::size_t i = 0; i <= m; ++i)
        sol.slopes[i] = (sol.values[i + 1] - sol.values[i]) / h[i];
    return sol;
}

/// Max residual of the oracle's own jump conditions (self-consistency).
inline double jump_residual(const ExactSolution& sol, const std::vector<double>& beta,
                            const std::vector<double>& f) {
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < sol.breakpoints.size() - 1; ++k) {
        const double r = sol.slopes[k] - sol.slopes[k + 1] + beta[k] * sol.values[k + 1] - f[k];
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

}  // namespace oracle
}  // namespace fracfem
