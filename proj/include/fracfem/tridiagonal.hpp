#pragma once

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace fracfem {

/// Tridiagonal system over the free (non-Dirichlet) nodes.
/// sub[i] couples row i+1 to column i; super[i] couples row i to column i+1.
///
/// The scalar type is a template parameter: the verification path assembles
/// and eliminates in extended precision, so that comparisons between the
/// Galerkin solution and the independent oracle measure the formulations and
/// not the rounding of 1/h-sized coefficients.
template <class Real>
struct BasicTridiagonalSystem {
    std::vector<Real> sub;    // size n-1
    std::vector<Real> diag;   // size n
    std::vector<Real> super;  // size n-1
    std::vector<Real> rhs;    // size n

    std::size_t size() const { return diag.size(); }
};

using TridiagonalSystem = BasicTridiagonalSystem<double>;

template <class Real>
void check_shape(const BasicTridiagonalSystem<Real>& sys) {
    const std::size_t n = sys.diag.size();
    if (n == 0) throw std::invalid_argument("tridiagonal: empty system");
    if (sys.rhs.size() != n || sys.sub.size() + 1 != n || sys.super.size() + 1 != n)
        throw std::invalid_argument("tridiagonal: inconsistent array lengths");
}

/// Thomas algorithm (no pivoting). Coercively assembled systems are strictly
/// diagonally dominant enough for this; a vanishing pivot therefore indicates
/// corrupted input and is reported as an error.
template <class Real>
std::vector<Real> solve_tridiagonal(BasicTridiagonalSystem<Real> sys) {
    check_shape(sys);
    const std::size_t n = sys.size();
    Real scale = 0;
    for (Real v : sys.diag) scale = std::max(scale, std::abs(v));
    for (Real v : sys.sub) scale = std::max(scale, std::abs(v));
    for (Real v : sys.super) scale = std::max(scale, std::abs(v));
    const Real pivot_floor = Real(1e-14L) * (scale > 0 ? scale : Real(1));

    for (std::size_t i = 1; i < n; ++i) {
        const Real prev = sys.diag[i - 1];
        if (std::abs(prev) < pivot_floor)
            throw std::runtime_error("solve_tridiagonal: near-zero pivot (singular system)");
        const Real m = sys.sub[i - 1] / prev;
        sys.diag[i] -= m * sys.super[i - 1];
        sys.rhs[i] -= m * sys.rhs[i - 1];
    }
    if (std::abs(sys.diag[n - 1]) < pivot_floor)
        throw std::runtime_error("solve_tridiagonal: near-zero pivot (singular system)");

    std::vector<Real> x(n);
    x[n - 1] = sys.rhs[n - 1] / sys.diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        x[i] = (sys.rhs[i] - sys.super[i] * x[i + 1]) / sys.diag[i];
    return x;
}

template <class Real>
Real residual_max_norm(const BasicTridiagonalSystem<Real>& sys, const std::vector<Real>& x) {
    check_shape(sys);
    const std::size_t n = sys.size();
    if (x.size() != n) throw std::invalid_argument("residual_max_norm: size mismatch");
    Real r = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Real ax = sys.diag[i] * x[i];
        if (i > 0) ax += sys.sub[i - 1] * x[i - 1];
        if (i + 1 < n) ax += sys.super[i] * x[i + 1];
        r = std::max(r, std::abs(ax - sys.rhs[i]));
    }
    return r;
}

}  // namespace fracfem
