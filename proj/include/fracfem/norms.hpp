#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fracfem/microstructure.hpp"
#include "fracfem/piecewise_linear.hpp"

namespace fracfem {

struct NormTriple {
    double l2 = 0.0;
    double h1_semi = 0.0;
    double h1_full = 0.0;
};

/// Exact norms of a piecewise-linear function. The L2 integrand p^2 is
/// quadratic per element, so Simpson's rule is exact; the derivative is
/// constant per element.
inline NormTriple norms(const PiecewiseLinearFn& fn) {
    double l2sq = 0.0;
    double semisq = 0.0;
    for (std::size_t e = 0; e < fn.mesh.element_count(); ++e) {
        const double h = fn.mesh.width(e);
        const double a = fn.values[e], b = fn.values[e + 1];
        l2sq += h * (a * a + a * b + b * b) / 3.0;
        const double s = (b - a) / h;
        semisq += h * s * s;
    }
    NormTriple t;
    t.l2 = std::sqrt(l2sq);
    t.h1_semi = std::sqrt(semisq);
    t.h1_full = std::sqrt(l2sq + semisq);
    return t;
}

/// Represent a coarse piecewise-linear function exactly on a finer mesh.
/// Requires every coarse node to be a fine node; the result is then pointwise
/// identical to the input, so its norms are preserved.
inline PiecewiseLinearFn inject(const PiecewiseLinearFn& coarse, const Mesh1D& fine) {
    if (!coarse.mesh.nested_in(fine))
        throw std::invalid_argument("inject: meshes are not nested");
    std::vector<double> values(fine.size());
    for (std::size_t i = 0; i < fine.size(); ++i) {
        const double x = fine.node(i);
        if (const auto node = coarse.mesh.find_node(x)) {
            values[i] = coarse.values[*node];
        } else {
            const std::size_t e = coarse.mesh.element_of(x);
            values[i] =
                coarse.values[e] + element_slope(coarse, e) * (x - coarse.mesh.node(e));
        }
    }
    return PiecewiseLinearFn(fine, std::move(values));
}

/// Fractal trace in l2: sqrt(sum over B_stage of fn(b)^2).
inline double trace_l2(const PiecewiseLinearFn& fn, const Microstructure& micro, int stage) {
    double sum = 0.0;
    for (const Rational& b : micro.points(stage)) {
        const double v = evaluate(fn, b.to_double());
        sum += v * v;
    }
    return std::sqrt(sum);
}

}  // namespace fracfem
