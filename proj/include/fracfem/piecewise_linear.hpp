#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "fracfem/mesh.hpp"

namespace fracfem {

/// Continuous piecewise-linear function given by nodal values on a mesh.
struct PiecewiseLinearFn {
    Mesh1D mesh;
    std::vector<double> values;

    PiecewiseLinearFn(Mesh1D mesh_, std::vector<double> values_)
        : mesh(std::move(mesh_)), values(std::move(values_)) {
        if (values.size() != mesh.size())
            throw std::invalid_argument("PiecewiseLinearFn: value count != node count");
    }

    static PiecewiseLinearFn zero(Mesh1D mesh_) {
        const std::size_t n = mesh_.size();
        return PiecewiseLinearFn(std::move(mesh_), std::vector<double>(n, 0.0));
    }
};

enum class EvalMode { value, slope_left, slope_right };

inline double element_slope(const PiecewiseLinearFn& fn, std::size_t element) {
    return (fn.values[element + 1] - fn.values[element]) / fn.mesh.width(element);
}

inline double evaluate(const PiecewiseLinearFn& fn, double x, EvalMode mode = EvalMode::value) {
    if (x < 0.0 || x > 1.0) throw std::domain_error("evaluate: x outside [0,1]");
    switch (mode) {
        case EvalMode::value: {
            if (const auto node = fn.mesh.find_node(x)) return fn.values[*node];
            const std::size_t e = fn.mesh.element_of(x);
            const double x0 = fn.mesh.node(e);
            return fn.values[e] + element_slope(fn, e) * (x - x0);
        }
        case EvalMode::slope_left: {
            if (x <= 0.0) throw std::domain_error("slope_left: requires x > 0");
            if (const auto node = fn.mesh.find_node(x)) return element_slope(fn, *node - 1);
            return element_slope(fn, fn.mesh.element_of(x));
        }
        case EvalMode::slope_right: {
            if (x >= 1.0) throw std::domain_error("slope_right: requires x < 1");
            if (const auto node = fn.mesh.find_node(x)) return element_slope(fn, *node);
            return element_slope(fn, fn.mesh.element_of(x));
        }
    }
    throw std::logic_error("evaluate: unknown mode");
}

}  // namespace fracfem
