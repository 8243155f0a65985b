#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fracfem/rational.hpp"

namespace fracfem {

/// 1-D mesh: strictly increasing nodes with endpoints exactly 0 and 1.
class Mesh1D {
public:
    explicit Mesh1D(std::vector<double> nodes) : nodes_(std::move(nodes)) {
        if (nodes_.size() < 2) throw std::invalid_argument("Mesh1D: needs at least two nodes");
        if (nodes_.front() != 0.0 || nodes_.back() != 1.0)
            throw std::invalid_argument("Mesh1D: endpoints must be exactly 0 and 1");
        for (std::size_t i = 0; i + 1 < nodes_.size(); ++i)
            if (!(nodes_[i] < nodes_[i + 1]))
                throw std::invalid_argument("Mesh1D: nodes must be strictly increasing");
    }

    /// Uniform mesh with 3^stage elements. Every Cantor-extremes point of the
    /// same stage lands exactly on a node (denominators divide 3^stage, and
    /// correctly-rounded division makes the double representations identical).
    static Mesh1D uniform_triadic(int stage) {
        if (stage < 0) throw std::invalid_argument("uniform_triadic: negative stage");
        const double elements = std::pow(3.0, stage);
        const std::size_t count = static_cast<std::size_t>(elements) + 1;
        std::vector<double> nodes(count);
        for (std::size_t k = 0; k < count; ++k)
            nodes[k] = static_cast<double>(k) / elements;
        nodes.back() = 1.0;
        return Mesh1D(std::move(nodes));
    }

    static Mesh1D from_rationals(const std::vector<Rational>& pts) {
        std::vector<double> nodes;
        nodes.reserve(pts.size());
        for (const Rational& p : pts) nodes.push_back(p.to_double());
        std::sort(nodes.begin(), nodes.end());
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
        return Mesh1D(std::move(nodes));
    }

    std::size_t size() const { return nodes_.size(); }
    std::size_t element_count() const { return nodes_.size() - 1; }
    double node(std::size_t i) const { return nodes_[i]; }
    const std::vector<double>& nodes() const { return nodes_; }
    double width(std::size_t element) const { return nodes_[element + 1] - nodes_[element]; }

    std::optional<std::size_t> find_node(double x) const {
        const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), x);
        if (it == nodes_.end() || *it != x) return std::nullopt;
        return static_cast<std::size_t>(it - nodes_.begin());
    }

    /// Index of the element whose closed interval contains x.
    std::size_t element_of(double x) const {
        if (x < 0.0 || x > 1.0) throw std::domain_error("Mesh1D: x outside [0,1]");
        const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
        std::size_t e = static_cast<std::size_t>(it - nodes_.begin());
        if (e > 0) --e;
        return std::min(e, element_count() - 1);
    }

    bool nested_in(const Mesh1D& fine) const {
        for (double x : nodes_)
            if (!fine.find_node(x)) return false;
        return true;
    }

private:
    std::vector<double> nodes_;
};

inline Mesh1D build_mesh(int stage) { return Mesh1D::uniform_triadic(stage); }

}  // namespace fracfem
