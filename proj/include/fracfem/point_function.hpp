#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fracfem/microstructure.hpp"

namespace fracfem {

/// Real values attached to the points of one development stage, aligned with
/// the sorted point order of that stage.
class PointFunction {
public:
    PointFunction(const Microstructure& micro, int stage, std::vector<double> values)
        : micro_(&micro), stage_(stage), values_(std::move(values)) {
        if (values_.size() != micro.points(stage).size())
            throw std::invalid_argument("PointFunction: value count does not match stage");
        for (double v : values_)
            if (!std::isfinite(v)) throw std::invalid_argument("PointFunction: non-finite value");
    }

    static PointFunction zero(const Microstructure& micro, int stage) {
        return PointFunction(micro, stage, std::vector<double>(micro.points(stage).size(), 0.0));
    }

    const Microstructure& micro() const { return *micro_; }
    int stage() const { return stage_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }

    double value_at(const Rational& p) const {
        const std::vector<Rational>& pts = micro_->points(stage_);
        const auto it = std::lower_bound(pts.begin(), pts.end(), p);
        if (it == pts.end() || !(*it == p))
            throw std::domain_error("PointFunction: point is not in the domain stage");
        return values_[static_cast<std::size_t>(it - pts.begin())];
    }

private:
    const Microstructure* micro_;
    int stage_;
    std::vector<double> values_;
};

}  // namespace fracfem
