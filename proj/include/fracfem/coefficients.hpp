#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fracfem/point_function.hpp"

namespace fracfem {

/// beta ≡ value everywhere (the unscaled storage model).
struct ConstantCoefficient {
    double value;
};

/// beta(b) = a * (1/L - eps)^stage(b) on B_n - B_{n-1}; 0 on B_0.
struct ConsistentScaling {
    double a;
    int branch_count;  // L
    double epsilon;    // in (0, 1/L)
};

/// beta(b) = ratio^stage(b) on B_n - B_{n-1}; 0 on B_0.
struct GeometricCoefficient {
    double ratio;
};

/// beta(b) ~ U[lo,hi] independently per point; evaluated only through
/// sample_random_beta.
struct RandomUniformCoefficient {
    double lo;
    double hi;
    std::uint64_t seed = 0;
};

using CoefficientSpec = std::variant<ConstantCoefficient, ConsistentScaling,
                                     GeometricCoefficient, RandomUniformCoefficient>;

inline void validate(const CoefficientSpec& spec) {
    if (const auto* c = std::get_if<ConstantCoefficient>(&spec)) {
        if (!(c->value > 0.0))
            throw std::invalid_argument("constant coefficient: value must be positive");
    } else if (const auto* s = std::get_if<ConsistentScaling>(&spec)) {
        if (!(s->a > 0.0)) throw std::invalid_argument("scaled coefficient: a must be positive");
        if (s->branch_count < 2)
            throw std::invalid_argument("scaled coefficient: L must be at least 2");
        if (!(s->epsilon > 0.0 && s->epsilon < 1.0 / s->branch_count))
            throw std::invalid_argument("scaled coefficient: requires 0 < eps < 1/L");
    } else if (const auto* g = std::get_if<GeometricCoefficient>(&spec)) {
        if (!(g->ratio > 0.0 && g->ratio < 1.0))
            throw std::invalid_argument("geometric coefficient: ratio must lie in (0,1)");
    } else if (const auto* r = std::get_if<RandomUniformCoefficient>(&spec)) {
        if (!(0.0 <= r->lo && r->lo <= r->hi))
            throw std::invalid_argument("random coefficient: requires 0 <= lo <= hi");
    }
}

inline bool is_random(const CoefficientSpec& spec) {
    return std::holds_alternative<RandomUniformCoefficient>(spec);
}

/// Storage coefficient at a single point. Random specs have no pointwise value.
inline double eval_coefficient(const CoefficientSpec& spec, const Microstructure& micro,
                               const Rational& b) {
    const int stage = micro.stage_of(b);  // throws domain_error if absent
    if (const auto* c = std::get_if<ConstantCoefficient>(&spec)) return c->value;
    if (const auto* s = std::get_if<ConsistentScaling>(&spec))
        return stage >= 1 ? s->a * std::pow(1.0 / s->branch_count - s->epsilon, stage) : 0.0;
    if (const auto* g = std::get_if<GeometricCoefficient>(&spec))
        return stage >= 1 ? std::pow(g->ratio, stage) : 0.0;
    throw std::invalid_argument(
        "eval_coefficient: random coefficients are sampled via sample_random_beta");
}

/// Interface forcing with a general shell decay: ratio^stage(b), 0 on B_0.
inline double eval_shell_forcing(const Microstructure& micro, const Rational& b, double ratio) {
    const int stage = micro.stage_of(b);
    return stage >= 1 ? std::pow(ratio, stage) : 0.0;
}

/// The deterministic interface forcing f(b) = 3^{-stage(b)}, 0 on B_0.
inline double eval_forcing(const Microstructure& micro, const Rational& b) {
    return eval_shell_forcing(micro, b, 1.0 / 3.0);
}

inline PointFunction make_beta_table(const CoefficientSpec& spec, const Microstructure& micro,
                                     int stage) {
    validate(spec);
    const std::vector<Rational>& pts = micro.points(stage);
    std::vector<double> values;
    values.reserve(pts.size());
    for (const Rational& b : pts) values.push_back(eval_coefficient(spec, micro, b));
    return PointFunction(micro, stage, std::move(values));
}

inline PointFunction make_forcing_table(const Microstructure& micro, int stage,
                                        double ratio = 1.0 / 3.0) {
    const std::vector<Rational>& pts = micro.points(stage);
    std::vector<double> values;
    values.reserve(pts.size());
    for (const Rational& b : pts) values.push_back(eval_shell_forcing(micro, b, ratio));
    return PointFunction(micro, stage, std::move(values));
}

/// Direct per-point sum of beta over B_n. Rejects random specs: they have no
/// deterministic coefficient to sum.
inline double partial_l1_sum(const CoefficientSpec& spec, const Microstructure& micro,
                             int stage) {
    if (is_random(spec))
        throw std::invalid_argument("partial_l1_sum: not defined for random coefficients");
    double sum = 0.0;
    for (const Rational& b : micro.points(stage)) sum += eval_coefficient(spec, micro, b);
    return sum;
}

/// Ratio test for the full-series l1 sum Sum_n card(B_n - B_{n-1}) * alpha_n
/// against a per-stage cardinality growth factor L. Returns false when the
/// series diverges (e.g. the geometric 2/3 law on a doubling development).
inline bool l1_ratio_test(const CoefficientSpec& spec, int growth_factor) {
    if (growth_factor < 1) throw std::invalid_argument("l1_ratio_test: growth factor >= 1");
    const double limit = 1.0 / growth_factor;
    if (std::holds_alternative<ConstantCoefficient>(spec)) return growth_factor == 1;
    if (const auto* s = std::get_if<ConsistentScaling>(&spec))
        return 1.0 / s->branch_count - s->epsilon < limit;
    if (const auto* g = std::get_if<GeometricCoefficient>(&spec)) return g->ratio < limit;
    throw std::invalid_argument("l1_ratio_test: not defined for random coefficients");
}

/// Parses "constant:A", "scaled:A:L:EPS", "geometric:R", "random:LO:HI".
inline CoefficientSpec parse_coefficient_spec(std::string_view text) {
    const auto split = [](std::string_view s) {
        std::vector<std::string> parts;
        std::size_t pos = 0;
        while (pos <= s.size()) {
            const std::size_t colon = s.find(':', pos);
            if (colon == std::string_view::npos) {
                parts.emplace_back(s.substr(pos));
                break;
            }
            parts.emplace_back(s.substr(pos, colon - pos));
            pos = colon + 1;
        }
        return parts;
    };
    const auto to_double = [](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("coefficient spec: bad number '" + s + "'");
        }
        if (used != s.size())
            throw std::invalid_argument("coefficient spec: bad number '" + s + "'");
        return v;
    };

    const std::vector<std::string> parts = split(text);
    if (parts.empty()) throw std::invalid_argument("coefficient spec: empty");
    const std::string& kind = parts[0];
    CoefficientSpec spec;
    if (kind == "constant" && parts.size() == 2) {
        spec = ConstantCoefficient{to_double(parts[1])};
    } else if (kind == "scaled" && parts.size() == 4) {
        const double L = to_double(parts[2]);
        if (L != static_cast<int>(L))
            throw std::invalid_argument("coefficient spec: L must be an integer");
        spec = ConsistentScaling{to_double(parts[1]), static_cast<int>(L), to_double(parts[3])};
    } else if (kind == "geometric" && parts.size() == 2) {
        spec = GeometricCoefficient{to_double(parts[1])};
    } else if (kind == "random" && parts.size() == 3) {
        spec = RandomUniformCoefficient{to_double(parts[1]), to_double(parts[2]), 0};
    } else {
        throw std::invalid_argument(
            "coefficient spec: expected constant:A | scaled:A:L:EPS | geometric:R | "
            "random:LO:HI");
    }
    validate(spec);
    return spec;
}

inline std::string to_string(const CoefficientSpec& spec) {
    if (const auto* c = std::get_if<ConstantCoefficient>(&spec))
        return "constant:" + std::to_string(c->value);
    if (const auto* s = std::get_if<ConsistentScaling>(&spec))
        return "scaled:" + std::to_string(s->a) + ":" + std::to_string(s->branch_count) + ":" +
               std::to_string(s->epsilon);
    if (const auto* g = std::get_if<GeometricCoefficient>(&spec))
        return "geometric:" + std::to_string(g->ratio);
    const auto& r = std::get<RandomUniformCoefficient>(spec);
    return "random:" + std::to_string(r.lo) + ":" + std::to_string(r.hi);
}

}  // namespace fracfem
