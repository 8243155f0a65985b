#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "fracfem/rational.hpp"

namespace fracfem {

/// Affine contraction x -> orientation * ratio * x + offset on [0,1].
///
/// The ratio lies in (0,1) and the image of [0,1] must stay inside [0,1];
/// both are checked at construction, so a valid Similarity can be applied to
/// any point of the unit interval without leaving it.
struct Similarity {
    Rational ratio;
    Rational offset;
    int orientation;  // +1 or -1

    Similarity(Rational ratio_, Rational offset_, int orientation_)
        : ratio(std::move(ratio_)), offset(std::move(offset_)), orientation(orientation_) {
        if (orientation != 1 && orientation != -1)
            throw std::invalid_argument("Similarity: orientation must be +1 or -1");
        if (!(kZero < ratio && ratio < kOne))
            throw std::invalid_argument("Similarity: ratio must lie in (0,1)");
        const Rational at0 = image(kZero);
        const Rational at1 = image(kOne);
        if (at0 < kZero || at0 > kOne || at1 < kZero || at1 > kOne)
            throw std::invalid_argument("Similarity: image of [0,1] leaves [0,1]");
    }

    Rational operator()(const Rational& x) const { return image(x); }

private:
    Rational image(const Rational& x) const {
        Rational scaled = ratio * x;
        if (orientation < 0) scaled = -scaled;
        return scaled + offset;
    }
};

inline Rational apply_similarity(const Similarity& s, const Rational& x) {
    if (x < kZero || x > kOne)
        throw std::invalid_argument("apply_similarity: point outside [0,1]");
    return s(x);
}

struct IteratedFunctionSystem {
    std::vector<Similarity> maps;

    explicit IteratedFunctionSystem(std::vector<Similarity> maps_) : maps(std::move(maps_)) {
        if (maps.size() < 2)
            throw std::invalid_argument("IteratedFunctionSystem: needs at least two maps");
    }

    std::size_t size() const { return maps.size(); }
};

/// The middle-thirds pair {x/3, 1 - x/3}.
inline IteratedFunctionSystem cantor_ifs() {
    return IteratedFunctionSystem({Similarity(Rational(1, 3), Rational(0, 1), +1),
                                   Similarity(Rational(1, 3), Rational(1, 1), -1)});
}

}  // namespace fracfem
