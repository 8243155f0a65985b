#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fracfem {

/// Similarity (Moran) dimension: the root d of sum_i c_i^d = 1.
///
/// The map d -> sum c_i^d is strictly decreasing for ratios in (0,1), starts at
/// L >= 2 for d = 0 and tends to 0, so a unique root exists; plain bisection is
/// enough and runs in ~50 iterations for the default tolerance.
inline double similarity_dimension(const std::vector<double>& ratios, double tol = 1e-12,
                                   int max_iter = 200) {
    if (ratios.size() < 2)
        throw std::invalid_argument("similarity_dimension: need at least two ratios");
    if (!(tol > 0.0)) throw std::invalid_argument("similarity_dimension: tol must be positive");
    for (double c : ratios)
        if (!(c > 0.0 && c < 1.0))
            throw std::invalid_argument("similarity_dimension: ratios must lie in (0,1)");

    const auto moran = [&](double d) {
        double s = 0.0;
        for (double c : ratios) s += std::pow(c, d);
        return s - 1.0;
    };

    double lo = 0.0;
    double hi = 1.0;
    while (moran(hi) > 0.0) {
        hi *= 2.0;
        if (hi > 1e6) throw std::runtime_error("similarity_dimension: failed to bracket root");
    }
    for (int i = 0; i < max_iter && (hi - lo) > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        (moran(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace fracfem
