#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fracfem/point_function.hpp"

namespace fracfem {

/// splitmix64 finalizer. Full 64-bit avalanche, no state.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Counter-based uniform draw on [0,1): a pure function of
/// (seed, stream, counter). Identical inputs give bit-identical outputs on any
/// platform and under any execution schedule, which is what makes Monte-Carlo
/// runs reproducible and order-independent.
inline double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ mix64(stream ^ 0xD1B54A32D192ED03ull));
    h = mix64(h ^ mix64(counter ^ 0x8CB92BA72F3D8DD7ull));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

/// Independent uniform draws on [lo,hi] for every point of stage n, streamed by
/// (seed, realization_index, sorted point index).
inline PointFunction sample_random_beta(const Microstructure& micro, int stage, double lo,
                                        double hi, std::uint64_t seed,
                                        std::uint64_t realization_index) {
    if (!(lo <= hi)) throw std::invalid_argument("sample_random_beta: requires lo <= hi");
    const std::size_t count = micro.points(stage).size();
    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i)
        values[i] = lo + uniform01(seed, realization_index, i) * (hi - lo);
    return PointFunction(micro, stage, std::move(values));
}

}  // namespace fracfem
