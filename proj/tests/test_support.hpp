#pragma once

#include <random>

#include "lpimager/problem.hpp"

namespace lpimager::testing {

// { x1 <= 1, -x1 <= 0, x2 <= 1, -x2 <= 0 } = [0,1]^2
inline LpProblem unit_square() {
    return LpProblem(2, 4, {1, 0, -1, 0, 0, 1, 0, -1}, {1, 0, 1, 0}, {0, 1});
}

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + uniform01(rng) * (hi - lo);
}

}  // namespace lpimager::testing
