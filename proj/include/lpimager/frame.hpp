#pragma once

#include <cstdint>
#include <optional>

#include "lpimager/problem.hpp"
#include "lpimager/vec.hpp"

namespace lpimager {

struct Box {
    Vec lo;
    Vec hi;
    int dim() const { return static_cast<int>(lo.size()); }
};

// Objective hyperplane through z with normal c; the feasible set is kept
// in the nonpositive side {x | <c, x - z> <= 0}.
struct ObjectiveFrame {
    Vec c;
    Vec z;
    double c_norm = 0.0;
};

// Places z along c so that <c, x - z> <= -margin for every x in the box
// (hence for every point of M when the box contains M). Throws on an
// inverted or mismatched box, or margin <= 0.
ObjectiveFrame build_frame(const LpProblem& p, const Box& box, double margin);

// Frame with a caller-supplied anchor point.
ObjectiveFrame frame_from_z(const LpProblem& p, Vec z);

// Drop x perpendicularly onto the frame hyperplane.
Vec orthogonal_projection(const ObjectiveFrame& frame, std::span<const double> x);

// Signed distance <c, z - x> / ||c||; nonnegative on the feasible side.
double distance_to_objective(const ObjectiveFrame& frame, std::span<const double> x);

// Samples the box, keeps points inside M, and returns those violating
// <c, x - z> <= 0. Empty result means no violation was found.
std::vector<Vec> sample_frame_violations(const LpProblem& p, const ObjectiveFrame& frame,
                                         const Box& box, int samples, std::uint64_t seed);

}  // namespace lpimager
