#pragma once

#include <limits>
#include <optional>

#include "lpimager/frame.hpp"
#include "lpimager/problem.hpp"

namespace lpimager {

// Extended-real distance: finite values are distances to the frame
// hyperplane, +inf marks a ray that never enters the polytope.
using ExtendedReal = double;
inline constexpr ExtendedReal kMiss = std::numeric_limits<double>::infinity();

inline bool is_miss(ExtendedReal v) { return v == kMiss; }

// Associative, commutative fold operation: min with inf as neutral element.
inline ExtendedReal reduce_min(ExtendedReal a, ExtendedReal b) { return b < a ? b : a; }

// First point of the half-space {<row, x> <= rhs} reached from g along -c.
// Requires <row, c> > eps_rec (throws otherwise); the result lies on the
// boundary hyperplane.
Vec project_halfspace(std::span<const double> g, std::span<const double> row, double rhs,
                      std::span<const double> c, double eps_rec = 0.0);

// Parameter interval {sigma | g - sigma*c satisfies all constraints}.
// Serves as the independent oracle for the polytope projection.
struct SigmaInterval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool empty = false;

    // sigma of the first polytope point along the ray, nullopt on a miss
    std::optional<double> entry() const {
        if (empty) return std::nullopt;
        const double s = lo > 0.0 ? lo : 0.0;
        if (s > hi) return std::nullopt;
        return s;
    }
};

SigmaInterval ray_interval(const LpProblem& p, std::span<const double> g,
                           std::span<const double> c, const Tolerances& tol = {});

// Map function over constraint indices: distance to the frame hyperplane
// of the ray hit on boundary i, when half-space i is recessive, the hit
// is feasible and the ray parameter is not (meaningfully) negative;
// otherwise kMiss.
ExtendedReal candidate_distance(int i, std::span<const double> g, const LpProblem& p,
                                const ObjectiveFrame& frame, const Tolerances& tol = {});

struct PolytopeProjection {
    bool miss = true;
    Vec point;            // valid when !miss
    double sigma = 0.0;   // ray parameter of the hit
    double distance = 0.0;
    int active_row = -1;  // constraint selected by the minimum
};

// Projection of g onto the polytope along -c via the fold of
// candidate_distance over all constraints.
PolytopeProjection project_polytope(const LpProblem& p, const ObjectiveFrame& frame,
                                    std::span<const double> g, const Tolerances& tol = {});

}  // namespace lpimager
