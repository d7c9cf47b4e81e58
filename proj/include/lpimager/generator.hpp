#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "lpimager/frame.hpp"
#include "lpimager/problem.hpp"

namespace lpimager {

struct GenParams {
    double box_hi = 200.0;      // coordinate box [0, box_hi]^n
    double slack_margin = 1.0;  // minimum slack of the interior point
    double coeff_range = 1.0;   // magnitude scale of random row entries
};

// Generated or loaded instance with the guarantees the builders rely on:
// a point strictly inside M and (for generated instances) a bounding box.
struct ProblemBundle {
    LpProblem problem;
    std::optional<Vec> interior_point;
    std::optional<Box> box;
    std::optional<std::uint64_t> seed;  // absent when loaded from file
    std::optional<GenParams> recipe;
};

// Random bounded nonempty instance: 2n box rows (x_j >= 0, x_j <= box_hi)
// plus m_extra dense rows oriented to keep the box center strictly
// feasible with slack >= slack_margin. Rows and objective are drawn from
// mt19937_64 in a fixed order, so equal inputs give byte-identical files.
ProblemBundle generate(int n, int m_extra, std::uint64_t seed, const GenParams& params = {});

// JSON problem format. Unknown fields are rejected; dimension mismatches
// name the offending row. Doubles round-trip exactly.
ProblemBundle read_problem(const std::string& path);
void write_problem(const ProblemBundle& bundle, const std::string& path);

std::string problem_to_json(const ProblemBundle& bundle);
ProblemBundle problem_from_json(const std::string& text);

}  // namespace lpimager
