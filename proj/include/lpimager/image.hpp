#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lpimager/field.hpp"
#include "lpimager/projection.hpp"

namespace lpimager {

enum class SplitStrategy {
    kPointSplit,       // ordinals partitioned across workers
    kConstraintSplit,  // constraint list partitioned, per-point coordination
};

struct BuildOptions {
    int workers = 1;
    SplitStrategy strategy = SplitStrategy::kPointSplit;
    std::int64_t cell_cap = kDefaultCellCap;
    Tolerances tol;
    // test-only: permits eta = 0 (single-point field)
    bool allow_point_field = false;
    // when set, the constraint-split coordinator appends one wall-clock
    // duration per lattice point (used by the bench harness)
    std::vector<double>* iteration_seconds = nullptr;
};

// Ordered distance list over the receptive field plus build provenance.
// values[k] corresponds to receptive_point(k); finite entries are
// nonnegative distances, +inf marks rays that miss the polytope.
struct LpImage {
    std::vector<ExtendedReal> values;
    FieldSpec spec;
    Vec c;
    Vec z;
    int n = 0;
    int m = 0;
    std::string problem_sha256;  // set by callers that know the source file
    std::string mode;            // "sequential" | "parallel"
    int workers = 1;
    double wall_seconds = 0.0;
};

LpImage build_image_sequential(const LpProblem& p, const ObjectiveFrame& frame,
                               const FieldSpec& spec, const BasisSet& basis,
                               const BuildOptions& opts = {});

// Master/worker build. Both strategies produce values bit-identical to the
// sequential build: every mode evaluates the same candidate function and
// folds with the exact min. A failure inside a worker aborts the build and
// is rethrown with the offending ordinal.
LpImage build_image_parallel(const LpProblem& p, const ObjectiveFrame& frame,
                             const FieldSpec& spec, const BasisSet& basis,
                             const BuildOptions& opts);

}  // namespace lpimager
