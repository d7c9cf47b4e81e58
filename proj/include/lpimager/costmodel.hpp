#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lpimager {

// numbers exchanged per point per worker: the ordinal out, the distance back
inline constexpr int kNumbersPerExchange = 2;

// Operation counts of the per-point pipeline (arithmetic + comparisons).
std::int64_t candidate_op_count(int n, std::int64_t m);  // one candidate evaluation
std::int64_t map_op_count(int n, std::int64_t m);        // full constraint sweep for one point

// Timing parameters of the master/worker iteration.
struct CostParams {
    double t_c = 0.0;    // master <-> one worker exchange, incl. latency
    double t_map = 0.0;  // one worker sweeping the entire constraint list
    double t_a = 0.0;    // one fold operation
    std::int64_t m = 0;
    std::optional<double> latency;  // D
    std::optional<double> tau_op;   // seconds per arithmetic op
    std::optional<double> tau_tr;   // seconds per transferred number
};

// Worker count that maximizes speedup under the cost metric. May be
// negative when communication dominates (no profitable parallelism).
double scalability_bound(const CostParams& params);

// Same bound with t_c = 2*(tau_tr + D), t_map = map_op_count * tau_op,
// t_a = tau_op.
double scalability_bound_analytic(int n, std::int64_t m, double tau_op, double tau_tr,
                                  double latency);

// Per-iteration timing log of one constraint-split run.
struct TimedRun {
    int workers = 0;
    std::vector<double> iteration_seconds;
};

struct FitResult {
    CostParams params;
    double rss = 0.0;                 // residual sum of squares over medians
    std::vector<double> residuals;    // per worker count, observed - model
    bool degenerate_map = false;      // t_map pinned at ~0: no parallel benefit
    bool degenerate_fold = false;     // t_a pinned at ~0
    std::string notes;
};

// Least-squares fit of (t_c, t_map, t_a) against per-worker-count medians
// of the iteration times, model T(L) = t_c*L + t_map/L + t_a*log2(L),
// with non-negative coefficients. Requires >= 3 distinct worker counts.
FitResult fit_params(const std::vector<TimedRun>& runs, std::int64_t m);

}  // namespace lpimager
