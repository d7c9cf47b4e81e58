#include "lpimager/image.hpp"

#include <atomic>
#include <barrier>
#include <chrono>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace lpimager {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Fold of the candidate distances over a contiguous constraint block,
// ascending index. All build modes go through this single function.
ExtendedReal fold_block(std::span<const double> g, const LpProblem& p, const ObjectiveFrame& frame,
                        const Tolerances& tol, int begin, int end) {
    ExtendedReal acc = kMiss;
    for (int i = begin; i < end; ++i) acc = reduce_min(acc, candidate_distance(i, g, p, frame, tol));
    return acc;
}

void validate_build_inputs(const LpProblem& p, const ObjectiveFrame& frame, const FieldSpec& spec,
                           const BasisSet& basis, const BuildOptions& opts) {
    if (spec.n != p.n()) throw std::invalid_argument("build_image: field dimension does not match the problem");
    if (basis.n != spec.n) throw std::invalid_argument("build_image: basis dimension does not match the field");
    if (frame.c.size() != static_cast<std::size_t>(p.n()) || frame.z.size() != static_cast<std::size_t>(p.n()))
        throw std::invalid_argument("build_image: frame dimension does not match the problem");
    if (spec.eta < 1 && !opts.allow_point_field)
        throw std::invalid_argument("build_image: field rank must be >= 1");
    if (opts.workers < 1) throw std::invalid_argument("build_image: worker count must be >= 1");
}

struct WorkerFailure {
    std::mutex mu;
    std::atomic<bool> failed{false};
    std::int64_t ordinal = -1;
    std::string message;

    void record(std::int64_t k, const char* what) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failed.exchange(true)) {
            ordinal = k;
            message = what;
        }
    }

    [[noreturn]] void rethrow() const {
        throw std::runtime_error("image build failed at ordinal " + std::to_string(ordinal) + ": " + message);
    }
};

}  // namespace

LpImage build_image_sequential(const LpProblem& p, const ObjectiveFrame& frame,
                               const FieldSpec& spec, const BasisSet& basis,
                               const BuildOptions& opts) {
    validate_build_inputs(p, frame, spec, basis, opts);
    const std::int64_t total = field_size(spec, opts.cell_cap);
    const auto start = Clock::now();

    LpImage img;
    img.values.reserve(static_cast<std::size_t>(total));
    for (std::int64_t k = 0; k < total; ++k) {
        const Vec g = receptive_point(k, spec, basis);
        img.values.push_back(fold_block(g, p, frame, opts.tol, 0, p.m()));
    }

    img.spec = spec;
    img.c = frame.c;
    img.z = frame.z;
    img.n = p.n();
    img.m = p.m();
    img.mode = "sequential";
    img.workers = 1;
    img.wall_seconds = seconds_since(start);
    return img;
}

namespace {

LpImage build_constraint_split(const LpProblem& p, const ObjectiveFrame& frame,
                               const FieldSpec& spec, const BasisSet& basis,
                               const BuildOptions& opts, std::int64_t total) {
    const int workers = opts.workers;
    const auto start = Clock::now();

    // Coordinator state published between barrier phases: the current
    // ordinal before phase A, partial folds before phase B.
    std::int64_t current_k = 0;
    bool exit_flag = false;
    std::vector<ExtendedReal> partials(workers, kMiss);
    WorkerFailure failure;
    std::barrier sync(workers + 1);

    const std::int64_t m = p.m();
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int l = 0; l < workers; ++l) {
        const int begin = static_cast<int>(l * m / workers);
        const int end = static_cast<int>((l + 1) * m / workers);
        pool.emplace_back([&, l, begin, end] {
            while (true) {
                sync.arrive_and_wait();  // phase A: ordinal/exit published
                if (exit_flag) break;
                ExtendedReal partial = kMiss;
                try {
                    const Vec g = receptive_point(current_k, spec, basis);
                    partial = fold_block(g, p, frame, opts.tol, begin, end);
                } catch (const std::exception& e) {
                    failure.record(current_k, e.what());
                }
                partials[l] = partial;
                sync.arrive_and_wait();  // phase B: partials visible
            }
        });
    }

    LpImage img;
    img.values.reserve(static_cast<std::size_t>(total));
    if (opts.iteration_seconds) {
        opts.iteration_seconds->clear();
        opts.iteration_seconds->reserve(static_cast<std::size_t>(total));
    }
    for (std::int64_t k = 0; k < total && !failure.failed.load(); ++k) {
        const auto iter_start = Clock::now();
        current_k = k;
        sync.arrive_and_wait();  // phase A
        sync.arrive_and_wait();  // phase B
        ExtendedReal value = kMiss;
        for (int l = 0; l < workers; ++l) value = reduce_min(value, partials[l]);
        img.values.push_back(value);
        if (opts.iteration_seconds) opts.iteration_seconds->push_back(seconds_since(iter_start));
    }
    exit_flag = true;
    sync.arrive_and_wait();  // final phase A releases the pool
    for (auto& t : pool) t.join();
    if (failure.failed.load()) failure.rethrow();

    img.spec = spec;
    img.c = frame.c;
    img.z = frame.z;
    img.n = p.n();
    img.m = p.m();
    img.mode = "parallel";
    img.workers = workers;
    img.wall_seconds = seconds_since(start);
    return img;
}

LpImage build_point_split(const LpProblem& p, const ObjectiveFrame& frame, const FieldSpec& spec,
                          const BasisSet& basis, const BuildOptions& opts, std::int64_t total) {
    const int workers = opts.workers;
    const auto start = Clock::now();

    LpImage img;
    img.values.assign(static_cast<std::size_t>(total), kMiss);
    WorkerFailure failure;

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int l = 0; l < workers; ++l) {
        const std::int64_t begin = l * total / workers;
        const std::int64_t end = (l + 1) * total / workers;
        pool.emplace_back([&, begin, end] {
            for (std::int64_t k = begin; k < end; ++k) {
                if (failure.failed.load(std::memory_order_relaxed)) return;
                try {
                    const Vec g = receptive_point(k, spec, basis);
                    img.values[static_cast<std::size_t>(k)] = fold_block(g, p, frame, opts.tol, 0, p.m());
                } catch (const std::exception& e) {
                    failure.record(k, e.what());
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure.failed.load()) failure.rethrow();

    img.spec = spec;
    img.c = frame.c;
    img.z = frame.z;
    img.n = p.n();
    img.m = p.m();
    img.mode = "parallel";
    img.workers = workers;
    img.wall_seconds = seconds_since(start);
    return img;
}

}  // namespace

LpImage build_image_parallel(const LpProblem& p, const ObjectiveFrame& frame, const FieldSpec& spec,
                             const BasisSet& basis, const BuildOptions& opts) {
    validate_build_inputs(p, frame, spec, basis, opts);
    const std::int64_t total = field_size(spec, opts.cell_cap);
    if (opts.strategy == SplitStrategy::kConstraintSplit)
        return build_constraint_split(p, frame, spec, basis, opts, total);
    return build_point_split(p, frame, spec, basis, opts, total);
}

}  // namespace lpimager
