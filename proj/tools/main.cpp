// lp_imager: generate LP instances, build their distance images over a
// receptive field on the objective hyperplane, validate inputs, benchmark
// the parallel builders and evaluate the scalability model.

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpimager/costmodel.hpp"
#include "lpimager/field.hpp"
#include "lpimager/generator.hpp"
#include "lpimager/image.hpp"
#include "lpimager/io.hpp"
#include "lpimager/projection.hpp"

namespace {

using namespace lpimager;

constexpr int kExitOk = 0;
constexpr int kExitWarnings = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitCellCap = 4;
constexpr int kExitNoFrame = 5;

std::int64_t cell_cap_from_env() {
    const char* env = std::getenv("LP_IMAGER_MAX_CELLS");
    if (!env) return kDefaultCellCap;
    std::int64_t cap = 0;
    const auto res = std::from_chars(env, env + std::string(env).size(), cap);
    if (res.ec != std::errc{} || cap < 1) {
        std::cerr << "warning: ignoring malformed LP_IMAGER_MAX_CELLS='" << env << "'\n";
        return kDefaultCellCap;
    }
    return cap;
}

Vec parse_point(const std::string& text) {
    Vec v;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t next = std::min(text.find(',', pos), text.size());
        double value = 0.0;
        const char* first = text.data() + pos;
        const char* last = text.data() + next;
        const auto res = std::from_chars(first, last, value);
        if (res.ec != std::errc{} || res.ptr != last)
            throw std::invalid_argument("cannot parse coordinate '" + text.substr(pos, next - pos) + "'");
        v.push_back(value);
        pos = next + 1;
        if (next == text.size()) break;
    }
    return v;
}

struct FrameArgs {
    std::string z_text;
    double auto_margin = 0.0;
    bool has_z = false;
    bool has_auto = false;
};

// Builds the frame from --z or --auto-frame; prints the reason and returns
// nullopt when neither route is available.
std::optional<ObjectiveFrame> resolve_frame(const ProblemBundle& bundle, const FrameArgs& args) {
    if (args.has_z) {
        Vec z = parse_point(args.z_text);
        if (z.size() != static_cast<std::size_t>(bundle.problem.n()))
            throw std::invalid_argument("--z has " + std::to_string(z.size()) + " coordinates, problem needs " +
                                        std::to_string(bundle.problem.n()));
        ObjectiveFrame frame = frame_from_z(bundle.problem, std::move(z));
        if (bundle.box) {
            const auto witnesses = sample_frame_violations(bundle.problem, frame, *bundle.box, 1000, 7);
            if (!witnesses.empty())
                std::cerr << "warning: " << witnesses.size()
                          << " of 1000 sampled feasible points lie on the wrong side of the frame hyperplane\n";
        }
        return frame;
    }
    if (args.has_auto) {
        if (!bundle.box) {
            std::cerr << "error: --auto-frame needs a bounding box in the problem file\n";
            return std::nullopt;
        }
        return build_frame(bundle.problem, *bundle.box, args.auto_margin);
    }
    std::cerr << "error: no frame available; pass --z or --auto-frame (problem has "
              << (bundle.box ? "a" : "no") << " box)\n";
    return std::nullopt;
}

int cmd_gen(int n, int m_extra, std::uint64_t seed, const std::string& out, const GenParams& params) {
    ProblemBundle bundle = generate(n, m_extra, seed, params);
    try {
        write_problem(bundle, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    std::cout << "wrote " << out << '\n'
              << "  n = " << bundle.problem.n() << ", m = " << bundle.problem.m() << " (2n box rows + "
              << m_extra << " random rows)\n"
              << "  box = [0, " << params.box_hi << "]^" << n << ", seed = " << seed << '\n';
    return kExitOk;
}

struct ImageArgs {
    std::string problem_path;
    int eta = 1;
    double delta = 0.0;
    FrameArgs frame;
    int workers = 1;
    std::string strategy = "point";
    std::string out;
    std::string format = "json";
    std::string dump_field;
    std::int64_t max_cells = 0;
};

LpImage run_build(const ProblemBundle& bundle, const ObjectiveFrame& frame, const ImageArgs& args,
                  std::vector<double>* iteration_log = nullptr) {
    FieldSpec spec{frame.z, args.eta, args.delta, bundle.problem.n()};
    const BasisSet basis = build_basis(bundle.problem.objective());
    BuildOptions opts;
    opts.workers = args.workers;
    opts.strategy = args.strategy == "constraint" ? SplitStrategy::kConstraintSplit : SplitStrategy::kPointSplit;
    opts.cell_cap = args.max_cells;
    opts.iteration_seconds = iteration_log;
    if (args.workers <= 1 && !iteration_log) return build_image_sequential(bundle.problem, frame, spec, basis, opts);
    return build_image_parallel(bundle.problem, frame, spec, basis, opts);
}

int cmd_image(const ImageArgs& args) {
    ProblemBundle bundle = read_problem(args.problem_path);
    const auto frame = resolve_frame(bundle, args.frame);
    if (!frame) return kExitNoFrame;

    LpImage img = run_build(bundle, *frame, args);
    img.problem_sha256 = sha256_file(args.problem_path);

    std::size_t hits = 0;
    double min_rho = kMiss;
    for (double v : img.values) {
        if (!is_miss(v)) {
            ++hits;
            min_rho = std::min(min_rho, v);
        }
    }
    std::cout << "cells: " << img.values.size() << '\n'
              << "hits: " << hits << ", misses: " << (img.values.size() - hits) << '\n';
    if (hits > 0)
        std::cout << "min finite distance: " << min_rho << '\n';
    else
        std::cout << "min finite distance: none (all rays miss)\n";
    std::cout << "wall seconds: " << img.wall_seconds << '\n';

    try {
        if (args.format == "csv")
            write_image_csv(img, args.out);
        else
            write_image_json(img, args.out);
        if (!args.dump_field.empty()) {
            const BasisSet basis = build_basis(bundle.problem.objective());
            const FieldSpec spec{frame->z, args.eta, args.delta, bundle.problem.n()};
            write_text_file(args.dump_field, points_to_csv(enumerate_field(spec, basis, args.max_cells)));
            std::cout << "wrote " << args.dump_field << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    std::cout << "wrote " << args.out << '\n';
    return kExitOk;
}

int cmd_validate(const std::string& path, double tol) {
    ProblemBundle bundle = read_problem(path);
    const ValidationReport report = validate_problem(bundle.problem, tol);
    std::cout << "n = " << bundle.problem.n() << ", m = " << bundle.problem.m() << '\n';
    for (int i : report.row_zero_violations) std::cout << "zero row at index " << i << '\n';
    for (const auto& [i, j] : report.degenerate_pairs)
        std::cout << "rows " << i << " and " << j << " describe the same hyperplane\n";
    if (bundle.interior_point) {
        const bool ok = membership(bundle.problem, *bundle.interior_point);
        std::cout << "feasible_point is " << (ok ? "feasible" : "INFEASIBLE") << '\n';
    }
    if (report.clean()) {
        std::cout << "no violations\n";
        return kExitOk;
    }
    return kExitWarnings;
}

struct BenchArgs {
    std::string problem_path;
    int eta = 1;
    double delta = 0.0;
    FrameArgs frame;
    std::vector<int> workers;
    std::string report_path;
    std::int64_t max_cells = 0;
};

int cmd_bench(const BenchArgs& args) {
    ProblemBundle bundle = read_problem(args.problem_path);
    const auto frame = resolve_frame(bundle, args.frame);
    if (!frame) return kExitNoFrame;

    ImageArgs build_args;
    build_args.eta = args.eta;
    build_args.delta = args.delta;
    build_args.max_cells = args.max_cells;

    build_args.workers = 1;
    const LpImage seq = run_build(bundle, *frame, build_args);
    std::cout << "sequential: " << seq.wall_seconds << " s for " << seq.values.size() << " cells\n";

    std::vector<double> ps_seconds, cs_seconds, iter_medians;
    std::vector<TimedRun> log;
    for (int w : args.workers) {
        build_args.workers = w;
        build_args.strategy = "point";
        const LpImage ps = run_build(bundle, *frame, build_args);
        ps_seconds.push_back(ps.wall_seconds);

        build_args.strategy = "constraint";
        TimedRun run{w, {}};
        const LpImage cs = run_build(bundle, *frame, build_args, &run.iteration_seconds);
        cs_seconds.push_back(cs.wall_seconds);
        std::vector<double> sorted = run.iteration_seconds;
        std::sort(sorted.begin(), sorted.end());
        iter_medians.push_back(sorted[sorted.size() / 2]);
        log.push_back(std::move(run));

        std::cout << "workers " << w << ": point-split " << ps.wall_seconds << " s (speedup "
                  << seq.wall_seconds / ps.wall_seconds << "), constraint-split " << cs.wall_seconds
                  << " s (speedup " << seq.wall_seconds / cs.wall_seconds << ")\n";
    }

    nlohmann::json report;
    report["problem_sha256"] = sha256_file(args.problem_path);
    report["n"] = bundle.problem.n();
    report["m"] = bundle.problem.m();
    report["eta"] = args.eta;
    report["delta"] = args.delta;
    report["workers"] = args.workers;
    report["sequential_seconds"] = seq.wall_seconds;
    report["point_split_seconds"] = ps_seconds;
    report["constraint_split_seconds"] = cs_seconds;
    report["iteration_median_seconds"] = iter_medians;
    nlohmann::json speedup_ps = nlohmann::json::array(), speedup_cs = nlohmann::json::array();
    for (std::size_t i = 0; i < args.workers.size(); ++i) {
        speedup_ps.push_back(seq.wall_seconds / ps_seconds[i]);
        speedup_cs.push_back(seq.wall_seconds / cs_seconds[i]);
    }
    report["speedup_point_split"] = speedup_ps;
    report["speedup_constraint_split"] = speedup_cs;

    const std::set<int> distinct(args.workers.begin(), args.workers.end());
    if (distinct.size() >= 3) {
        const FitResult fit = fit_params(log, bundle.problem.m());
        report["fitted_params"] = {{"t_c", fit.params.t_c},   {"t_map", fit.params.t_map},
                                   {"t_a", fit.params.t_a},   {"rss", fit.rss},
                                   {"degenerate_map", fit.degenerate_map},
                                   {"degenerate_fold", fit.degenerate_fold},
                                   {"notes", fit.notes}};
        if (!fit.degenerate_fold) {
            const double bound = scalability_bound(fit.params);
            report["predicted_l_max"] = bound;
            std::cout << "fitted t_c = " << fit.params.t_c << " s, t_map = " << fit.params.t_map
                      << " s, t_a = " << fit.params.t_a << " s; predicted best worker count " << bound << '\n';
            if (!fit.notes.empty()) std::cout << "fit note: " << fit.notes << '\n';
        } else {
            report["predicted_l_max"] = nullptr;
            std::cout << "fit degenerate (" << fit.notes << "); no worker-count prediction\n";
        }
    } else {
        report["fitted_params"] = nullptr;
        report["predicted_l_max"] = nullptr;
        std::cout << "fewer than 3 distinct worker counts; skipping the model fit\n";
    }

    try {
        write_text_file(args.report_path, report.dump(2) + '\n');
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    std::cout << "wrote " << args.report_path << '\n';
    return kExitOk;
}

int cmd_cost(int n, std::int64_t m, double tau_op, double tau_tr, double latency,
             const std::optional<std::vector<double>>& direct) {
    std::cout << "point decode ops: " << decode_op_count(n) << '\n'
              << "candidate ops:    " << candidate_op_count(n, m) << '\n'
              << "map ops:          " << map_op_count(n, m) << '\n'
              << "numbers exchanged per point per worker: " << kNumbersPerExchange << '\n'
              << "analytic best worker count: " << scalability_bound_analytic(n, m, tau_op, tau_tr, latency)
              << '\n';
    if (direct) {
        CostParams params;
        params.t_c = (*direct)[0];
        params.t_map = (*direct)[1];
        params.t_a = (*direct)[2];
        params.m = m;
        std::cout << "measured-parameter best worker count: " << scalability_bound(params) << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LP feasible-region imaging from the objective hyperplane"};
    app.require_subcommand(1);
    const std::int64_t env_cap = cell_cap_from_env();

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a random bounded LP instance");
    int gen_n = 0, gen_m_extra = 0;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    GenParams gen_params;
    gen->add_option("--n", gen_n, "Dimension (>= 2)")->required()->check(CLI::Range(2, 1 << 20));
    gen->add_option("--m-extra", gen_m_extra, "Random rows beyond the 2n box rows")->check(CLI::NonNegativeNumber);
    gen->add_option("--seed", gen_seed, "PRNG seed");
    gen->add_option("--out", gen_out, "Output problem file (.lp.json)")->required();
    gen->add_option("--box-hi", gen_params.box_hi, "Upper bound of the coordinate box");
    gen->add_option("--slack-margin", gen_params.slack_margin, "Interior-point slack floor");
    gen->add_option("--coeff-range", gen_params.coeff_range, "Row coefficient magnitude scale");

    // image
    auto* image = app.add_subcommand("image", "Build the distance image of a problem");
    ImageArgs image_args;
    image_args.max_cells = env_cap;
    image->add_option("--problem", image_args.problem_path, "Problem file")->required();
    image->add_option("--eta", image_args.eta, "Field rank (>= 1)")->required()->check(CLI::PositiveNumber);
    image->add_option("--delta", image_args.delta, "Lattice cell edge")->required();
    auto* z_opt = image->add_option("--z", image_args.frame.z_text, "Frame anchor, comma-separated coordinates");
    auto* auto_opt =
        image->add_option("--auto-frame", image_args.frame.auto_margin, "Place the frame above the stored box by MARGIN");
    z_opt->excludes(auto_opt);
    image->add_option("--workers", image_args.workers, "Worker threads (1 = sequential)")->check(CLI::PositiveNumber);
    image->add_option("--strategy", image_args.strategy, "Parallel split: point | constraint")
        ->check(CLI::IsMember({"point", "constraint"}));
    image->add_option("--out", image_args.out, "Output image file")->required();
    image->add_option("--format", image_args.format, "Output format: json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    image->add_option("--dump-field", image_args.dump_field,
                      "Also write the lattice points as CSV (one point per row)");
    image->add_option("--max-cells", image_args.max_cells, "Cell cap override");

    // validate
    auto* validate = app.add_subcommand("validate", "Check a problem file for degeneracies");
    std::string validate_path;
    double validate_tol = 1e-9;
    validate->add_option("--problem", validate_path, "Problem file")->required();
    validate->add_option("--tol", validate_tol, "Comparison tolerance");

    // bench
    auto* bench = app.add_subcommand("bench", "Worker sweep with cost-model fit");
    BenchArgs bench_args;
    bench_args.max_cells = env_cap;
    bench->add_option("--problem", bench_args.problem_path, "Problem file")->required();
    bench->add_option("--eta", bench_args.eta, "Field rank")->required()->check(CLI::PositiveNumber);
    bench->add_option("--delta", bench_args.delta, "Lattice cell edge")->required();
    auto* bz = bench->add_option("--z", bench_args.frame.z_text, "Frame anchor");
    auto* bauto = bench->add_option("--auto-frame", bench_args.frame.auto_margin, "Frame margin above the box");
    bz->excludes(bauto);
    bench->add_option("--workers", bench_args.workers, "Worker counts, comma-separated")
        ->delimiter(',')
        ->default_val(std::vector<int>{1, 2, 4, 8});
    bench->add_option("--report", bench_args.report_path, "Bench report JSON path")->required();
    bench->add_option("--max-cells", bench_args.max_cells, "Cell cap override");

    // cost
    auto* cost = app.add_subcommand("cost", "Evaluate the operation counts and the scalability bound");
    int cost_n = 0;
    std::int64_t cost_m = 0;
    double tau_op = 1e-9, tau_tr = 1e-9, latency = 0.0;
    std::vector<double> direct_params;
    cost->add_option("--n", cost_n, "Dimension")->required()->check(CLI::Range(2, 1 << 20));
    cost->add_option("--m", cost_m, "Constraint count")->required()->check(CLI::PositiveNumber);
    cost->add_option("--tau-op", tau_op, "Seconds per arithmetic op");
    cost->add_option("--tau-tr", tau_tr, "Seconds per transferred number");
    cost->add_option("--latency", latency, "Message latency seconds");
    cost->add_option("--timing", direct_params, "Measured t_c,t_map,t_a triple")->delimiter(',')->expected(3);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    image_args.frame.has_z = z_opt->count() > 0;
    image_args.frame.has_auto = auto_opt->count() > 0;
    bench_args.frame.has_z = bz->count() > 0;
    bench_args.frame.has_auto = bauto->count() > 0;

    try {
        if (gen->parsed()) return cmd_gen(gen_n, gen_m_extra, gen_seed, gen_out, gen_params);
        if (image->parsed()) {
            if (!(image_args.delta > 0.0)) throw std::invalid_argument("--delta must be positive");
            return cmd_image(image_args);
        }
        if (validate->parsed()) return cmd_validate(validate_path, validate_tol);
        if (bench->parsed()) {
            if (!(bench_args.delta > 0.0)) throw std::invalid_argument("--delta must be positive");
            if (bench_args.workers.empty()) throw std::invalid_argument("--workers list is empty");
            return cmd_bench(bench_args);
        }
        if (cost->parsed())
            return cmd_cost(cost_n, cost_m, tau_op, tau_tr, latency,
                            direct_params.empty() ? std::nullopt : std::make_optional(direct_params));
    } catch (const CellCapError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCellCap;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitUsage;
}
