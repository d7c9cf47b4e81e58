#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>

#include "lpimager/costmodel.hpp"
#include "lpimager/field.hpp"
#include "lpimager/generator.hpp"
#include "lpimager/image.hpp"
#include "lpimager/io.hpp"
#include "lpimager/projection.hpp"

namespace py = pybind11;
using namespace lpimager;

namespace {

LpProblem make_problem(const std::vector<Vec>& rows, Vec b, Vec c) {
    const int m = static_cast<int>(rows.size());
    if (m == 0) throw std::invalid_argument("need at least one row");
    const int n = static_cast<int>(rows[0].size());
    Vec flat;
    flat.reserve(static_cast<std::size_t>(m) * n);
    for (const Vec& r : rows) {
        if (static_cast<int>(r.size()) != n) throw std::invalid_argument("ragged row list");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return LpProblem(n, m, std::move(flat), std::move(b), std::move(c));
}

std::vector<Vec> problem_rows(const LpProblem& p) {
    std::vector<Vec> rows;
    rows.reserve(p.m());
    for (int i = 0; i < p.m(); ++i) {
        const auto r = p.row(i);
        rows.emplace_back(r.begin(), r.end());
    }
    return rows;
}

SplitStrategy parse_strategy(const std::string& name) {
    if (name == "point") return SplitStrategy::kPointSplit;
    if (name == "constraint") return SplitStrategy::kConstraintSplit;
    throw std::invalid_argument("strategy must be 'point' or 'constraint'");
}

LpImage build_image_py(const LpProblem& p, const ObjectiveFrame& frame, int eta, double delta,
                       std::optional<Vec> center, int workers, const std::string& strategy,
                       std::int64_t max_cells) {
    const FieldSpec spec{center ? std::move(*center) : frame.z, eta, delta, p.n()};
    const BasisSet basis = build_basis(p.objective());
    BuildOptions opts;
    opts.workers = workers;
    opts.strategy = parse_strategy(strategy);
    opts.cell_cap = max_cells;
    py::gil_scoped_release release;
    if (workers <= 1) return build_image_sequential(p, frame, spec, basis, opts);
    return build_image_parallel(p, frame, spec, basis, opts);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "LP feasible-region imaging: receptive fields on the objective hyperplane, "
              "ray projections onto the polytope, sequential/parallel image builders and "
              "the scalability cost model.";

    py::register_exception<CellCapError>(m, "CellCapError");

    py::class_<LpProblem>(m, "Problem")
        .def(py::init(&make_problem), py::arg("rows"), py::arg("b"), py::arg("c"))
        .def_property_readonly("n", &LpProblem::n)
        .def_property_readonly("m", &LpProblem::m)
        .def_property_readonly("rows", &problem_rows)
        .def_property_readonly("b", [](const LpProblem& p) { return p.rhs(); })
        .def_property_readonly("c", [](const LpProblem& p) { return p.objective(); })
        .def("__repr__", [](const LpProblem& p) {
            return "Problem(n=" + std::to_string(p.n()) + ", m=" + std::to_string(p.m()) + ")";
        });

    py::class_<Box>(m, "Box")
        .def(py::init([](Vec lo, Vec hi) { return Box{std::move(lo), std::move(hi)}; }))
        .def_readonly("lo", &Box::lo)
        .def_readonly("hi", &Box::hi);

    py::class_<ProblemBundle>(m, "Bundle")
        .def_readonly("problem", &ProblemBundle::problem)
        .def_readonly("interior_point", &ProblemBundle::interior_point)
        .def_readonly("box", &ProblemBundle::box)
        .def_readonly("seed", &ProblemBundle::seed);

    py::class_<ObjectiveFrame>(m, "Frame")
        .def_readonly("c", &ObjectiveFrame::c)
        .def_readonly("z", &ObjectiveFrame::z)
        .def_readonly("c_norm", &ObjectiveFrame::c_norm);

    py::class_<BasisSet>(m, "Basis")
        .def_readonly("n", &BasisSet::n)
        .def_readonly("c_vectors", &BasisSet::c_vectors)
        .def_readonly("e_vectors", &BasisSet::e_vectors)
        .def_readonly("permutation", &BasisSet::permutation);

    py::class_<LpImage>(m, "Image")
        .def_readonly("values", &LpImage::values)
        .def_readonly("c", &LpImage::c)
        .def_readonly("z", &LpImage::z)
        .def_readonly("n", &LpImage::n)
        .def_readonly("m", &LpImage::m)
        .def_readonly("mode", &LpImage::mode)
        .def_readonly("workers", &LpImage::workers)
        .def_readonly("wall_seconds", &LpImage::wall_seconds)
        .def_readwrite("problem_sha256", &LpImage::problem_sha256)
        .def_property_readonly("eta", [](const LpImage& img) { return img.spec.eta; })
        .def_property_readonly("delta", [](const LpImage& img) { return img.spec.delta; })
        .def("__len__", [](const LpImage& img) { return img.values.size(); });

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("row_zero_violations", &ValidationReport::row_zero_violations)
        .def_readonly("degenerate_pairs", &ValidationReport::degenerate_pairs)
        .def_readonly("frame_violation_witnesses", &ValidationReport::frame_violation_witnesses)
        .def("clean", &ValidationReport::clean);

    m.def(
        "generate",
        [](int n, int m_extra, std::uint64_t seed, double box_hi, double slack_margin,
           double coeff_range) {
            return generate(n, m_extra, seed, GenParams{box_hi, slack_margin, coeff_range});
        },
        py::arg("n"), py::arg("m_extra"), py::arg("seed"), py::arg("box_hi") = 200.0,
        py::arg("slack_margin") = 1.0, py::arg("coeff_range") = 1.0);
    m.def("read_problem", &read_problem, py::arg("path"));
    m.def("write_problem", &write_problem, py::arg("bundle"), py::arg("path"));

    m.def("validate", &validate_problem, py::arg("problem"), py::arg("tol") = 1e-9);
    m.def(
        "membership",
        [](const LpProblem& p, const Vec& x, double eps) { return membership(p, x, eps); },
        py::arg("problem"), py::arg("x"), py::arg("eps_feas") = Tolerances{}.eps_feas);
    m.def(
        "objective_value", [](const Vec& c, const Vec& x) { return objective_value(c, x); },
        py::arg("c"), py::arg("x"));

    m.def(
        "build_frame",
        [](const LpProblem& p, const Box& box, double margin) { return build_frame(p, box, margin); },
        py::arg("problem"), py::arg("box"), py::arg("margin"));
    m.def("frame_from_z", &frame_from_z, py::arg("problem"), py::arg("z"));
    m.def("sample_frame_violations", &sample_frame_violations, py::arg("problem"), py::arg("frame"),
          py::arg("box"), py::arg("samples") = 1000, py::arg("seed") = 7,
          "Feasible box samples on the wrong side of the frame hyperplane (empty when sound).");
    m.def(
        "orthogonal_projection",
        [](const ObjectiveFrame& f, const Vec& x) { return orthogonal_projection(f, x); },
        py::arg("frame"), py::arg("x"));
    m.def(
        "distance_to_objective",
        [](const ObjectiveFrame& f, const Vec& x) { return distance_to_objective(f, x); },
        py::arg("frame"), py::arg("x"));

    m.def("build_basis", &build_basis, py::arg("c"));
    m.def(
        "field_size",
        [](int n, int eta, std::int64_t max_cells) {
            return field_size(FieldSpec{Vec(n, 0.0), eta, 1.0, n}, max_cells);
        },
        py::arg("n"), py::arg("eta"), py::arg("max_cells") = kDefaultCellCap);
    m.def(
        "receptive_point",
        [](std::int64_t k, const Vec& z, int eta, double delta, const BasisSet& basis) {
            return receptive_point(k, FieldSpec{z, eta, delta, basis.n}, basis);
        },
        py::arg("k"), py::arg("z"), py::arg("eta"), py::arg("delta"), py::arg("basis"));
    m.def(
        "enumerate_field",
        [](const Vec& z, int eta, double delta, const BasisSet& basis, std::int64_t max_cells) {
            return enumerate_field(FieldSpec{z, eta, delta, basis.n}, basis, max_cells);
        },
        py::arg("z"), py::arg("eta"), py::arg("delta"), py::arg("basis"),
        py::arg("max_cells") = kDefaultCellCap);
    m.def(
        "check_field_axioms",
        [](const std::vector<Vec>& points, const Vec& z, int eta, double delta, int samples,
           std::uint64_t seed) {
            const int n = z.empty() ? 0 : static_cast<int>(z.size());
            const FieldAxiomReport rep = check_field_axioms(points, FieldSpec{z, eta, delta, n}, samples, seed);
            py::dict d;
            d["center_in_field"] = rep.center_in_field;
            d["radius_bound"] = rep.radius_bound;
            d["min_separation"] = rep.min_separation;
            d["unit_neighbor"] = rep.unit_neighbor;
            d["hull_covered"] = rep.hull_covered;
            d["all_pass"] = rep.all_pass();
            return d;
        },
        py::arg("points"), py::arg("z"), py::arg("eta"), py::arg("delta"), py::arg("samples") = 1000,
        py::arg("seed") = 0x5eed);

    m.def(
        "candidate_distance",
        [](int i, const Vec& g, const LpProblem& p, const ObjectiveFrame& frame) {
            return candidate_distance(i, g, p, frame);
        },
        py::arg("i"), py::arg("g"), py::arg("problem"), py::arg("frame"));
    m.def(
        "ray_entry",
        [](const LpProblem& p, const Vec& g, const Vec& c) { return ray_interval(p, g, c).entry(); },
        py::arg("problem"), py::arg("g"), py::arg("c"),
        "Ray parameter of the first polytope point along -c, or None on a miss.");
    m.def(
        "project_polytope",
        [](const LpProblem& p, const ObjectiveFrame& frame, const Vec& g) -> py::object {
            const auto hit = project_polytope(p, frame, g);
            if (hit.miss) return py::none();
            py::dict d;
            d["point"] = hit.point;
            d["sigma"] = hit.sigma;
            d["distance"] = hit.distance;
            d["active_row"] = hit.active_row;
            return d;
        },
        py::arg("problem"), py::arg("frame"), py::arg("g"));

    m.def("build_image", &build_image_py, py::arg("problem"), py::arg("frame"), py::arg("eta"),
          py::arg("delta"), py::arg("center") = std::nullopt, py::arg("workers") = 1,
          py::arg("strategy") = "point", py::arg("max_cells") = kDefaultCellCap);

    m.def("decode_op_count", &decode_op_count, py::arg("n"));
    m.def("candidate_op_count", &candidate_op_count, py::arg("n"), py::arg("m"));
    m.def("map_op_count", &map_op_count, py::arg("n"), py::arg("m"));
    m.def(
        "scalability_bound",
        [](double t_c, double t_map, double t_a, std::int64_t m) {
            CostParams params;
            params.t_c = t_c;
            params.t_map = t_map;
            params.t_a = t_a;
            params.m = m;
            return scalability_bound(params);
        },
        py::arg("t_c"), py::arg("t_map"), py::arg("t_a"), py::arg("m"));
    m.def("scalability_bound_analytic", &scalability_bound_analytic, py::arg("n"), py::arg("m"),
          py::arg("tau_op"), py::arg("tau_tr"), py::arg("latency"));
    m.def(
        "fit_params",
        [](const std::vector<std::pair<int, std::vector<double>>>& runs, std::int64_t m) {
            std::vector<TimedRun> log;
            log.reserve(runs.size());
            for (const auto& [workers, seconds] : runs) log.push_back({workers, seconds});
            const FitResult fit = fit_params(log, m);
            py::dict d;
            d["t_c"] = fit.params.t_c;
            d["t_map"] = fit.params.t_map;
            d["t_a"] = fit.params.t_a;
            d["rss"] = fit.rss;
            d["residuals"] = fit.residuals;
            d["degenerate_map"] = fit.degenerate_map;
            d["degenerate_fold"] = fit.degenerate_fold;
            d["notes"] = fit.notes;
            return d;
        },
        py::arg("runs"), py::arg("m"),
        "Fit (t_c, t_map, t_a) from per-iteration timing logs given as (workers, [seconds]) pairs.");

    m.def("image_to_json", &image_to_json, py::arg("image"));
    m.def("image_payload", &image_payload, py::arg("image"));
    m.def("write_image_json", &write_image_json, py::arg("image"), py::arg("path"));
    m.def("read_image_json", &read_image_json, py::arg("path"));
    m.def("write_image_csv", &write_image_csv, py::arg("image"), py::arg("path"));
    m.def("sha256_file", &sha256_file, py::arg("path"));
}
