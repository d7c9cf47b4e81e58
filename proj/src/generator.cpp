#include "lpimager/generator.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lpimager {

namespace {

// portable uniform in [0, 1): top 53 bits of the engine output
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// nonzero entry with magnitude in [0.1, 1.0] * range
double draw_entry(std::mt19937_64& rng, double range) {
    const double mag = range * (0.1 + 0.9 * uniform01(rng));
    return uniform01(rng) < 0.5 ? -mag : mag;
}

void check_params(const GenParams& params) {
    if (!(params.box_hi > 0.0)) throw std::invalid_argument("generate: box_hi must be positive");
    if (!(params.slack_margin > 0.0)) throw std::invalid_argument("generate: slack_margin must be positive");
    if (!(params.coeff_range > 0.0)) throw std::invalid_argument("generate: coeff_range must be positive");
    if (params.box_hi / 2.0 < params.slack_margin)
        throw std::invalid_argument("generate: box_hi/2 must be >= slack_margin so the box center keeps its slack");
}

}  // namespace

ProblemBundle generate(int n, int m_extra, std::uint64_t seed, const GenParams& params) {
    if (n < 2) throw std::invalid_argument("generate: dimension must be >= 2");
    if (m_extra < 0) throw std::invalid_argument("generate: m_extra must be nonnegative");
    check_params(params);

    const int m = 2 * n + m_extra;
    Vec rows(static_cast<std::size_t>(m) * n, 0.0);
    Vec b(m, 0.0);

    // box rows first: x_j >= 0 written as -x_j <= 0, then x_j <= box_hi
    for (int j = 0; j < n; ++j) {
        rows[static_cast<std::size_t>(j) * n + j] = -1.0;
        b[j] = 0.0;
    }
    for (int j = 0; j < n; ++j) {
        rows[static_cast<std::size_t>(n + j) * n + j] = 1.0;
        b[n + j] = params.box_hi;
    }

    Vec center(n, params.box_hi / 2.0);

    std::mt19937_64 rng(seed);
    for (int i = 0; i < m_extra; ++i) {
        const std::size_t off = static_cast<std::size_t>(2 * n + i) * n;
        double along_center = 0.0;
        for (int j = 0; j < n; ++j) {
            rows[off + j] = draw_entry(rng, params.coeff_range);
            along_center += rows[off + j] * center[j];
        }
        // rhs keeps the center strictly inside with at least the margin
        b[2 * n + i] = along_center + params.slack_margin * (1.0 + uniform01(rng));
    }

    Vec c(n);
    for (int j = 0; j < n; ++j) c[j] = draw_entry(rng, 1.0);
    const double c_len = norm(c);
    if (c_len < 1.0) {
        for (int j = 0; j < n; ++j) c[j] /= c_len;
    }

    ProblemBundle bundle{LpProblem(n, m, std::move(rows), std::move(b), std::move(c)),
                         std::move(center),
                         Box{Vec(n, 0.0), Vec(n, params.box_hi)},
                         seed,
                         params};
    return bundle;
}

namespace {

using nlohmann::json;

json vec_to_json(const Vec& v) { return json(v); }

Vec json_to_vec(const json& j, const std::string& what, std::size_t expected) {
    if (!j.is_array()) throw std::runtime_error("problem file: " + what + " must be an array");
    if (j.size() != expected)
        throw std::runtime_error("problem file: " + what + " has length " + std::to_string(j.size()) +
                                 ", expected " + std::to_string(expected));
    Vec v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw std::runtime_error("problem file: " + what + " holds a non-number");
        v[i] = j[i].get<double>();
    }
    return v;
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) ok = true;
        if (!ok) throw std::runtime_error("problem file: unknown field '" + it.key() + "' in " + where);
    }
}

}  // namespace

std::string problem_to_json(const ProblemBundle& bundle) {
    const LpProblem& p = bundle.problem;
    json j;
    j["n"] = p.n();
    j["m"] = p.m();
    json rows = json::array();
    for (int i = 0; i < p.m(); ++i) {
        const auto r = p.row(i);
        rows.push_back(json(Vec(r.begin(), r.end())));
    }
    j["rows"] = std::move(rows);
    j["b"] = vec_to_json(p.rhs());
    j["c"] = vec_to_json(p.objective());
    if (bundle.box) j["box"] = {{"lo", vec_to_json(bundle.box->lo)}, {"hi", vec_to_json(bundle.box->hi)}};
    if (bundle.interior_point) j["feasible_point"] = vec_to_json(*bundle.interior_point);
    return j.dump();
}

ProblemBundle problem_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("problem file: malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::runtime_error("problem file: top-level value must be an object");
    reject_unknown(j, {"n", "m", "rows", "b", "c", "box", "feasible_point"}, "the problem object");
    for (const char* req : {"n", "m", "rows", "b", "c"})
        if (!j.contains(req)) throw std::runtime_error(std::string("problem file: missing field '") + req + "'");
    if (!j["n"].is_number_integer() || !j["m"].is_number_integer())
        throw std::runtime_error("problem file: n and m must be integers");
    const int n = j["n"].get<int>();
    const int m = j["m"].get<int>();
    if (n < 2 || m < 1) throw std::runtime_error("problem file: need n >= 2 and m >= 1");
    if (!j["rows"].is_array() || j["rows"].size() != static_cast<std::size_t>(m))
        throw std::runtime_error("problem file: rows must be an array of length m");

    Vec flat(static_cast<std::size_t>(m) * n);
    for (int i = 0; i < m; ++i) {
        const Vec row = json_to_vec(j["rows"][i], "row " + std::to_string(i), static_cast<std::size_t>(n));
        std::copy(row.begin(), row.end(), flat.begin() + static_cast<std::size_t>(i) * n);
    }
    Vec b = json_to_vec(j["b"], "b", static_cast<std::size_t>(m));
    Vec c = json_to_vec(j["c"], "c", static_cast<std::size_t>(n));

    ProblemBundle bundle{LpProblem(n, m, std::move(flat), std::move(b), std::move(c)),
                         std::nullopt, std::nullopt, std::nullopt, std::nullopt};
    if (j.contains("box")) {
        const json& box = j["box"];
        if (!box.is_object()) throw std::runtime_error("problem file: box must be an object");
        reject_unknown(box, {"lo", "hi"}, "box");
        for (const char* req : {"lo", "hi"})
            if (!box.contains(req)) throw std::runtime_error(std::string("problem file: box missing '") + req + "'");
        bundle.box = Box{json_to_vec(box["lo"], "box.lo", static_cast<std::size_t>(n)),
                         json_to_vec(box["hi"], "box.hi", static_cast<std::size_t>(n))};
    }
    if (j.contains("feasible_point"))
        bundle.interior_point = json_to_vec(j["feasible_point"], "feasible_point", static_cast<std::size_t>(n));
    return bundle;
}

ProblemBundle read_problem(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open problem file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return problem_from_json(buf.str());
}

void write_problem(const ProblemBundle& bundle, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << problem_to_json(bundle) << '\n';
    if (!out) throw std::runtime_error("failed writing problem file: " + path);
}

}  // namespace lpimager
