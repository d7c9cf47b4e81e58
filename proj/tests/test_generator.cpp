#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "lpimager/generator.hpp"
#include "test_support.hpp"

using namespace lpimager;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/lpimager_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("generated shapes") {
    SUBCASE("LP5-sized instance") {
        const ProblemBundle bundle = generate(5, 4002, 1);
        CHECK(bundle.problem.m() == 4012);
        CHECK(bundle.problem.n() == 5);
    }
    SUBCASE("box-only instance") {
        const ProblemBundle bundle = generate(2, 0, 7);
        CHECK(bundle.problem.m() == 4);
        REQUIRE(bundle.interior_point.has_value());
        CHECK((*bundle.interior_point)[0] == 100.0);  // center of [0, 200]
        CHECK(membership(bundle.problem, *bundle.interior_point));
    }
    SUBCASE("invalid parameters") {
        CHECK_THROWS_AS(generate(1, 0, 1), std::invalid_argument);
        CHECK_THROWS_AS(generate(3, -1, 1), std::invalid_argument);
        GenParams params;
        params.box_hi = 1.0;
        params.slack_margin = 2.0;  // center slack would be below the margin
        CHECK_THROWS_AS(generate(3, 5, 1, params), std::invalid_argument);
    }
}

TEST_CASE("generated instances keep their guarantees") {
    std::mt19937_64 rng(97);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(trial % 6);
        const int m_extra = trial % 17;
        const ProblemBundle bundle = generate(n, m_extra, rng());
        const LpProblem& p = bundle.problem;
        CHECK(validate_problem(p, 1e-9).row_zero_violations.empty());
        REQUIRE(bundle.interior_point.has_value());
        // strict slack on every constraint
        const GenParams params;
        for (int i = 0; i < p.m(); ++i) {
            const double slack = p.rhs(i) - dot(p.row(i), *bundle.interior_point);
            CHECK(slack >= params.slack_margin * (1.0 - 1e-12));
        }
        // dense rows beyond the box block
        for (int i = 2 * n; i < p.m(); ++i)
            for (double a : p.row(i)) CHECK(a != 0.0);
        CHECK(norm(p.objective()) >= 1.0 - 1e-12);
    }
}

TEST_CASE("generation is deterministic per seed") {
    const std::string a = problem_to_json(generate(4, 9, 1234));
    const std::string b = problem_to_json(generate(4, 9, 1234));
    const std::string c = problem_to_json(generate(4, 9, 1235));
    CHECK(a == b);
    CHECK(a != c);
}

TEST_CASE("problem files round-trip bitwise") {
    TempFile file("roundtrip.lp.json");
    const ProblemBundle out = generate(3, 11, 42);
    write_problem(out, file.path);
    const ProblemBundle in = read_problem(file.path);
    CHECK(in.problem.n() == out.problem.n());
    CHECK(in.problem.m() == out.problem.m());
    CHECK(in.problem.rows_flat() == out.problem.rows_flat());
    CHECK(in.problem.rhs() == out.problem.rhs());
    CHECK(in.problem.objective() == out.problem.objective());
    REQUIRE(in.box.has_value());
    CHECK(in.box->lo == out.box->lo);
    CHECK(in.box->hi == out.box->hi);
    REQUIRE(in.interior_point.has_value());
    CHECK(*in.interior_point == *out.interior_point);
    // a second write emits identical bytes
    TempFile file2("roundtrip2.lp.json");
    write_problem(in, file2.path);
    CHECK(problem_to_json(in) == problem_to_json(out));
}

TEST_CASE("problem reader diagnostics") {
    SUBCASE("short row names its index") {
        const std::string text =
            R"({"n":2,"m":2,"rows":[[1,0],[1]],"b":[1,1],"c":[1,1]})";
        CHECK_THROWS_WITH_AS(problem_from_json(text), doctest::Contains("row 1"), std::runtime_error);
    }
    SUBCASE("unknown fields are rejected") {
        const std::string text =
            R"({"n":2,"m":1,"rows":[[1,0]],"b":[1],"c":[1,1],"extra":3})";
        CHECK_THROWS_WITH_AS(problem_from_json(text), doctest::Contains("unknown field 'extra'"),
                             std::runtime_error);
    }
    SUBCASE("missing box is accepted") {
        const std::string text = R"({"n":2,"m":1,"rows":[[1,0]],"b":[1],"c":[1,1]})";
        const ProblemBundle bundle = problem_from_json(text);
        CHECK_FALSE(bundle.box.has_value());
        CHECK_FALSE(bundle.interior_point.has_value());
    }
    SUBCASE("malformed JSON is reported") {
        CHECK_THROWS_WITH_AS(problem_from_json("{"), doctest::Contains("malformed"), std::runtime_error);
    }
    SUBCASE("row count must match m") {
        const std::string text = R"({"n":2,"m":3,"rows":[[1,0],[0,1]],"b":[1,1,1],"c":[1,1]})";
        CHECK_THROWS_AS(problem_from_json(text), std::runtime_error);
    }
}
