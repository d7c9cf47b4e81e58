#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "lpimager/field.hpp"
#include "lpimager/generator.hpp"
#include "lpimager/projection.hpp"
#include "test_support.hpp"

using namespace lpimager;
using lpimager::testing::uniform;
using lpimager::testing::uniform01;
using lpimager::testing::unit_square;

TEST_CASE("half-space projection along the objective ray") {
    const Vec c{0, 1};
    SUBCASE("drop to a horizontal boundary") {
        const Vec q = project_halfspace(Vec{0, 2}, Vec{0, 1}, 1.0, c);
        CHECK(q[0] == 0.0);
        CHECK(q[1] == doctest::Approx(1.0));
    }
    SUBCASE("points already on the boundary stay put") {
        const Vec q = project_halfspace(Vec{3, 1}, Vec{0, 1}, 1.0, c);
        CHECK(q[0] == 3.0);
        CHECK(q[1] == doctest::Approx(1.0));
    }
    SUBCASE("oblique boundary") {
        const Vec q = project_halfspace(Vec{1, 3}, Vec{1, 1}, 2.0, c);
        CHECK(q[0] == doctest::Approx(1.0));
        CHECK(q[1] == doctest::Approx(1.0));
    }
    SUBCASE("non-recessive rows are rejected") {
        CHECK_THROWS_AS(project_halfspace(Vec{0, 2}, Vec{1, 0}, 1.0, c), std::invalid_argument);
    }
    SUBCASE("result lands on the boundary hyperplane") {
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 200; ++trial) {
            const int n = 2 + static_cast<int>(uniform01(rng) * 5);
            Vec row(n), grad(n), g(n);
            for (int j = 0; j < n; ++j) {
                row[j] = uniform(rng, -2, 2);
                grad[j] = uniform(rng, -2, 2);
                g[j] = uniform(rng, -5, 5);
            }
            if (dot(row, grad) < 0.1) continue;
            const double rhs = uniform(rng, -3, 3);
            const Vec q = project_halfspace(g, row, rhs, grad);
            CHECK(std::fabs(dot(row, q) - rhs) <= 1e-9 * (1 + std::fabs(rhs) + norm(row) * norm(q)));
        }
    }
}

TEST_CASE("ray interval oracle on the unit square") {
    const LpProblem p = unit_square();
    const Vec c{0, 1};
    SUBCASE("ray through the square") {
        const SigmaInterval iv = ray_interval(p, Vec{0.5, 2}, c);
        REQUIRE_FALSE(iv.empty);
        CHECK(iv.lo == doctest::Approx(1.0));
        CHECK(iv.hi == doctest::Approx(2.0));
        CHECK(*iv.entry() == doctest::Approx(1.0));
    }
    SUBCASE("ray outside the slab never enters") {
        const SigmaInterval iv = ray_interval(p, Vec{-0.5, 2}, c);
        CHECK(iv.empty);
        CHECK_FALSE(iv.entry().has_value());
    }
    SUBCASE("ray starting inside enters at zero") {
        const SigmaInterval iv = ray_interval(p, Vec{0.5, 0.5}, c);
        REQUIRE_FALSE(iv.empty);
        CHECK(iv.lo <= 0.0);
        CHECK(iv.hi >= 0.0);
        CHECK(*iv.entry() == 0.0);
    }
    SUBCASE("interval behind the origin of the ray is a miss") {
        const SigmaInterval iv = ray_interval(p, Vec{0.5, -2}, c);
        REQUIRE_FALSE(iv.empty);  // the line meets M, but only at sigma < 0
        CHECK(iv.hi < 0.0);
        CHECK_FALSE(iv.entry().has_value());
    }
}

TEST_CASE("candidate distances") {
    const LpProblem p = unit_square();
    const ObjectiveFrame frame = frame_from_z(p, Vec{0, 2});
    const Vec g{0.5, 2};
    SUBCASE("recessive facet hit") { CHECK(candidate_distance(2, g, p, frame) == doctest::Approx(1.0)); }
    SUBCASE("orthogonal rows map to a miss") { CHECK(is_miss(candidate_distance(0, g, p, frame))); }
    SUBCASE("boundary hit outside M maps to a miss") {
        CHECK(is_miss(candidate_distance(2, Vec{-0.5, 2}, p, frame)));
    }
}

TEST_CASE("reduce_min fold semantics") {
    CHECK(is_miss(reduce_min(kMiss, kMiss)));
    CHECK(reduce_min(3.5, kMiss) == 3.5);
    CHECK(reduce_min(kMiss, 3.5) == 3.5);
    CHECK(reduce_min(2.0, 1.0) == 1.0);
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 300; ++trial) {
        const double a = uniform01(rng) < 0.2 ? kMiss : uniform(rng, -5, 5);
        const double b = uniform01(rng) < 0.2 ? kMiss : uniform(rng, -5, 5);
        const double d = uniform01(rng) < 0.2 ? kMiss : uniform(rng, -5, 5);
        CHECK(reduce_min(a, b) == reduce_min(b, a));
        CHECK(reduce_min(reduce_min(a, b), d) == reduce_min(a, reduce_min(b, d)));
    }
}

TEST_CASE("polytope projection on the unit square") {
    const LpProblem p = unit_square();
    const ObjectiveFrame frame = frame_from_z(p, Vec{0, 2});
    SUBCASE("interior column hits the top facet") {
        const auto hit = project_polytope(p, frame, Vec{0.5, 2});
        REQUIRE_FALSE(hit.miss);
        CHECK(hit.point[0] == doctest::Approx(0.5));
        CHECK(hit.point[1] == doctest::Approx(1.0));
        CHECK(hit.sigma == doctest::Approx(1.0));
    }
    SUBCASE("column outside the shadow misses") {
        CHECK(project_polytope(p, frame, Vec{-0.5, 2}).miss);
    }
    SUBCASE("corner column lands on the vertex") {
        const auto hit = project_polytope(p, frame, Vec{1.0, 2});
        REQUIRE_FALSE(hit.miss);
        CHECK(hit.point[0] == doctest::Approx(1.0));
        CHECK(hit.point[1] == doctest::Approx(1.0));
    }
}

namespace {

struct RandomCase {
    ProblemBundle bundle;
    ObjectiveFrame frame;
    FieldSpec spec;
    BasisSet basis;
};

RandomCase make_case(std::mt19937_64& rng, int max_n = 7, int max_m_extra = 40) {
    const int n = 2 + static_cast<int>(uniform01(rng) * (max_n - 1));
    const int m_extra = static_cast<int>(uniform01(rng) * (max_m_extra + 1));
    GenParams params;
    params.box_hi = uniform(rng, 4.0, 60.0);
    params.slack_margin = uniform(rng, 0.2, params.box_hi / 2.0);
    ProblemBundle bundle = generate(n, m_extra, rng(), params);
    ObjectiveFrame frame = build_frame(bundle.problem, *bundle.box, uniform(rng, 0.2, 3.0));
    BasisSet basis = build_basis(bundle.problem.objective());
    const int eta = 1 + static_cast<int>(uniform01(rng) * 2);
    // center the lattice above the middle of the box shadow so hits and
    // misses both occur
    Vec center = orthogonal_projection(frame, *bundle.interior_point);
    const double delta = uniform(rng, 0.03, 0.8) * params.box_hi;
    FieldSpec spec{std::move(center), eta, delta, n};
    return {std::move(bundle), std::move(frame), std::move(spec), std::move(basis)};
}

}  // namespace

TEST_CASE("candidate fold agrees with the interval oracle") {
    std::mt19937_64 rng(53);
    int hits = 0, misses = 0;
    for (int trial = 0; trial < 300; ++trial) {
        auto rc = make_case(rng);
        const LpProblem& p = rc.bundle.problem;
        const std::int64_t total = field_size(rc.spec);
        for (int rep = 0; rep < 10; ++rep) {
            const std::int64_t k = static_cast<std::int64_t>(uniform01(rng) * total);
            const Vec g = receptive_point(std::min(k, total - 1), rc.spec, rc.basis);
            ExtendedReal folded = kMiss;
            for (int i = 0; i < p.m(); ++i) folded = reduce_min(folded, candidate_distance(i, g, p, rc.frame));
            const auto sigma = ray_interval(p, g, rc.frame.c).entry();
            if (!sigma) {
                ++misses;
                CHECK(is_miss(folded));
            } else {
                ++hits;
                REQUIRE_FALSE(is_miss(folded));
                const double expected = *sigma * rc.frame.c_norm;
                CHECK(folded == doctest::Approx(expected).epsilon(1e-9));
            }
        }
    }
    // both outcomes must actually occur for the check to mean anything
    CHECK(hits > 100);
    CHECK(misses > 100);
}

TEST_CASE("distance equals ray parameter times gradient norm") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(uniform01(rng) * 5);
        Vec c(n), z(n);
        for (int j = 0; j < n; ++j) {
            c[j] = uniform(rng, -2, 2);
            z[j] = uniform(rng, -5, 5);
        }
        if (norm(c) < 0.1) continue;
        const ObjectiveFrame frame{c, z, norm(c)};
        const BasisSet basis = build_basis(c);
        const FieldSpec spec{z, 1, uniform(rng, 0.1, 2.0), n};
        const Vec g = receptive_point(static_cast<std::int64_t>(uniform01(rng) * field_size(spec)) %
                                          field_size(spec),
                                      spec, basis);
        const double sigma = uniform(rng, 0, 10);
        Vec x = g;
        axpy(x, -sigma, c);
        const double rho = distance_to_objective(frame, x);
        CHECK(rho == doctest::Approx(sigma * frame.c_norm).epsilon(1e-12));
    }
}

TEST_CASE("polytope hits land on an active constraint") {
    std::mt19937_64 rng(61);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        auto rc = make_case(rng);
        const LpProblem& p = rc.bundle.problem;
        const std::int64_t total = field_size(rc.spec);
        for (int rep = 0; rep < 5; ++rep) {
        const Vec g = receptive_point(static_cast<std::int64_t>(uniform01(rng) * total) % total,
                                      rc.spec, rc.basis);
        const auto hit = project_polytope(p, rc.frame, g);
        if (hit.miss || hit.sigma == 0.0) continue;
        ++checked;
        bool active = false;
        for (int i = 0; i < p.m(); ++i) {
            const double bi = p.rhs(i);
            if (std::fabs(dot(p.row(i), hit.point) - bi) <= 1e-9 * (1 + std::fabs(bi))) active = true;
        }
        CHECK(active);
        // the chosen candidate maximizes the objective among feasible candidates
        const double chosen = objective_value(p.objective(), hit.point);
        for (int i = 0; i < p.m(); ++i) {
            const ExtendedReal v = candidate_distance(i, g, p, rc.frame);
            if (is_miss(v)) continue;
            Vec q = project_halfspace(g, p.row(i), p.rhs(i), rc.frame.c);
            CHECK(objective_value(p.objective(), q) <= chosen + 1e-9 * (1 + std::fabs(chosen)));
        }
        }
    }
    CHECK(checked > 30);
}
