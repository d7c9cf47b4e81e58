#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <stdexcept>

#include "lpimager/field.hpp"
#include "test_support.hpp"

using namespace lpimager;
using lpimager::testing::uniform;
using lpimager::testing::uniform01;

namespace {

bool bitwise_equal(const Vec& a, const Vec& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

Vec random_gradient(std::mt19937_64& rng, int n, bool allow_zeros) {
    Vec c(n);
    for (int j = 0; j < n; ++j) {
        c[j] = uniform(rng, -3, 3);
        if (allow_zeros && uniform01(rng) < 0.3) c[j] = 0.0;
    }
    bool nonzero = false;
    for (double v : c) nonzero = nonzero || v != 0.0;
    if (!nonzero) c[0] = 1.0;
    return c;
}

}  // namespace

TEST_CASE("basis construction follows the case split") {
    SUBCASE("zero leading component falls back to the unit vector") {
        const BasisSet basis = build_basis(Vec{0, 1});
        REQUIRE(basis.e_vectors.size() == 1);
        CHECK(basis.c_vectors[1] == Vec{1, 0});
        CHECK(basis.e_vectors[0] == Vec{1, 0});
    }
    SUBCASE("n=2 diagonal gradient") {
        const BasisSet basis = build_basis(Vec{1, 1});
        CHECK(basis.c_vectors[1] == Vec{-1, 1});
        CHECK(dot(basis.c_vectors[0], basis.c_vectors[1]) == 0.0);
    }
    SUBCASE("n=3 all-ones gradient") {
        const BasisSet basis = build_basis(Vec{1, 1, 1});
        CHECK(basis.c_vectors[1] == Vec{-2, 1, 1});
        CHECK(basis.c_vectors[2] == Vec{0, -1, 1});
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                CHECK(std::fabs(dot(basis.c_vectors[i], basis.c_vectors[j])) <=
                      1e-9 * norm(basis.c_vectors[i]) * norm(basis.c_vectors[j]));
    }
    SUBCASE("zero gradient is rejected") {
        CHECK_THROWS_AS(build_basis(Vec{0, 0, 0}), std::invalid_argument);
    }
}

TEST_CASE("basis orthogonality and unit norms over random gradients") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + static_cast<int>(uniform01(rng) * 7);
        const Vec c = random_gradient(rng, n, true);
        const BasisSet basis = build_basis(c);
        REQUIRE(basis.c_vectors.size() == static_cast<std::size_t>(n));
        REQUIRE(basis.e_vectors.size() == static_cast<std::size_t>(n - 1));
        CHECK(basis.c_vectors[0] == c);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const double bound = 1e-9 * norm(basis.c_vectors[i]) * norm(basis.c_vectors[j]);
                CHECK(std::fabs(dot(basis.c_vectors[i], basis.c_vectors[j])) <= bound);
            }
        }
        for (const Vec& e : basis.e_vectors) CHECK(std::fabs(norm(e) - 1.0) <= 1e-12);
    }
}

TEST_CASE("permutation transparency when the last component vanishes") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(uniform01(rng) * 5);
        Vec c = random_gradient(rng, n, false);
        c[n - 1] = 0.0;
        const BasisSet basis = build_basis(c);
        CHECK(basis.permutation != std::vector<int>{});
        CHECK(basis.permutation[n - 1] != n - 1);
        // emitted vectors live in original coordinates and stay orthogonal to c
        for (const Vec& e : basis.e_vectors)
            CHECK(std::fabs(dot(c, e)) <= 1e-9 * norm(c));
    }
}

TEST_CASE("field size follows the lattice formula") {
    CHECK(field_size(FieldSpec{Vec(5, 0.0), 2, 1.0, 5}) == 625);
    CHECK(field_size(FieldSpec{Vec(6, 0.0), 2, 1.0, 6}) == 3125);
    CHECK(field_size(FieldSpec{Vec(7, 0.0), 2, 1.0, 7}) == 15625);
    CHECK(field_size(FieldSpec{Vec(2, 0.0), 1, 1.0, 2}) == 3);
}

TEST_CASE("field size cap and overflow are reported distinctly") {
    const FieldSpec over_cap{Vec(30, 0.0), 2, 1.0, 30};  // 5^29 > 2^40
    try {
        field_size(over_cap);
        FAIL("expected CellCapError");
    } catch (const CellCapError& e) {
        CHECK_FALSE(e.overflow);
    }
    const FieldSpec overflow{Vec(60, 0.0), 4, 1.0, 60};  // 9^59 > 2^63
    try {
        field_size(overflow, std::numeric_limits<std::int64_t>::max());
        FAIL("expected CellCapError");
    } catch (const CellCapError& e) {
        CHECK(e.overflow);
    }
    // a raised cap admits fields beyond the default
    const FieldSpec big{Vec(19, 0.0), 2, 1.0, 19};  // 5^18 ~ 3.8e12
    CHECK_THROWS_AS(field_size(big), CellCapError);
    CHECK(field_size(big, std::int64_t{1} << 43) == 3814697265625LL);
}

TEST_CASE("receptive points by ordinal") {
    SUBCASE("n=2 line lattice") {
        const BasisSet basis = build_basis(Vec{0, 1});
        const FieldSpec spec{Vec{0, 5}, 1, 1.0, 2};
        CHECK(receptive_point(0, spec, basis) == Vec{-1, 5});
        CHECK(receptive_point(1, spec, basis) == Vec{0, 5});
        CHECK(receptive_point(2, spec, basis) == Vec{1, 5});
        CHECK_THROWS_AS(receptive_point(3, spec, basis), std::out_of_range);
        CHECK_THROWS_AS(receptive_point(-1, spec, basis), std::out_of_range);
    }
    SUBCASE("center ordinal returns the anchor exactly") {
        std::mt19937_64 rng(29);
        for (int trial = 0; trial < 50; ++trial) {
            const int n = 2 + static_cast<int>(uniform01(rng) * 5);
            const Vec c = random_gradient(rng, n, true);
            Vec z(n);
            for (int j = 0; j < n; ++j) z[j] = uniform(rng, -5, 5);
            const int eta = 1 + static_cast<int>(uniform01(rng) * 2);
            const FieldSpec spec{z, eta, uniform(rng, 0.1, 2.0), n};
            const std::int64_t center = (field_size(spec) - 1) / 2;
            CHECK(receptive_point(center, spec, build_basis(c)) == z);
        }
    }
    SUBCASE("n=3 mixed-radix decode") {
        const BasisSet basis = build_basis(Vec{1, 1, 1});
        const Vec z{0.5, -0.25, 1.0};
        const FieldSpec spec{z, 1, 0.5, 3};
        // ordinal 4 has both digits at the center
        CHECK(receptive_point(4, spec, basis) == z);
    }
}

TEST_CASE("enumeration matches ordinal decoding bit for bit") {
    std::mt19937_64 rng(31);
    for (int n = 2; n <= 5; ++n) {
        for (int eta = 1; eta <= 2; ++eta) {
            for (int rep = 0; rep < 3; ++rep) {
                const Vec c = random_gradient(rng, n, true);
                Vec z(n);
                for (int j = 0; j < n; ++j) z[j] = uniform(rng, -5, 5);
                const FieldSpec spec{z, eta, uniform(rng, 0.05, 3.0), n};
                const BasisSet basis = build_basis(c);
                const auto points = enumerate_field(spec, basis);
                REQUIRE(points.size() == static_cast<std::size_t>(field_size(spec)));
                for (std::int64_t k = 0; k < static_cast<std::int64_t>(points.size()); ++k)
                    REQUIRE(bitwise_equal(points[static_cast<std::size_t>(k)],
                                          receptive_point(k, spec, basis)));
            }
        }
    }
}

TEST_CASE("enumerated points are distinct and sit on the frame hyperplane") {
    const BasisSet basis = build_basis(Vec{1, -2, 0.5});
    const Vec z{1, 1, 1};
    const FieldSpec spec{z, 1, 0.75, 3};
    const auto points = enumerate_field(spec, basis);
    REQUIRE(points.size() == 9);
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            CHECK(distance(points[i], points[j]) > 0.1);
    const Vec c{1, -2, 0.5};
    for (const Vec& g : points)
        CHECK(std::fabs(dot(c, sub(g, z))) <= 1e-9 * norm(c) * (norm(g) + norm(z)));
}

TEST_CASE("hyperplane residence holds in original coordinates under permutation") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(uniform01(rng) * 4);
        Vec c = random_gradient(rng, n, false);
        c[n - 1] = 0.0;
        Vec z(n);
        for (int j = 0; j < n; ++j) z[j] = uniform(rng, -5, 5);
        const FieldSpec spec{z, 1, 0.5, n};
        for (const Vec& g : enumerate_field(spec, build_basis(c)))
            CHECK(std::fabs(dot(c, sub(g, z))) <= 1e-9 * norm(c) * (norm(g) + norm(z)));
    }
}

TEST_CASE("field axioms hold for generated lattices") {
    const Vec c{0.3, -1.2, 0.7};
    const Vec z{2, 0, -1};
    const FieldSpec spec{z, 2, 0.5, 3};
    const BasisSet basis = build_basis(c);
    auto points = enumerate_field(spec, basis);
    const FieldAxiomReport rep = check_field_axioms(points, spec, 2000);
    CHECK(rep.center_in_field);
    CHECK(rep.radius_bound);
    CHECK(rep.min_separation);
    CHECK(rep.unit_neighbor);
    CHECK(rep.hull_covered);
    CHECK(rep.all_pass());

    SUBCASE("perturbing one point breaks separation or neighbor spacing") {
        points[3][0] += 2.0 * spec.delta;
        points[3][1] += 0.37 * spec.delta;
        const FieldAxiomReport bad = check_field_axioms(points, spec, 500);
        CHECK((!bad.min_separation || !bad.unit_neighbor));
    }
}

TEST_CASE("n=2 corner distance stays within the radius bound") {
    const BasisSet basis = build_basis(Vec{0, 1});
    const FieldSpec spec{Vec{0, 0}, 1, 1.0, 2};
    const auto points = enumerate_field(spec, basis);
    double worst = 0.0;
    for (const Vec& g : points) worst = std::max(worst, norm(g));
    CHECK(worst == doctest::Approx(1.0));
    CHECK(worst <= 1.0 * 1.0 * std::sqrt(2.0));
}

TEST_CASE("ordinal decode operation count") {
    CHECK(decode_op_count(2) == 17);
    CHECK(decode_op_count(3) == 42);
    CHECK(decode_op_count(7) == 222);
}
