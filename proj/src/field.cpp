#include "lpimager/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace lpimager {

namespace {

std::vector<int> identity_permutation(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
}

void validate_spec(const FieldSpec& spec) {
    if (spec.n < 2) throw std::invalid_argument("FieldSpec: dimension must be >= 2");
    if (spec.eta < 0) throw std::invalid_argument("FieldSpec: rank must be nonnegative");
    if (!(spec.delta > 0.0)) throw std::invalid_argument("FieldSpec: density must be positive");
    if (spec.z.size() != static_cast<std::size_t>(spec.n))
        throw std::invalid_argument("FieldSpec: center dimension does not match n");
}

// Offset accumulation shared by receptive_point and enumerate_field: both
// routes must add the same terms in the same order so that equal digit
// vectors give bit-identical points.
Vec lattice_point(const FieldSpec& spec, const BasisSet& basis, const std::vector<std::int64_t>& digits) {
    const double r = static_cast<double>(spec.eta) * spec.delta;
    Vec s(spec.n, 0.0);
    for (int j = 0; j < spec.n - 1; ++j) {
        const double w = static_cast<double>(digits[j]) * spec.delta - r;
        axpy(s, w, basis.e_vectors[j]);
    }
    Vec g(spec.n);
    for (int j = 0; j < spec.n; ++j) g[j] = spec.z[j] + s[j];
    return g;
}

}  // namespace

BasisSet build_basis(const Vec& c) {
    const int n = static_cast<int>(c.size());
    if (n < 2) throw std::invalid_argument("build_basis: dimension must be >= 2");
    int arg_max = 0;
    for (int j = 1; j < n; ++j) {
        if (std::fabs(c[j]) > std::fabs(c[arg_max])) arg_max = j;
    }
    if (c[arg_max] == 0.0) throw std::invalid_argument("build_basis: objective gradient must be nonzero");

    auto perm = identity_permutation(n);
    if (c[n - 1] == 0.0) std::swap(perm[n - 1], perm[arg_max]);

    Vec cp(n);
    for (int j = 0; j < n; ++j) cp[j] = c[perm[j]];

    BasisSet basis;
    basis.n = n;
    basis.permutation = perm;
    basis.c_vectors.reserve(n);
    basis.c_vectors.push_back(c);

    // k-th vector (1-based): zeros below k, -S_k/c_k at position k where
    // S_k is the tail sum of squares, then the tail of c; the unit vector
    // when c_k = 0. Built in permuted coordinates, stored in original ones.
    for (int k = 1; k <= n - 1; ++k) {
        Vec v(n, 0.0);
        if (cp[k - 1] != 0.0) {
            double tail = 0.0;
            for (int i = k; i < n; ++i) tail += cp[i] * cp[i];
            v[k - 1] = -tail / cp[k - 1];
            for (int i = k; i < n; ++i) v[i] = cp[i];
        } else {
            v[k - 1] = 1.0;
        }
        Vec orig(n, 0.0);
        for (int j = 0; j < n; ++j) orig[perm[j]] = v[j];
        basis.c_vectors.push_back(std::move(orig));
    }

    basis.e_vectors.reserve(n - 1);
    for (int k = 1; k <= n - 1; ++k) {
        const Vec& v = basis.c_vectors[k];
        const double len = norm(v);
        if (!(len > 0.0) || !std::isfinite(len))
            throw std::runtime_error("build_basis: degenerate direction at index " + std::to_string(k));
        Vec e(n);
        for (int j = 0; j < n; ++j) e[j] = v[j] / len;
        basis.e_vectors.push_back(std::move(e));
    }
    return basis;
}

std::int64_t field_size(const FieldSpec& spec, std::int64_t cell_cap) {
    validate_spec(spec);
    const std::int64_t base = 2 * static_cast<std::int64_t>(spec.eta) + 1;
    std::int64_t k = 1;
    for (int j = 0; j < spec.n - 1; ++j) {
        if (k > std::numeric_limits<std::int64_t>::max() / base)
            throw CellCapError("field_size: cell count overflows 64-bit range", true);
        k *= base;
        if (k > cell_cap)
            throw CellCapError("field_size: cell count reaches " + std::to_string(k) +
                                   " and exceeds cap " + std::to_string(cell_cap),
                               false);
    }
    return k;
}

Vec receptive_point(std::int64_t k, const FieldSpec& spec, const BasisSet& basis) {
    validate_spec(spec);
    if (basis.n != spec.n || basis.e_vectors.size() != static_cast<std::size_t>(spec.n - 1))
        throw std::invalid_argument("receptive_point: basis does not span the field hyperplane");
    for (const Vec& e : basis.e_vectors)
        if (e.size() != static_cast<std::size_t>(spec.n))
            throw std::invalid_argument("receptive_point: basis vector dimension mismatch");
    const std::int64_t total = field_size(spec, std::numeric_limits<std::int64_t>::max());
    if (k < 0 || k >= total)
        throw std::out_of_range("receptive_point: ordinal " + std::to_string(k) + " outside [0, " +
                                std::to_string(total) + ")");
    const std::int64_t base = 2 * static_cast<std::int64_t>(spec.eta) + 1;
    std::vector<std::int64_t> digits(spec.n - 1, 0);
    std::int64_t power = total / base;  // base^(n-2)
    for (int j = spec.n - 2; j >= 0; --j) {
        digits[j] = k / power;
        k %= power;
        if (j > 0) power /= base;
    }
    return lattice_point(spec, basis, digits);
}

std::vector<Vec> enumerate_field(const FieldSpec& spec, const BasisSet& basis, std::int64_t cell_cap) {
    validate_spec(spec);
    if (basis.n != spec.n) throw std::invalid_argument("enumerate_field: basis dimension mismatch");
    const std::int64_t total = field_size(spec, cell_cap);
    const std::int64_t base = 2 * static_cast<std::int64_t>(spec.eta) + 1;

    std::vector<Vec> points;
    points.reserve(static_cast<std::size_t>(total));
    std::vector<std::int64_t> digits(spec.n - 1, 0);  // digits[0] spins fastest
    for (std::int64_t k = 0; k < total; ++k) {
        points.push_back(lattice_point(spec, basis, digits));
        for (int j = 0; j < spec.n - 1; ++j) {
            if (++digits[j] < base) break;
            digits[j] = 0;
        }
    }
    return points;
}

FieldAxiomReport check_field_axioms(const std::vector<Vec>& points, const FieldSpec& spec,
                                    int samples, std::uint64_t seed) {
    FieldAxiomReport rep;
    if (points.empty()) return rep;
    const int n = spec.n;
    const double delta = spec.delta;
    const std::size_t count = points.size();

    const double center_tol = 1e-9 * std::max(1.0, norm(spec.z));
    const double radius_limit = spec.eta * delta * std::sqrt(static_cast<double>(n));
    rep.radius_bound = true;
    for (std::size_t i = 0; i < count; ++i) {
        const double dz = distance(points[i], spec.z);
        if (dz <= center_tol) rep.center_in_field = true;
        if (dz > radius_limit * (1.0 + 1e-9) && rep.radius_violator < 0) {
            rep.radius_bound = false;
            rep.radius_violator = static_cast<int>(i);
            rep.worst_radius = dz;
        }
    }

    rep.min_separation = true;
    rep.unit_neighbor = true;
    rep.min_pair_distance = std::numeric_limits<double>::infinity();
    const double neighbor_tol = 1e-9 * std::max(1.0, delta);
    for (std::size_t i = 0; i < count; ++i) {
        bool has_neighbor = false;
        for (std::size_t j = 0; j < count; ++j) {
            if (i == j) continue;
            const double d = distance(points[i], points[j]);
            if (j > i && d < rep.min_pair_distance) {
                rep.min_pair_distance = d;
                if (d < delta * (1.0 - 1e-9) && rep.close_pair_a < 0) {
                    rep.min_separation = false;
                    rep.close_pair_a = static_cast<int>(i);
                    rep.close_pair_b = static_cast<int>(j);
                }
            }
            if (std::fabs(d - delta) <= neighbor_tol) has_neighbor = true;
        }
        if (!has_neighbor && count > 1 && rep.lonely_point < 0) {
            rep.unit_neighbor = false;
            rep.lonely_point = static_cast<int>(i);
        }
    }
    if (count == 1) {
        rep.min_separation = true;
        rep.unit_neighbor = false;  // no point at distance delta exists
        rep.lonely_point = 0;
    }

    // Hull coverage on random convex combinations: a handful of vertices
    // with Dirichlet-like weights per sample.
    std::mt19937_64 rng(seed);
    auto uniform01 = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    const double cover_limit = 0.5 * delta * std::sqrt(static_cast<double>(n)) * (1.0 + 1e-9);
    rep.hull_covered = true;
    Vec x(n);
    for (int s = 0; s < samples; ++s) {
        const int terms = 2 + static_cast<int>(uniform01() * std::min<std::size_t>(count, n + 1));
        std::fill(x.begin(), x.end(), 0.0);
        double wsum = 0.0;
        for (int t = 0; t < terms; ++t) {
            const std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(uniform01() * count), count - 1);
            const double w = -std::log(std::max(uniform01(), 1e-300));
            wsum += w;
            axpy(x, w, points[idx]);
        }
        for (int j = 0; j < n; ++j) x[j] /= wsum;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < count; ++i) best = std::min(best, distance(points[i], x));
        if (best > cover_limit) {
            rep.hull_covered = false;
            if (best > rep.worst_cover_gap) {
                rep.worst_cover_gap = best;
                rep.uncovered_sample = x;
            }
        }
    }
    return rep;
}

std::int64_t decode_op_count(int n) {
    if (n < 2) throw std::invalid_argument("decode_op_count: dimension must be >= 2");
    const std::int64_t nn = n;
    return 4 * nn * nn + 5 * nn - 9;
}

}  // namespace lpimager
