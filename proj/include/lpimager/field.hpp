#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpimager/vec.hpp"

namespace lpimager {

// Orthogonal basis spanning the hyperplane subspace orthogonal to c.
// c_vectors[0] is c itself; e_vectors are the n-1 unit spanning vectors.
// When the last component of c is zero, the construction runs in permuted
// coordinates (last coordinate swapped with the largest-|c_j| one) and the
// stored vectors are already mapped back to the original coordinates;
// `permutation` records the coordinate map that was used.
struct BasisSet {
    int n = 0;
    std::vector<Vec> c_vectors;   // n vectors, mutually orthogonal
    std::vector<Vec> e_vectors;   // n-1 unit vectors
    std::vector<int> permutation; // identity when c_n != 0
};

BasisSet build_basis(const Vec& c);

// Receptive-field parameters: center z on the frame hyperplane, rank eta
// (half-width in cells) and density delta (cell edge).
struct FieldSpec {
    Vec z;
    int eta = 1;
    double delta = 1.0;
    int n = 0;
};

inline constexpr std::int64_t kDefaultCellCap = std::int64_t{1} << 40;

class CellCapError : public std::runtime_error {
public:
    CellCapError(std::string msg, bool overflowed) : std::runtime_error(std::move(msg)), overflow(overflowed) {}
    bool overflow = false;
};

// (2*eta+1)^(n-1). Throws CellCapError when the count exceeds the cap or
// does not fit a 64-bit integer (the two cases carry distinct messages).
std::int64_t field_size(const FieldSpec& spec, std::int64_t cell_cap = kDefaultCellCap);

// Point number k of the lattice, k in [0, field_size). The ordinal is
// decoded into base-(2*eta+1) digits, least significant digit varying
// fastest; the offset is accumulated over e_vectors in ascending order so
// that results are bit-identical with enumerate_field.
Vec receptive_point(std::int64_t k, const FieldSpec& spec, const BasisSet& basis);

// Full lattice in ordinal order via odometer counting over the digit
// vector (the nested-loop ordering), sharing the accumulation path with
// receptive_point.
std::vector<Vec> enumerate_field(const FieldSpec& spec, const BasisSet& basis,
                                 std::int64_t cell_cap = kDefaultCellCap);

struct FieldAxiomReport {
    bool center_in_field = false;    // center belongs to the lattice
    bool radius_bound = false;       // ||g - z|| <= eta*delta*sqrt(n)
    bool min_separation = false;     // pairwise distances >= delta
    bool unit_neighbor = false;      // every point has a neighbor at exactly delta
    bool hull_covered = false;       // sampled hull points within delta*sqrt(n)/2 of the lattice

    // witnesses for the first observed violation of each condition
    int radius_violator = -1;
    double worst_radius = 0.0;
    int close_pair_a = -1, close_pair_b = -1;
    double min_pair_distance = 0.0;
    int lonely_point = -1;
    Vec uncovered_sample;
    double worst_cover_gap = 0.0;

    bool all_pass() const {
        return center_in_field && radius_bound && min_separation && unit_neighbor && hull_covered;
    }
};

// Geometric verification of the receptive-field conditions on an explicit
// point list. Hull coverage is checked on `samples` random convex
// combinations (exact hull quantification is not tractable).
FieldAxiomReport check_field_axioms(const std::vector<Vec>& points, const FieldSpec& spec,
                                    int samples, std::uint64_t seed = 0x5eed);

// Arithmetic/comparison operation count of the ordinal-decode routine.
std::int64_t decode_op_count(int n);

}  // namespace lpimager
