#pragma once

#include <span>
#include <utility>
#include <vector>

#include "lpimager/tolerances.hpp"
#include "lpimager/vec.hpp"

namespace lpimager {

// Dense LP instance: maximize <c,x> subject to A x <= b.
// Rows are stored row-major. Construction enforces shape consistency,
// n >= 2, m >= 1 and c != 0; zero rows are representable and surface
// through validate_problem instead of a hard failure.
class LpProblem {
public:
    LpProblem(int n, int m, Vec rows_flat, Vec rhs, Vec objective);

    int n() const { return n_; }
    int m() const { return m_; }
    std::span<const double> row(int i) const { return {a_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)}; }
    const Vec& rhs() const { return b_; }
    double rhs(int i) const { return b_[static_cast<std::size_t>(i)]; }
    const Vec& objective() const { return c_; }
    double row_norm(int i) const { return row_norm_[static_cast<std::size_t>(i)]; }
    double objective_norm() const { return c_norm_; }
    const Vec& rows_flat() const { return a_; }

private:
    int n_ = 0;
    int m_ = 0;
    Vec a_;
    Vec b_;
    Vec c_;
    Vec row_norm_;
    double c_norm_ = 0.0;
};

struct ValidationReport {
    std::vector<int> row_zero_violations;
    std::vector<std::pair<int, int>> degenerate_pairs;  // same hyperplane, positive multiple
    std::vector<Vec> frame_violation_witnesses;

    bool clean() const {
        return row_zero_violations.empty() && degenerate_pairs.empty() &&
               frame_violation_witnesses.empty();
    }
};

// Reports near-zero rows (||a_i|| <= tol) and pairs of rows that describe
// the same hyperplane (positive scalar multiples of each other within tol).
ValidationReport validate_problem(const LpProblem& p, double tol = 1e-9);

// <a_i, c> > eps: rays along -c from the boundary stay strictly inside.
bool is_recessive(std::span<const double> row, std::span<const double> c, double eps_rec);

// x in M within relative slack eps_feas * (1 + |b_i|) per constraint.
bool membership(const LpProblem& p, std::span<const double> x, double eps_feas = Tolerances{}.eps_feas);

double objective_value(std::span<const double> c, std::span<const double> x);

}  // namespace lpimager
