#include "lpimager/problem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lpimager {

LpProblem::LpProblem(int n, int m, Vec rows_flat, Vec rhs, Vec objective)
    : n_(n), m_(m), a_(std::move(rows_flat)), b_(std::move(rhs)), c_(std::move(objective)) {
    if (n_ < 2) throw std::invalid_argument("LpProblem: dimension must be >= 2, got " + std::to_string(n_));
    if (m_ < 1) throw std::invalid_argument("LpProblem: need at least one constraint");
    if (a_.size() != static_cast<std::size_t>(n_) * m_)
        throw std::invalid_argument("LpProblem: row storage size does not match m*n");
    if (b_.size() != static_cast<std::size_t>(m_))
        throw std::invalid_argument("LpProblem: rhs size does not match m");
    if (c_.size() != static_cast<std::size_t>(n_))
        throw std::invalid_argument("LpProblem: objective size does not match n");
    c_norm_ = norm(c_);
    if (c_norm_ == 0.0) throw std::invalid_argument("LpProblem: objective gradient must be nonzero");
    row_norm_.resize(m_);
    for (int i = 0; i < m_; ++i) row_norm_[i] = norm(row(i));
}

ValidationReport validate_problem(const LpProblem& p, double tol) {
    ValidationReport report;
    for (int i = 0; i < p.m(); ++i) {
        if (p.row_norm(i) <= tol) report.row_zero_violations.push_back(i);
    }
    // Two rows describe the same hyperplane when a_j = lambda*a_i and
    // b_j = lambda*b_i for some lambda > 0; compare after normalizing.
    for (int i = 0; i < p.m(); ++i) {
        if (p.row_norm(i) <= tol) continue;
        for (int j = i + 1; j < p.m(); ++j) {
            if (p.row_norm(j) <= tol) continue;
            const auto ri = p.row(i);
            const auto rj = p.row(j);
            const double si = 1.0 / p.row_norm(i);
            const double sj = 1.0 / p.row_norm(j);
            bool same = true;
            for (int k = 0; k < p.n() && same; ++k) {
                if (std::fabs(ri[k] * si - rj[k] * sj) > tol) same = false;
            }
            if (same && std::fabs(p.rhs(i) * si - p.rhs(j) * sj) > tol * (1.0 + std::fabs(p.rhs(i) * si)))
                same = false;
            if (same) report.degenerate_pairs.emplace_back(i, j);
        }
    }
    return report;
}

bool is_recessive(std::span<const double> row, std::span<const double> c, double eps_rec) {
    return dot(row, c) > eps_rec;
}

bool membership(const LpProblem& p, std::span<const double> x, double eps_feas) {
    for (int i = 0; i < p.m(); ++i) {
        const double bi = p.rhs(i);
        if (dot(p.row(i), x) > bi + eps_feas * (1.0 + std::fabs(bi))) return false;
    }
    return true;
}

double objective_value(std::span<const double> c, std::span<const double> x) { return dot(c, x); }

}  // namespace lpimager
