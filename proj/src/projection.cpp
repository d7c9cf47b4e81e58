#include "lpimager/projection.hpp"

#include <cmath>
#include <stdexcept>

namespace lpimager {

Vec project_halfspace(std::span<const double> g, std::span<const double> row, double rhs,
                      std::span<const double> c, double eps_rec) {
    const double denom = dot(row, c);
    if (!(denom > eps_rec))
        throw std::invalid_argument("project_halfspace: half-space is not recessive along the objective");
    const double sigma = (dot(row, g) - rhs) / denom;
    Vec q(g.begin(), g.end());
    axpy(q, -sigma, c);
    return q;
}

SigmaInterval ray_interval(const LpProblem& p, std::span<const double> g,
                           std::span<const double> c, const Tolerances& tol) {
    SigmaInterval iv;
    const double c_len = norm(c);
    // Emptiness is decided on the membership-slack-inflated constraints so
    // the oracle and the candidate fold share one boundary policy; the
    // endpoints themselves stay exact. A ray grazing a polytope edge
    // otherwise flips between hit and miss on 1-ulp endpoint rounding.
    double lo_slack = iv.lo;
    double hi_slack = iv.hi;
    for (int i = 0; i < p.m(); ++i) {
        const auto row = p.row(i);
        const double d = dot(row, c);
        const double r = dot(row, g) - p.rhs(i);
        const double slack = tol.eps_feas * (1.0 + std::fabs(p.rhs(i)));
        const double eps_dir = tol.eps_rec_scale * p.row_norm(i) * c_len;
        if (d > eps_dir) {
            iv.lo = std::max(iv.lo, r / d);
            lo_slack = std::max(lo_slack, (r - slack) / d);
        } else if (d < -eps_dir) {
            iv.hi = std::min(iv.hi, r / d);
            hi_slack = std::min(hi_slack, (r - slack) / d);
        } else {
            // direction-free constraint: plain feasibility of the whole ray
            if (r > slack) {
                iv.empty = true;
                return iv;
            }
        }
    }
    if (lo_slack > hi_slack) iv.empty = true;
    // graze: exact endpoints crossed by rounding only; collapse to the
    // entering crossing
    if (!iv.empty && iv.lo > iv.hi) iv.hi = iv.lo;
    return iv;
}

ExtendedReal candidate_distance(int i, std::span<const double> g, const LpProblem& p,
                                const ObjectiveFrame& frame, const Tolerances& tol) {
    const auto row = p.row(i);
    const double denom = dot(row, frame.c);
    if (!(denom > tol.eps_rec_scale * p.row_norm(i) * frame.c_norm)) return kMiss;
    const double sigma = (dot(row, g) - p.rhs(i)) / denom;
    if (sigma < -tol.eps_sigma) return kMiss;
    Vec q(g.begin(), g.end());
    axpy(q, -sigma, frame.c);
    if (!membership(p, q, tol.eps_feas)) return kMiss;
    return distance_to_objective(frame, q);
}

PolytopeProjection project_polytope(const LpProblem& p, const ObjectiveFrame& frame,
                                    std::span<const double> g, const Tolerances& tol) {
    PolytopeProjection result;
    ExtendedReal best = kMiss;
    for (int i = 0; i < p.m(); ++i) {
        const ExtendedReal v = candidate_distance(i, g, p, frame, tol);
        if (v < best) {
            best = v;
            result.active_row = i;
        }
    }
    if (is_miss(best)) return result;
    result.miss = false;
    result.distance = best;
    const auto row = p.row(result.active_row);
    result.sigma = (dot(row, g) - p.rhs(result.active_row)) / dot(row, frame.c);
    result.point = project_halfspace(g, row, p.rhs(result.active_row), frame.c);
    return result;
}

}  // namespace lpimager
