#include "lpimager/frame.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace lpimager {

ObjectiveFrame build_frame(const LpProblem& p, const Box& box, double margin) {
    if (box.dim() != p.n() || box.hi.size() != box.lo.size())
        throw std::invalid_argument("build_frame: box dimension does not match the problem");
    if (!(margin > 0.0)) throw std::invalid_argument("build_frame: margin must be positive");
    for (int j = 0; j < p.n(); ++j) {
        if (box.lo[j] > box.hi[j])
            throw std::invalid_argument("build_frame: inverted box at coordinate " + std::to_string(j));
    }
    const Vec& c = p.objective();
    // upper bound of <c,x> over the box, hence over M
    double u = 0.0;
    for (int j = 0; j < p.n(); ++j) u += std::max(c[j] * box.lo[j], c[j] * box.hi[j]);
    const double scale = (u + margin) / norm_sq(c);
    Vec z(p.n());
    for (int j = 0; j < p.n(); ++j) z[j] = scale * c[j];
    return ObjectiveFrame{c, std::move(z), p.objective_norm()};
}

ObjectiveFrame frame_from_z(const LpProblem& p, Vec z) {
    if (z.size() != static_cast<std::size_t>(p.n()))
        throw std::invalid_argument("frame_from_z: anchor dimension does not match the problem");
    return ObjectiveFrame{p.objective(), std::move(z), p.objective_norm()};
}

Vec orthogonal_projection(const ObjectiveFrame& frame, std::span<const double> x) {
    const Vec d = sub(x, frame.z);
    const double step = dot(frame.c, d) / (frame.c_norm * frame.c_norm);
    Vec r(x.begin(), x.end());
    axpy(r, -step, frame.c);
    return r;
}

double distance_to_objective(const ObjectiveFrame& frame, std::span<const double> x) {
    return dot(frame.c, sub(frame.z, x)) / frame.c_norm;
}

std::vector<Vec> sample_frame_violations(const LpProblem& p, const ObjectiveFrame& frame,
                                         const Box& box, int samples, std::uint64_t seed) {
    std::vector<Vec> witnesses;
    std::mt19937_64 rng(seed);
    Vec x(p.n());
    for (int s = 0; s < samples; ++s) {
        for (int j = 0; j < p.n(); ++j) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            x[j] = box.lo[j] + u * (box.hi[j] - box.lo[j]);
        }
        if (!membership(p, x)) continue;
        if (dot(frame.c, sub(x, frame.z)) > 0.0) witnesses.push_back(x);
    }
    return witnesses;
}

}  // namespace lpimager
