#pragma once

namespace lpimager {

// Single tolerance policy shared by the geometry and the image builders.
// eps_feas is relative (scaled by 1 + |b_i|), eps_rec scales with
// ||a_i||·||c||, eps_sigma guards against candidates behind the frame.
struct Tolerances {
    double eps_feas = 1e-9;
    double eps_rec_scale = 1e-12;
    double eps_sigma = 1e-9;
};

}  // namespace lpimager
