#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace lpimager {

using Vec = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm_sq(std::span<const double> a) { return dot(a, a); }

inline double norm(std::span<const double> a) { return std::sqrt(norm_sq(a)); }

// y += alpha * x
inline void axpy(Vec& y, double alpha, std::span<const double> x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

inline Vec sub(std::span<const double> a, std::span<const double> b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline double distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace lpimager
