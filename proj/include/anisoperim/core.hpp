#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace anisoperim {

// Small dense vector, stack-allocated up to the largest ambient dimension we
// handle (4). Dimension is a runtime property throughout the library.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 4, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 4, 4>;

inline Vec make_vec(std::initializer_list<double> xs) {
    Vec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

inline Vec from_std(const std::vector<double>& xs) {
    Vec v(static_cast<Eigen::Index>(xs.size()));
    for (size_t i = 0; i < xs.size(); ++i) v[static_cast<Eigen::Index>(i)] = xs[i];
    return v;
}

inline std::vector<double> to_std(const Vec& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

// Axis-aligned box, the validity window for polyhedral data.
struct Box {
    Vec lo, hi;

    int dim() const { return static_cast<int>(lo.size()); }

    bool contains(const Vec& p, double tol = 0.0) const {
        for (Eigen::Index i = 0; i < lo.size(); ++i)
            if (p[i] < lo[i] - tol || p[i] > hi[i] + tol) return false;
        return true;
    }

    bool contains_box(const Box& inner, double tol = 1e-12) const {
        for (Eigen::Index i = 0; i < lo.size(); ++i)
            if (inner.lo[i] < lo[i] - tol || inner.hi[i] > hi[i] + tol) return false;
        return true;
    }

    double extent(int axis) const { return hi[axis] - lo[axis]; }

    double volume() const {
        double v = 1.0;
        for (Eigen::Index i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
        return v;
    }
};

inline Box make_box(std::initializer_list<double> lo, std::initializer_list<double> hi) {
    if (lo.size() != hi.size()) throw std::invalid_argument("box: lo/hi dimension mismatch");
    return Box{make_vec(lo), make_vec(hi)};
}

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline void require_dim(const Vec& v, int d, const char* what) {
    if (static_cast<int>(v.size()) != d)
        throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(d) +
                             ", got " + std::to_string(v.size()));
}

inline void require_finite(const Vec& v, const char* what) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i]))
            throw std::invalid_argument(std::string(what) + ": non-finite component");
}

}  // namespace anisoperim
