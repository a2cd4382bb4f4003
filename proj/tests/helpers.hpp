#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "anisoperim/anisotropy.hpp"

namespace testutil {

using anisoperim::Anisotropy;
using anisoperim::Vec;
using anisoperim::make_vec;

inline bool almost_equal(double a, double b, double eps = 1e-9) {
    return std::abs(a - b) <= eps * (1.0 + std::max(std::abs(a), std::abs(b)));
}

// Parallelogram ball with horizontal shear; its dual at (1,0) is 1 + cot(alpha)
// while the slice through the horizontal axis is the plain interval [-1,1].
inline Anisotropy sheared_parallelogram(double alpha) {
    double c = 1.0 / std::tan(alpha);
    return Anisotropy::polytope({
        make_vec({1 + c, 1}),
        make_vec({-1 + c, 1}),
        make_vec({1 - c, -1}),
        make_vec({-1 - c, -1}),
    });
}

inline Anisotropy hexagon(double eps) {
    return Anisotropy::polytope({
        make_vec({1, 0}),
        make_vec({eps, -eps}),
        make_vec({0, -1}),
        make_vec({-1, 0}),
        make_vec({-eps, eps}),
        make_vec({0, 1}),
    });
}

inline Anisotropy cube_norm() {
    std::vector<Vec> vs;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1}) vs.push_back(make_vec({double(sx), double(sy), double(sz)}));
    return Anisotropy::polytope(vs);
}

inline Anisotropy skew_quadratic() {
    anisoperim::Mat a(2, 2);
    a << 1.0, 0.5, 0.5, 1.0;  // sqrt(x1^2 + x1 x2 + x2^2)
    return Anisotropy::quadratic(a);
}

struct NamedNorm {
    std::string name;
    Anisotropy norm;
};

inline std::vector<NamedNorm> norm_suite() {
    std::vector<NamedNorm> suite;
    suite.push_back({"euclidean-2d", Anisotropy::euclidean(2)});
    suite.push_back({"l1-2d", Anisotropy::pnorm(2, 1.0)});
    suite.push_back({"max-3d", Anisotropy::pnorm(3, std::numeric_limits<double>::infinity())});
    suite.push_back({"parallelogram", sheared_parallelogram(std::atan(1.0))});
    suite.push_back({"hexagon", hexagon(1.0)});
    suite.push_back({"cube", cube_norm()});
    suite.push_back({"cylindrical-l1", Anisotropy::cylindrical(Anisotropy::pnorm(2, 1.0))});
    suite.push_back({"pcomb2-euclidean",
                     Anisotropy::omega_composed(anisoperim::OmegaSpec::pcomb(2.0),
                                                Anisotropy::euclidean(2))});
    return suite;
}

}  // namespace testutil
