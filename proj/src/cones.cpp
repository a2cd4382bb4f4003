#include "anisoperim/cones.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace anisoperim {

namespace {

constexpr double kConeTol = 1e-9;

double clamped_arccos(double c) {
    return std::acos(std::clamp(c, -1.0, 1.0));
}

Vec checked_unit(const Vec& nu, const char* what) {
    require_finite(nu, what);
    if (std::abs(nu.norm() - 1.0) > kConeTol) {
        throw std::invalid_argument(std::string(what) + " must be a unit vector");
    }
    return nu / nu.norm();
}

}  // namespace

ConePair build_cone_pair(const Vec& nu1_in, const Vec& nu2_in, double half_width) {
    const Vec nu1 = checked_unit(nu1_in, "first normal");
    const Vec nu2 = checked_unit(nu2_in, "second normal");
    const int d = static_cast<int>(nu1.size());
    require_dim(nu2, d, "second normal");
    if (d < 2 || d > 4) {
        throw std::invalid_argument("cone pairs support dimensions 2 through 4");
    }
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw std::invalid_argument("half_width must be positive and finite");
    }

    Vec et = Vec::Zero(d);
    et(d - 1) = 1.0;
    const double d12 = nu1.dot(nu2);
    const double t1 = nu1.dot(et);
    const double t2 = nu2.dot(et);

    ConePairReport rep;
    const bool parallel = std::abs(d12) >= 1.0 - 1e-12;
    if (parallel) {
        // Identical planes need no alignment; flipped planes leave a full
        // hyperplane as the common boundary, horizontal only when nu = +-e_t.
        const bool plane_horizontal = std::abs(t1) >= 1.0 - kConeTol;
        rep.boundary_in_horizontal = d12 > 0.0 || plane_horizontal;
        rep.degenerate = d12 < 0.0 && !plane_horizontal;
    } else {
        // The plane intersection lies in {t=0} iff e_t is spanned by the
        // normals; test by least-squares residual.
        Eigen::MatrixXd V(d, 2);
        V.col(0) = nu1;
        V.col(1) = nu2;
        Eigen::VectorXd e = et;
        const Eigen::VectorXd coef = V.colPivHouseholderQr().solve(e);
        rep.boundary_in_horizontal = (V * coef - e).norm() <= kConeTol;
    }

    rep.cond_a = d12 >= -kConeTol && t2 >= t1 - kConeTol && t1 >= -kConeTol;
    const double ang12 = clamped_arccos(d12);
    const double ang1 = clamped_arccos(t1);
    const double ang2 = clamped_arccos(t2);
    rep.cond_b = std::abs(ang12 + ang2 - ang1) <= kConeTol;
    rep.roof = d == 2 && !rep.cond_b && std::abs(ang12 - ang1 - ang2) <= kConeTol;
    rep.minimal_claim =
        rep.boundary_in_horizontal && rep.cond_a && rep.cond_b && !rep.degenerate;

    auto tangent = [](double vert) {
        if (std::abs(vert) <= 1e-12) {
            return std::numeric_limits<double>::infinity();
        }
        return std::sqrt(std::max(0.0, 1.0 - vert * vert)) / vert;
    };
    rep.lambda1 = tangent(t1);
    rep.lambda2 = tangent(t2);

    Vec lo = Vec::Constant(d, -half_width);
    Vec hi = Vec::Constant(d, half_width);
    Box window{lo, hi};
    std::vector<Halfspace> hs = {Halfspace{nu1, 0.0}, Halfspace{nu2, 0.0}};
    PolyhedralSet inter = PolyhedralSet::from_halfspaces(hs, SetOp::Intersect, window);
    PolyhedralSet uni = PolyhedralSet::from_halfspaces(hs, SetOp::Union, window);
    return ConePair{std::move(inter), std::move(uni), rep};
}

double roof_cut_delta(const Vec& nu1_in, const Vec& nu2_in, double depth,
                      const Anisotropy& norm) {
    const Vec nu1 = checked_unit(nu1_in, "first normal");
    const Vec nu2 = checked_unit(nu2_in, "second normal");
    if (nu1.size() != 2 || nu2.size() != 2) {
        throw std::invalid_argument("roof cones live in dimension 2");
    }
    if (norm.dim() != 2) {
        throw DimensionError("norm dimension " + std::to_string(norm.dim()) +
                             " does not match cone dimension 2");
    }
    if (!(depth > 0.0) || !std::isfinite(depth)) {
        throw std::invalid_argument("cut depth must be positive and finite");
    }
    const bool upward = nu1(1) > kConeTol && nu2(1) > kConeTol;
    const bool opposite = nu1(0) * nu2(0) < -kConeTol * kConeTol;
    if (!upward || !opposite) {
        throw std::invalid_argument("not a roof configuration");
    }
    const double a1 = depth / std::abs(nu1(0));
    const double a2 = depth / std::abs(nu2(0));
    const double x1 = depth * nu1(1) / nu1(0);
    const double x2 = depth * nu2(1) / nu2(0);
    const double b = std::abs(x2 - x1);
    const Vec e2 = make_vec({0.0, 1.0});
    return a1 * norm.eval_dual(nu1) + a2 * norm.eval_dual(nu2) - b * norm.eval_dual(e2);
}

}  // namespace anisoperim
