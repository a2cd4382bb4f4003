#pragma once

#include <optional>
#include <string>
#include <vector>

#include "anisoperim/anisotropy.hpp"
#include "anisoperim/core.hpp"

namespace anisoperim {

// Closed half-space {x : normal·x <= offset}; normals are stored unit-length.
struct Halfspace {
    Vec normal;
    double offset = 0.0;
};

using ConvexCell = std::vector<Halfspace>;

enum class SetOp { Intersect, Union };

// One boundary piece: outward unit normal, (m-1)-measure, and a point on the
// piece. The explicit vertex loop is kept for m <= 3 and enables exact
// re-clipping; pure facet-data sets (no loop) support only containment-style
// window filtering.
struct Facet {
    Vec normal;
    double area = 0.0;
    Vec anchor;
    std::vector<Vec> poly;
};

// A set of locally finite perimeter described either by generators (a union of
// convex half-space cells, clipped lazily to a query window) or by an explicit
// facet list. Generator form supports membership queries and exact clipping;
// dimensions 2..4 for intersections, 2..3 when cells may interact.
class PolyhedralSet {
public:
    static PolyhedralSet from_halfspaces(std::vector<Halfspace> hs, SetOp op, Box window);
    static PolyhedralSet from_cells(std::vector<ConvexCell> cells, Box window);
    static PolyhedralSet from_facets(std::vector<Facet> facets, Box window);

    // base x (t_lo, t_hi) one dimension up; generator-backed sets only.
    static PolyhedralSet prism(const PolyhedralSet& base, double t_lo, double t_hi);

    int dim() const { return dim_; }
    const Box& window() const { return window_; }
    bool has_generators() const { return !cells_.empty(); }
    const std::vector<ConvexCell>& cells() const { return cells_; }

    bool contains(const Vec& p) const;

    // Boundary facets inside the open query window (window faces never count).
    // Pre: query window contained in the validity window.
    std::vector<Facet> facets(const Box& window) const;
    std::vector<Facet> facets() const { return facets(window_); }

    // Complement within the same window; single-cell generator sets only.
    PolyhedralSet complement() const;

    // Uniform dilation x -> s*x of generators and window.
    PolyhedralSet scaled(double s) const;

private:
    int dim_ = 0;
    Box window_;
    std::vector<ConvexCell> cells_;
    std::vector<Facet> explicit_facets_;
};

// Integral of norm.eval_dual over the boundary inside the open window.
double perimeter(const PolyhedralSet& set, const Anisotropy& norm, const Box& window);
double perimeter(const PolyhedralSet& set, const Anisotropy& norm);

struct SliceReport {
    double lhs_horizontal = 0.0;  // boundary integral of the horizontal dual part
    double rhs_horizontal = 0.0;  // integral over heights of sliced perimeters
    double lhs_vertical = 0.0;    // boundary integral of the vertical dual part
    double rhs_vertical = 0.0;    // vertical crossing count integral
};

// Splits the boundary energy by horizontal/vertical dual contributions and
// recomputes each side through one-dimension-lower slices. Both routes are
// exact for polyhedral data (piecewise-linear quadrature in the height).
SliceReport slice_check(const PolyhedralSet& set, const Anisotropy& norm, const Box& window);

struct CylinderReport {
    double lateral = 0.0;          // lateral boundary energy of base x interval
    double expected = 0.0;         // 2*(m+1) times the base perimeter
    double base_perimeter = 0.0;
};

// Lateral boundary energy of base x (-(m+1), m+1) under the cylindrical lift
// of base_norm, against 2*(m+1) times the base perimeter.
CylinderReport cylinder_identity(const PolyhedralSet& base_set, const Anisotropy& base_norm,
                                 int m, const Box& base_window);

}  // namespace anisoperim
