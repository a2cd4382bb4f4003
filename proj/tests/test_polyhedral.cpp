#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <limits>
#include <cmath>

#include "anisoperim/anisotropy.hpp"
#include "anisoperim/cones.hpp"
#include "anisoperim/polyhedral.hpp"
#include "helpers.hpp"

using namespace anisoperim;

namespace {

constexpr double kInfP = std::numeric_limits<double>::infinity();

PolyhedralSet unit_cube(const Box& window) {
    std::vector<Halfspace> hs;
    for (int ax = 0; ax < 3; ++ax) {
        Vec e = Vec::Zero(3);
        e(ax) = 1.0;
        hs.push_back(Halfspace{e, 1.0});
        hs.push_back(Halfspace{-e, 0.0});
    }
    return PolyhedralSet::from_halfspaces(hs, SetOp::Intersect, window);
}

PolyhedralSet axis_box(const Vec& lo, const Vec& hi, const Box& window) {
    const int d = lo.size();
    std::vector<Halfspace> hs;
    for (int ax = 0; ax < d; ++ax) {
        Vec e = Vec::Zero(d);
        e(ax) = 1.0;
        hs.push_back(Halfspace{e, hi(ax)});
        hs.push_back(Halfspace{-e, -lo(ax)});
    }
    return PolyhedralSet::from_halfspaces(hs, SetOp::Intersect, window);
}

// Right-opening and left-opening quadrant cones from the planar family used
// by the union scenarios: c1(l,g) = (-inf,l) x (g,+inf), c2 its reflection.
ConvexCell c1_cell(double l, double g) {
    return {Halfspace{make_vec({1.0, 0.0}), l}, Halfspace{make_vec({0.0, -1.0}), -g}};
}

ConvexCell c2_cell(double l, double g) {
    return {Halfspace{make_vec({-1.0, 0.0}), -l}, Halfspace{make_vec({0.0, 1.0}), g}};
}

double total_area(const std::vector<Facet>& fs) {
    double a = 0.0;
    for (const Facet& f : fs) {
        a += f.area;
    }
    return a;
}

}  // namespace

TEST_CASE("unit cube perimeter under three norms") {
    const Box w = make_box({-0.5, -0.5, -0.5}, {1.5, 1.5, 1.5});
    const PolyhedralSet cube = unit_cube(w);

    CHECK(perimeter(cube, Anisotropy::pnorm(3, kInfP), w) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(perimeter(cube, Anisotropy::euclidean(3), w) == doctest::Approx(6.0).epsilon(1e-12));
    const Anisotropy cyl_l1 = Anisotropy::cylindrical(Anisotropy::pnorm(2, 1.0));
    CHECK(perimeter(cube, cyl_l1, w) == doctest::Approx(6.0).epsilon(1e-12));

    const auto fs = cube.facets(w);
    REQUIRE(fs.size() == 6);
    for (const Facet& f : fs) {
        CHECK(f.area == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(f.normal.lpNorm<Eigen::Infinity>() - 1.0) < 1e-12);
        CHECK(w.contains(f.anchor, 1e-9));
        REQUIRE(f.poly.size() == 4);
    }
}

TEST_CASE("window additivity is exact") {
    const Box w = make_box({-0.5, -0.5, -0.5}, {1.5, 1.5, 1.5});
    const PolyhedralSet cube = unit_cube(w);
    const Anisotropy phi = Anisotropy::pnorm(3, 1.0);

    const Box left = make_box({-0.5, -0.5, -0.5}, {0.37, 1.5, 1.5});
    const Box right = make_box({0.37, -0.5, -0.5}, {1.5, 1.5, 1.5});
    const double whole = perimeter(cube, phi, w);
    const double split = perimeter(cube, phi, left) + perimeter(cube, phi, right);
    CHECK(whole == doctest::Approx(split).epsilon(1e-12));
}

TEST_CASE("complement keeps the perimeter") {
    const Box w = make_box({-0.5, -0.5, -0.5}, {1.5, 1.5, 1.5});
    const PolyhedralSet cube = unit_cube(w);
    const PolyhedralSet co = cube.complement();
    for (const Anisotropy& phi : {Anisotropy::euclidean(3), Anisotropy::pnorm(3, kInfP)}) {
        CHECK(perimeter(cube, phi, w) == doctest::Approx(perimeter(co, phi, w)).epsilon(1e-10));
    }
    // complement facets carry flipped normals over the same planes
    auto fs = co.facets(w);
    REQUIRE(fs.size() == 6);
    CHECK(total_area(fs) == doctest::Approx(6.0).epsilon(1e-10));
}

TEST_CASE("scaling is (m-1)-homogeneous") {
    const Box w3 = make_box({-0.5, -0.5, -0.5}, {1.5, 1.5, 1.5});
    const PolyhedralSet cube = unit_cube(w3);
    const Anisotropy phi = Anisotropy::euclidean(3);
    const double lam = 2.5;
    const PolyhedralSet big = cube.scaled(lam);
    CHECK(perimeter(big, phi, big.window()) ==
          doctest::Approx(lam * lam * perimeter(cube, phi, w3)).epsilon(1e-12));

    const Box w2 = make_box({-1.0, -1.0}, {2.0, 2.0});
    const PolyhedralSet square = axis_box(make_vec({0.0, 0.0}), make_vec({1.0, 1.0}), w2);
    CHECK(perimeter(square.scaled(3.0), phi.restriction(), square.scaled(3.0).window()) ==
          doctest::Approx(3.0 * perimeter(square, Anisotropy::euclidean(2), w2)).epsilon(1e-12));
}

TEST_CASE("facets on the query window boundary are not counted") {
    const Box exact = make_box({0.0, 0.0, 0.0}, {1.0, 1.0, 1.0});
    const PolyhedralSet cube = unit_cube(exact);
    CHECK(cube.facets(exact).empty());
    CHECK(perimeter(cube, Anisotropy::euclidean(3), exact) == doctest::Approx(0.0));
}

TEST_CASE("explicit facet lists reproduce generator results") {
    const Box w = make_box({-0.5, -0.5, -0.5}, {1.5, 1.5, 1.5});
    const PolyhedralSet cube = unit_cube(w);
    std::vector<Facet> data = cube.facets(w);
    const PolyhedralSet replica = PolyhedralSet::from_facets(data, w);
    for (const Anisotropy& phi : {Anisotropy::euclidean(3), Anisotropy::pnorm(3, 1.0)}) {
        CHECK(perimeter(replica, phi, w) == doctest::Approx(perimeter(cube, phi, w)).epsilon(1e-12));
    }
    // polygon-backed facets clip exactly under window shrinking
    const Box half = make_box({-0.5, -0.5, -0.5}, {0.5, 1.5, 1.5});
    CHECK(perimeter(replica, Anisotropy::euclidean(3), half) ==
          doctest::Approx(perimeter(cube, Anisotropy::euclidean(3), half)).epsilon(1e-12));

    // data-only facets follow the anchor-inclusion rule
    Facet lateral;
    lateral.normal = make_vec({1.0, 0.0, 0.0});
    lateral.area = 3.25;
    lateral.anchor = make_vec({1.0, 0.5, 0.5});
    const PolyhedralSet abstract = PolyhedralSet::from_facets({lateral}, w);
    CHECK(perimeter(abstract, Anisotropy::euclidean(3), w) == doctest::Approx(3.25));
    const Box away = make_box({-0.5, -0.5, -0.5}, {0.5, 1.5, 1.5});
    CHECK(perimeter(abstract, Anisotropy::euclidean(3), away) == doctest::Approx(0.0));
}

TEST_CASE("union of overlapping rectangles cancels the internal wall") {
    const Box w = make_box({-1.0, -1.0}, {3.0, 3.0});
    std::vector<ConvexCell> cells;
    auto rect_cell = [](double x0, double y0, double x1, double y1) {
        return ConvexCell{
            Halfspace{make_vec({1.0, 0.0}), x1}, Halfspace{make_vec({-1.0, 0.0}), -x0},
            Halfspace{make_vec({0.0, 1.0}), y1}, Halfspace{make_vec({0.0, -1.0}), -y0}};
    };
    cells.push_back(rect_cell(0.0, 0.0, 2.0, 1.0));
    cells.push_back(rect_cell(0.0, 0.0, 1.0, 2.0));
    const PolyhedralSet ell = PolyhedralSet::from_cells(cells, w);
    CHECK(perimeter(ell, Anisotropy::euclidean(2), w) == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(total_area(ell.facets(w)) == doctest::Approx(8.0).epsilon(1e-12));

    // identical duplicated cells must not double-count
    const PolyhedralSet dup =
        PolyhedralSet::from_cells({rect_cell(0, 0, 1, 1), rect_cell(0, 0, 1, 1)}, w);
    CHECK(perimeter(dup, Anisotropy::euclidean(2), w) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("membership honors the cell union") {
    const Box w = make_box({-2.0, -2.0}, {4.0, 4.0});
    const PolyhedralSet pair =
        PolyhedralSet::from_cells({c1_cell(0.0, 0.0), c2_cell(1.0, 0.0)}, w);
    CHECK(pair.contains(make_vec({-0.5, 0.5})));
    CHECK(pair.contains(make_vec({1.5, -0.5})));
    CHECK(!pair.contains(make_vec({0.5, 0.5})));
    CHECK(!pair.contains(make_vec({-0.5, -0.5})));
}

TEST_CASE("disjoint quadrant cones add their boundaries") {
    const Box w = make_box({-2.0, -2.0}, {3.0, 2.0});
    const PolyhedralSet pair =
        PolyhedralSet::from_cells({c1_cell(0.0, 0.0), c2_cell(1.0, 0.0)}, w);
    // c1 contributes x=0 above 0 and t=0 to the left; c2 mirrors at (1,0)
    const double expect = 2.0 + 2.0 + 2.0 + 2.0;
    CHECK(perimeter(pair, Anisotropy::pnorm(2, kInfP), w) ==
          doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("prisms and the cylinder identity") {
    SUBCASE("square base, box base norm, m=1") {
        const Box wb = make_box({-1.0, -1.0}, {2.0, 2.0});
        const PolyhedralSet square = axis_box(make_vec({0.0, 0.0}), make_vec({1.0, 1.0}), wb);
        const CylinderReport rep =
            cylinder_identity(square, Anisotropy::pnorm(2, kInfP), 1, wb);
        CHECK(rep.base_perimeter == doctest::Approx(4.0).epsilon(1e-12));
        CHECK(rep.expected == doctest::Approx(16.0).epsilon(1e-12));
        CHECK(rep.lateral == doctest::Approx(16.0).epsilon(1e-12));
    }
    SUBCASE("interval base in one dimension, m=2") {
        const Box wb = make_box({-1.0}, {2.0});
        std::vector<Halfspace> hs = {Halfspace{make_vec({1.0}), 1.0},
                                     Halfspace{make_vec({-1.0}), 0.0}};
        const PolyhedralSet seg = PolyhedralSet::from_halfspaces(hs, SetOp::Intersect, wb);
        const CylinderReport rep = cylinder_identity(seg, Anisotropy::euclidean(1), 2, wb);
        CHECK(rep.base_perimeter == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(rep.lateral == doctest::Approx(rep.expected).epsilon(1e-12));
        CHECK(rep.expected == doctest::Approx(12.0).epsilon(1e-12));
    }
    SUBCASE("cross base, square base norm, m=0") {
        const Box wb = make_box({-1.0, -1.0}, {1.0, 1.0});
        const double s = 1.0 / std::sqrt(2.0);
        std::vector<ConvexCell> cells = {
            {Halfspace{make_vec({-s, s}), 0.0}, Halfspace{make_vec({-s, -s}), 0.0}},
            {Halfspace{make_vec({s, s}), 0.0}, Halfspace{make_vec({s, -s}), 0.0}}};
        const PolyhedralSet cross = PolyhedralSet::from_cells(cells, wb);
        const Anisotropy phi = Anisotropy::pnorm(2, kInfP);
        CHECK(perimeter(cross, phi, wb) == doctest::Approx(8.0).epsilon(1e-12));
        const CylinderReport rep = cylinder_identity(cross, phi, 0, wb);
        CHECK(rep.lateral == doctest::Approx(rep.expected).epsilon(1e-9));
        CHECK(rep.expected == doctest::Approx(16.0).epsilon(1e-12));
    }
}

TEST_CASE("four-dimensional boxes expose 3-volume facets") {
    const Box w = make_box({-0.5, -0.5, -0.5, -0.5}, {1.5, 1.5, 1.5, 1.5});
    Vec lo = Vec::Zero(4);
    Vec hi = Vec::Constant(4, 1.0);
    const PolyhedralSet tess = axis_box(lo, hi, w);
    const auto fs = tess.facets(w);
    REQUIRE(fs.size() == 8);
    for (const Facet& f : fs) {
        CHECK(f.area == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(perimeter(tess, Anisotropy::euclidean(4), w) == doctest::Approx(8.0).epsilon(1e-9));
    const PolyhedralSet big = tess.scaled(2.0);
    CHECK(perimeter(big, Anisotropy::euclidean(4), big.window()) ==
          doctest::Approx(64.0).epsilon(1e-9));
}

TEST_CASE("slice decomposition agrees on both routes") {
    struct Case {
        PolyhedralSet set;
        Anisotropy norm;
        Box window;
    };
    std::vector<Case> suite;

    const Box w3 = make_box({-0.5, -0.5, -0.5}, {1.5, 1.5, 1.5});
    suite.push_back(Case{unit_cube(w3), Anisotropy::cylindrical(Anisotropy::pnorm(2, 1.0)), w3});
    suite.push_back(Case{unit_cube(w3), Anisotropy::euclidean(3), w3});

    // wedge: x1 + t <= 1 within the cube
    {
        std::vector<Halfspace> hs;
        for (int ax = 0; ax < 3; ++ax) {
            Vec e = Vec::Zero(3);
            e(ax) = 1.0;
            hs.push_back(Halfspace{e, 1.0});
            hs.push_back(Halfspace{-e, 0.0});
        }
        hs.push_back(Halfspace{make_vec({1.0, 0.0, 1.0}), 1.0});
        suite.push_back(Case{PolyhedralSet::from_halfspaces(hs, SetOp::Intersect, w3),
                         Anisotropy::cylindrical(Anisotropy::euclidean(2)), w3});
    }

    // half-space below t=0 in a box window
    {
        std::vector<Halfspace> hs = {Halfspace{make_vec({0.0, 0.0, 1.0}), 0.0}};
        suite.push_back(Case{PolyhedralSet::from_halfspaces(hs, SetOp::Intersect, w3),
                         Anisotropy::pnorm(3, 1.0), w3});
    }

    const Box w2 = make_box({-2.0, -2.0}, {3.0, 2.0});
    suite.push_back(Case{PolyhedralSet::from_cells({c1_cell(0.0, 0.0)}, w2),
                     Anisotropy::pnorm(2, kInfP), w2});
    suite.push_back(Case{PolyhedralSet::from_cells({c2_cell(1.0, 0.0)}, w2),
                     Anisotropy::pnorm(2, 1.0), w2});
    suite.push_back(Case{PolyhedralSet::from_cells({c1_cell(0.0, 0.0), c2_cell(1.0, 0.0)}, w2),
                     Anisotropy::pnorm(2, kInfP), w2});
    suite.push_back(Case{axis_box(make_vec({0.0, 0.0}), make_vec({1.0, 1.0}), w2),
                     Anisotropy::euclidean(2), w2});

    // planar roof cone and a sheared 3-d wedge
    {
        const double s = 1.0 / std::sqrt(2.0);
        std::vector<Halfspace> hs = {Halfspace{make_vec({-s, s}), 0.0},
                                     Halfspace{make_vec({s, s}), 0.0}};
        suite.push_back(Case{PolyhedralSet::from_halfspaces(hs, SetOp::Intersect, w2),
                         Anisotropy::pnorm(2, kInfP), w2});
    }
    {
        std::vector<Halfspace> hs;
        for (int ax = 0; ax < 3; ++ax) {
            Vec e = Vec::Zero(3);
            e(ax) = 1.0;
            hs.push_back(Halfspace{e, 1.0});
            hs.push_back(Halfspace{-e, 0.0});
        }
        hs.push_back(Halfspace{make_vec({0.5, 0.25, 1.0}), 1.0});
        suite.push_back(Case{PolyhedralSet::from_halfspaces(hs, SetOp::Intersect, w3),
                         Anisotropy::cylindrical(Anisotropy::pnorm(2, 3.0)), w3});
    }

    REQUIRE(suite.size() == 10);
    for (size_t i = 0; i < suite.size(); ++i) {
        CAPTURE(i);
        const SliceReport r = slice_check(suite[i].set, suite[i].norm, suite[i].window);
        const double hscale = std::max(1.0, std::abs(r.lhs_horizontal));
        const double vscale = std::max(1.0, std::abs(r.lhs_vertical));
        CHECK(std::abs(r.lhs_horizontal - r.rhs_horizontal) <= 1e-9 * hscale);
        CHECK(std::abs(r.lhs_vertical - r.rhs_vertical) <= 1e-9 * vscale);
    }
}

TEST_CASE("half-space vertical pair measures the base area") {
    const Box w = make_box({0.0, 0.0, -1.0}, {2.0, 1.5, 1.0});
    std::vector<Halfspace> hs = {Halfspace{make_vec({0.0, 0.0, 1.0}), 0.0}};
    const PolyhedralSet half = PolyhedralSet::from_halfspaces(hs, SetOp::Intersect, w);
    const Anisotropy cyl = Anisotropy::cylindrical(Anisotropy::euclidean(2));
    const SliceReport r = slice_check(half, cyl, w);
    CHECK(r.lhs_vertical == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(r.rhs_vertical == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(r.lhs_horizontal == doctest::Approx(0.0));
}

TEST_CASE("cone pair reports match the hypothesis arithmetic") {
    const double s = 1.0 / std::sqrt(2.0);
    SUBCASE("compatible pair") {
        const ConePair cp = build_cone_pair(make_vec({s, s}), make_vec({0.0, 1.0}));
        CHECK(cp.report.boundary_in_horizontal);
        CHECK(cp.report.cond_a);
        CHECK(cp.report.cond_b);
        CHECK(!cp.report.roof);
        CHECK(!cp.report.degenerate);
        CHECK(cp.report.minimal_claim);
        CHECK(cp.report.lambda1 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(cp.report.lambda2 == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("identical normals are trivially fine") {
        const ConePair cp = build_cone_pair(make_vec({s, s}), make_vec({s, s}));
        CHECK(cp.report.minimal_claim);
        const Box w = cp.intersection.window();
        CHECK(perimeter(cp.intersection, Anisotropy::euclidean(2), w) ==
              doctest::Approx(perimeter(cp.union_set, Anisotropy::euclidean(2), w))
                  .epsilon(1e-10));
    }
    SUBCASE("roof orientation sets the flag") {
        const ConePair cp = build_cone_pair(make_vec({-s, s}), make_vec({s, s}));
        CHECK(cp.report.boundary_in_horizontal);
        CHECK(cp.report.cond_a);
        CHECK(!cp.report.cond_b);
        CHECK(cp.report.roof);
        CHECK(!cp.report.minimal_claim);
    }
    SUBCASE("antiparallel horizontal-offset normals degenerate") {
        const ConePair cp = build_cone_pair(make_vec({1.0, 0.0}), make_vec({-1.0, 0.0}));
        CHECK(cp.report.degenerate);
        CHECK(!cp.report.minimal_claim);
    }
    SUBCASE("three-dimensional pair") {
        const ConePair cp =
            build_cone_pair(make_vec({s, 0.0, s}), make_vec({0.0, 0.0, 1.0}));
        CHECK(cp.report.boundary_in_horizontal);
        CHECK(cp.report.cond_a);
        CHECK(cp.report.cond_b);
        CHECK(cp.report.minimal_claim);
    }
}

TEST_CASE("roof cut delta: closed form, scaling, and polyhedral cross-check") {
    const double s = 1.0 / std::sqrt(2.0);
    const Vec nu1 = make_vec({-s, s});
    const Vec nu2 = make_vec({s, s});
    const Anisotropy box_norm = Anisotropy::pnorm(2, kInfP);  // dual is the taxicab norm

    const double delta = roof_cut_delta(nu1, nu2, 1.0, box_norm);
    CHECK(delta == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(roof_cut_delta(nu1, nu2, 0.25, box_norm) == doctest::Approx(0.5).epsilon(1e-12));

    // equilateral roof under the Euclidean norm
    const Vec m1 = make_vec({-std::sqrt(3.0) / 2.0, 0.5});
    const Vec m2 = make_vec({std::sqrt(3.0) / 2.0, 0.5});
    CHECK(roof_cut_delta(m1, m2, 1.0, Anisotropy::euclidean(2)) ==
          doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));

    // perimeter difference over a window containing the triangle
    const Box w = make_box({-3.0, -3.0}, {3.0, 3.0});
    std::vector<Halfspace> roof_hs = {Halfspace{nu1, 0.0}, Halfspace{nu2, 0.0}};
    const PolyhedralSet roof = PolyhedralSet::from_halfspaces(roof_hs, SetOp::Intersect, w);
    std::vector<Halfspace> cut_hs = roof_hs;
    cut_hs.push_back(Halfspace{make_vec({0.0, 1.0}), -1.0});
    const PolyhedralSet cut = PolyhedralSet::from_halfspaces(cut_hs, SetOp::Intersect, w);
    const double diff = perimeter(roof, box_norm, w) - perimeter(cut, box_norm, w);
    CHECK(diff == doctest::Approx(delta).epsilon(1e-9));

    CHECK_THROWS_AS(roof_cut_delta(make_vec({s, s}), make_vec({0.0, 1.0}), 1.0, box_norm),
                    std::invalid_argument);
}

TEST_CASE("construction and query errors") {
    const Box w = make_box({-1.0, -1.0}, {1.0, 1.0});
    const PolyhedralSet square =
        axis_box(make_vec({-0.5, -0.5}), make_vec({0.5, 0.5}), w);

    const Box outside = make_box({-2.0, -1.0}, {1.0, 1.0});
    CHECK_THROWS_AS(perimeter(square, Anisotropy::euclidean(2), outside), std::invalid_argument);
    CHECK_THROWS_AS(perimeter(square, Anisotropy::euclidean(3), w), DimensionError);
    try {
        perimeter(square, Anisotropy::euclidean(3), w);
    } catch (const DimensionError& e) {
        const std::string msg = e.what();
        CHECK(msg.find('3') != std::string::npos);
        CHECK(msg.find('2') != std::string::npos);
    }

    CHECK_THROWS_AS(PolyhedralSet::from_cells({}, w), std::invalid_argument);
    CHECK_THROWS_AS(PolyhedralSet::from_cells({ConvexCell{}}, w), std::invalid_argument);
    CHECK_THROWS_AS(
        PolyhedralSet::from_halfspaces({Halfspace{make_vec({0.0, 0.0}), 1.0}},
                                       SetOp::Intersect, w),
        std::invalid_argument);
    CHECK_THROWS_AS(square.scaled(-1.0), std::invalid_argument);

    // multi-cell resolution is capped below dimension 4
    const Box w4 = make_box({-1.0, -1.0, -1.0, -1.0}, {1.0, 1.0, 1.0, 1.0});
    Vec e4 = Vec::Zero(4);
    e4(0) = 1.0;
    const PolyhedralSet uni4 = PolyhedralSet::from_halfspaces(
        {Halfspace{e4, 0.0}, Halfspace{-e4, -0.5}}, SetOp::Union, w4);
    CHECK_THROWS_AS(uni4.facets(w4), std::invalid_argument);

    // slice decomposition is planar or spatial only
    const PolyhedralSet box4 = axis_box(Vec::Zero(4), Vec::Constant(4, 0.5), w4);
    CHECK_THROWS_AS(slice_check(box4, Anisotropy::euclidean(4), w4), std::invalid_argument);

    std::vector<Facet> data = square.facets(w);
    const PolyhedralSet rep = PolyhedralSet::from_facets(data, w);
    CHECK_THROWS_AS(rep.contains(make_vec({0.0, 0.0})), std::logic_error);
    CHECK_THROWS_AS(PolyhedralSet::prism(rep, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("facet extraction is deterministic") {
    const Box w = make_box({-2.0, -2.0}, {3.0, 2.0});
    const PolyhedralSet pair =
        PolyhedralSet::from_cells({c1_cell(0.0, 0.0), c2_cell(1.0, 0.0)}, w);
    const auto a = pair.facets(w);
    const auto b = pair.facets(w);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].area == b[i].area);
        CHECK((a[i].normal - b[i].normal).lpNorm<Eigen::Infinity>() == 0.0);
        CHECK((a[i].anchor - b[i].anchor).lpNorm<Eigen::Infinity>() == 0.0);
    }
}
