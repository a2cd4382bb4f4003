#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "anisoperim/plfunction.hpp"
#include "anisoperim/rng.hpp"
#include "helpers.hpp"

using namespace anisoperim;

namespace {

constexpr double kInfP = std::numeric_limits<double>::infinity();

std::vector<Vec> rect(double x0, double y0, double x1, double y1) {
    return {make_vec({x0, y0}), make_vec({x1, y0}), make_vec({x1, y1}), make_vec({x0, y1})};
}

PLCell constant_cell(std::vector<Vec> poly, double v) {
    PLCell c;
    c.poly = std::move(poly);
    c.grad = Vec::Zero(2);
    c.offset = v;
    return c;
}

PLCell affine_cell(std::vector<Vec> poly, double gx, double gy, double off) {
    PLCell c;
    c.poly = std::move(poly);
    c.grad = make_vec({gx, gy});
    c.offset = off;
    return c;
}

PLFunction step_function() {
    const Box dom = make_box({0.0, 0.0}, {1.0, 1.0});
    return PLFunction({constant_cell(rect(0.0, 0.0, 0.5, 1.0), 0.0),
                       constant_cell(rect(0.5, 0.0, 1.0, 1.0), 1.0)},
                      dom);
}

// Boundary of the lifted region below the graph, inside an open box that
// swallows the side walls and the bottom cap.
double lifted_boundary_energy(const PLFunction& u, const Anisotropy& norm) {
    const double slab = u.max_abs() + 1.0;
    const PolyhedralSet sg = u.subgraph(slab);
    return perimeter(sg, norm, sg.window());
}

}  // namespace

TEST_CASE("constant, linear, and step energies match hand values") {
    const Box dom = make_box({0.0, 0.0}, {1.0, 1.0});
    const Anisotropy cyl_l1 = Anisotropy::cylindrical(Anisotropy::pnorm(2, 1.0));
    const Anisotropy cyl_eu = Anisotropy::cylindrical(Anisotropy::euclidean(2));

    const PLFunction flat({constant_cell(rect(0.0, 0.0, 1.0, 1.0), 0.7)}, dom);
    CHECK(subgraph_energy(flat, cyl_l1, dom) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(subgraph_energy(flat, cyl_eu, dom) == doctest::Approx(1.0).epsilon(1e-12));

    const PLFunction ramp({affine_cell(rect(0.0, 0.0, 1.0, 1.0), 1.0, 0.0, 0.0)}, dom);
    CHECK(subgraph_energy(ramp, cyl_eu, dom) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(lifted_boundary_energy(ramp, cyl_eu) == doctest::Approx(2.0).epsilon(1e-9));

    CHECK(subgraph_energy(step_function(), cyl_l1, dom) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("subgraph energy equals the clipped boundary of the lifted set") {
    const Box dom = make_box({0.0, 0.0}, {1.0, 1.0});
    std::vector<PLFunction> funcs;
    funcs.push_back(PLFunction({affine_cell(rect(0.0, 0.0, 1.0, 1.0), 1.0, 0.0, 0.0)}, dom));
    funcs.push_back(PLFunction({affine_cell(rect(0.0, 0.0, 0.5, 1.0), 1.0, 0.0, 0.0),
                                affine_cell(rect(0.5, 0.0, 1.0, 1.0), -1.0, 0.0, 1.0)},
                               dom));
    funcs.push_back(step_function());
    // jump changes sign along the shared edge
    funcs.push_back(PLFunction({affine_cell(rect(0.0, 0.0, 1.0, 0.5), 0.5, 0.0, 0.0),
                                affine_cell(rect(0.0, 0.5, 1.0, 1.0), -1.0, 0.0, 1.0)},
                               dom));
    funcs.push_back(PLFunction({constant_cell(rect(0.0, 0.0, 0.5, 0.5), 0.0),
                                constant_cell(rect(0.5, 0.0, 1.0, 0.5), 1.0),
                                constant_cell(rect(0.0, 0.5, 0.5, 1.0), 1.0),
                                constant_cell(rect(0.5, 0.5, 1.0, 1.0), 0.0)},
                               dom));

    const std::vector<Anisotropy> norms = {
        Anisotropy::cylindrical(Anisotropy::pnorm(2, 1.0)),
        Anisotropy::cylindrical(Anisotropy::euclidean(2)),
        Anisotropy::pnorm(3, kInfP),
        Anisotropy::conical(Anisotropy::pnorm(2, kInfP)),
    };
    for (size_t fi = 0; fi < funcs.size(); ++fi) {
        for (size_t ni = 0; ni < norms.size(); ++ni) {
            CAPTURE(fi);
            CAPTURE(ni);
            const double direct = subgraph_energy(funcs[fi], norms[ni], dom);
            const double lifted = lifted_boundary_energy(funcs[fi], norms[ni]);
            CHECK(std::abs(direct - lifted) <= 1e-9 * std::max(1.0, direct));
        }
    }
}

TEST_CASE("coarea on the worked examples") {
    SUBCASE("three bands") {
        const Box dom = make_box({0.0, 0.0}, {3.0, 1.0});
        const PLFunction bands({constant_cell(rect(0.0, 0.0, 1.0, 1.0), 0.0),
                                constant_cell(rect(1.0, 0.0, 2.0, 1.0), 1.0),
                                constant_cell(rect(2.0, 0.0, 3.0, 1.0), 2.0)},
                               dom);
        const CoareaReport r = coarea_decomposition(bands, Anisotropy::pnorm(2, 1.0), dom);
        CHECK(r.total == doctest::Approx(2.0).epsilon(1e-12));
        REQUIRE(r.levels.size() == 2);
        CHECK(r.levels[0].level == doctest::Approx(0.5));
        CHECK(r.levels[1].level == doctest::Approx(1.5));
        CHECK(r.levels[0].perimeter == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.levels[1].perimeter == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("constant function") {
        const Box dom = make_box({0.0, 0.0}, {1.0, 1.0});
        const PLFunction flat({constant_cell(rect(0.0, 0.0, 1.0, 1.0), 2.5)}, dom);
        const CoareaReport r = coarea_decomposition(flat, Anisotropy::euclidean(2), dom);
        CHECK(r.total == 0.0);
        CHECK(r.levels.empty());
    }
    SUBCASE("square indicator") {
        const Box dom = make_box({-1.0, -1.0}, {2.0, 2.0});
        std::vector<PLCell> cells;
        const double cuts[4] = {-1.0, 0.0, 1.0, 2.0};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                const double v = (i == 1 && j == 1) ? 1.0 : 0.0;
                cells.push_back(
                    constant_cell(rect(cuts[i], cuts[j], cuts[i + 1], cuts[j + 1]), v));
            }
        }
        const PLFunction ind(cells, dom);
        const CoareaReport r = coarea_decomposition(ind, Anisotropy::euclidean(2), dom);
        CHECK(r.total == doctest::Approx(4.0).epsilon(1e-12));
        REQUIRE(r.levels.size() == 1);
        CHECK(r.levels[0].level == doctest::Approx(0.5));
        CHECK(r.levels[0].perimeter == doctest::Approx(4.0).epsilon(1e-12));
    }
}

TEST_CASE("coarea decomposition matches independent level-set perimeters") {
    std::vector<Anisotropy> norms = {
        Anisotropy::euclidean(2),
        Anisotropy::pnorm(2, 1.0),
        Anisotropy::pnorm(2, kInfP),
        testutil::skew_quadratic(),
        testutil::sheared_parallelogram(std::atan(1.0)),
    };
    SplitMix64 rng(20240817u);
    for (int trial = 0; trial < 25; ++trial) {
        CAPTURE(trial);
        const int k = 2 + static_cast<int>(rng.next_u64() % 5);
        const Box dom = make_box({0.0, 0.0}, {static_cast<double>(k), 1.0});
        std::vector<PLCell> cells;
        std::vector<double> vals;
        for (int i = 0; i < k; ++i) {
            const double v = 0.5 * static_cast<double>(rng.next_u64() % 6);
            vals.push_back(v);
            cells.push_back(constant_cell(
                rect(static_cast<double>(i), 0.0, static_cast<double>(i + 1), 1.0), v));
        }
        const PLFunction u(cells, dom);
        const Anisotropy& phi = norms[trial % norms.size()];
        const CoareaReport r = coarea_decomposition(u, phi, dom);

        // direct jump sum over band interfaces
        double direct = 0.0;
        for (int i = 0; i + 1 < k; ++i) {
            const double jump = vals[i + 1] - vals[i];
            if (jump == 0.0) {
                continue;
            }
            const double sign = jump > 0.0 ? 1.0 : -1.0;
            direct += std::abs(jump) * phi.eval_dual(make_vec({-sign, 0.0}));
        }
        CHECK(std::abs(r.total - direct) <= 1e-12 * std::max(1.0, direct));

        for (const CoareaLevel& lev : r.levels) {
            std::vector<ConvexCell> above;
            for (int i = 0; i < k; ++i) {
                if (vals[i] > lev.level) {
                    const double x0 = static_cast<double>(i);
                    const double x1 = static_cast<double>(i + 1);
                    above.push_back(ConvexCell{
                        Halfspace{make_vec({1.0, 0.0}), x1},
                        Halfspace{make_vec({-1.0, 0.0}), -x0},
                        Halfspace{make_vec({0.0, 1.0}), 1.0},
                        Halfspace{make_vec({0.0, -1.0}), 0.0}});
                }
            }
            REQUIRE(!above.empty());
            const PolyhedralSet level_set = PolyhedralSet::from_cells(above, dom);
            CHECK(std::abs(perimeter(level_set, phi, dom) - lev.perimeter) <=
                  1e-9 * std::max(1.0, lev.perimeter));
        }
    }
}

TEST_CASE("partition and input validation") {
    const Box dom = make_box({0.0, 0.0}, {1.0, 1.0});
    const Anisotropy cyl = Anisotropy::cylindrical(Anisotropy::euclidean(2));

    // overlapping cells
    CHECK_THROWS_AS(PLFunction({constant_cell(rect(0.0, 0.0, 0.7, 1.0), 0.0),
                                constant_cell(rect(0.3, 0.0, 1.0, 1.0), 1.0)},
                               dom),
                    std::invalid_argument);
    // cells missing a strip of the domain
    CHECK_THROWS_AS(PLFunction({constant_cell(rect(0.0, 0.0, 0.5, 1.0), 0.0)}, dom),
                    std::invalid_argument);
    // vertex outside the domain
    CHECK_THROWS_AS(PLFunction({constant_cell(rect(0.0, 0.0, 1.5, 1.0), 0.0)}, dom),
                    std::invalid_argument);
    // nonconvex cell
    std::vector<Vec> ell = {make_vec({0.0, 0.0}), make_vec({1.0, 0.0}), make_vec({1.0, 0.5}),
                            make_vec({0.5, 0.5}), make_vec({0.5, 1.0}), make_vec({0.0, 1.0})};
    CHECK_THROWS_AS(PLFunction({constant_cell(ell, 0.0)}, dom), std::invalid_argument);

    const PLFunction u = step_function();
    const Box outside = make_box({0.0, 0.0}, {2.0, 1.0});
    CHECK_THROWS_AS(subgraph_energy(u, cyl, outside), std::invalid_argument);
    CHECK_THROWS_AS(coarea_decomposition(u, Anisotropy::euclidean(2), outside),
                    std::invalid_argument);
    CHECK_THROWS_AS(subgraph_energy(u, Anisotropy::euclidean(2), dom), DimensionError);
    CHECK_THROWS_AS(coarea_decomposition(u, Anisotropy::euclidean(3), dom), DimensionError);
    CHECK_THROWS_AS(u.subgraph(0.5), std::invalid_argument);

    const PLFunction ramp({affine_cell(rect(0.0, 0.0, 1.0, 1.0), 1.0, 0.0, 0.0)}, dom);
    CHECK_THROWS_AS(coarea_decomposition(ramp, Anisotropy::euclidean(2), dom),
                    std::invalid_argument);

    CHECK(u.piecewise_constant());
    CHECK(!ramp.piecewise_constant());
    CHECK(u.value(make_vec({0.25, 0.5})) == doctest::Approx(0.0));
    CHECK(u.value(make_vec({0.75, 0.5})) == doctest::Approx(1.0));
    CHECK(ramp.value(make_vec({0.25, 0.5})) == doctest::Approx(0.25));
    CHECK_THROWS_AS(u.value(make_vec({2.0, 0.5})), std::invalid_argument);
}
