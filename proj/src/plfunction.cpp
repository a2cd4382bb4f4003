#include "anisoperim/plfunction.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace anisoperim {

namespace {

constexpr double kTol = 1e-9;

double cross2(const Vec& a, const Vec& b) { return a(0) * b(1) - a(1) * b(0); }

double signed_area(const std::vector<Vec>& poly) {
    double twice = 0.0;
    for (size_t i = 0; i < poly.size(); ++i) {
        const Vec& p = poly[i];
        const Vec& q = poly[(i + 1) % poly.size()];
        twice += p(0) * q(1) - q(0) * p(1);
    }
    return 0.5 * twice;
}

Vec poly_centroid(const std::vector<Vec>& poly) {
    Vec c = Vec::Zero(2);
    for (const Vec& p : poly) {
        c += p;
    }
    return c / static_cast<double>(poly.size());
}

std::vector<Vec> clip_poly(const std::vector<Vec>& poly, const Vec& n, double off) {
    std::vector<Vec> out;
    const size_t m = poly.size();
    for (size_t i = 0; i < m; ++i) {
        const Vec& p = poly[i];
        const Vec& q = poly[(i + 1) % m];
        const double fp = n.dot(p) - off;
        const double fq = n.dot(q) - off;
        if (fp <= 0.0) {
            out.push_back(p);
        }
        if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) {
            out.push_back(p + (fp / (fp - fq)) * (q - p));
        }
    }
    return out;
}

std::vector<Vec> clip_poly_to_box(std::vector<Vec> poly, const Box& box) {
    for (int ax = 0; ax < 2 && !poly.empty(); ++ax) {
        Vec e = Vec::Zero(2);
        e(ax) = 1.0;
        poly = clip_poly(poly, e, box.hi(ax));
        if (poly.empty()) {
            break;
        }
        poly = clip_poly(poly, -e, -box.lo(ax));
    }
    return poly;
}

double clipped_area(const std::vector<Vec>& poly, const Box& box) {
    const std::vector<Vec> c = clip_poly_to_box(poly, box);
    return c.size() < 3 ? 0.0 : std::abs(signed_area(c));
}

bool point_in_poly(const std::vector<Vec>& poly, const Vec& x, double tol) {
    for (size_t i = 0; i < poly.size(); ++i) {
        const Vec& p = poly[i];
        const Vec& q = poly[(i + 1) % poly.size()];
        Vec e = q - p;
        Vec r = x - p;
        if (cross2(e, r) < -tol) {
            return false;
        }
    }
    return true;
}

std::optional<std::pair<Vec, Vec>> clip_segment_to_box(Vec a, Vec b, const Box& box,
                                                       double tol) {
    for (int ax = 0; ax < 2; ++ax) {
        for (int side = 0; side < 2; ++side) {
            const double sgn = side == 0 ? 1.0 : -1.0;
            const double off = side == 0 ? box.hi(ax) : -box.lo(ax);
            const double fa = sgn * a(ax) - off;
            const double fb = sgn * b(ax) - off;
            if (fa > tol && fb > tol) {
                return std::nullopt;
            }
            if (fa > tol) {
                a = a + (fa / (fa - fb)) * (b - a);
            } else if (fb > tol) {
                b = b + (fb / (fb - fa)) * (a - b);
            }
        }
    }
    if ((b - a).norm() <= tol) {
        return std::nullopt;
    }
    return std::make_pair(a, b);
}

bool on_box_face(const Vec& a, const Vec& b, const Box& box, double tol) {
    for (int ax = 0; ax < 2; ++ax) {
        for (const double off : {box.lo(ax), box.hi(ax)}) {
            if (std::abs(a(ax) - off) <= tol && std::abs(b(ax) - off) <= tol) {
                return true;
            }
        }
    }
    return false;
}

double affine_at(const PLCell& cell, const Vec& x) { return cell.grad.dot(x) + cell.offset; }

}  // namespace

PLFunction::PLFunction(std::vector<PLCell> cells, Box domain)
    : cells_(std::move(cells)), domain_(std::move(domain)) {
    if (domain_.dim() != 2) {
        throw std::invalid_argument("the function domain must be planar");
    }
    if (cells_.empty()) {
        throw std::invalid_argument("the partition needs at least one cell");
    }
    double scale = 1.0;
    for (int ax = 0; ax < 2; ++ax) {
        scale = std::max({scale, std::abs(domain_.lo(ax)), std::abs(domain_.hi(ax))});
    }
    const double tol = kTol * scale;

    double covered = 0.0;
    for (PLCell& cell : cells_) {
        if (cell.poly.size() < 3) {
            throw std::invalid_argument("each cell needs at least three vertices");
        }
        require_dim(cell.grad, 2, "cell gradient");
        require_finite(cell.grad, "cell gradient");
        if (!std::isfinite(cell.offset)) {
            throw std::invalid_argument("cell offset must be finite");
        }
        for (const Vec& v : cell.poly) {
            require_dim(v, 2, "cell vertex");
            if (!domain_.contains(v, tol)) {
                throw std::invalid_argument("cell vertex outside the domain");
            }
        }
        const double area = signed_area(cell.poly);
        if (std::abs(area) <= tol * tol) {
            throw std::invalid_argument("degenerate cell");
        }
        if (area < 0.0) {
            std::reverse(cell.poly.begin(), cell.poly.end());
        }
        for (size_t i = 0; i < cell.poly.size(); ++i) {
            const Vec& p = cell.poly[i];
            const Vec& q = cell.poly[(i + 1) % cell.poly.size()];
            const Vec& r = cell.poly[(i + 2) % cell.poly.size()];
            if (cross2(q - p, r - q) < -tol) {
                throw std::invalid_argument("cells must be convex polygons");
            }
        }
        covered += std::abs(area);
    }
    if (std::abs(covered - domain_.volume()) > 1e-7 * scale * scale) {
        throw std::invalid_argument("cells do not tile the domain");
    }
    for (size_t i = 0; i < cells_.size(); ++i) {
        for (size_t j = i + 1; j < cells_.size(); ++j) {
            std::vector<Vec> overlap = cells_[i].poly;
            for (size_t k = 0; k < cells_[j].poly.size() && !overlap.empty(); ++k) {
                const Vec& p = cells_[j].poly[k];
                const Vec& q = cells_[j].poly[(k + 1) % cells_[j].poly.size()];
                Vec e = q - p;
                Vec n = make_vec({e(1), -e(0)});
                n.normalize();
                overlap = clip_poly(overlap, -n, -n.dot(p));
            }
            if (overlap.size() >= 3 && std::abs(signed_area(overlap)) > 1e-7 * scale * scale) {
                throw std::invalid_argument("cells overlap");
            }
        }
    }

    for (size_t i = 0; i < cells_.size(); ++i) {
        for (size_t j = i + 1; j < cells_.size(); ++j) {
            const auto& pi = cells_[i].poly;
            const auto& pj = cells_[j].poly;
            for (size_t a = 0; a < pi.size(); ++a) {
                const Vec e1a = pi[a];
                const Vec e1b = pi[(a + 1) % pi.size()];
                Vec d = e1b - e1a;
                const double len = d.norm();
                if (len <= tol) {
                    continue;
                }
                d /= len;
                for (size_t b = 0; b < pj.size(); ++b) {
                    const Vec e2a = pj[b];
                    const Vec e2b = pj[(b + 1) % pj.size()];
                    const Vec d2 = e2b - e2a;
                    if (std::abs(cross2(d, d2)) > tol * (1.0 + d2.norm()) ||
                        std::abs(cross2(d, e2a - e1a)) > tol) {
                        continue;
                    }
                    const double s1 = 0.0;
                    const double t1 = len;
                    const double s2 = d.dot(e2a - e1a);
                    const double t2 = d.dot(e2b - e1a);
                    const double lo = std::max(s1, std::min(s2, t2));
                    const double hi = std::min(t1, std::max(s2, t2));
                    if (hi - lo <= tol) {
                        continue;
                    }
                    JumpEdge edge;
                    edge.a = e1a + lo * d;
                    edge.b = e1a + hi * d;
                    Vec n = make_vec({-d(1), d(0)});
                    const Vec mid = 0.5 * (edge.a + edge.b);
                    if (n.dot(poly_centroid(pj) - mid) < 0.0) {
                        n = -n;
                    }
                    edge.conormal = n;
                    edge.cell_minus = static_cast<int>(i);
                    edge.cell_plus = static_cast<int>(j);
                    edges_.push_back(std::move(edge));
                }
            }
        }
    }
}

bool PLFunction::piecewise_constant() const {
    for (const PLCell& cell : cells_) {
        if (cell.grad.lpNorm<Eigen::Infinity>() > 1e-12) {
            return false;
        }
    }
    return true;
}

double PLFunction::value(const Vec& x) const {
    require_dim(x, 2, "query point");
    for (const PLCell& cell : cells_) {
        if (point_in_poly(cell.poly, x, kTol)) {
            return affine_at(cell, x);
        }
    }
    throw std::invalid_argument("point outside the function domain");
}

double PLFunction::max_abs() const {
    double m = 0.0;
    for (const PLCell& cell : cells_) {
        for (const Vec& v : cell.poly) {
            m = std::max(m, std::abs(affine_at(cell, v)));
        }
    }
    return m;
}

PolyhedralSet PLFunction::subgraph(double slab_height) const {
    if (!(slab_height > max_abs())) {
        throw std::invalid_argument("slab height must exceed the function's maximum magnitude");
    }
    std::vector<ConvexCell> lifted;
    lifted.reserve(cells_.size());
    for (const PLCell& cell : cells_) {
        ConvexCell hs;
        for (size_t i = 0; i < cell.poly.size(); ++i) {
            const Vec& p = cell.poly[i];
            const Vec& q = cell.poly[(i + 1) % cell.poly.size()];
            const Vec e = q - p;
            const Vec n = make_vec({e(1), -e(0), 0.0});
            hs.push_back(Halfspace{n, e(1) * p(0) - e(0) * p(1)});
        }
        hs.push_back(Halfspace{make_vec({-cell.grad(0), -cell.grad(1), 1.0}), cell.offset});
        hs.push_back(Halfspace{make_vec({0.0, 0.0, -1.0}), slab_height});
        lifted.push_back(std::move(hs));
    }
    const Box window = make_box({domain_.lo(0), domain_.lo(1), -slab_height},
                                {domain_.hi(0), domain_.hi(1), slab_height});
    return PolyhedralSet::from_cells(std::move(lifted), window);
}

double subgraph_energy(const PLFunction& u, const Anisotropy& norm, const Box& region) {
    if (norm.dim() != 3) {
        throw DimensionError("norm dimension " + std::to_string(norm.dim()) +
                             " does not match the graph space dimension 3");
    }
    if (region.dim() != 2 || !u.domain().contains_box(region, kTol)) {
        throw std::invalid_argument("region outside the function domain");
    }

    double total = 0.0;
    for (const PLCell& cell : u.cells()) {
        const double area = clipped_area(cell.poly, region);
        if (area <= 0.0) {
            continue;
        }
        total += area * norm.eval_dual(make_vec({-cell.grad(0), -cell.grad(1), 1.0}));
    }

    for (const JumpEdge& edge : u.jump_edges()) {
        const auto seg = clip_segment_to_box(edge.a, edge.b, region, kTol);
        if (!seg || on_box_face(seg->first, seg->second, region, kTol)) {
            continue;
        }
        const PLCell& lo_cell = u.cells()[edge.cell_minus];
        const PLCell& hi_cell = u.cells()[edge.cell_plus];
        const double da = affine_at(hi_cell, seg->first) - affine_at(lo_cell, seg->first);
        const double db = affine_at(hi_cell, seg->second) - affine_at(lo_cell, seg->second);
        const double len = (seg->second - seg->first).norm();

        auto wall = [&](double ja, double jb, double frac) {
            const double sign = (ja + jb) >= 0.0 ? 1.0 : -1.0;
            const double area = frac * len * 0.5 * (std::abs(ja) + std::abs(jb));
            if (area <= 0.0) {
                return;
            }
            const Vec n =
                make_vec({-sign * edge.conormal(0), -sign * edge.conormal(1), 0.0});
            total += area * norm.eval_dual(n);
        };
        if (da * db < 0.0) {
            const double t = da / (da - db);
            wall(da, 0.0, t);
            wall(0.0, db, 1.0 - t);
        } else {
            wall(da, db, 1.0);
        }
    }
    return total;
}

CoareaReport coarea_decomposition(const PLFunction& u, const Anisotropy& base_norm,
                                  const Box& region) {
    if (base_norm.dim() != 2) {
        throw DimensionError("base norm dimension " + std::to_string(base_norm.dim()) +
                             " does not match the planar domain dimension 2");
    }
    if (!u.piecewise_constant()) {
        throw std::invalid_argument("coarea decomposition needs a piecewise-constant function");
    }
    if (region.dim() != 2 || !u.domain().contains_box(region, kTol)) {
        throw std::invalid_argument("region outside the function domain");
    }

    std::vector<double> values;
    for (const PLCell& cell : u.cells()) {
        if (clipped_area(cell.poly, region) > 0.0) {
            values.push_back(cell.offset);
        }
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end(),
                             [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
                 values.end());

    struct Wall {
        double lo;
        double hi;
        double weight;
    };
    std::vector<Wall> walls;
    for (const JumpEdge& edge : u.jump_edges()) {
        const auto seg = clip_segment_to_box(edge.a, edge.b, region, kTol);
        if (!seg || on_box_face(seg->first, seg->second, region, kTol)) {
            continue;
        }
        const double vminus = u.cells()[edge.cell_minus].offset;
        const double vplus = u.cells()[edge.cell_plus].offset;
        if (std::abs(vplus - vminus) <= 1e-12) {
            continue;
        }
        const double sign = vplus > vminus ? 1.0 : -1.0;
        const double len = (seg->second - seg->first).norm();
        Wall w;
        w.lo = std::min(vminus, vplus);
        w.hi = std::max(vminus, vplus);
        w.weight = len * base_norm.eval_dual(-sign * edge.conormal);
        walls.push_back(w);
    }

    CoareaReport report;
    for (size_t k = 0; k + 1 < values.size(); ++k) {
        const double level = 0.5 * (values[k] + values[k + 1]);
        double per = 0.0;
        for (const Wall& w : walls) {
            if (w.lo < level && level < w.hi) {
                per += w.weight;
            }
        }
        report.levels.push_back(CoareaLevel{level, per});
        report.total += (values[k + 1] - values[k]) * per;
    }
    return report;
}

}  // namespace anisoperim
