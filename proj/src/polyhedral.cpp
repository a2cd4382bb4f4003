#include "anisoperim/polyhedral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>

namespace anisoperim {

namespace {

constexpr double kGeomTol = 1e-9;

using Loop = std::vector<Vec>;

double box_scale(const Box& w) {
    double s = 1.0;
    for (int ax = 0; ax < w.dim(); ++ax) {
        s = std::max(s, std::abs(w.lo(ax)));
        s = std::max(s, std::abs(w.hi(ax)));
    }
    return s;
}

// Clip debris threshold for a (d-1)-measure at the given coordinate scale.
double dust_threshold(int d, double scale) {
    return 1e-12 * std::pow(1.0 + scale, d - 1);
}

Halfspace normalized(Halfspace h) {
    const double n = h.normal.norm();
    if (!(n > kGeomTol)) {
        throw std::invalid_argument("half-space normal must be nonzero");
    }
    h.normal /= n;
    h.offset /= n;
    return h;
}

std::vector<Halfspace> window_planes(const Box& w) {
    std::vector<Halfspace> out;
    const int d = w.dim();
    for (int ax = 0; ax < d; ++ax) {
        Vec e = Vec::Zero(d);
        e(ax) = 1.0;
        out.push_back(Halfspace{e, w.hi(ax)});
        out.push_back(Halfspace{-e, -w.lo(ax)});
    }
    return out;
}

bool matches_window_face(const Halfspace& h, const Box& w, double tol) {
    const int d = w.dim();
    for (int ax = 0; ax < d; ++ax) {
        Vec e = Vec::Zero(d);
        e(ax) = 1.0;
        if ((h.normal - e).lpNorm<Eigen::Infinity>() <= tol && std::abs(h.offset - w.hi(ax)) <= tol) {
            return true;
        }
        if ((h.normal + e).lpNorm<Eigen::Infinity>() <= tol && std::abs(h.offset + w.lo(ax)) <= tol) {
            return true;
        }
    }
    return false;
}

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
    if (k <= 0 || k > n) {
        return;
    }
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) {
        idx[i] = i;
    }
    while (true) {
        f(idx);
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == n - k + pos) {
            --pos;
        }
        if (pos < 0) {
            return;
        }
        ++idx[pos];
        for (int i = pos + 1; i < k; ++i) {
            idx[i] = idx[i - 1] + 1;
        }
    }
}

std::vector<Vec> enumerate_vertices(const std::vector<Halfspace>& cons, int d, double tol) {
    std::vector<Vec> verts;
    const int n = static_cast<int>(cons.size());
    Eigen::MatrixXd A(d, d);
    Eigen::VectorXd b(d);
    for_each_subset(n, d, [&](const std::vector<int>& idx) {
        for (int i = 0; i < d; ++i) {
            A.row(i) = cons[idx[i]].normal.transpose();
            b(i) = cons[idx[i]].offset;
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
        lu.setThreshold(1e-9);
        if (lu.rank() < d) {
            return;
        }
        const Eigen::VectorXd x = lu.solve(b);
        Vec p = x;
        for (const Halfspace& h : cons) {
            if (h.normal.dot(p) > h.offset + tol) {
                return;
            }
        }
        for (const Vec& v : verts) {
            if ((v - p).lpNorm<Eigen::Infinity>() <= 10.0 * tol) {
                return;
            }
        }
        verts.push_back(std::move(p));
    });
    return verts;
}

// Two orthonormal in-plane directions for a unit normal (d >= 2).
Eigen::MatrixXd hyperplane_basis(const Vec& n) {
    const int d = static_cast<int>(n.size());
    Eigen::MatrixXd col(d, 1);
    col.col(0) = n;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(col);
    Eigen::MatrixXd Q = qr.householderQ();
    return Q.rightCols(d - 1);
}

// Unordered coplanar points in convex position -> counterclockwise order
// around their mean within the plane spanned by basis columns.
std::vector<int> angular_order(const std::vector<Eigen::Vector2d>& pts) {
    Eigen::Vector2d c = Eigen::Vector2d::Zero();
    for (const auto& p : pts) {
        c += p;
    }
    c /= static_cast<double>(pts.size());
    std::vector<int> order(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        order[i] = static_cast<int>(i);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Eigen::Vector2d pa = pts[a] - c;
        const Eigen::Vector2d pb = pts[b] - c;
        return std::atan2(pa.y(), pa.x()) < std::atan2(pb.y(), pb.x());
    });
    return order;
}

double polygon_area_2d(const std::vector<Eigen::Vector2d>& loop) {
    double twice = 0.0;
    const size_t n = loop.size();
    for (size_t i = 0; i < n; ++i) {
        const auto& p = loop[i];
        const auto& q = loop[(i + 1) % n];
        twice += p.x() * q.y() - q.x() * p.y();
    }
    return 0.5 * std::abs(twice);
}

// Area of an unordered set of coplanar points in convex position (3-d).
double polygon_area_3d(const std::vector<Eigen::Vector3d>& pts, const Eigen::Vector3d& normal) {
    if (pts.size() < 3) {
        return 0.0;
    }
    Vec n3 = Vec::Zero(3);
    n3 << normal(0), normal(1), normal(2);
    const Eigen::MatrixXd B = hyperplane_basis(n3);
    std::vector<Eigen::Vector2d> local;
    local.reserve(pts.size());
    for (const auto& p : pts) {
        Eigen::Vector3d q = p;
        local.emplace_back(B.col(0).dot(q), B.col(1).dot(q));
    }
    const std::vector<int> order = angular_order(local);
    std::vector<Eigen::Vector2d> loop;
    loop.reserve(local.size());
    for (int i : order) {
        loop.push_back(local[i]);
    }
    return polygon_area_2d(loop);
}

// Volume of a convex 3-polytope from its extreme points: supporting-plane
// search over point triples, then pyramids to the vertex mean.
double convex_volume_3d(const std::vector<Eigen::Vector3d>& pts, double tol) {
    const size_t n = pts.size();
    if (n < 4) {
        return 0.0;
    }
    Eigen::Vector3d c = Eigen::Vector3d::Zero();
    for (const auto& p : pts) {
        c += p;
    }
    c /= static_cast<double>(n);
    std::vector<std::pair<Eigen::Vector3d, double>> faces;
    for_each_subset(static_cast<int>(n), 3, [&](const std::vector<int>& idx) {
        Eigen::Vector3d nf =
            (pts[idx[1]] - pts[idx[0]]).cross(pts[idx[2]] - pts[idx[0]]);
        const double len = nf.norm();
        if (len <= tol) {
            return;
        }
        nf /= len;
        double off = nf.dot(pts[idx[0]]);
        bool below = true;
        bool above = true;
        for (const auto& p : pts) {
            const double v = nf.dot(p);
            below = below && v <= off + tol;
            above = above && v >= off - tol;
        }
        if (!below && !above) {
            return;
        }
        if (!below) {
            nf = -nf;
            off = -off;
        }
        for (const auto& f : faces) {
            if ((f.first - nf).norm() <= 1e-7 && std::abs(f.second - off) <= tol) {
                return;
            }
        }
        faces.emplace_back(nf, off);
    });
    double vol = 0.0;
    for (const auto& f : faces) {
        std::vector<Eigen::Vector3d> inc;
        for (const auto& p : pts) {
            if (std::abs(f.first.dot(p) - f.second) <= tol) {
                inc.push_back(p);
            }
        }
        const double area = polygon_area_3d(inc, f.first);
        vol += area * (f.second - f.first.dot(c)) / 3.0;
    }
    return vol;
}

double piece_measure(const Loop& loop, int d) {
    if (loop.empty()) {
        return 0.0;
    }
    if (d == 1) {
        return 1.0;
    }
    if (d == 2) {
        return loop.size() < 2 ? 0.0 : (loop[1] - loop[0]).norm();
    }
    if (loop.size() < 3) {
        return 0.0;
    }
    double twice = 0.0;
    const Vec& base = loop[0];
    Eigen::Vector3d acc = Eigen::Vector3d::Zero();
    for (size_t i = 1; i + 1 < loop.size(); ++i) {
        Eigen::Vector3d a;
        Eigen::Vector3d b;
        a << loop[i](0) - base(0), loop[i](1) - base(1), loop[i](2) - base(2);
        b << loop[i + 1](0) - base(0), loop[i + 1](1) - base(1), loop[i + 1](2) - base(2);
        acc += a.cross(b);
    }
    twice = acc.norm();
    return 0.5 * twice;
}

Vec piece_anchor(const Loop& loop) {
    Vec c = Vec::Zero(loop.front().size());
    for (const Vec& p : loop) {
        c += p;
    }
    return c / static_cast<double>(loop.size());
}

// Part of the piece with h.normal . x <= h.offset + thr; crossings land on
// the exact plane, so a +thr clip and a -thr clip of the same piece partition
// it without gap or overlap. A negative thr drops everything within |thr| of
// the plane, which keeps on-plane pieces out of "strictly outside" results.
std::optional<Loop> clip_piece(const Loop& loop, const Halfspace& h, int d, double thr) {
    const double vtol = std::max(std::abs(thr), 1e-12);
    if (loop.empty()) {
        return std::nullopt;
    }
    if (d == 1) {
        if (h.normal.dot(loop[0]) <= h.offset + thr) {
            return loop;
        }
        return std::nullopt;
    }
    if (d == 2) {
        const double f0 = h.normal.dot(loop[0]) - h.offset;
        const double f1 = h.normal.dot(loop[1]) - h.offset;
        if (f0 <= thr && f1 <= thr) {
            return loop;
        }
        if (f0 > thr && f1 > thr) {
            return std::nullopt;
        }
        double t = f0 / (f0 - f1);
        t = std::clamp(t, 0.0, 1.0);
        Vec cross = loop[0] + t * (loop[1] - loop[0]);
        Loop out;
        if (f0 <= thr) {
            out = {loop[0], cross};
        } else {
            out = {cross, loop[1]};
        }
        if ((out[1] - out[0]).norm() <= vtol) {
            return std::nullopt;
        }
        return out;
    }
    Loop out;
    const size_t n = loop.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec& p = loop[i];
        const Vec& q = loop[(i + 1) % n];
        const double fp = h.normal.dot(p) - h.offset;
        const double fq = h.normal.dot(q) - h.offset;
        if (fp <= thr) {
            out.push_back(p);
        }
        if ((fp <= thr && fq > thr) || (fp > thr && fq <= thr)) {
            double t = fp / (fp - fq);
            t = std::clamp(t, 0.0, 1.0);
            out.push_back(p + t * (q - p));
        }
    }
    Loop dedup;
    for (const Vec& p : out) {
        if (dedup.empty() || (dedup.back() - p).lpNorm<Eigen::Infinity>() > vtol) {
            dedup.push_back(p);
        }
    }
    while (dedup.size() > 1 &&
           (dedup.front() - dedup.back()).lpNorm<Eigen::Infinity>() <= vtol) {
        dedup.pop_back();
    }
    if (dedup.size() < 3) {
        return std::nullopt;
    }
    return dedup;
}

std::vector<Facet> cell_facets(const ConvexCell& cell, const Box& window, int d) {
    const double scale = box_scale(window);
    const double tol = kGeomTol * (1.0 + scale);
    const double dust = dust_threshold(d, scale);
    std::vector<Halfspace> cons = cell;
    for (Halfspace& h : window_planes(window)) {
        cons.push_back(std::move(h));
    }
    const std::vector<Vec> verts = enumerate_vertices(cons, d, tol);
    std::vector<Facet> out;
    for (size_t k = 0; k < cell.size(); ++k) {
        const Halfspace& h = cell[k];
        bool dup = false;
        for (size_t j = 0; j < k && !dup; ++j) {
            dup = cell[j].normal.dot(h.normal) >= 1.0 - 1e-12 &&
                  std::abs(cell[j].offset - h.offset) <= tol;
        }
        if (dup || matches_window_face(h, window, tol)) {
            continue;
        }
        std::vector<Vec> inc;
        for (const Vec& v : verts) {
            if (std::abs(h.normal.dot(v) - h.offset) <= tol) {
                inc.push_back(v);
            }
        }
        if (static_cast<int>(inc.size()) < d) {
            continue;
        }
        Facet f;
        f.normal = h.normal;
        if (d == 1) {
            f.area = 1.0;
            f.anchor = inc[0];
            f.poly = {inc[0]};
        } else if (d == 2) {
            const Eigen::MatrixXd B = hyperplane_basis(h.normal);
            auto key = [&](const Vec& v) { return B.col(0).dot(v); };
            const Vec* lo = &inc[0];
            const Vec* hi = &inc[0];
            for (const Vec& v : inc) {
                if (key(v) < key(*lo)) {
                    lo = &v;
                }
                if (key(v) > key(*hi)) {
                    hi = &v;
                }
            }
            f.area = (*hi - *lo).norm();
            if (f.area <= dust) {
                continue;
            }
            f.poly = {*lo, *hi};
            f.anchor = 0.5 * (*lo + *hi);
        } else if (d == 3) {
            const Eigen::MatrixXd B = hyperplane_basis(h.normal);
            std::vector<Eigen::Vector2d> local;
            local.reserve(inc.size());
            for (const Vec& v : inc) {
                local.emplace_back(B.col(0).dot(v), B.col(1).dot(v));
            }
            const std::vector<int> order = angular_order(local);
            Loop loop;
            loop.reserve(inc.size());
            for (int i : order) {
                loop.push_back(inc[i]);
            }
            f.poly = std::move(loop);
            f.area = piece_measure(f.poly, d);
            if (f.area <= dust) {
                continue;
            }
            f.anchor = piece_anchor(f.poly);
        } else {
            std::vector<Eigen::Vector3d> local;
            const Eigen::MatrixXd B = hyperplane_basis(h.normal);
            local.reserve(inc.size());
            for (const Vec& v : inc) {
                local.emplace_back(B.col(0).dot(v), B.col(1).dot(v), B.col(2).dot(v));
            }
            f.area = convex_volume_3d(local, tol);
            if (f.area <= dust) {
                continue;
            }
            Vec c = Vec::Zero(d);
            for (const Vec& v : inc) {
                c += v;
            }
            f.anchor = c / static_cast<double>(inc.size());
        }
        out.push_back(std::move(f));
    }
    return out;
}

bool eps_enters_cell(const ConvexCell& cell, const Vec& p, const Vec& dir, double scale) {
    const double eps = 1e-8 * (1.0 + scale);
    const double slack = 1e-11 * (1.0 + scale);
    const Vec q = p + eps * dir;
    for (const Halfspace& h : cell) {
        if (h.normal.dot(q) > h.offset - slack) {
            return false;
        }
    }
    return true;
}

bool on_same_oriented_plane(const ConvexCell& cell, const Vec& p, const Vec& dir, double tol) {
    for (const Halfspace& h : cell) {
        if (h.normal.dot(dir) >= 1.0 - 1e-9 && std::abs(h.normal.dot(p) - h.offset) <= tol) {
            return true;
        }
    }
    return false;
}

}  // namespace

PolyhedralSet PolyhedralSet::from_halfspaces(std::vector<Halfspace> hs, SetOp op, Box window) {
    std::vector<ConvexCell> cells;
    if (op == SetOp::Intersect) {
        cells.emplace_back(std::move(hs));
    } else {
        for (Halfspace& h : hs) {
            cells.push_back(ConvexCell{std::move(h)});
        }
    }
    return from_cells(std::move(cells), std::move(window));
}

PolyhedralSet PolyhedralSet::from_cells(std::vector<ConvexCell> cells, Box window) {
    PolyhedralSet s;
    s.dim_ = window.dim();
    if (s.dim_ < 1 || s.dim_ > 4) {
        throw std::invalid_argument("polyhedral sets support dimensions 1 through 4");
    }
    if (cells.empty()) {
        throw std::invalid_argument("set needs at least one cell");
    }
    for (ConvexCell& cell : cells) {
        if (cell.empty()) {
            throw std::invalid_argument("each cell needs at least one half-space");
        }
        for (Halfspace& h : cell) {
            require_dim(h.normal, s.dim_, "half-space normal");
            h = normalized(std::move(h));
        }
    }
    s.cells_ = std::move(cells);
    s.window_ = std::move(window);
    return s;
}

PolyhedralSet PolyhedralSet::from_facets(std::vector<Facet> facets, Box window) {
    PolyhedralSet s;
    s.dim_ = window.dim();
    if (s.dim_ < 1 || s.dim_ > 4) {
        throw std::invalid_argument("polyhedral sets support dimensions 1 through 4");
    }
    for (Facet& f : facets) {
        require_dim(f.normal, s.dim_, "facet normal");
        require_dim(f.anchor, s.dim_, "facet anchor");
        const double n = f.normal.norm();
        if (!(n > kGeomTol)) {
            throw std::invalid_argument("facet normal must be nonzero");
        }
        f.normal /= n;
        if (!(f.area >= 0.0) || !std::isfinite(f.area)) {
            throw std::invalid_argument("facet area must be finite and nonnegative");
        }
        for (const Vec& p : f.poly) {
            require_dim(p, s.dim_, "facet polygon vertex");
        }
    }
    s.explicit_facets_ = std::move(facets);
    s.window_ = std::move(window);
    return s;
}

PolyhedralSet PolyhedralSet::prism(const PolyhedralSet& base, double t_lo, double t_hi) {
    if (!base.has_generators()) {
        throw std::invalid_argument("prism construction needs a generator-backed base");
    }
    if (!(t_lo < t_hi)) {
        throw std::invalid_argument("prism needs t_lo < t_hi");
    }
    const int d = base.dim_;
    std::vector<ConvexCell> cells;
    cells.reserve(base.cells_.size());
    for (const ConvexCell& cell : base.cells_) {
        ConvexCell lifted;
        lifted.reserve(cell.size());
        for (const Halfspace& h : cell) {
            Vec n = Vec::Zero(d + 1);
            n.head(d) = h.normal;
            lifted.push_back(Halfspace{std::move(n), h.offset});
        }
        cells.push_back(std::move(lifted));
    }
    Vec lo = Vec::Zero(d + 1);
    Vec hi = Vec::Zero(d + 1);
    lo.head(d) = base.window_.lo;
    hi.head(d) = base.window_.hi;
    lo(d) = t_lo;
    hi(d) = t_hi;
    return from_cells(std::move(cells), Box{std::move(lo), std::move(hi)});
}

bool PolyhedralSet::contains(const Vec& p) const {
    if (cells_.empty()) {
        throw std::logic_error("membership queries need a generator-backed set");
    }
    require_dim(p, dim_, "query point");
    for (const ConvexCell& cell : cells_) {
        bool inside = true;
        for (const Halfspace& h : cell) {
            if (h.normal.dot(p) > h.offset) {
                inside = false;
                break;
            }
        }
        if (inside) {
            return true;
        }
    }
    return false;
}

std::vector<Facet> PolyhedralSet::facets(const Box& window) const {
    if (window.dim() != dim_) {
        throw DimensionError("query window dimension " + std::to_string(window.dim()) +
                             " does not match set dimension " + std::to_string(dim_));
    }
    const double scale = box_scale(window_);
    if (!window_.contains_box(window, kGeomTol * (1.0 + scale))) {
        throw std::invalid_argument("query window exceeds the set's validity window");
    }
    const double tol = kGeomTol * (1.0 + scale);
    const double dust = dust_threshold(dim_, scale);

    std::vector<Facet> out;
    if (!cells_.empty()) {
        if (dim_ == 4 && cells_.size() > 1) {
            throw std::invalid_argument("multi-cell boundary resolution supports dimensions up to 3");
        }
        for (size_t i = 0; i < cells_.size(); ++i) {
            std::vector<Facet> fs = cell_facets(cells_[i], window, dim_);
            if (cells_.size() == 1) {
                for (Facet& f : fs) {
                    out.push_back(std::move(f));
                }
                continue;
            }
            for (Facet& f : fs) {
                std::vector<Loop> pieces = {f.poly};
                for (size_t j = 0; j < cells_.size() && !pieces.empty(); ++j) {
                    if (j == i) {
                        continue;
                    }
                    std::vector<Loop> next;
                    for (Loop& piece : pieces) {
                        std::optional<Loop> overlap = piece;
                        for (const Halfspace& h : cells_[j]) {
                            overlap = clip_piece(*overlap, h, dim_, tol);
                            if (!overlap) {
                                break;
                            }
                        }
                        if (!overlap || piece_measure(*overlap, dim_) <= dust) {
                            next.push_back(std::move(piece));
                            continue;
                        }
                        const Vec probe = piece_anchor(*overlap);
                        const bool covered =
                            eps_enters_cell(cells_[j], probe, f.normal, scale) ||
                            (j < i && on_same_oriented_plane(cells_[j], probe, f.normal, tol));
                        if (!covered) {
                            next.push_back(std::move(piece));
                            continue;
                        }
                        std::optional<Loop> rest = std::move(piece);
                        for (const Halfspace& h : cells_[j]) {
                            Halfspace flipped{-h.normal, -h.offset};
                            std::optional<Loop> outside = clip_piece(*rest, flipped, dim_, -tol);
                            if (outside && piece_measure(*outside, dim_) > dust) {
                                next.push_back(std::move(*outside));
                            }
                            rest = clip_piece(*rest, h, dim_, tol);
                            if (!rest) {
                                break;
                            }
                        }
                    }
                    pieces = std::move(next);
                }
                for (Loop& piece : pieces) {
                    const double area = piece_measure(piece, dim_);
                    if (area <= dust) {
                        continue;
                    }
                    Facet g;
                    g.normal = f.normal;
                    g.area = area;
                    g.anchor = piece_anchor(piece);
                    g.poly = std::move(piece);
                    out.push_back(std::move(g));
                }
            }
        }
        return out;
    }

    for (const Facet& f : explicit_facets_) {
        if (!f.poly.empty() && dim_ >= 2 && dim_ <= 3) {
            std::optional<Loop> piece = f.poly;
            for (const Halfspace& h : window_planes(window)) {
                piece = clip_piece(*piece, h, dim_, tol);
                if (!piece) {
                    break;
                }
            }
            if (!piece) {
                continue;
            }
            const double area = piece_measure(*piece, dim_);
            if (area <= dust) {
                continue;
            }
            Facet g;
            g.normal = f.normal;
            g.area = area;
            g.anchor = piece_anchor(*piece);
            g.poly = std::move(*piece);
            out.push_back(std::move(g));
        } else if (window.contains(f.anchor, tol)) {
            out.push_back(f);
        }
    }
    return out;
}

PolyhedralSet PolyhedralSet::complement() const {
    if (cells_.size() != 1) {
        throw std::invalid_argument("complement supports single-cell generator sets");
    }
    std::vector<ConvexCell> cells;
    for (const Halfspace& h : cells_[0]) {
        cells.push_back(ConvexCell{Halfspace{-h.normal, -h.offset}});
    }
    return from_cells(std::move(cells), window_);
}

PolyhedralSet PolyhedralSet::scaled(double s) const {
    if (!(s > 0.0) || !std::isfinite(s)) {
        throw std::invalid_argument("scale factor must be positive and finite");
    }
    PolyhedralSet out;
    out.dim_ = dim_;
    out.window_ = Box{s * window_.lo, s * window_.hi};
    out.cells_ = cells_;
    for (ConvexCell& cell : out.cells_) {
        for (Halfspace& h : cell) {
            h.offset *= s;
        }
    }
    out.explicit_facets_ = explicit_facets_;
    for (Facet& f : out.explicit_facets_) {
        f.area *= std::pow(s, dim_ - 1);
        f.anchor *= s;
        for (Vec& p : f.poly) {
            p *= s;
        }
    }
    return out;
}

double perimeter(const PolyhedralSet& set, const Anisotropy& norm, const Box& window) {
    if (norm.dim() != set.dim()) {
        throw DimensionError("norm dimension " + std::to_string(norm.dim()) +
                             " does not match set dimension " + std::to_string(set.dim()));
    }
    double total = 0.0;
    for (const Facet& f : set.facets(window)) {
        total += f.area * norm.eval_dual(f.normal);
    }
    return total;
}

double perimeter(const PolyhedralSet& set, const Anisotropy& norm) {
    return perimeter(set, norm, set.window());
}

namespace {

// Length of the cut of an ordered convex loop at height c (last coordinate).
double loop_slice_length(const Loop& loop, int d, double c, double tol) {
    std::vector<Vec> pts;
    const size_t n = loop.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec& p = loop[i];
        const Vec& q = loop[(i + 1) % n];
        const double fp = p(d - 1) - c;
        const double fq = q(d - 1) - c;
        if (std::abs(fp) <= tol) {
            pts.push_back(p);
        }
        if ((fp < -tol && fq > tol) || (fp > tol && fq < -tol)) {
            const double t = fp / (fp - fq);
            pts.push_back(p + t * (q - p));
        }
    }
    double best = 0.0;
    for (size_t i = 0; i < pts.size(); ++i) {
        for (size_t j = i + 1; j < pts.size(); ++j) {
            best = std::max(best, (pts[i] - pts[j]).norm());
        }
    }
    return best;
}

// Exact integral over heights of the facet's slice length: the length is
// piecewise linear in the height with breakpoints at vertex heights.
double facet_height_integral(const Facet& f, int d, double tol) {
    if (d == 2) {
        if (f.poly.size() < 2) {
            return 0.0;
        }
        return std::abs(f.poly[1](1) - f.poly[0](1));
    }
    if (f.poly.empty()) {
        return 0.0;
    }
    std::vector<double> levels;
    for (const Vec& p : f.poly) {
        levels.push_back(p(d - 1));
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end(),
                             [&](double a, double b) { return std::abs(a - b) <= tol; }),
                 levels.end());
    double total = 0.0;
    for (size_t i = 0; i + 1 < levels.size(); ++i) {
        const double a = levels[i];
        const double b = levels[i + 1];
        const double la = loop_slice_length(f.poly, d, a, tol);
        const double lb = loop_slice_length(f.poly, d, b, tol);
        total += 0.5 * (la + lb) * (b - a);
    }
    return total;
}

double facet_projected_area(const Facet& f, int d) {
    if (d == 2) {
        if (f.poly.size() < 2) {
            return 0.0;
        }
        return std::abs(f.poly[1](0) - f.poly[0](0));
    }
    if (f.poly.size() < 3) {
        return 0.0;
    }
    double twice = 0.0;
    const size_t n = f.poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec& p = f.poly[i];
        const Vec& q = f.poly[(i + 1) % n];
        twice += p(0) * q(1) - q(0) * p(1);
    }
    return 0.5 * std::abs(twice);
}

}  // namespace

SliceReport slice_check(const PolyhedralSet& set, const Anisotropy& norm, const Box& window) {
    const int d = set.dim();
    if (d < 2 || d > 3) {
        throw std::invalid_argument("slice decomposition supports dimensions 2 and 3");
    }
    if (norm.dim() != d) {
        throw DimensionError("norm dimension " + std::to_string(norm.dim()) +
                             " does not match set dimension " + std::to_string(d));
    }
    const double scale = box_scale(window);
    const double tol = kGeomTol * (1.0 + scale);
    Vec vdir = Vec::Zero(d);
    vdir(d - 1) = 1.0;
    const double vert_weight = norm.eval_dual(vdir);
    SliceReport r;
    for (const Facet& f : set.facets(window)) {
        Vec hor = f.normal;
        hor(d - 1) = 0.0;
        const double hn = hor.norm();
        r.lhs_horizontal += f.area * norm.eval_dual(hor);
        r.lhs_vertical += f.area * std::abs(f.normal(d - 1)) * vert_weight;
        if (hn > tol) {
            r.rhs_horizontal += norm.eval_dual(hor / hn) * facet_height_integral(f, d, tol);
        }
        r.rhs_vertical += vert_weight * facet_projected_area(f, d);
    }
    return r;
}

CylinderReport cylinder_identity(const PolyhedralSet& base_set, const Anisotropy& base_norm,
                                 int m, const Box& base_window) {
    if (m < 0) {
        throw std::invalid_argument("cylinder identity needs m >= 0");
    }
    if (base_norm.dim() != base_set.dim()) {
        throw DimensionError("norm dimension " + std::to_string(base_norm.dim()) +
                             " does not match set dimension " + std::to_string(base_set.dim()));
    }
    const double T = static_cast<double>(m) + 1.0;
    const PolyhedralSet pr = PolyhedralSet::prism(base_set, -T, T);
    const Anisotropy cyl = Anisotropy::cylindrical(base_norm);
    const int d = base_set.dim() + 1;
    Vec lo = Vec::Zero(d);
    Vec hi = Vec::Zero(d);
    lo.head(d - 1) = base_window.lo;
    hi.head(d - 1) = base_window.hi;
    lo(d - 1) = -T;
    hi(d - 1) = T;
    CylinderReport rep;
    rep.base_perimeter = perimeter(base_set, base_norm, base_window);
    rep.expected = 2.0 * T * rep.base_perimeter;
    for (const Facet& f : pr.facets(Box{std::move(lo), std::move(hi)})) {
        if (std::abs(f.normal(d - 1)) <= kGeomTol) {
            rep.lateral += f.area * cyl.eval_dual(f.normal);
        }
    }
    return rep;
}

}  // namespace anisoperim
