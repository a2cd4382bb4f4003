#include "anisoperim/solver.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "anisoperim/rng.hpp"

namespace anisoperim {

namespace {

double clampd(double x, double lo, double hi) { return std::min(std::max(x, lo), hi); }

// Projection onto {phi(x) <= r} for the base norms the dual update supports.
class BaseBall {
public:
    BaseBall(const Anisotropy& base, double r) : r_(r), n_(base.dim()) {
        if (n_ == 1) {
            Vec e(1);
            e(0) = 1.0;
            mode_ = Mode::Box;
            halfwidth_ = r_ / base.eval(e);
            return;
        }
        switch (base.kind()) {
            case NormKind::Euclidean:
                mode_ = Mode::Radial;
                break;
            case NormKind::PNorm: {
                double p = base.p_exponent();
                if (p == 2.0) {
                    mode_ = Mode::Radial;
                } else if (std::isinf(p)) {
                    mode_ = Mode::Box;
                    halfwidth_ = r_;
                } else if (p == 1.0) {
                    mode_ = Mode::CrossPolytope;
                } else {
                    throw std::invalid_argument(
                        "no closed-form dual projection for this exponent; use p in {1,2,inf}");
                }
                break;
            }
            case NormKind::Polytope:
                mode_ = Mode::Halfspaces;
                planes_ = base.facet_functionals();
                break;
            case NormKind::Quadratic: {
                mode_ = Mode::Ellipse;
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(base.quadratic_form());
                eigvals_ = es.eigenvalues();
                eigvecs_ = es.eigenvectors();
                break;
            }
            default:
                throw std::invalid_argument(
                    "solver base must be Euclidean, a p-norm, a polytope, or quadratic");
        }
    }

    void project(Vec& z) const {
        switch (mode_) {
            case Mode::Radial: {
                double nrm = z.norm();
                if (nrm > r_) z *= r_ / nrm;
                return;
            }
            case Mode::Box: {
                for (int i = 0; i < n_; ++i) z(i) = clampd(z(i), -halfwidth_, halfwidth_);
                return;
            }
            case Mode::CrossPolytope:
                project_l1(z);
                return;
            case Mode::Halfspaces:
                project_dykstra(z);
                return;
            case Mode::Ellipse:
                project_ellipse(z);
                return;
        }
    }

private:
    enum class Mode { Radial, Box, CrossPolytope, Halfspaces, Ellipse };
    Mode mode_ = Mode::Radial;
    double r_;
    int n_;
    double halfwidth_ = 0.0;
    std::vector<Vec> planes_;
    Eigen::VectorXd eigvals_;
    Eigen::MatrixXd eigvecs_;

    void project_l1(Vec& z) const {
        double s = 0.0;
        for (int i = 0; i < n_; ++i) s += std::abs(z(i));
        if (s <= r_) return;
        // Soft-threshold magnitudes by t chosen so the shrunk sum equals r.
        std::vector<double> a(n_);
        for (int i = 0; i < n_; ++i) a[i] = std::abs(z(i));
        std::sort(a.begin(), a.end(), std::greater<double>());
        double acc = 0.0, t = 0.0;
        for (int k = 0; k < n_; ++k) {
            acc += a[k];
            double cand = (acc - r_) / (k + 1);
            if (k + 1 == n_ || cand >= a[k + 1]) {
                t = cand;
                break;
            }
        }
        for (int i = 0; i < n_; ++i) {
            double m = std::max(std::abs(z(i)) - t, 0.0);
            z(i) = std::copysign(m, z(i));
        }
    }

    void project_dykstra(Vec& z) const {
        Vec x = z;
        std::vector<Vec> corr(planes_.size(), Vec::Zero(n_));
        for (int sweep = 0; sweep < 300; ++sweep) {
            double moved = 0.0;
            for (size_t k = 0; k < planes_.size(); ++k) {
                Vec y = x + corr[k];
                double viol = planes_[k].dot(y) - r_;
                Vec projected = y;
                if (viol > 0.0) projected -= (viol / planes_[k].squaredNorm()) * planes_[k];
                corr[k] = y - projected;
                moved = std::max(moved, (projected - x).cwiseAbs().maxCoeff());
                x = projected;
            }
            if (moved <= 1e-14 * (1.0 + r_)) break;
        }
        z = x;
    }

    void project_ellipse(Vec& z) const {
        // Coordinates of the eigenbasis; ball is sum(lam_i y_i^2) <= r^2.
        Eigen::VectorXd y = eigvecs_.transpose() * z;
        auto value = [&](double mu) {
            double s = 0.0;
            for (int i = 0; i < n_; ++i) {
                double d = 1.0 + mu * eigvals_(i);
                s += eigvals_(i) * y(i) * y(i) / (d * d);
            }
            return s;
        };
        double r2 = r_ * r_;
        if (value(0.0) <= r2) return;
        double lo = 0.0, hi = 1.0;
        while (value(hi) > r2) {
            lo = hi;
            hi *= 2.0;
            if (hi > 1e18) break;
        }
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            if (value(mid) > r2)
                lo = mid;
            else
                hi = mid;
            if (hi - lo <= 1e-15 * (1.0 + hi)) break;
        }
        double mu = 0.5 * (lo + hi);
        for (int i = 0; i < n_; ++i) y(i) /= 1.0 + mu * eigvals_(i);
        z = eigvecs_ * y;
    }
};

struct WallTerm {
    double weight;
    double point;
};

// argmin over [lo,hi] of (u-x)^2/(2 tau) + sum_k w_k |u - p_k|, up to two terms.
double prox_cell(double x, double tau, const WallTerm* walls, int nw, double lo, double hi) {
    double u;
    if (nw == 0) {
        u = x;
    } else if (nw == 1) {
        double shifted = x - tau * walls[0].weight;
        double raised = x + tau * walls[0].weight;
        if (shifted > walls[0].point)
            u = shifted;
        else if (raised < walls[0].point)
            u = raised;
        else
            u = walls[0].point;
    } else {
        double p0 = walls[0].point, w0 = walls[0].weight;
        double p1 = walls[1].point, w1 = walls[1].weight;
        if (p0 > p1) {
            std::swap(p0, p1);
            std::swap(w0, w1);
        }
        double left = x + tau * (w0 + w1);
        double mid = x - tau * (w0 - w1);
        double right = x - tau * (w0 + w1);
        if (left < p0)
            u = left;
        else if (right > p1)
            u = right;
        else if (mid >= p0 && mid <= p1)
            u = mid;
        else if (mid < p0)
            u = p0;
        else
            u = p1;
    }
    return clampd(u, lo, hi);
}

double wall_cost(double u, const WallTerm* walls, int nw) {
    double c = 0.0;
    for (int k = 0; k < nw; ++k) c += walls[k].weight * std::abs(u - walls[k].point);
    return c;
}

// sup over u in [lo,hi] of v*u - wall_cost(u): attained at an endpoint or a kink.
double conjugate_cell(double v, const WallTerm* walls, int nw, double lo, double hi) {
    double best = std::max(v * lo - wall_cost(lo, walls, nw), v * hi - wall_cost(hi, walls, nw));
    for (int k = 0; k < nw; ++k) {
        double p = clampd(walls[k].point, lo, hi);
        best = std::max(best, v * p - wall_cost(p, walls, nw));
    }
    return best;
}

}  // namespace

SolveResult minimize_G(const Anisotropy& norm, const GridFunction& boundary,
                       const SolverParams& params) {
    if (norm.kind() != NormKind::Cylindrical)
        throw std::invalid_argument("the solver handles cylindrical norms over a planar base");
    const Lattice& L = boundary.lattice();
    const int n = L.n();
    if (norm.dim() != n + 1)
        throw DimensionError("solver norm must live on the graph space, one dimension up");
    if (params.max_iters < 1) throw std::invalid_argument("max_iters must be positive");
    if (!(params.gap_tol > 0.0)) throw std::invalid_argument("gap_tol must be positive");

    const Anisotropy& base = norm.base();
    const int nx = L.nx(), ny = L.ny();
    const long N = L.cells();
    const double h = L.h;
    const double cellm = n == 2 ? h * h : h;
    const double facem = n == 2 ? h : 1.0;
    const BaseBall ball(base, cellm);

    const double lo = boundary.collar_min();
    const double hi = boundary.collar_max();

    // Collar coupling on the -x (and -y) walls; +x/+y collars are read by the
    // forward differences themselves.
    std::vector<double> wallw(n);
    for (int ax = 0; ax < n; ++ax) {
        Vec e = Vec::Zero(n + 1);
        e(ax) = 1.0;
        wallw[ax] = facem * norm.eval_dual(e);
    }
    auto cell_id = [nx](int i, int j) { return static_cast<long>(j) * nx + i; };
    std::vector<WallTerm> wall_store;
    std::vector<int> wall_off(N + 1, 0);
    {
        std::vector<std::vector<WallTerm>> per_cell(N);
        for (int j = 0; j < ny; ++j)
            per_cell[cell_id(0, j)].push_back({wallw[0], boundary.get(-1, j)});
        if (n == 2)
            for (int i = 0; i < nx; ++i)
                per_cell[cell_id(i, 0)].push_back({wallw[1], boundary.get(i, -1)});
        for (long c = 0; c < N; ++c) {
            wall_off[c + 1] = wall_off[c] + static_cast<int>(per_cell[c].size());
            for (const WallTerm& t : per_cell[c]) wall_store.push_back(t);
        }
    }

    // Dirichlet offsets of the forward differences: cells on the +x/+y edges
    // read the collar there.
    std::vector<double> bx(N, 0.0), by(N, 0.0);
    for (int j = 0; j < ny; ++j) bx[cell_id(nx - 1, j)] = boundary.get(nx, j) / h;
    if (n == 2)
        for (int i = 0; i < nx; ++i) by[cell_id(i, ny - 1)] = boundary.get(i, ny) / h;

    std::vector<double> u(N), ubar(N), zx(N, 0.0), zy(N, 0.0);
    {
        SplitMix64 rng(params.seed);
        double mid = 0.5 * (lo + hi), range = hi - lo;
        for (long c = 0; c < N; ++c)
            u[c] = clampd(mid + 0.01 * range * rng.uniform(-1.0, 1.0), lo, hi);
        ubar = u;
    }

    // Step sizes keep tau*sigma below 1/||A||^2 but split asymmetrically: the
    // dual lives in a ball of radius h^n while the primal spans the collar
    // range, so symmetric steps crawl.
    const double opnorm = 2.0 * std::sqrt(static_cast<double>(n)) / h;
    const double balance =
        std::max(hi - lo, h) / (2.0 * cellm * std::sqrt(static_cast<double>(n)));
    const double tau = 0.99 * balance / opnorm;
    const double sigma = 0.99 / (balance * opnorm);
    const double gap_target = params.gap_tol * L.measure();

    auto forward = [&](const std::vector<double>& w, long c, int i, int j, double& dx, double& dy) {
        dx = (i + 1 < nx ? w[cell_id(i + 1, j)] - w[c] : -w[c]) / h + bx[c];
        dy = 0.0;
        if (n == 2) dy = (j + 1 < ny ? w[cell_id(i, j + 1)] - w[c] : -w[c]) / h + by[c];
    };

    auto primal_value = [&](const std::vector<double>& w) {
        double p = 0.0;
        Vec v(n);
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                long c = cell_id(i, j);
                double dx, dy;
                forward(w, c, i, j, dx, dy);
                v(0) = dx;
                if (n == 2) v(1) = dy;
                p += cellm * base.eval_dual(v);
                p += wall_cost(w[c], wall_store.data() + wall_off[c], wall_off[c + 1] - wall_off[c]);
            }
        return p;
    };

    auto adjoint = [&](long c, int i, int j) {
        double g = -zx[c] / h;
        if (i > 0) g += zx[cell_id(i - 1, j)] / h;
        if (n == 2) {
            g -= zy[c] / h;
            if (j > 0) g += zy[cell_id(i, j - 1)] / h;
        }
        return g;
    };

    auto duality_gap = [&]() {
        double p = primal_value(u);
        double d = 0.0;
        for (long c = 0; c < N; ++c) {
            d += zx[c] * bx[c];
            if (n == 2) d += zy[c] * by[c];
        }
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                long c = cell_id(i, j);
                d -= conjugate_cell(-adjoint(c, i, j), wall_store.data() + wall_off[c],
                                    wall_off[c + 1] - wall_off[c], lo, hi);
            }
        return p - d;
    };

    double gap = std::numeric_limits<double>::infinity();
    int iters = 0;
    bool converged = false;
    Vec zc(n);
    while (iters < params.max_iters) {
        ++iters;
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                long c = cell_id(i, j);
                double dx, dy;
                forward(ubar, c, i, j, dx, dy);
                zc(0) = zx[c] + sigma * dx;
                if (n == 2) zc(1) = zy[c] + sigma * dy;
                ball.project(zc);
                zx[c] = zc(0);
                if (n == 2) zy[c] = zc(1);
            }
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                long c = cell_id(i, j);
                double next = prox_cell(u[c] - tau * adjoint(c, i, j), tau,
                                        wall_store.data() + wall_off[c],
                                        wall_off[c + 1] - wall_off[c], lo, hi);
                ubar[c] = 2.0 * next - u[c];
                u[c] = next;
            }
        if (iters % 32 == 0 || iters == params.max_iters) {
            gap = duality_gap();
            if (gap <= gap_target) {
                converged = true;
                break;
            }
        }
    }
    if (!converged) {
        gap = duality_gap();
        if (gap > gap_target)
            throw SolverError("primal-dual iteration missed the gap target: last gap " +
                                  std::to_string(gap) + " after " + std::to_string(iters) +
                                  " iterations",
                              gap, iters);
    }

    GridFunction out = boundary;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) out.set(i, j, u[cell_id(i, j)]);
    double wall_total = 0.0;
    for (long c = 0; c < N; ++c)
        wall_total += wall_cost(u[c], wall_store.data() + wall_off[c], wall_off[c + 1] - wall_off[c]);
    double energy = discrete_energy(out, norm);
    return SolveResult{std::move(out), energy, energy + wall_total, gap, iters};
}

double coupled_objective(const GridFunction& u, const Anisotropy& norm) {
    const Lattice& L = u.lattice();
    const int n = L.n();
    double total = discrete_energy(u, norm);
    const double facem = n == 2 ? L.h : 1.0;
    for (int ax = 0; ax < n; ++ax) {
        Vec e = Vec::Zero(n + 1);
        e(ax) = 1.0;
        const double w = facem * norm.eval_dual(e);
        if (ax == 0) {
            for (int j = 0; j < L.ny(); ++j) total += w * std::abs(u.get(0, j) - u.get(-1, j));
        } else {
            for (int i = 0; i < L.nx(); ++i) total += w * std::abs(u.get(i, 0) - u.get(i, -1));
        }
    }
    return total;
}

RelaxedSetResult minimize_relaxed_set(const Anisotropy& norm, const GridSet& trace,
                                      const SolverParams& params) {
    const Lattice& L = trace.lattice();
    const int n = L.n();
    if (norm.dim() != n)
        throw DimensionError("set relaxation needs a norm on the set's ambient space");
    if (params.max_iters < 1) throw std::invalid_argument("max_iters must be positive");
    if (!(params.gap_tol > 0.0)) throw std::invalid_argument("gap_tol must be positive");

    const int nx = L.nx(), ny = L.ny();
    const long N = L.cells();
    const double facem = n == 2 ? L.h : 1.0;
    auto cell_id = [nx](int i, int j) { return static_cast<long>(j) * nx + i; };

    std::array<double, 2> axw = {0.0, 0.0};
    for (int ax = 0; ax < n; ++ax) {
        Vec e = Vec::Zero(n);
        e(ax) = 1.0;
        axw[ax] = facem * norm.eval_dual(e);
    }

    // One entry per face with at least one interior endpoint; ca < 0 marks a
    // collar endpoint folded into the offset.
    struct Face {
        long ca = -1, cb = -1;
        double offset = 0.0;
        double weight = 0.0;
    };
    std::vector<Face> faces;
    auto add_face = [&](int ia, int ja, int ib, int jb, int ax) {
        bool a_int = trace.interior_index(ia, ja);
        bool b_int = trace.interior_index(ib, jb);
        if (!a_int && !b_int) return;
        Face f;
        f.weight = axw[ax];
        if (a_int)
            f.ca = cell_id(ia, ja);
        else
            f.offset -= trace.get(ia, ja) ? 1.0 : 0.0;
        if (b_int)
            f.cb = cell_id(ib, jb);
        else
            f.offset += trace.get(ib, jb) ? 1.0 : 0.0;
        faces.push_back(f);
    };
    for (int j = 0; j < ny; ++j)
        for (int i = -1; i < nx; ++i) add_face(i, j, i + 1, j, 0);
    if (n == 2)
        for (int i = 0; i < nx; ++i)
            for (int j = -1; j < ny; ++j) add_face(i, j, i, j + 1, 1);

    std::vector<double> u(N), ubar(N), z(faces.size(), 0.0);
    {
        SplitMix64 rng(params.seed);
        for (long c = 0; c < N; ++c) u[c] = clampd(0.5 + 0.01 * rng.uniform(-1.0, 1.0), 0.0, 1.0);
        ubar = u;
    }
    const double tau = 0.99 / (2.0 * std::sqrt(static_cast<double>(n)));
    const double sigma = tau;
    const double gap_target = params.gap_tol * L.measure();

    auto face_value = [&](const Face& f, const std::vector<double>& w) {
        double v = f.offset;
        if (f.ca >= 0) v -= w[f.ca];
        if (f.cb >= 0) v += w[f.cb];
        return v;
    };
    auto primal_value = [&](const std::vector<double>& w) {
        double p = 0.0;
        for (const Face& f : faces) p += f.weight * std::abs(face_value(f, w));
        return p;
    };
    auto adjoint_into = [&](std::vector<double>& g) {
        std::fill(g.begin(), g.end(), 0.0);
        for (size_t k = 0; k < faces.size(); ++k) {
            const Face& f = faces[k];
            if (f.ca >= 0) g[f.ca] -= z[k];
            if (f.cb >= 0) g[f.cb] += z[k];
        }
    };
    std::vector<double> grad(N);
    auto duality_gap = [&]() {
        double p = primal_value(u);
        double d = 0.0;
        for (size_t k = 0; k < faces.size(); ++k) d += z[k] * faces[k].offset;
        adjoint_into(grad);
        for (long c = 0; c < N; ++c) d -= std::max(0.0, -grad[c]);
        return p - d;
    };

    double gap = std::numeric_limits<double>::infinity();
    int iters = 0;
    bool converged = false;
    while (iters < params.max_iters) {
        ++iters;
        for (size_t k = 0; k < faces.size(); ++k) {
            const Face& f = faces[k];
            double v = z[k] + sigma * face_value(f, ubar);
            z[k] = clampd(v, -f.weight, f.weight);
        }
        adjoint_into(grad);
        for (long c = 0; c < N; ++c) {
            double next = clampd(u[c] - tau * grad[c], 0.0, 1.0);
            ubar[c] = 2.0 * next - u[c];
            u[c] = next;
        }
        if (iters % 32 == 0 || iters == params.max_iters) {
            gap = duality_gap();
            if (gap <= gap_target) {
                converged = true;
                break;
            }
        }
    }
    if (!converged) {
        gap = duality_gap();
        if (gap > gap_target)
            throw SolverError("set relaxation missed the gap target: last gap " +
                                  std::to_string(gap) + " after " + std::to_string(iters) +
                                  " iterations",
                              gap, iters);
    }

    GridSet out = trace;
    bool ties = false;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            double v = u[cell_id(i, j)];
            if (std::abs(v - 0.5) <= 1e-9) ties = true;
            out.set(i, j, v > 0.5 - 1e-9);
        }
    double relaxed_energy = primal_value(u);
    double set_energy = grid_set_perimeter(out, norm);
    return RelaxedSetResult{std::move(out), std::move(u), relaxed_energy,
                            set_energy,     ties,         gap,
                            iters};
}

}  // namespace anisoperim
