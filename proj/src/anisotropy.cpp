#include "anisoperim/anisotropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "anisoperim/rng.hpp"

namespace anisoperim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double conjugate_exponent(double p) {
    if (p == 1.0) return kInf;
    if (std::isinf(p)) return 1.0;
    return p / (p - 1.0);
}

// Visits every k-subset of {0..n-1}; f receives the index vector.
template <typename F>
void for_each_subset(int n, int k, F&& f) {
    if (k <= 0 || k > n) return;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        f(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

bool near_vec(const Vec& a, const Vec& b, double tol) {
    return (a - b).lpNorm<Eigen::Infinity>() <= tol;
}

void dedupe_vecs(std::vector<Vec>& vs, double tol) {
    std::vector<Vec> out;
    for (const auto& v : vs) {
        bool dup = false;
        for (const auto& u : out)
            if (near_vec(u, v, tol)) { dup = true; break; }
        if (!dup) out.push_back(v);
    }
    vs = std::move(out);
}

// Outward functionals w with conv(vertices) = {x : w·x <= 1}. Requires a
// symmetric, full-dimensional vertex set; every supporting hyperplane through
// an affinely independent d-subset of vertices is kept.
std::vector<Vec> enumerate_facet_functionals(const std::vector<Vec>& verts) {
    const int d = static_cast<int>(verts[0].size());
    const int n = static_cast<int>(verts.size());
    double scale = 0.0;
    for (const auto& v : verts) scale = std::max(scale, v.lpNorm<Eigen::Infinity>());
    const double tol = 1e-9 * (1.0 + scale);

    std::vector<Vec> ws;
    if (d == 1) {
        double a = 0.0;
        for (const auto& v : verts) a = std::max(a, std::abs(v[0]));
        if (a <= 0.0) throw std::invalid_argument("polytope: degenerate vertex set");
        ws.push_back(make_vec({1.0 / a}));
        ws.push_back(make_vec({-1.0 / a}));
        return ws;
    }

    for_each_subset(n, d, [&](const std::vector<int>& idx) {
        Mat diffs(d - 1, d);
        for (int i = 1; i < d; ++i)
            diffs.row(i - 1) = (verts[idx[i]] - verts[idx[0]]).transpose();
        Eigen::FullPivLU<Mat> lu(diffs);
        lu.setThreshold(1e-9);
        if (lu.dimensionOfKernel() != 1) return;
        Vec nu = lu.kernel().col(0);
        double nn = nu.norm();
        if (nn < 1e-12) return;
        nu /= nn;
        double h = nu.dot(verts[idx[0]]);
        if (h < 0) { nu = -nu; h = -h; }
        if (h <= tol) return;  // plane through the origin cannot support an origin-interior hull
        for (const auto& v : verts)
            if (nu.dot(v) > h + tol) return;  // not supporting
        ws.push_back(nu / h);
    });
    dedupe_vecs(ws, 1e-8 / (1.0 + scale));
    if (ws.empty()) throw std::invalid_argument("polytope: no supporting facets found");
    return ws;
}

}  // namespace

OmegaSpec OmegaSpec::pcomb(double pp) {
    if (!(pp >= 1.0) || std::isinf(pp))
        throw std::invalid_argument("omega p-combination: exponent must be finite and >= 1");
    return {OmegaKind::PComb, pp};
}

double OmegaSpec::eval(double s1, double s2) const {
    switch (kind) {
        case OmegaKind::Max: return std::max(s1, s2);
        case OmegaKind::Sum: return s1 + s2;
        case OmegaKind::PComb:
            if (p == 1.0) return s1 + s2;
            return std::pow(std::pow(s1, p) + std::pow(s2, p), 1.0 / p);
    }
    return 0.0;
}

double OmegaSpec::dual_eval(double s1, double s2) const { return dual().eval(s1, s2); }

OmegaSpec OmegaSpec::dual() const {
    switch (kind) {
        case OmegaKind::Max: return sum();
        case OmegaKind::Sum: return max();
        case OmegaKind::PComb: {
            double q = conjugate_exponent(p);
            if (std::isinf(q)) return max();
            return pcomb(q);
        }
    }
    return max();
}

std::pair<double, double> OmegaSpec::support_argmax(double a, double b) const {
    switch (kind) {
        case OmegaKind::Max:
            return {a > 0 ? 1.0 : 0.0, b > 0 ? 1.0 : 0.0};
        case OmegaKind::Sum:
            if (std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a))) return {0.5, 0.5};
            return a > b ? std::make_pair(1.0, 0.0) : std::make_pair(0.0, 1.0);
        case OmegaKind::PComb: {
            if (p == 1.0) return sum().support_argmax(a, b);
            if (a <= 0 && b <= 0) return {0.0, 0.0};
            double q = conjugate_exponent(p);
            double nq = std::pow(std::pow(std::max(a, 0.0), q) + std::pow(std::max(b, 0.0), q), 1.0 / q);
            double s1 = std::pow(std::max(a, 0.0) / nq, q - 1.0);
            double s2 = std::pow(std::max(b, 0.0) / nq, q - 1.0);
            return {s1, s2};
        }
    }
    return {0.0, 0.0};
}

std::string OmegaSpec::describe() const {
    switch (kind) {
        case OmegaKind::Max: return "max";
        case OmegaKind::Sum: return "sum";
        case OmegaKind::PComb: return "p-combination(p=" + std::to_string(p) + ")";
    }
    return "?";
}

double omega_dual(const OmegaSpec& omega, double s1_star, double s2_star) {
    if (s1_star < 0 || s2_star < 0)
        throw std::invalid_argument("omega_dual: arguments must be nonnegative");
    return omega.dual_eval(s1_star, s2_star);
}

Anisotropy Anisotropy::euclidean(int dim) {
    if (dim < 1) throw std::invalid_argument("euclidean: dimension must be positive");
    Anisotropy a;
    a.kind_ = NormKind::Euclidean;
    a.dim_ = dim;
    return a;
}

Anisotropy Anisotropy::pnorm(int dim, double p) {
    if (dim < 1) throw std::invalid_argument("pnorm: dimension must be positive");
    if (!(p >= 1.0)) throw std::invalid_argument("pnorm: exponent must be >= 1");
    Anisotropy a;
    a.kind_ = NormKind::PNorm;
    a.dim_ = dim;
    a.p_ = p;
    return a;
}

Anisotropy Anisotropy::polytope(std::vector<Vec> vertices) {
    if (vertices.empty()) throw std::invalid_argument("polytope: empty vertex list");
    const int d = static_cast<int>(vertices[0].size());
    if (d < 1 || d > 4) throw std::invalid_argument("polytope: dimension must be between 1 and 4");
    if (vertices.size() > 64) throw std::invalid_argument("polytope: vertex list too large");
    double scale = 0.0;
    for (const auto& v : vertices) {
        if (static_cast<int>(v.size()) != d)
            throw std::invalid_argument("polytope: inconsistent vertex dimensions");
        require_finite(v, "polytope vertex");
        scale = std::max(scale, v.lpNorm<Eigen::Infinity>());
    }
    const double tol = 1e-9 * (1.0 + scale);
    for (const auto& v : vertices) {
        bool has_neg = false;
        for (const auto& u : vertices)
            if (near_vec(u, Vec(-v), tol)) { has_neg = true; break; }
        if (!has_neg)
            throw std::invalid_argument("polytope: vertex list must be symmetric about the origin");
    }
    Eigen::MatrixXd vm(static_cast<int>(vertices.size()), d);
    for (size_t i = 0; i < vertices.size(); ++i) vm.row(static_cast<int>(i)) = vertices[i].transpose();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(vm);
    lu.setThreshold(1e-9);
    if (lu.rank() < d)
        throw std::invalid_argument("polytope: vertex hull has empty interior (not full-dimensional)");

    Anisotropy a;
    a.kind_ = NormKind::Polytope;
    a.dim_ = d;
    a.facet_functionals_ = enumerate_facet_functionals(vertices);
    a.vertices_ = std::move(vertices);
    return a;
}

Anisotropy Anisotropy::cylindrical(const Anisotropy& b) {
    Anisotropy a;
    a.kind_ = NormKind::Cylindrical;
    a.dim_ = b.dim() + 1;
    a.base_ = std::make_shared<Anisotropy>(b);
    return a;
}

Anisotropy Anisotropy::conical(const Anisotropy& b) {
    Anisotropy a;
    a.kind_ = NormKind::Conical;
    a.dim_ = b.dim() + 1;
    a.base_ = std::make_shared<Anisotropy>(b);
    return a;
}

Anisotropy Anisotropy::omega_composed(const OmegaSpec& omega, const Anisotropy& b) {
    Anisotropy a;
    a.kind_ = NormKind::Omega;
    a.dim_ = b.dim() + 1;
    a.base_ = std::make_shared<Anisotropy>(b);
    a.omega_ = omega;
    return a;
}

Anisotropy Anisotropy::quadratic(const Mat& form) {
    const int d = static_cast<int>(form.rows());
    if (d < 1 || form.cols() != form.rows())
        throw std::invalid_argument("quadratic: form must be square");
    if ((form - form.transpose()).lpNorm<Eigen::Infinity>() > 1e-12 * (1.0 + form.lpNorm<Eigen::Infinity>()))
        throw std::invalid_argument("quadratic: form must be symmetric");
    Eigen::SelfAdjointEigenSolver<Mat> es(form);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw std::invalid_argument("quadratic: form must be positive definite");
    Anisotropy a;
    a.kind_ = NormKind::Quadratic;
    a.dim_ = d;
    a.form_ = form;
    a.form_inv_ = form.inverse();
    return a;
}

std::string Anisotropy::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case NormKind::Euclidean: os << "euclidean"; break;
        case NormKind::PNorm:
            if (std::isinf(p_)) os << "max-norm";
            else os << "pnorm(" << p_ << ")";
            break;
        case NormKind::Polytope: os << "polytope[" << vertices_.size() << " vertices]"; break;
        case NormKind::Cylindrical: os << "cylindrical over " << base_->describe(); break;
        case NormKind::Conical: os << "conical over " << base_->describe(); break;
        case NormKind::Omega:
            os << "omega(" << omega_.describe() << ") over " << base_->describe();
            break;
        case NormKind::Quadratic: os << "quadratic"; break;
    }
    os << " on R^" << dim_;
    return os.str();
}

double Anisotropy::eval_hv(double h, double v) const {
    switch (kind_) {
        case NormKind::Cylindrical: return std::max(h, v);
        case NormKind::Conical: return h + v;
        case NormKind::Omega: return omega_.eval(h, v);
        default: throw std::logic_error("eval_hv on non-composed kind");
    }
}

double Anisotropy::eval(const Vec& x) const {
    require_dim(x, dim_, "eval");
    require_finite(x, "eval");
    switch (kind_) {
        case NormKind::Euclidean: return x.norm();
        case NormKind::PNorm: {
            if (std::isinf(p_)) return x.lpNorm<Eigen::Infinity>();
            if (p_ == 1.0) return x.lpNorm<1>();
            if (p_ == 2.0) return x.norm();
            double s = 0.0;
            for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]), p_);
            return std::pow(s, 1.0 / p_);
        }
        case NormKind::Polytope: {
            double m = 0.0;
            for (const auto& w : facet_functionals_) m = std::max(m, w.dot(x));
            return m;
        }
        case NormKind::Cylindrical:
        case NormKind::Conical:
        case NormKind::Omega: {
            Vec xh = x.head(dim_ - 1);
            return eval_hv(base_->eval(xh), std::abs(x[dim_ - 1]));
        }
        case NormKind::Quadratic:
            return std::sqrt(x.dot(form_ * x));
    }
    return 0.0;
}

double Anisotropy::eval_dual(const Vec& xstar) const {
    require_dim(xstar, dim_, "eval_dual");
    require_finite(xstar, "eval_dual");
    switch (kind_) {
        case NormKind::Euclidean: return xstar.norm();
        case NormKind::PNorm: {
            double q = conjugate_exponent(p_);
            if (std::isinf(q)) return xstar.lpNorm<Eigen::Infinity>();
            if (q == 1.0) return xstar.lpNorm<1>();
            if (q == 2.0) return xstar.norm();
            double s = 0.0;
            for (Eigen::Index i = 0; i < xstar.size(); ++i) s += std::pow(std::abs(xstar[i]), q);
            return std::pow(s, 1.0 / q);
        }
        case NormKind::Polytope: {
            double m = 0.0;
            for (const auto& v : vertices_) m = std::max(m, v.dot(xstar));
            return m;
        }
        case NormKind::Cylindrical: {
            // dual of max{phi(xh), |xm|} is phi^o(xh*) + |xm*|
            Vec xh = xstar.head(dim_ - 1);
            return base_->eval_dual(xh) + std::abs(xstar[dim_ - 1]);
        }
        case NormKind::Conical: {
            Vec xh = xstar.head(dim_ - 1);
            return std::max(base_->eval_dual(xh), std::abs(xstar[dim_ - 1]));
        }
        case NormKind::Omega: {
            Vec xh = xstar.head(dim_ - 1);
            return omega_.dual_eval(base_->eval_dual(xh), std::abs(xstar[dim_ - 1]));
        }
        case NormKind::Quadratic:
            return std::sqrt(xstar.dot(form_inv_ * xstar));
    }
    return 0.0;
}

Anisotropy Anisotropy::dual() const {
    switch (kind_) {
        case NormKind::Euclidean: return *this;
        case NormKind::PNorm: return pnorm(dim_, conjugate_exponent(p_));
        case NormKind::Polytope: return polytope(facet_functionals_);
        case NormKind::Cylindrical: return conical(base_->dual());
        case NormKind::Conical: return cylindrical(base_->dual());
        case NormKind::Omega: return omega_composed(omega_.dual(), base_->dual());
        case NormKind::Quadratic: return quadratic(form_inv_);
    }
    throw std::logic_error("dual: unknown kind");
}

Vec Anisotropy::dual_argmax(const Vec& xstar) const {
    require_dim(xstar, dim_, "dual_argmax");
    require_finite(xstar, "dual_argmax");
    if (xstar.lpNorm<Eigen::Infinity>() == 0.0)
        throw std::invalid_argument("dual_argmax: direction must be nonzero");
    switch (kind_) {
        case NormKind::Euclidean: return xstar / xstar.norm();
        case NormKind::PNorm: {
            Vec z = Vec::Zero(dim_);
            if (std::isinf(p_)) {
                for (int i = 0; i < dim_; ++i)
                    z[i] = xstar[i] > 0 ? 1.0 : (xstar[i] < 0 ? -1.0 : 0.0);
                return z;
            }
            if (p_ == 1.0) {
                double m = xstar.lpNorm<Eigen::Infinity>();
                int count = 0;
                for (int i = 0; i < dim_; ++i)
                    if (std::abs(xstar[i]) > m * (1 - 1e-12)) ++count;
                for (int i = 0; i < dim_; ++i)
                    if (std::abs(xstar[i]) > m * (1 - 1e-12))
                        z[i] = (xstar[i] > 0 ? 1.0 : -1.0) / count;
                return z;
            }
            double q = conjugate_exponent(p_);
            double nq = eval_dual(xstar);
            for (int i = 0; i < dim_; ++i) {
                double t = std::pow(std::abs(xstar[i]) / nq, q - 1.0);
                z[i] = xstar[i] >= 0 ? t : -t;
            }
            return z;
        }
        case NormKind::Polytope: {
            double best = -kInf;
            for (const auto& v : vertices_) best = std::max(best, v.dot(xstar));
            double tol = 1e-9 * (1.0 + std::abs(best));
            Vec acc = Vec::Zero(dim_);
            int count = 0;
            for (const auto& v : vertices_)
                if (v.dot(xstar) >= best - tol) { acc += v; ++count; }
            return acc / count;
        }
        case NormKind::Cylindrical: {
            Vec xh = xstar.head(dim_ - 1);
            Vec z(dim_);
            if (xh.lpNorm<Eigen::Infinity>() == 0.0)
                z.head(dim_ - 1).setZero();
            else
                z.head(dim_ - 1) = base_->dual_argmax(xh);
            double t = xstar[dim_ - 1];
            z[dim_ - 1] = t > 0 ? 1.0 : (t < 0 ? -1.0 : 0.0);
            return z;
        }
        case NormKind::Conical:
        case NormKind::Omega: {
            OmegaSpec om = kind_ == NormKind::Conical ? OmegaSpec::sum() : omega_;
            Vec xh = xstar.head(dim_ - 1);
            double a = xh.lpNorm<Eigen::Infinity>() == 0.0 ? 0.0 : base_->eval_dual(xh);
            double t = xstar[dim_ - 1];
            auto [s1, s2] = om.support_argmax(a, std::abs(t));
            Vec z(dim_);
            if (s1 > 0 && a > 0)
                z.head(dim_ - 1) = s1 * base_->dual_argmax(xh);
            else
                z.head(dim_ - 1).setZero();
            z[dim_ - 1] = t > 0 ? s2 : (t < 0 ? -s2 : 0.0);
            return z;
        }
        case NormKind::Quadratic: {
            Vec y = form_inv_ * xstar;
            return y / std::sqrt(xstar.dot(y));
        }
    }
    throw std::logic_error("dual_argmax: unknown kind");
}

Anisotropy Anisotropy::restriction() const {
    if (dim_ < 2) throw std::invalid_argument("restriction: requires dimension >= 2");
    switch (kind_) {
        case NormKind::Euclidean: return euclidean(dim_ - 1);
        case NormKind::PNorm: return pnorm(dim_ - 1, p_);
        case NormKind::Cylindrical:
        case NormKind::Conical:
            return *base_;
        case NormKind::Omega: {
            // omega(s, 0) = s for every supported combination rule
            return *base_;
        }
        case NormKind::Quadratic:
            return quadratic(form_.topLeftCorner(dim_ - 1, dim_ - 1));
        case NormKind::Polytope: {
            std::vector<Vec> ws;
            for (const auto& w : facet_functionals_) {
                Vec wh = w.head(dim_ - 1);
                if (wh.lpNorm<Eigen::Infinity>() > 1e-12) ws.push_back(wh);
            }
            return polytope(polytope_vertices_from_functionals(ws));
        }
    }
    throw std::logic_error("restriction: unknown kind");
}

Anisotropy Anisotropy::projection_base() const {
    if (dim_ < 2) throw std::invalid_argument("projection_base: requires dimension >= 2");
    switch (kind_) {
        case NormKind::Euclidean:
        case NormKind::PNorm:
        case NormKind::Cylindrical:
        case NormKind::Conical:
        case NormKind::Omega:
            // vertically symmetric kinds: projection of the ball equals its slice
            return restriction();
        case NormKind::Quadratic: {
            int d = dim_ - 1;
            Mat a11 = form_.topLeftCorner(d, d);
            Vec a12 = form_.topRightCorner(d, 1);
            double a22 = form_(d, d);
            Mat schur = a11 - (a12 * a12.transpose()) / a22;
            return quadratic(schur);
        }
        case NormKind::Polytope: {
            std::vector<Vec> proj;
            for (const auto& v : vertices_) proj.push_back(v.head(dim_ - 1));
            double scale = 0.0;
            for (const auto& v : proj) scale = std::max(scale, v.lpNorm<Eigen::Infinity>());
            dedupe_vecs(proj, 1e-10 * (1.0 + scale));
            return polytope(proj);
        }
    }
    throw std::logic_error("projection_base: unknown kind");
}

std::vector<Vec> polytope_vertices_from_functionals(const std::vector<Vec>& functionals) {
    if (functionals.empty())
        throw std::invalid_argument("vertex enumeration: no functionals");
    const int d = static_cast<int>(functionals[0].size());
    double scale = 0.0;
    for (const auto& w : functionals) scale = std::max(scale, w.lpNorm<Eigen::Infinity>());
    if (scale <= 0.0) throw std::invalid_argument("vertex enumeration: all functionals vanish");
    const double tol = 1e-9 * (1.0 + 1.0 / scale);

    std::vector<Vec> verts;
    if (d == 1) {
        double wmax = 0.0;
        for (const auto& w : functionals) wmax = std::max(wmax, std::abs(w[0]));
        verts.push_back(make_vec({1.0 / wmax}));
        verts.push_back(make_vec({-1.0 / wmax}));
        return verts;
    }
    const int n = static_cast<int>(functionals.size());
    for_each_subset(n, d, [&](const std::vector<int>& idx) {
        Mat a(d, d);
        Vec rhs = Vec::Ones(d);
        for (int i = 0; i < d; ++i) a.row(i) = functionals[idx[i]].transpose();
        Eigen::FullPivLU<Mat> lu(a);
        lu.setThreshold(1e-9);
        if (lu.rank() < d) return;
        Vec x = lu.solve(rhs);
        for (const auto& w : functionals)
            if (w.dot(x) > 1.0 + tol) return;  // infeasible intersection point
        verts.push_back(x);
    });
    double vscale = 0.0;
    for (const auto& v : verts) vscale = std::max(vscale, v.lpNorm<Eigen::Infinity>());
    dedupe_vecs(verts, 1e-8 * (1.0 + vscale));
    if (verts.empty()) throw std::invalid_argument("vertex enumeration: empty polytope");
    return verts;
}

const std::vector<Vec>& Anisotropy::vertices() const {
    if (kind_ != NormKind::Polytope) throw std::logic_error("vertices: not a polytope norm");
    return vertices_;
}

const std::vector<Vec>& Anisotropy::facet_functionals() const {
    if (kind_ != NormKind::Polytope) throw std::logic_error("facet_functionals: not a polytope norm");
    return facet_functionals_;
}

const Anisotropy& Anisotropy::base() const {
    if (!base_) throw std::logic_error("base: not a composed norm");
    return *base_;
}

const OmegaSpec& Anisotropy::omega() const {
    if (kind_ != NormKind::Omega) throw std::logic_error("omega: not an omega-composed norm");
    return omega_;
}

const Mat& Anisotropy::quadratic_form() const {
    if (kind_ != NormKind::Quadratic) throw std::logic_error("quadratic_form: not a quadratic norm");
    return form_;
}

PredicateReport Anisotropy::check_generalized_graph(const SamplerParams& params) const {
    if (dim_ < 2)
        throw std::invalid_argument("check_generalized_graph: requires dimension >= 2");
    PredicateReport rep;
    rep.tol = params.tol;

    if (kind_ == NormKind::Polytope) {
        // Phi(.,0) is convex, so its maximum over the ball sits at a vertex:
        // checking Phi(vh, 0) <= Phi(v) at every listed vertex is exhaustive.
        rep.method = CheckMethod::Exact;
        rep.holds = true;
        for (const auto& v : vertices_) {
            Vec flat = v;
            flat[dim_ - 1] = 0.0;
            double viol = eval(flat) - eval(v);
            if (viol > rep.max_violation) {
                rep.max_violation = viol;
                if (viol > params.tol) {
                    rep.holds = false;
                    rep.witness = {v};
                }
            }
        }
        rep.detail = "vertex horizontal projections vs ball membership";
        return rep;
    }

    rep.method = CheckMethod::Sampled;
    rep.seed = params.seed;
    rep.holds = true;
    SplitMix64 rng(params.seed);
    int samples = 0;
    for (int i = 0; i < params.directions && rep.holds; ++i) {
        Vec dh = rng.sphere_dir(dim_ - 1);
        Vec flat(dim_);
        flat.head(dim_ - 1) = dh;
        flat[dim_ - 1] = 0.0;
        double base_val = eval(flat);
        for (int j = 0; j < params.offsets; ++j) {
            double t = params.offset_lo +
                       (params.offset_hi - params.offset_lo) * j / (params.offsets - 1);
            Vec x = flat;
            x[dim_ - 1] = t;
            double viol = base_val - eval(x);
            ++samples;
            if (viol > rep.max_violation) {
                rep.max_violation = viol;
                if (viol > params.tol) {
                    rep.holds = false;
                    rep.witness = {x};
                    break;
                }
            }
        }
    }
    rep.n_samples = samples;
    rep.detail = "sampled horizontal directions with vertical offsets";
    return rep;
}

PredicateReport Anisotropy::check_partial_monotonicity(const SamplerParams& params) const {
    if (dim_ < 2)
        throw std::invalid_argument("check_partial_monotonicity: requires dimension >= 2");
    PredicateReport rep;
    rep.tol = params.tol;

    if (kind_ == NormKind::Cylindrical || kind_ == NormKind::Conical || kind_ == NormKind::Omega) {
        // The combination rule is nondecreasing in both arguments on the
        // positive quadrant, which is exactly the defining property.
        rep.method = CheckMethod::Exact;
        rep.holds = true;
        rep.detail = "monotone combination of horizontal norm and vertical coordinate";
        return rep;
    }

    rep.method = CheckMethod::Sampled;
    rep.seed = params.seed;
    rep.holds = true;
    SplitMix64 rng(params.seed);
    const int m = dim_;
    int samples = 0;

    auto record = [&](const Vec& xi, const Vec& eta) {
        double viol = eval(xi) - eval(eta);
        ++samples;
        if (viol > rep.max_violation) {
            rep.max_violation = viol;
            if (viol > params.tol) {
                rep.holds = false;
                rep.witness = {xi, eta};
            }
        }
    };

    // Horizontal-vs-lifted pairs: catching a failure here also falsifies the
    // generalized-graph inequality.
    for (int i = 0; i < params.directions / 4 && rep.holds; ++i) {
        Vec dh = rng.sphere_dir(m - 1);
        for (int j = 0; j < params.offsets && rep.holds; ++j) {
            double t = params.offset_lo +
                       (params.offset_hi - params.offset_lo) * j / (params.offsets - 1);
            Vec xi(m), eta(m);
            xi.head(m - 1) = dh;
            xi[m - 1] = 0.0;
            eta.head(m - 1) = dh;
            eta[m - 1] = t;
            record(xi, eta);
        }
    }
    // General comparable pairs.
    for (int i = 0; i < params.directions && rep.holds; ++i) {
        Vec a = rng.sphere_dir(m - 1) * rng.uniform(0.25, 2.0);
        Vec b = rng.sphere_dir(m - 1) * rng.uniform(0.25, 2.0);
        double s = rng.uniform(params.offset_lo, params.offset_hi);
        double t = rng.uniform(params.offset_lo, params.offset_hi);
        Vec ah(m), bh(m);
        ah.head(m - 1) = a; ah[m - 1] = 0.0;
        bh.head(m - 1) = b; bh[m - 1] = 0.0;
        if (eval(ah) > eval(bh)) std::swap(a, b);
        if (std::abs(s) > std::abs(t)) std::swap(s, t);
        Vec xi(m), eta(m);
        xi.head(m - 1) = a; xi[m - 1] = s;
        eta.head(m - 1) = b; eta[m - 1] = t;
        record(xi, eta);
    }
    rep.n_samples = samples;
    rep.detail = "sampled comparable pairs";
    return rep;
}

double Anisotropy::restriction_gap(const Vec& horizontal_dir) const {
    if (dim_ < 2) throw std::invalid_argument("restriction_gap: requires dimension >= 2");
    require_dim(horizontal_dir, dim_ - 1, "restriction_gap");
    Vec lifted(dim_);
    lifted.head(dim_ - 1) = horizontal_dir;
    lifted[dim_ - 1] = 0.0;
    return eval_dual(lifted) - restriction().eval_dual(horizontal_dir);
}

double Anisotropy::restriction_gap_sup(const SamplerParams& params) const {
    if (dim_ < 2) throw std::invalid_argument("restriction_gap_sup: requires dimension >= 2");
    Anisotropy restr = restriction();
    auto gap_at = [&](const Vec& dir) {
        Vec lifted(dim_);
        lifted.head(dim_ - 1) = dir;
        lifted[dim_ - 1] = 0.0;
        return eval_dual(lifted) - restr.eval_dual(dir);
    };

    double sup = 0.0;
    std::vector<Vec> candidates;
    if (kind_ == NormKind::Polytope) {
        // Facet functionals expose any projected vertex escaping the slice, so
        // together with vertex projections this candidate set is conclusive.
        for (const auto& w : facet_functionals_) {
            Vec wh = w.head(dim_ - 1);
            if (wh.norm() > 1e-12) candidates.push_back(wh / wh.norm());
        }
        for (const auto& v : vertices_) {
            Vec vh = v.head(dim_ - 1);
            if (vh.norm() > 1e-12) candidates.push_back(vh / vh.norm());
        }
    }
    SplitMix64 rng(params.seed);
    for (int i = 0; i < params.directions; ++i) candidates.push_back(rng.sphere_dir(dim_ - 1));
    for (const auto& d : candidates) sup = std::max(sup, gap_at(d));
    return sup;
}

}  // namespace anisoperim
