#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "anisoperim/core.hpp"

namespace anisoperim {

// Positively 1-homogeneous combination rule used to compose a horizontal norm
// with the vertical coordinate: Phi(xh, xm) = omega(phi(xh), |xm|).
enum class OmegaKind { Max, Sum, PComb };

struct OmegaSpec {
    OmegaKind kind = OmegaKind::Max;
    double p = 2.0;  // PComb exponent, in [1, inf)

    static OmegaSpec max() { return {OmegaKind::Max, 0.0}; }
    static OmegaSpec sum() { return {OmegaKind::Sum, 0.0}; }
    static OmegaSpec pcomb(double p);

    double eval(double s1, double s2) const;       // s1, s2 >= 0
    double dual_eval(double s1, double s2) const;  // sup over the unit sublevel set
    OmegaSpec dual() const;
    // Maximizer of a*s1 + b*s2 over {omega(s1,s2) <= 1}, tie-broken toward zeros.
    std::pair<double, double> support_argmax(double a, double b) const;
    std::string describe() const;
};

// Free-standing dual composition rule, exposed for direct checks.
double omega_dual(const OmegaSpec& omega, double s1_star, double s2_star);

enum class NormKind { Euclidean, PNorm, Polytope, Cylindrical, Conical, Omega, Quadratic };

enum class CheckMethod { Exact, Sampled };

// Outcome of a structure predicate. A "fails" verdict always carries a witness
// that violates the defining inequality by more than the tolerance; a sampled
// "holds" is evidence, not a proof.
struct PredicateReport {
    bool holds = false;
    CheckMethod method = CheckMethod::Sampled;
    int n_samples = 0;
    uint64_t seed = 0;
    double tol = 0.0;
    double max_violation = 0.0;
    std::vector<Vec> witness;
    std::string detail;
};

struct SamplerParams {
    int directions = 4096;
    int offsets = 33;
    double offset_lo = -2.0;
    double offset_hi = 2.0;
    uint64_t seed = 0;
    double tol = 1e-9;
};

// A norm on R^m given by one of a fixed set of closed-form kinds. Duals are
// exact in every case; there is no sampled fallback for eval_dual.
class Anisotropy {
public:
    static Anisotropy euclidean(int dim);
    static Anisotropy pnorm(int dim, double p);  // p in [1, inf], inf = max norm
    static Anisotropy polytope(std::vector<Vec> vertices);
    static Anisotropy cylindrical(const Anisotropy& base);
    static Anisotropy conical(const Anisotropy& base);
    static Anisotropy omega_composed(const OmegaSpec& omega, const Anisotropy& base);
    static Anisotropy quadratic(const Mat& form);  // sqrt(x^T A x), A symmetric positive definite

    int dim() const { return dim_; }
    NormKind kind() const { return kind_; }
    std::string describe() const;

    double eval(const Vec& x) const;
    double eval_dual(const Vec& xstar) const;
    Anisotropy dual() const;
    // zeta on the unit sphere of this norm with xstar·zeta = eval_dual(xstar).
    // Ties resolve to the barycenter of the maximizing face (zeros where possible).
    Vec dual_argmax(const Vec& xstar) const;

    // Norm of the horizontal slice xm = 0, as a norm on R^{m-1}.
    Anisotropy restriction() const;
    // Gauge of the horizontal projection of the unit ball; coincides with
    // restriction() exactly when the generalized-graph inequality holds.
    Anisotropy projection_base() const;

    PredicateReport check_generalized_graph(const SamplerParams& params = {}) const;
    PredicateReport check_partial_monotonicity(const SamplerParams& params = {}) const;

    // eval_dual(dir,0) minus the dual of the restriction at dir; >= 0 up to rounding.
    double restriction_gap(const Vec& horizontal_dir) const;
    // Supremum of the gap over horizontal unit directions. Exact for polytopes
    // (candidate directions include every facet functional and projected vertex).
    double restriction_gap_sup(const SamplerParams& params = {}) const;

    // Kind-specific accessors; throw on the wrong kind.
    const std::vector<Vec>& vertices() const;
    const std::vector<Vec>& facet_functionals() const;
    const Anisotropy& base() const;
    const OmegaSpec& omega() const;
    const Mat& quadratic_form() const;

    double p_exponent() const { return p_; }

private:
    Anisotropy() = default;

    NormKind kind_ = NormKind::Euclidean;
    int dim_ = 0;
    double p_ = 2.0;                           // PNorm
    std::vector<Vec> vertices_;                // Polytope
    std::vector<Vec> facet_functionals_;       // Polytope: B = {x : w·x <= 1 for all w}
    std::shared_ptr<const Anisotropy> base_;   // Cylindrical / Conical / Omega
    OmegaSpec omega_;                          // Omega
    Mat form_;                                 // Quadratic
    Mat form_inv_;                             // Quadratic

    double eval_hv(double h, double v) const;  // composed kinds: value from (phi(xh), |xm|)
};

// Vertices of the convex polytope {x : w·x <= 1 for all w in functionals};
// brute-force enumeration, intended for small systems (dim <= 3).
std::vector<Vec> polytope_vertices_from_functionals(const std::vector<Vec>& functionals);

}  // namespace anisoperim
