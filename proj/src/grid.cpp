#include "anisoperim/grid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace anisoperim {

namespace {

void require_planar_base(const Anisotropy& norm) {
    switch (norm.kind()) {
        case NormKind::Cylindrical:
        case NormKind::Conical:
        case NormKind::Omega:
            return;
        default:
            throw std::invalid_argument(
                "discrete energy needs a norm split into a planar base and a vertical part");
    }
}

}  // namespace

double Lattice::measure() const {
    double m = static_cast<double>(cells());
    for (int ax = 0; ax < n(); ++ax) m *= h;
    return m;
}

Vec Lattice::center(int i, int j) const {
    Vec c = origin;
    c(0) += h * (i + 0.5);
    if (n() == 2) c(1) += h * (j + 0.5);
    return c;
}

Lattice make_lattice(std::vector<int> dims, double h, Vec origin) {
    if (dims.empty() || dims.size() > 2)
        throw DimensionError("lattice needs one or two interior dimensions");
    for (int d : dims)
        if (d < 1) throw std::invalid_argument("lattice dims must be positive");
    if (!(h > 0.0) || !std::isfinite(h))
        throw std::invalid_argument("lattice spacing must be positive and finite");
    require_dim(origin, static_cast<int>(dims.size()), "lattice origin");
    require_finite(origin, "lattice origin");
    Lattice lat;
    lat.dims = std::move(dims);
    lat.h = h;
    lat.origin = origin;
    return lat;
}

GridFunction::GridFunction(Lattice lat, double fill)
    : lat_(std::move(lat)), vals_(static_cast<size_t>(lat_.nx() + 2) * (lat_.ny() + 2), fill) {
    if (lat_.dims.empty()) throw std::invalid_argument("grid function needs a lattice");
}

long GridFunction::idx(int i, int j) const {
    if (i < -1 || i > lat_.nx() || j < -1 || j > lat_.ny())
        throw std::out_of_range("grid index outside the lattice and its collar");
    if (lat_.n() == 1 && j != 0)
        throw std::out_of_range("one-dimensional lattice has no second index");
    return static_cast<long>(j + 1) * (lat_.nx() + 2) + (i + 1);
}

bool GridFunction::interior_index(int i, int j) const {
    if (lat_.n() == 1) return i >= 0 && i < lat_.nx() && j == 0;
    return i >= 0 && i < lat_.nx() && j >= 0 && j < lat_.ny();
}

double GridFunction::get(int i, int j) const { return vals_[idx(i, j)]; }

void GridFunction::set(int i, int j, double v) {
    if (!interior_index(i, j))
        throw std::invalid_argument("collar values are fixed; use set_ext to seed them");
    if (!std::isfinite(v)) throw std::invalid_argument("grid values must be finite");
    vals_[idx(i, j)] = v;
}

void GridFunction::set_ext(int i, int j, double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("grid values must be finite");
    vals_[idx(i, j)] = v;
}

GridFunction GridFunction::sampled(Lattice lat, const std::function<double(const Vec&)>& f) {
    GridFunction u(std::move(lat));
    const Lattice& L = u.lattice();
    const int jlo = L.n() == 2 ? -1 : 0;
    const int jhi = L.n() == 2 ? L.ny() : 0;
    for (int j = jlo; j <= jhi; ++j)
        for (int i = -1; i <= L.nx(); ++i) {
            double v = f(L.center(i, j));
            if (!std::isfinite(v)) throw std::invalid_argument("sampled grid values must be finite");
            u.vals_[u.idx(i, j)] = v;
        }
    return u;
}

double GridFunction::collar_min() const {
    double m = std::numeric_limits<double>::infinity();
    const int jlo = lat_.n() == 2 ? -1 : 0;
    const int jhi = lat_.n() == 2 ? lat_.ny() : 0;
    for (int j = jlo; j <= jhi; ++j)
        for (int i = -1; i <= lat_.nx(); ++i)
            if (!interior_index(i, j)) m = std::min(m, vals_[idx(i, j)]);
    return m;
}

double GridFunction::collar_max() const {
    double m = -std::numeric_limits<double>::infinity();
    const int jlo = lat_.n() == 2 ? -1 : 0;
    const int jhi = lat_.n() == 2 ? lat_.ny() : 0;
    for (int j = jlo; j <= jhi; ++j)
        for (int i = -1; i <= lat_.nx(); ++i)
            if (!interior_index(i, j)) m = std::max(m, vals_[idx(i, j)]);
    return m;
}

GridFunction GridFunction::composed(const std::function<double(double)>& f) const {
    GridFunction out(lat_);
    for (size_t k = 0; k < vals_.size(); ++k) {
        double v = f(vals_[k]);
        if (!std::isfinite(v)) throw std::invalid_argument("composed grid values must be finite");
        out.vals_[k] = v;
    }
    return out;
}

GridSet::GridSet(Lattice lat, bool fill)
    : lat_(std::move(lat)),
      vals_(static_cast<size_t>(lat_.nx() + 2) * (lat_.ny() + 2), fill ? 1 : 0) {}

long GridSet::idx(int i, int j) const {
    if (i < -1 || i > lat_.nx() || j < -1 || j > lat_.ny())
        throw std::out_of_range("grid index outside the lattice and its collar");
    if (lat_.n() == 1 && j != 0)
        throw std::out_of_range("one-dimensional lattice has no second index");
    return static_cast<long>(j + 1) * (lat_.nx() + 2) + (i + 1);
}

bool GridSet::interior_index(int i, int j) const {
    if (lat_.n() == 1) return i >= 0 && i < lat_.nx() && j == 0;
    return i >= 0 && i < lat_.nx() && j >= 0 && j < lat_.ny();
}

bool GridSet::get(int i, int j) const { return vals_[idx(i, j)] != 0; }

void GridSet::set(int i, int j, bool v) {
    if (!interior_index(i, j))
        throw std::invalid_argument("exterior trace is fixed; use set_ext to seed it");
    vals_[idx(i, j)] = v ? 1 : 0;
}

void GridSet::set_ext(int i, int j, bool v) { vals_[idx(i, j)] = v ? 1 : 0; }

GridSet GridSet::digitized(Lattice lat, const std::function<bool(const Vec&)>& inside) {
    GridSet s(std::move(lat));
    const Lattice& L = s.lattice();
    const int jlo = L.n() == 2 ? -1 : 0;
    const int jhi = L.n() == 2 ? L.ny() : 0;
    for (int j = jlo; j <= jhi; ++j)
        for (int i = -1; i <= L.nx(); ++i) s.vals_[s.idx(i, j)] = inside(L.center(i, j)) ? 1 : 0;
    return s;
}

GridFunction GridSet::as_function() const {
    GridFunction u(lat_);
    const int jlo = lat_.n() == 2 ? -1 : 0;
    const int jhi = lat_.n() == 2 ? lat_.ny() : 0;
    for (int j = jlo; j <= jhi; ++j)
        for (int i = -1; i <= lat_.nx(); ++i) u.set_ext(i, j, get(i, j) ? 1.0 : 0.0);
    return u;
}

double discrete_energy(const GridFunction& u, const Anisotropy& norm) {
    const Lattice& L = u.lattice();
    const int n = L.n();
    require_planar_base(norm);
    if (norm.dim() != n + 1)
        throw DimensionError("discrete energy needs a norm on the graph space, one dimension up");
    const double h = L.h;
    double cell_measure = 1.0;
    for (int ax = 0; ax < n; ++ax) cell_measure *= h;
    double total = 0.0;
    Vec lifted(n + 1);
    for (int j = 0; j < L.ny(); ++j)
        for (int i = 0; i < L.nx(); ++i) {
            lifted(0) = -(u.get(i + 1, j) - u.get(i, j)) / h;
            if (n == 2) lifted(1) = -(u.get(i, j + 1) - u.get(i, j)) / h;
            lifted(n) = 1.0;
            total += cell_measure * norm.eval_dual(lifted);
        }
    return total;
}

double grid_set_perimeter(const GridSet& s, const Anisotropy& norm) {
    const Lattice& L = s.lattice();
    const int n = L.n();
    if (norm.dim() != n)
        throw DimensionError("set perimeter needs a norm on the set's ambient space");
    const double face_measure = n == 2 ? L.h : 1.0;
    std::array<double, 2> w = {0.0, 0.0};
    for (int ax = 0; ax < n; ++ax) {
        Vec e = Vec::Zero(n);
        e(ax) = 1.0;
        w[ax] = norm.eval_dual(e);
    }
    double total = 0.0;
    // Faces between cell (i,j) and its +ax neighbor, for every face with at
    // least one interior endpoint.
    for (int j = 0; j < L.ny(); ++j) {
        for (int i = -1; i < L.nx(); ++i) {
            if (!s.interior_index(i, j) && !s.interior_index(i + 1, j)) continue;
            if (s.get(i, j) != s.get(i + 1, j)) total += face_measure * w[0];
        }
    }
    if (n == 2) {
        for (int i = 0; i < L.nx(); ++i) {
            for (int j = -1; j < L.ny(); ++j) {
                if (!s.interior_index(i, j) && !s.interior_index(i, j + 1)) continue;
                if (s.get(i, j) != s.get(i, j + 1)) total += face_measure * w[1];
            }
        }
    }
    return total;
}

}  // namespace anisoperim
