#pragma once

#include <functional>
#include <vector>

#include "anisoperim/anisotropy.hpp"
#include "anisoperim/core.hpp"

namespace anisoperim {

// Cell-centered lattice with one or two interior dimensions. Cell (i, j) has
// its center at origin + h * (i + 1/2, j + 1/2); indices -1 and dims[ax]
// address the one-cell collar ring.
struct Lattice {
    std::vector<int> dims;
    double h = 1.0;
    Vec origin;

    int n() const { return static_cast<int>(dims.size()); }
    int nx() const { return dims[0]; }
    int ny() const { return n() == 2 ? dims[1] : 1; }
    long cells() const { return static_cast<long>(nx()) * ny(); }
    double measure() const;
    Vec center(int i, int j = 0) const;
};

Lattice make_lattice(std::vector<int> dims, double h, Vec origin);

// Real values on the interior cells plus an immutable-by-convention collar
// ring. The solver treats the collar as Dirichlet data.
class GridFunction {
public:
    explicit GridFunction(Lattice lat, double fill = 0.0);
    static GridFunction sampled(Lattice lat, const std::function<double(const Vec&)>& f);

    const Lattice& lattice() const { return lat_; }
    bool interior_index(int i, int j = 0) const;
    double get(int i, int j = 0) const;
    void set(int i, int j, double v);
    void set_ext(int i, int j, double v);

    double collar_min() const;
    double collar_max() const;

    // New function with f applied to every value, collar included.
    GridFunction composed(const std::function<double(double)>& f) const;

private:
    Lattice lat_;
    std::vector<double> vals_;
    long idx(int i, int j) const;
};

// Binary indicator on the same lattice; the collar ring is the exterior trace.
class GridSet {
public:
    explicit GridSet(Lattice lat, bool fill = false);
    static GridSet digitized(Lattice lat, const std::function<bool(const Vec&)>& inside);

    const Lattice& lattice() const { return lat_; }
    bool interior_index(int i, int j = 0) const;
    bool get(int i, int j = 0) const;
    void set(int i, int j, bool v);
    void set_ext(int i, int j, bool v);

    GridFunction as_function() const;

private:
    Lattice lat_;
    std::vector<unsigned char> vals_;
    long idx(int i, int j) const;
};

// Sum over interior cells of h^n Phi^o(-D_h u, 1) with forward differences;
// differences on the +x/+y edges read the collar. The norm must be built over
// a planar base (cylindrical, conical, or omega-composed).
double discrete_energy(const GridFunction& u, const Anisotropy& norm);

// Face-based discrete perimeter: sum of h^(n-1) Phi^o(face normal) over faces
// separating inside from outside, counting every face with at least one
// interior endpoint.
double grid_set_perimeter(const GridSet& s, const Anisotropy& norm);

}  // namespace anisoperim
