#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "anisoperim/verify.hpp"

namespace anisoperim {

namespace {

// Face endpoint: shift >= 0 reads bit (pattern >> shift) & 1, shift < 0 is a
// collar cell with the fixed bit in `fixed`.
struct OracleFace {
    int shift_a;
    unsigned fixed_a;
    int shift_b;
    unsigned fixed_b;
    double weight;
};

}  // namespace

BruteResult brute_force_min_set(const Anisotropy& norm, const GridSet& trace) {
    const Lattice& L = trace.lattice();
    const int n = L.n();
    if (norm.dim() != n)
        throw DimensionError("brute-force oracle needs a norm on the set's ambient space");
    const long k = L.cells();
    if (k > 20) throw std::invalid_argument("brute-force window exceeds 20 interior cells");

    const int nx = L.nx(), ny = L.ny();
    const double face_measure = n == 2 ? L.h : 1.0;
    std::array<double, 2> axw = {0.0, 0.0};
    for (int ax = 0; ax < n; ++ax) {
        Vec e = Vec::Zero(n);
        e(ax) = 1.0;
        axw[ax] = face_measure * norm.eval_dual(e);
    }

    // Bit (k-1-c) holds cell c, so increasing pattern order is lexicographic
    // order on the cell sequence.
    auto cell_shift = [&](int i, int j) { return static_cast<int>(k - 1 - (static_cast<long>(j) * nx + i)); };
    std::vector<OracleFace> faces;
    auto add_face = [&](int ia, int ja, int ib, int jb, int ax) {
        bool a_int = trace.interior_index(ia, ja);
        bool b_int = trace.interior_index(ib, jb);
        if (!a_int && !b_int) return;
        OracleFace f;
        f.weight = axw[ax];
        f.shift_a = a_int ? cell_shift(ia, ja) : -1;
        f.fixed_a = !a_int && trace.get(ia, ja) ? 1u : 0u;
        f.shift_b = b_int ? cell_shift(ib, jb) : -1;
        f.fixed_b = !b_int && trace.get(ib, jb) ? 1u : 0u;
        faces.push_back(f);
    };
    for (int j = 0; j < ny; ++j)
        for (int i = -1; i < nx; ++i) add_face(i, j, i + 1, j, 0);
    if (n == 2)
        for (int i = 0; i < nx; ++i)
            for (int j = -1; j < ny; ++j) add_face(i, j, i, j + 1, 1);

    auto pattern_energy = [&faces](unsigned long p) {
        double e = 0.0;
        for (const OracleFace& f : faces) {
            unsigned a = f.shift_a >= 0 ? static_cast<unsigned>(p >> f.shift_a) & 1u : f.fixed_a;
            unsigned b = f.shift_b >= 0 ? static_cast<unsigned>(p >> f.shift_b) & 1u : f.fixed_b;
            if (a != b) e += f.weight;
        }
        return e;
    };

    const unsigned long count = 1ul << k;
    unsigned long best_pattern = 0;
    double best = pattern_energy(0);
    for (unsigned long p = 1; p < count; ++p) {
        double e = pattern_energy(p);
        // Strict improvement only, so ties keep the lexicographically first
        // pattern.
        if (e < best - 1e-12 * (1.0 + std::abs(best))) {
            best = e;
            best_pattern = p;
        }
    }

    GridSet out = trace;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            out.set(i, j, ((best_pattern >> cell_shift(i, j)) & 1u) != 0);
    return BruteResult{std::move(out), best};
}

}  // namespace anisoperim
