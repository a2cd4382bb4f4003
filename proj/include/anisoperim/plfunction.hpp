#pragma once

#include <vector>

#include "anisoperim/anisotropy.hpp"
#include "anisoperim/core.hpp"
#include "anisoperim/polyhedral.hpp"

namespace anisoperim {

// One cell of a piecewise-affine function: a convex polygon with
// u(x) = grad . x + offset on it. Vertices are stored counterclockwise;
// constructors accept either orientation and normalize.
struct PLCell {
    std::vector<Vec> poly;
    Vec grad;
    double offset = 0.0;
};

// Shared segment between two cells. The conormal is the unit in-plane normal
// of the segment pointing from cell_minus into cell_plus.
struct JumpEdge {
    Vec a;
    Vec b;
    Vec conormal;
    int cell_minus = -1;
    int cell_plus = -1;
};

// Piecewise-affine function on a convex-polygonal partition of a rectangle.
// The partition must tile the domain: cells stay inside it, interiors are
// pairwise disjoint, and the areas sum to the domain area. Shared edges are
// derived from the partition at construction time.
class PLFunction {
public:
    PLFunction(std::vector<PLCell> cells, Box domain);

    const std::vector<PLCell>& cells() const { return cells_; }
    const std::vector<JumpEdge>& jump_edges() const { return edges_; }
    const Box& domain() const { return domain_; }

    bool piecewise_constant() const;
    double value(const Vec& x) const;
    double max_abs() const;

    // Region below the graph, truncated to domain x (-slab_height, slab_height).
    // slab_height must exceed max_abs(); the bottom cap and the side walls then
    // land on window faces and drop out of boundary queries.
    PolyhedralSet subgraph(double slab_height) const;

private:
    std::vector<PLCell> cells_;
    std::vector<JumpEdge> edges_;
    Box domain_;
};

// Integral of Phi^o(-grad u, 1) over the region plus the jump-wall terms
// length x |jump| x Phi^o of the wall normal. norm lives on R^3. Walls on the
// region boundary are not counted, matching open-window boundary queries.
double subgraph_energy(const PLFunction& u, const Anisotropy& norm, const Box& region);

struct CoareaLevel {
    double level;
    double perimeter;
};

struct CoareaReport {
    double total = 0.0;
    std::vector<CoareaLevel> levels;
};

// Total variation of a piecewise-constant u under the planar base norm,
// decomposed over super-level sets. Levels are midpoints of consecutive
// distinct values; total = sum of value gaps times level-set perimeters.
CoareaReport coarea_decomposition(const PLFunction& u, const Anisotropy& base_norm,
                                  const Box& region);

}  // namespace anisoperim
