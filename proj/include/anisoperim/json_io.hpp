#pragma once

#include <stdexcept>
#include <string>

#include "anisoperim/anisotropy.hpp"
#include "anisoperim/grid.hpp"
#include "anisoperim/polyhedral.hpp"
#include "anisoperim/solver.hpp"
#include "anisoperim/verify.hpp"

namespace anisoperim {

// Invalid descriptor content: unknown kinds or keys, wrong value types,
// missing fields, inconsistent dimensions. Syntax errors carry the JSON
// parser's message, which names the line and column.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Norm descriptors: {"kind":"euclidean","dim":2}, {"kind":"pnorm","dim":2,
// "p":1|"inf"}, {"kind":"polytope","vertices":[[...],...]},
// {"kind":"cylindrical"|"conical","base":{...}}, {"kind":"omega","omega":
// {"p":2}|{"kind":"max"|"sum"},"base":{...}}, {"kind":"quadratic","form":
// [[...],...]}. Unknown keys are rejected.
Anisotropy norm_from_json(const std::string& text);
std::string norm_to_json(const Anisotropy& norm);

// Set descriptors, all with "window":[[lo...],[hi...]]:
// {"halfspaces":[{"normal":[...],"offset":x},...],"op":"intersect"|"union"},
// {"cells":[[halfspace,...],...]} for a union of convex cells, or
// {"facets":[{"normal":[...],"area":a,"anchor":[...],"poly":[[...],...]},...]}.
PolyhedralSet set_from_json(const std::string& text);
std::string set_to_json(const PolyhedralSet& set);

// Solve scenario: {"norm":..., "lattice":{"dims":[...],"h":...,"origin":
// [...]}, "collar":{"kind":"linear","zeta":[...]}|{"kind":"indicator",
// "set":...}, "solver":{"gap_tol":...,"max_iters":...,"seed":...}}. The
// collar function is sampled on every cell; the solver reads only the ring.
struct SolveScenario {
    Anisotropy norm;
    Lattice lattice;
    GridFunction collar;
    SolverParams params;
};
SolveScenario scenario_from_json(const std::string& text);

// Digitized sets serialize with their full value grid so perimeters can be
// recomputed from the document alone: values run over the collar-inclusive
// index box, i fastest, 0/1 entries.
std::string grid_set_to_json(const GridSet& s);
GridSet grid_set_from_json(const std::string& text);

// Verdict with its competitor (when present) in recomputable form.
std::string verdict_to_json(const Verdict& v);

// Interior cell centers and values, header "x,y,u" ("x,u" in one dimension),
// row-major with x fastest.
std::string grid_function_to_csv(const GridFunction& u);

}  // namespace anisoperim
