#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "anisoperim/grid.hpp"

namespace anisoperim {

struct SolverParams {
    double gap_tol = 1e-8;  // stop once primal-dual gap <= gap_tol * interior measure
    int max_iters = 100000;
    std::uint64_t seed = 1;
};

// Thrown when the primal-dual iteration exhausts max_iters above the gap
// target; carries the last gap so callers can report or downgrade.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& msg, double last_gap, int iters)
        : std::runtime_error(msg), last_gap(last_gap), iters(iters) {}
    double last_gap;
    int iters;
};

struct SolveResult {
    GridFunction u;
    double energy;          // discrete_energy of u under the solve norm
    double coupled_energy;  // minimized objective: energy plus collar coupling on the -x/-y walls
    double gap;             // final primal-dual gap, absolute
    int iters;
};

// Minimizes the forward-difference graph energy with Dirichlet collar data
// taken from `boundary`, over interior values in [collar_min, collar_max].
// The norm must be cylindrical over a base with a projectable unit ball
// (Euclidean, p in {1,2,inf}, polytope, or quadratic). Interior values of
// `boundary` are ignored; the start point is seeded from params.seed.
SolveResult minimize_G(const Anisotropy& norm, const GridFunction& boundary,
                       const SolverParams& params = {});

// Value of the same Dirichlet-coupled objective at a given grid function,
// collar data read from u itself. minimize_G(...).coupled_energy equals
// coupled_objective of the returned minimizer.
double coupled_objective(const GridFunction& u, const Anisotropy& norm);

struct RelaxedSetResult {
    GridSet set;                  // relaxed minimizer thresholded at 1/2, ties toward inside
    std::vector<double> relaxed;  // interior values in [0,1], row-major
    double relaxed_energy;        // face-weighted total variation of the relaxed minimizer
    double set_energy;            // grid_set_perimeter of the thresholded set
    bool threshold_ties;          // some relaxed value within 1e-9 of 1/2
    double gap;
    int iters;
};

// Exact convex relaxation of the face-based discrete perimeter: minimizes the
// face-weighted total variation over u in [0,1] with the collar of `trace` as
// boundary data. Any norm on the set's ambient space is accepted; only the
// dual values at the axis directions enter.
RelaxedSetResult minimize_relaxed_set(const Anisotropy& norm, const GridSet& trace,
                                      const SolverParams& params = {});

}  // namespace anisoperim
