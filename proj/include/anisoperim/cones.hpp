#pragma once

#include "anisoperim/anisotropy.hpp"
#include "anisoperim/core.hpp"
#include "anisoperim/polyhedral.hpp"

namespace anisoperim {

// Hypothesis report for a pair of half-spaces through the origin with outer
// unit normals nu1, nu2 (last coordinate = vertical). minimal_claim is the
// conjunction backing the minimality statement for both the intersection and
// the union cone; roof marks the planar inverted-V orientation in which that
// statement is known to fail.
struct ConePairReport {
    bool boundary_in_horizontal = false;  // plane intersection lies in {t=0}
    bool cond_a = false;                  // nu1.nu2 >= 0, nu2_t >= nu1_t >= 0
    bool cond_b = false;                  // angle(nu1,nu2) + angle(nu2,e_t) = angle(nu1,e_t)
    bool roof = false;                    // cond_b fails, e_t between nu1 and nu2 (2-d)
    bool degenerate = false;              // antiparallel normals with e_t off their span
    bool minimal_claim = false;
    double lambda1 = 0.0;                 // tan of the angle between nu_i and e_t;
    double lambda2 = 0.0;                 // +inf for horizontal normals
};

struct ConePair {
    PolyhedralSet intersection;
    PolyhedralSet union_set;
    ConePairReport report;
};

// Both cones clipped to the window [-half_width, half_width]^d.
ConePair build_cone_pair(const Vec& nu1, const Vec& nu2, double half_width = 8.0);

// Energy drop from cutting the apex triangle of the planar roof cone
// H1 ∩ H2 at depth d: side1*dual(nu1) + side2*dual(nu2) - base*dual(e2).
// Positive values certify non-minimality. Pre: roof orientation (both
// normals point upward with opposite horizontal signs), dimension 2.
double roof_cut_delta(const Vec& nu1, const Vec& nu2, double depth, const Anisotropy& norm);

}  // namespace anisoperim
