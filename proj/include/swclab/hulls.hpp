#pragma once

// Convex-hull distance and strict linear separation of finite point sets.
//
// hull_distance is exact (an LP) under l1/linf, and an iterative min-norm
// point search over the Minkowski difference with a duality-gap stopping rule
// under l2. For lp(p) a Frank-Wolfe loop reports its best certified gap.
//
// separability finds an open halfspace containing S and excluding T, posed as
// a feasibility LP with unit margin after normalization; finite point sets
// admit strict separation exactly when they admit margin separation.

#include <optional>

#include "swclab/body.hpp"
#include "swclab/geometry.hpp"

namespace swclab {

struct HullDistanceResult {
    double distance = 0.0;  // achieved value (an upper bound when iterative)
    Vec witness_a, witness_b;
    bool converged = true;  // gap <= tol; LP paths are always converged
    double gap = 0.0;
};

HullDistanceResult hull_distance(const PointSet& a, const PointSet& b, double tol = 1e-8,
                                 int max_iters = 5000);

std::optional<HalfSpace> separability(const PointSet& s, const PointSet& t,
                                      const Config& cfg = {});

// Halfspace membership of every point, used to re-verify slice identities.
bool halfspace_selects(const HalfSpace& h, const std::vector<Vec>& all,
                       const std::vector<int>& selected);

}  // namespace swclab
