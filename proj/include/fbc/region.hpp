#pragma once

#include <vector>

#include "fbc/types.hpp"

namespace fbc {

// Vertices of the upper-right boundary of conv(pts U {origin}), walked from
// the R1-axis anchor to the R2-axis anchor (R1 non-increasing, R2
// non-decreasing).  Points closer than `dedup_tol` in both coordinates are
// merged; hull-edge-interior points are dropped.
std::vector<RatePoint> pareto_hull(std::vector<RatePoint> pts,
                                   double dedup_tol = 1e-12);

// Piecewise-linear boundary evaluation.  boundary must be a pareto_hull
// result.  Queries outside the spanned range return 0.
double boundary_r2_at(const std::vector<RatePoint>& boundary, double r1);
double boundary_r1_at(const std::vector<RatePoint>& boundary, double r2);

// max over boundary vertices of r1 + omega * r2 (support function of the
// region in the weighted-sum direction).
double support_value(const std::vector<RatePoint>& boundary, double omega);

}  // namespace fbc
