#include "fbc/region.hpp"

#include <algorithm>
#include <cmath>

namespace fbc {

IntervalSet::IntervalSet(std::vector<Interval> parts) {
  for (const Interval& iv : parts) {
    if (!(iv.lo >= 0.0) || !(iv.hi >= iv.lo))
      throw invalid_input("IntervalSet: intervals must satisfy 0 <= lo <= hi");
  }
  std::sort(parts.begin(), parts.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const Interval& iv : parts) {
    if (iv.hi <= iv.lo) continue;  // drop empty
    if (!parts_.empty() && iv.lo <= parts_.back().hi) {
      if (iv.lo < parts_.back().hi)
        throw invalid_input("IntervalSet: overlapping intervals");
      parts_.back().hi = std::max(parts_.back().hi, iv.hi);  // merge adjacent
    } else {
      parts_.push_back(iv);
    }
  }
}

bool IntervalSet::contains(double s) const {
  for (const Interval& iv : parts_) {
    if (s < iv.lo) return false;
    if (s < iv.hi) return true;
  }
  return false;
}

double IntervalSet::total_length() const {
  double t = 0.0;
  for (const Interval& iv : parts_) t += iv.length();
  return t;
}

double IntervalSet::sup() const { return parts_.empty() ? 0.0 : parts_.back().hi; }

IntervalSet IntervalSet::half_line(double lo) {
  return IntervalSet({Interval{lo, inf}});
}

namespace {

double cross(const RatePoint& o, const RatePoint& a, const RatePoint& b) {
  return (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1);
}

// Counterclockwise convex hull by monotone chains.
std::vector<RatePoint> convex_hull(std::vector<RatePoint> pts, double area_tol) {
  std::sort(pts.begin(), pts.end(), [](const RatePoint& a, const RatePoint& b) {
    return a.r1 != b.r1 ? a.r1 < b.r1 : a.r2 < b.r2;
  });
  if (pts.size() < 3) return pts;
  std::vector<RatePoint> lower, upper;
  for (const RatePoint& p : pts) {
    while (lower.size() >= 2 &&
           cross(lower[lower.size() - 2], lower.back(), p) <= area_tol)
      lower.pop_back();
    lower.push_back(p);
  }
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
    while (upper.size() >= 2 &&
           cross(upper[upper.size() - 2], upper.back(), *it) <= area_tol)
      upper.pop_back();
    upper.push_back(*it);
  }
  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  return lower;
}

}  // namespace

std::vector<RatePoint> pareto_hull(std::vector<RatePoint> pts,
                                   double dedup_tol) {
  pts.push_back(RatePoint{0.0, 0.0});
  std::sort(pts.begin(), pts.end(), [](const RatePoint& a, const RatePoint& b) {
    return a.r1 != b.r1 ? a.r1 < b.r1 : a.r2 < b.r2;
  });
  std::vector<RatePoint> uniq;
  for (const RatePoint& p : pts) {
    if (!uniq.empty() && std::abs(p.r1 - uniq.back().r1) <= dedup_tol &&
        std::abs(p.r2 - uniq.back().r2) <= dedup_tol)
      continue;
    uniq.push_back(p);
  }
  double r1max = 0.0, r2max = 0.0;
  for (const RatePoint& p : uniq) {
    r1max = std::max(r1max, p.r1);
    r2max = std::max(r2max, p.r2);
  }
  if (r2max <= dedup_tol) return {RatePoint{r1max, 0.0}};
  if (r1max <= dedup_tol) return {RatePoint{0.0, r2max}};

  const double area_tol = 1e-12 * std::max(1.0, r1max * r2max);
  std::vector<RatePoint> hull = convex_hull(uniq, area_tol);

  // Walk counterclockwise from the bottom-right anchor (max r1, then min r2)
  // to the top-left one (max r2, then min r1): that arc is the achievable
  // frontier; the rest of the hull is dominated.
  size_t ia = 0, ib = 0;
  for (size_t i = 0; i < hull.size(); ++i) {
    const RatePoint& p = hull[i];
    const RatePoint& a = hull[ia];
    const RatePoint& b = hull[ib];
    if (p.r1 > a.r1 || (p.r1 == a.r1 && p.r2 < a.r2)) ia = i;
    if (p.r2 > b.r2 || (p.r2 == b.r2 && p.r1 < b.r1)) ib = i;
  }
  std::vector<RatePoint> out;
  for (size_t i = ia;; i = (i + 1) % hull.size()) {
    out.push_back(hull[i]);
    if (i == ib) break;
  }
  return out;
}

double boundary_r2_at(const std::vector<RatePoint>& boundary, double r1) {
  if (boundary.empty()) return 0.0;
  if (r1 > boundary.front().r1) return 0.0;
  double best = 0.0;
  for (size_t i = 0; i + 1 < boundary.size(); ++i) {
    const RatePoint& a = boundary[i];
    const RatePoint& b = boundary[i + 1];
    if (r1 <= a.r1 && r1 >= b.r1) {
      if (a.r1 == b.r1) {
        best = std::max(best, std::max(a.r2, b.r2));
      } else {
        const double t = (a.r1 - r1) / (a.r1 - b.r1);
        best = std::max(best, a.r2 + t * (b.r2 - a.r2));
      }
    }
  }
  if (r1 <= boundary.back().r1)
    best = std::max(best, boundary.back().r2);
  return best;
}

double boundary_r1_at(const std::vector<RatePoint>& boundary, double r2) {
  if (boundary.empty()) return 0.0;
  if (r2 > boundary.back().r2) return 0.0;
  double best = 0.0;
  for (size_t i = 0; i + 1 < boundary.size(); ++i) {
    const RatePoint& a = boundary[i];
    const RatePoint& b = boundary[i + 1];
    if (r2 >= a.r2 && r2 <= b.r2) {
      if (a.r2 == b.r2) {
        best = std::max(best, std::max(a.r1, b.r1));
      } else {
        const double t = (r2 - a.r2) / (b.r2 - a.r2);
        best = std::max(best, a.r1 + t * (b.r1 - a.r1));
      }
    }
  }
  if (r2 <= boundary.front().r2)
    best = std::max(best, boundary.front().r1);
  return best;
}

double support_value(const std::vector<RatePoint>& boundary, double omega) {
  double best = 0.0;
  for (const RatePoint& p : boundary)
    best = std::max(best, p.r1 + omega * p.r2);
  return best;
}

}  // namespace fbc
