#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace fbc {

// Raised when an iterative numeric routine cannot meet its tolerance
// (quadrature non-convergence, series cap hit, root not bracketed).
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an input object violates a documented precondition.
class invalid_input : public std::invalid_argument {
 public:
  explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

inline constexpr double inf = std::numeric_limits<double>::infinity();

// A probability. Values within a small slack of [0,1] are clamped so callers
// can rely on the range; anything further out is a hard error.
class Probability {
 public:
  Probability() = default;
  Probability(double v) : v_(v) {  // NOLINT: implicit by design
    constexpr double slack = 1e-9;
    if (!(v >= -slack && v <= 1.0 + slack))
      throw invalid_input("probability out of range: " + std::to_string(v));
    if (v_ < 0.0) v_ = 0.0;
    if (v_ > 1.0) v_ = 1.0;
  }
  double value() const { return v_; }
  operator double() const { return v_; }

 private:
  double v_ = 0.0;
};

struct RatePoint {
  double r1 = 0.0;
  double r2 = 0.0;
};

// Half-open interval [lo, hi); hi may be +inf.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

// Ordered disjoint union of half-open intervals on [0, inf).
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> parts);

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  bool contains(double s) const;
  double total_length() const;
  double sup() const;  // end of the last interval, 0 if empty

  static IntervalSet half_line(double lo = 0.0);

 private:
  std::vector<Interval> parts_;
};

}  // namespace fbc
