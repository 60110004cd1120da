#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "fbc/fading.hpp"
#include "fbc/types.hpp"

namespace fbc {

// Signed binary expansion word: bits in {-1,+1}, most significant first
// (bit j weights 2^{-j-...}: value = sum bits[j] * 2^{-(j+1)}).
struct AntipodalWord {
  std::vector<int> bits;
  double value() const;
  bool operator==(const AntipodalWord& o) const { return bits == o.bits; }
};

// First m antipodal digits of a in [-1, 1]: b1 = sgn(a),
// b_{n+1} = sgn(a - sum_{j<=n} b_j 2^{-j}), sgn(0) = +1.
AntipodalWord antipodal_expand(double a, int m);

// Nearest m-bit word to y (ties toward +).  Equals the truncated expansion of
// y clipped to [-1, 1].
AntipodalWord nearest_constellation(double y, int m);

inline constexpr int depth_infinite = std::numeric_limits<int>::max();

// Crossover probability of the level detector at normalized SNR a with
// interference depth d: the mean of 2*Q over [sqrt(a)(1-2^-d), sqrt(a)(1+2^-d)];
// d = 0 spans [0, 2 sqrt(a)], d = depth_infinite gives 2 Q(sqrt(a)).
Probability epsilon_d(double a, int d);

// min(epsilon_d, 1/2).
Probability epsilon_hat(double a, int d);

// d/da epsilon_d(a); negative.  Exposed for the rate quadratures.
double epsilon_d_deriv(double a, int d);

// Root of epsilon_d(a, 0) = 1/2 (~0.54052), cached.
double crossover_half_snr();

// Root of epsilon_d(a, d) = 1/2 for a given depth.
double crossover_half_snr(int d);

// Largest n >= 1 with epsilon_d(3 s 4^{-n}, 0) <= 1/2; 0 when none (s ~< 0.72).
int nhat(double s);

enum class LevelUser : uint8_t { unused = 0, user1 = 1, user2 = 2 };

LevelUser other(LevelUser u);

class LevelAssignment {
 public:
  explicit LevelAssignment(int max_level);

  int max_level() const { return static_cast<int>(owner_.size()); }
  LevelUser owner(int level) const;  // unused beyond max_level
  void assign(int level, LevelUser u);
  void assign_range(int lo, int hi, LevelUser u);  // inclusive
  std::vector<int> levels_of(LevelUser u) const;

 private:
  std::vector<LevelUser> owner_;  // [level-1]
};

// Levels of interference-free stripping below level n: distance to the first
// level above n owned by the other user, depth_infinite when none exists.
// Unused levels transmit nothing and extend the depth like stripped ones.
int depth_of_level(const LevelAssignment& a, int level);

// Per-level ergodic rate 2 E_S[1 - H(epsilon_hat(3 S 4^{-n}, d))], bits/s/Hz.
double level_rate(const FadingDist& s, int n, int d,
                  const QuadratureConfig& cfg = {});

// Rate pair of one assignment: user i sums level_rate over its levels with
// depth_of_level when stripping, depth 0 otherwise.
RatePoint assignment_rates(const FadingDist& s1, const FadingDist& s2,
                           const LevelAssignment& a, bool stripping,
                           const QuadratureConfig& cfg = {});

// Non-dominated hull over the assignment family.
RateRegionBoundary achievable_region(const FadingDist& s1, const FadingDist& s2,
                                     const std::vector<LevelAssignment>& family,
                                     bool stripping,
                                     const QuadratureConfig& cfg = {});

enum class AssignmentStyle {
  threshold,             // user 2 takes levels 1..n2, user 1 the rest
  awgn_rayleigh_inner1,  // user 2 also takes every level above n1*
  awgn_rayleigh_inner2,  // levels above n1* left unused
};

// The swept family for the style; max_level <= 0 picks the smallest level
// count whose trailing per-level rates fall below 1e-9 for 3 levels running.
std::vector<LevelAssignment> example_assignments(const FadingDist& s1,
                                                 const FadingDist& s2,
                                                 AssignmentStyle style,
                                                 int max_level = 0);

}  // namespace fbc
