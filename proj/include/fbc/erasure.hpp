#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fbc/types.hpp"

namespace fbc {

// State distribution of a q-bit layered erasure channel: the receiver sees the
// top N bits of each input word, N ~ pmf on {0..q}.
class ErasurePmf {
 public:
  ErasurePmf(int q, std::vector<double> pmf);

  int q() const { return q_; }
  const std::vector<double>& pmf() const { return pmf_; }
  // P(N >= n); 1 for n <= 0, 0 for n > q.
  double ccdf(int n) const;
  double mean() const;

  // ccdf_values[n] = P(N >= n) for n = 0..q; must start at 1 and be
  // non-increasing to 0-or-more.
  static ErasurePmf from_ccdf(const std::vector<double>& ccdf_values);

 private:
  int q_;
  std::vector<double> pmf_;
  std::vector<double> ccdf_;  // ccdf_[n] for n = 0..q
};

enum class LevelOwner : uint8_t { user1 = 1, user2 = 2 };

// Assignment of bit levels 1..q for one weight omega.  Level n goes to user 1
// iff ccdf1(n) > omega * ccdf2(n); ties go to user 2.
struct LevelPartition {
  double omega = 0.0;
  std::vector<LevelOwner> owner;  // owner[n-1] for level n

  std::vector<int> levels_of(LevelOwner u) const;
};

LevelPartition partition_levels(const ErasurePmf& n1, const ErasurePmf& n2,
                                double omega);

// (R1, R2) with R_i = sum over user-i levels of ccdf_i(n).
RatePoint achievable_rates(const ErasurePmf& n1, const ErasurePmf& n2,
                           const LevelPartition& part);

// Sorted deduplicated ratios ccdf1(j)/ccdf2(j) over levels with ccdf2(j) > 0.
std::vector<double> critical_weights(const ErasurePmf& n1,
                                     const ErasurePmf& n2);

struct RateRegionBoundary {
  std::vector<RatePoint> points;         // R1 non-increasing, R2 non-decreasing
  std::vector<double> critical_weights;  // strictly increasing
};

// One row per weight interval, mirroring the sweep that generates the region.
struct ErasureRegionRow {
  double omega_lo = 0.0;
  double omega_hi = 0.0;  // +inf on the last row
  RatePoint rates;
};

std::vector<ErasureRegionRow> capacity_region_table(const ErasurePmf& n1,
                                                    const ErasurePmf& n2);

// Extreme points of the capacity region (hull of the sweep plus the two
// single-user endpoints), with the critical weights that generated them.
RateRegionBoundary capacity_region(const ErasurePmf& n1, const ErasurePmf& n2);

// Enhanced first channel: ccdf~1(n) = min(1, max(ccdf1(n), omega*ccdf2(n))).
// Requires omega >= 1; the result statewise dominates both inputs' roles.
ErasurePmf enhance_channel(const ErasurePmf& n1, const ErasurePmf& n2,
                           double omega);

// Weighted sum-rate bound computed through the enhanced/degraded route;
// equals achievable R1 + omega*R2 identically.  Requires omega >= 1.
double converse_weighted_rate(const ErasurePmf& n1, const ErasurePmf& n2,
                              double omega);

// true iff ccdf1(n) >= ccdf2(n) for all n (receiver 2 statewise weaker).
bool is_degraded(const ErasurePmf& n1, const ErasurePmf& n2);

// Joint pmf over (V, X^q): p[v][x], x indexing length-q bit words LSB = level 1.
// Bit of level n in word x is (x >> (n-1)) & 1.
struct JointSourceDist {
  int q = 0;
  int v_card = 0;
  std::vector<std::vector<double>> p;  // [v][x], sums to 1
};

enum class EntropyIdentity {
  output_entropy,       // I(X^q; Y | V)        = H(Y | V, N)
  chain_decomposition,  // H(Y | V, N)          = sum_n ccdf(n) H(X_n | X^{n-1}, V)
  common_message,       // I(V; Y)              = sum_n ccdf(n) I(V; X_n | X^{n-1})
};

// Both sides of the chosen identity, by exhaustive enumeration over
// (v, x, n).  Y is the observed prefix together with its length.
std::pair<double, double> entropy_identity_check(const ErasurePmf& n,
                                                 const JointSourceDist& joint,
                                                 EntropyIdentity which);

}  // namespace fbc
