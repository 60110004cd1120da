#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fbc/erasure.hpp"  // RateRegionBoundary
#include "fbc/quadrature.hpp"
#include "fbc/types.hpp"

namespace fbc {

// Power-gain distribution of a fading state S >= 0, given by its CCDF with
// declared jump locations and support bound.  In-band conventions follow the
// closed forms: intermittent F̄(s) = p on [0, s*], 0 beyond; rayleigh
// F̄(s) = e^{-s/Gamma}; tabulated is a right-step function whose last value
// must be 0.
class FadingDist {
 public:
  enum class Kind { intermittent, rayleigh, tabulated, derived };

  static FadingDist intermittent(double p, double s_star);
  static FadingDist rayleigh(double gamma_mean);
  static FadingDist tabulated(std::vector<std::pair<double, double>> points);
  static FadingDist from_ccdf(std::function<double(double)> ccdf,
                              std::vector<double> atoms, double support_max,
                              std::string label);

  double ccdf(double s) const { return ccdf_(s); }
  const std::vector<double>& atoms() const { return atoms_; }
  double support_max() const { return support_max_; }  // +inf if unbounded
  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }

  double intermittent_p() const;
  double intermittent_s_star() const;
  double rayleigh_gamma() const;
  const std::vector<std::pair<double, double>>& tabulated_points() const;

  // Inverse-CCDF sample from u in (0,1); not available for derived kinds.
  double sample(double u01) const;

 private:
  FadingDist() = default;
  Kind kind_ = Kind::derived;
  std::function<double(double)> ccdf_;
  std::vector<double> atoms_;
  double support_max_ = inf;
  std::string label_;
  double p_ = 0.0, s_star_ = 0.0, gamma_ = 0.0;
  std::vector<std::pair<double, double>> points_;
};

// Complex-channel ergodic capacity log2(e) * Int_0^inf ccdf(s)/(1+s) ds, bits/s/Hz.
double ergodic_capacity(const FadingDist& s, const QuadratureConfig& cfg = {});

struct PartitionConfig {
  int grid_points = 1 << 14;     // sign-scan resolution for the general path
  double refine_rel_tol = 1e-10; // bisection refinement of crossings
};

// State partition at weight omega: I1 = {s : ccdf1(s) > omega * ccdf2(s)},
// I2 its complement in [0, sup).  Ties go to I2.  Closed forms cover
// intermittent and rayleigh pairs; everything else uses a log-grid sign scan
// with bisection refinement.
std::pair<IntervalSet, IntervalSet> partition_states(
    const FadingDist& s1, const FadingDist& s2, double omega,
    const PartitionConfig& pcfg = {});

// Extreme point of the outer bound at weight omega:
// R_i = log2(e) * Int_{I_i} ccdf_i(s)/(1+s) ds.
RatePoint outer_extreme_point(const FadingDist& s1, const FadingDist& s2,
                              double omega, const QuadratureConfig& cfg = {},
                              const PartitionConfig& pcfg = {});

// Upper-concave envelope over the omega grid plus the two single-user
// endpoints (C1, 0) and (0, C2).
RateRegionBoundary outer_region(const FadingDist& s1, const FadingDist& s2,
                                const std::vector<double>& omegas,
                                const QuadratureConfig& cfg = {});

// Enhanced first channel ccdf~(s) = min(1, max(ccdf1(s), omega*ccdf2(s))),
// omega >= 1.
FadingDist enhance_continuous(const FadingDist& s1, const FadingDist& s2,
                              double omega);

// E[g(S)] for absolutely continuous non-decreasing-or-monotone g with known
// derivative, via Int ccdf * g' (integration by parts; g(0) added back).
// `jumps` lists locations/sizes of downward or upward steps of g itself.
double expect_by_parts(const FadingDist& s, double g_at_zero,
                       const std::function<double(double)>& gprime,
                       const std::vector<std::pair<double, double>>& jumps = {},
                       const QuadratureConfig& cfg = {});

}  // namespace fbc
