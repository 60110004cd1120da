#pragma once

#include <utility>
#include <vector>

#include "fbc/fading.hpp"
#include "fbc/types.hpp"

namespace fbc {

// Dyadic SNR grid gamma_n = gamma * 4^{n-1}, n = 1..max_n.
struct QuantizationGrid {
  double gamma = 5.65;
  int max_n = 0;

  double level(int n) const;  // gamma * 4^{n-1}

  // Smallest band count covering both CCDFs down to ccdf_floor.
  static QuantizationGrid for_pair(const FadingDist& s1, const FadingDist& s2,
                                   double gamma, double ccdf_floor = 1e-9,
                                   int hard_cap = 400);
};

// Distribution-free outer-minus-inner bound
// Delta(gamma) = log2(1+gamma) + 2 sum_{m>=0} H(eps_hat(3 gamma 4^{m-1}, 0)).
// Terms below 1e-12 end the sum; hitting max_terms above 1e-9 is an error.
double universal_gap(double gamma, int max_terms = 200);

// Golden-section minimum of universal_gap over [lo, hi] (unimodal in
// practice); returns (gamma*, Delta*).
std::pair<double, double> minimize_gap(double lo, double hi);

// Band sets N_i(omega) from CCDF comparisons at the grid levels (ties to user 2).
std::pair<std::vector<int>, std::vector<int>> quantized_partition(
    const FadingDist& s1, const FadingDist& s2, double omega,
    const QuantizationGrid& grid);

// Per-user outer bound R_i <= log2(1+gamma) + 2 sum_{n in N_i} ccdf_i(gamma_n).
RatePoint quantized_outer(const FadingDist& s1, const FadingDist& s2,
                          double omega, const QuantizationGrid& grid);

// Per-user inner bound R_i >= 2 sum_{n in N_i} ccdf_i(gamma_n) - 2 sum_m H(...),
// clipped at 0.
RatePoint quantized_inner(const FadingDist& s1, const FadingDist& s2,
                          double omega, const QuantizationGrid& grid);

struct GapReport {
  double gamma = 0.0;
  double delta_universal = 0.0;
  struct Row {
    double omega = 0.0;
    RatePoint outer;
    RatePoint inner;
    double gap1 = 0.0;
    double gap2 = 0.0;
  };
  std::vector<Row> per_omega;
  double max_gap1 = 0.0;
  double max_gap2 = 0.0;
};

// Outer-minus-inner per user over the omega grid; never exceeds
// universal_gap(grid.gamma) by construction.
GapReport empirical_gap(const FadingDist& s1, const FadingDist& s2,
                        const std::vector<double>& omegas,
                        const QuantizationGrid& grid);

}  // namespace fbc
