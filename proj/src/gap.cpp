#include "fbc/gap.hpp"

#include <algorithm>
#include <cmath>

#include "fbc/bes.hpp"
#include "fbc/special.hpp"

namespace fbc {

namespace {

// 2 sum_{m>=0} H(eps_hat(3 gamma 4^{m-1}, 0)); shared by the universal bound
// and the quantized inner bound.
double entropy_series(double gamma, int max_terms) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw invalid_input("universal_gap: gamma must be finite and > 0");
  if (max_terms < 1) throw invalid_input("universal_gap: max_terms must be >= 1");
  double sum = 0.0;
  double term = inf;
  for (int m = 0; m < max_terms; ++m) {
    const double a = 3.0 * gamma * std::ldexp(1.0, 2 * (m - 1));
    term = 2.0 * binary_entropy(epsilon_hat(a, 0));
    sum += term;
    if (term < 1e-12) return sum;
  }
  if (term >= 1e-9)
    throw numeric_error("universal_gap: entropy series did not converge");
  return sum;
}

double band_sum(const FadingDist& s, const std::vector<int>& bands,
                const QuantizationGrid& grid) {
  double r = 0.0;
  for (int n : bands) r += s.ccdf(grid.level(n));
  return 2.0 * r;
}

}  // namespace

double QuantizationGrid::level(int n) const {
  if (n < 1) throw invalid_input("QuantizationGrid: bands start at 1");
  return gamma * std::ldexp(1.0, 2 * (n - 1));
}

QuantizationGrid QuantizationGrid::for_pair(const FadingDist& s1,
                                            const FadingDist& s2, double gamma,
                                            double ccdf_floor, int hard_cap) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw invalid_input("QuantizationGrid: gamma must be finite and > 0");
  QuantizationGrid g;
  g.gamma = gamma;
  for (int n = 1; n <= hard_cap; ++n) {
    g.max_n = n;
    const double lv = g.level(n);
    if (s1.ccdf(lv) <= ccdf_floor && s2.ccdf(lv) <= ccdf_floor) return g;
  }
  throw numeric_error("QuantizationGrid: band count exceeded the cap");
}

double universal_gap(double gamma, int max_terms) {
  return std::log2(1.0 + gamma) + entropy_series(gamma, max_terms);
}

std::pair<double, double> minimize_gap(double lo, double hi) {
  if (!(lo > 0.0) || !(hi > lo))
    throw invalid_input("minimize_gap: need 0 < lo < hi");
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = universal_gap(c), fd = universal_gap(d);
  while (b - a > 1e-10 * std::max(1.0, b)) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = universal_gap(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = universal_gap(d);
    }
  }
  const double gstar = 0.5 * (a + b);
  return {gstar, universal_gap(gstar)};
}

std::pair<std::vector<int>, std::vector<int>> quantized_partition(
    const FadingDist& s1, const FadingDist& s2, double omega,
    const QuantizationGrid& grid) {
  if (!(omega >= 0.0))
    throw invalid_input("quantized_partition: omega must be >= 0");
  std::vector<int> one, two;
  for (int n = 1; n <= grid.max_n; ++n) {
    const double lv = grid.level(n);
    if (s1.ccdf(lv) > omega * s2.ccdf(lv))
      one.push_back(n);
    else
      two.push_back(n);
  }
  return {one, two};
}

RatePoint quantized_outer(const FadingDist& s1, const FadingDist& s2,
                          double omega, const QuantizationGrid& grid) {
  const auto [one, two] = quantized_partition(s1, s2, omega, grid);
  const double head = std::log2(1.0 + grid.gamma);
  return {head + band_sum(s1, one, grid), head + band_sum(s2, two, grid)};
}

RatePoint quantized_inner(const FadingDist& s1, const FadingDist& s2,
                          double omega, const QuantizationGrid& grid) {
  const auto [one, two] = quantized_partition(s1, s2, omega, grid);
  const double loss = entropy_series(grid.gamma, 200);
  return {std::max(0.0, band_sum(s1, one, grid) - loss),
          std::max(0.0, band_sum(s2, two, grid) - loss)};
}

GapReport empirical_gap(const FadingDist& s1, const FadingDist& s2,
                        const std::vector<double>& omegas,
                        const QuantizationGrid& grid) {
  GapReport rep;
  rep.gamma = grid.gamma;
  rep.delta_universal = universal_gap(grid.gamma);
  for (double w : omegas) {
    GapReport::Row row;
    row.omega = w;
    row.outer = quantized_outer(s1, s2, w, grid);
    row.inner = quantized_inner(s1, s2, w, grid);
    row.gap1 = row.outer.r1 - row.inner.r1;
    row.gap2 = row.outer.r2 - row.inner.r2;
    rep.max_gap1 = std::max(rep.max_gap1, row.gap1);
    rep.max_gap2 = std::max(rep.max_gap2, row.gap2);
    rep.per_omega.push_back(row);
  }
  return rep;
}

}  // namespace fbc
