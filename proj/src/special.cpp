#include "fbc/special.hpp"

#include <cmath>

namespace fbc {

namespace {
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
constexpr double kInvSqrt2 = 0.7071067811865475244;

// Mills ratio Q(x)/phi(x) by the Laplace continued fraction
// 1/(x + 1/(x + 2/(x + 3/(...)))); converges fast for x >= 8.
double mills_ratio_cf(double x) {
  double f = x;
  for (int k = 40; k >= 1; --k) f = x + k / f;
  return 1.0 / f;
}
}  // namespace

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

Probability q_function(double x) {
  if (x > 8.0) return normal_pdf(x) * mills_ratio_cf(x);
  if (x < -8.0) return 1.0 - normal_pdf(-x) * mills_ratio_cf(-x);
  return 0.5 * std::erfc(x * kInvSqrt2);
}

double g_function(double x) {
  return x * q_function(x).value() - normal_pdf(x);
}

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0)
    throw invalid_input("binary_entropy argument out of [0,1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double binary_entropy_deriv(double p) {
  if (p <= 0.0 || p >= 1.0)
    throw invalid_input("binary_entropy_deriv argument out of (0,1)");
  return std::log2((1.0 - p) / p);
}

}  // namespace fbc
