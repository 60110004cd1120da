#pragma once

#include <functional>
#include <vector>

#include "fbc/types.hpp"

namespace fbc {

struct QuadratureConfig {
  double abs_tol = 1e-9;        // absolute tolerance, bits
  double rel_tol = 1e-9;        // relative tolerance
  int max_depth = 48;           // adaptive bisection depth per panel
  double tail_cutoff_prob = 1e-12;  // CCDF level negligible for tail truncation
  int max_tail_blocks = 200;    // doubling blocks allowed on [a, inf)
};

// Adaptive Gauss-Kronrod 15(7) on a finite interval.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureConfig& cfg = {});

// Integral of f over a finite interval set, split at the given breakpoints so
// each panel sees a smooth integrand.  An unbounded final interval is handled
// with doubling blocks; `decay_gauge` (non-increasing, e.g. the CCDF) decides
// when the remaining tail is negligible.
double integrate_over_set(const std::function<double(double)>& f,
                          const IntervalSet& set,
                          const std::vector<double>& breakpoints,
                          const std::function<double(double)>& decay_gauge,
                          const QuadratureConfig& cfg = {});

// log2(e) * Integral_set ccdf(s)/(1+s) ds with splits at CCDF atoms.
double integrate_ccdf_weighted(const std::function<double(double)>& ccdf,
                               const IntervalSet& set,
                               const std::vector<double>& atoms = {},
                               const QuadratureConfig& cfg = {});

// mu_Gamma(a, b) = log2(e) * Integral_a^b e^{-s/Gamma}/(1+s) ds, b may be inf.
double mu_gamma(double gamma_mean, double a, double b,
                const QuadratureConfig& cfg = {});

}  // namespace fbc
