#pragma once

#include "fbc/types.hpp"

namespace fbc {

// Standard normal density.
double normal_pdf(double x);

// Gaussian tail Q(x) = P(Z >= x). erfc-based for |x| <= 8; Mills-ratio
// continued fraction beyond, where the tail ratio drives detector error rates.
Probability q_function(double x);

// G(x) = x Q(x) - phi(x).  G' = Q, G < 0, G -> 0- as x -> inf.
double g_function(double x);

// Binary entropy in bits; 0 at the endpoints.
double binary_entropy(double p);

// d/dp binary_entropy = log2((1-p)/p), p in (0,1).
double binary_entropy_deriv(double p);

}  // namespace fbc
