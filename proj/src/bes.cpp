#include "fbc/bes.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <unordered_map>

#include "fbc/quadrature.hpp"
#include "fbc/region.hpp"
#include "fbc/special.hpp"

namespace fbc {

double AntipodalWord::value() const {
  double v = 0.0;
  for (size_t j = 0; j < bits.size(); ++j)
    v += std::ldexp(static_cast<double>(bits[j]), -static_cast<int>(j) - 1);
  return v;
}

AntipodalWord antipodal_expand(double a, int m) {
  if (m < 0) throw invalid_input("antipodal_expand: m must be >= 0");
  if (std::abs(a) > 1.0 + 1e-9)
    throw invalid_input("antipodal_expand: a must lie in [-1, 1]");
  a = std::clamp(a, -1.0, 1.0);
  AntipodalWord w;
  w.bits.reserve(m);
  double partial = 0.0;
  for (int j = 1; j <= m; ++j) {
    const int bit = a - partial >= 0.0 ? 1 : -1;
    w.bits.push_back(bit);
    partial += std::ldexp(static_cast<double>(bit), -j);
  }
  return w;
}

AntipodalWord nearest_constellation(double y, int m) {
  return antipodal_expand(std::clamp(y, -1.0, 1.0), m);
}

namespace {

QuadratureConfig tight_cfg() {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-250;
  cfg.rel_tol = 1e-13;
  return cfg;
}

// Mean of Q over [x1, x2]; stable for any width (positive integrand).
double avg_q(double x1, double x2) {
  if (x2 <= x1) return q_function(x1);
  return integrate([](double t) { return double(q_function(t)); }, x1, x2,
                   tight_cfg()) /
         (x2 - x1);
}

double avg_phi(double x1, double x2) {
  if (x2 <= x1) return normal_pdf(x1);
  return integrate(normal_pdf, x1, x2, tight_cfg()) / (x2 - x1);
}

void interference_span(double a, int d, double& x1, double& x2) {
  const double root = std::sqrt(a);
  const double half = std::ldexp(1.0, -d);
  x1 = root * (1.0 - half);
  x2 = root * (1.0 + half);
}

}  // namespace

Probability epsilon_d(double a, int d) {
  if (!(a >= 0.0) || !std::isfinite(a))
    throw invalid_input("epsilon_d: snr must be finite and >= 0");
  if (d != depth_infinite && d < 0)
    throw invalid_input("epsilon_d: depth must be >= 0");
  if (a <= 1e-8) return 1.0;
  const double root = std::sqrt(a);
  if (d == depth_infinite || d > 30) return 2.0 * double(q_function(root));
  double x1, x2;
  interference_span(a, d, x1, x2);
  if (d <= 2) {
    // G' = Q: exact mean over the span without inner quadrature.
    return (g_function(x2) - g_function(x1)) / (x2 - x1) * 2.0;
  }
  return 2.0 * avg_q(x1, x2);
}

Probability epsilon_hat(double a, int d) {
  return std::min(0.5, double(epsilon_d(a, d)));
}

double epsilon_d_deriv(double a, int d) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw invalid_input("epsilon_d_deriv: snr must be finite and > 0");
  if (d != depth_infinite && d < 0)
    throw invalid_input("epsilon_d_deriv: depth must be >= 0");
  if (a <= 1e-8) return 0.0;  // epsilon_d is pinned at 1 there
  const double root = std::sqrt(a);
  if (d == depth_infinite || d > 30) return -normal_pdf(root) / root;
  double x1, x2;
  interference_span(a, d, x1, x2);
  double mean_q, mean_phi;
  if (d <= 2) {
    mean_q = (g_function(x2) - g_function(x1)) / (x2 - x1);
    mean_phi = (double(q_function(x1)) - double(q_function(x2))) / (x2 - x1);
  } else {
    mean_q = avg_q(x1, x2);
    mean_phi = avg_phi(x1, x2);
  }
  const double q1 = q_function(x1), q2 = q_function(x2);
  return (q1 + q2 - 2.0 * mean_q) / (2.0 * a) - mean_phi / root;
}

double crossover_half_snr(int d) {
  static std::mutex mu;
  static std::unordered_map<int, double> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
  }
  double lo = 1e-8, hi = 16.0;
  // epsilon_d decreases from 1 to below 1/2 on this bracket for every depth.
  for (int iter = 0; iter < 200 && hi - lo > 1e-16 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (double(epsilon_d(mid, d)) > 0.5)
      lo = mid;
    else
      hi = mid;
  }
  const double root = 0.5 * (lo + hi);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(d, root);
  return root;
}

double crossover_half_snr() { return crossover_half_snr(0); }

int nhat(double s) {
  if (!(s >= 0.0)) throw invalid_input("nhat: snr must be >= 0");
  const double a0 = crossover_half_snr();
  if (3.0 * s < a0 * 4.0) return 0;  // level 1 already fails
  int n = static_cast<int>(
      std::floor(0.5 * std::log2(3.0 * s / a0) + 1e-9));
  n = std::max(n, 0);
  while (3.0 * s * std::ldexp(1.0, -2 * (n + 1)) >= a0) ++n;
  while (n >= 1 && 3.0 * s * std::ldexp(1.0, -2 * n) < a0) --n;
  return n;
}

LevelUser other(LevelUser u) {
  switch (u) {
    case LevelUser::user1:
      return LevelUser::user2;
    case LevelUser::user2:
      return LevelUser::user1;
    case LevelUser::unused:
      break;
  }
  return LevelUser::unused;
}

LevelAssignment::LevelAssignment(int max_level) {
  if (max_level < 1) throw invalid_input("LevelAssignment: need max_level >= 1");
  owner_.assign(max_level, LevelUser::unused);
}

LevelUser LevelAssignment::owner(int level) const {
  if (level < 1) throw invalid_input("owner: levels start at 1");
  if (level > max_level()) return LevelUser::unused;
  return owner_[level - 1];
}

void LevelAssignment::assign(int level, LevelUser u) {
  if (level < 1 || level > max_level())
    throw invalid_input("assign: level out of range");
  owner_[level - 1] = u;
}

void LevelAssignment::assign_range(int lo, int hi, LevelUser u) {
  if (lo < 1 || hi > max_level())
    throw invalid_input("assign_range: level out of range");
  for (int n = lo; n <= hi; ++n) owner_[n - 1] = u;
}

std::vector<int> LevelAssignment::levels_of(LevelUser u) const {
  std::vector<int> out;
  for (int n = 1; n <= max_level(); ++n)
    if (owner_[n - 1] == u) out.push_back(n);
  return out;
}

int depth_of_level(const LevelAssignment& a, int level) {
  const LevelUser u = a.owner(level);
  if (u == LevelUser::unused)
    throw invalid_input("depth_of_level: level is unused");
  const LevelUser rival = other(u);
  // Own and unused levels above carry no interference after stripping; the
  // first rival level m leaves residual spanning 2^{-(m-1)} = 2^{-level-d}.
  for (int m = level + 1; m <= a.max_level(); ++m)
    if (a.owner(m) == rival) return m - level - 1;
  return depth_infinite;
}

double level_rate(const FadingDist& s, int n, int d,
                  const QuadratureConfig& cfg) {
  if (n < 1) throw invalid_input("level_rate: levels start at 1");
  if (d != depth_infinite && d < 0)
    throw invalid_input("level_rate: depth must be >= 0");
  const double scale = 3.0 * std::ldexp(1.0, -2 * n);
  const double a_half = crossover_half_snr(d);
  const double s_half = a_half / scale;  // below this the level carries nothing
  const auto gprime = [scale, a_half, d](double t) {
    const double a = scale * t;
    if (a <= a_half) return 0.0;
    const double eps = epsilon_hat(a, d);
    if (eps <= 0.0 || eps >= 0.5) return 0.0;
    return -binary_entropy_deriv(eps) * epsilon_d_deriv(a, d) * scale;
  };
  // Zero-size jump registers the kink at s_half as a quadrature breakpoint.
  return 2.0 * expect_by_parts(s, 0.0, gprime, {{s_half, 0.0}}, cfg);
}

RatePoint assignment_rates(const FadingDist& s1, const FadingDist& s2,
                           const LevelAssignment& a, bool stripping,
                           const QuadratureConfig& cfg) {
  RatePoint r{0.0, 0.0};
  for (int n = 1; n <= a.max_level(); ++n) {
    const LevelUser u = a.owner(n);
    if (u == LevelUser::unused) continue;
    const int d = stripping ? depth_of_level(a, n) : 0;
    if (u == LevelUser::user1)
      r.r1 += level_rate(s1, n, d, cfg);
    else
      r.r2 += level_rate(s2, n, d, cfg);
  }
  return r;
}

RateRegionBoundary achievable_region(const FadingDist& s1, const FadingDist& s2,
                                     const std::vector<LevelAssignment>& family,
                                     bool stripping,
                                     const QuadratureConfig& cfg) {
  std::vector<RatePoint> pts;
  pts.reserve(family.size());
  for (const LevelAssignment& a : family)
    pts.push_back(assignment_rates(s1, s2, a, stripping, cfg));
  RateRegionBoundary out;
  out.points = pareto_hull(std::move(pts));
  return out;
}

namespace {

int auto_max_level(const FadingDist& s1, const FadingDist& s2) {
  int quiet = 0;
  for (int n = 1; n <= 64; ++n) {
    const double top = std::max(level_rate(s1, n, depth_infinite),
                                level_rate(s2, n, depth_infinite));
    quiet = top < 1e-9 ? quiet + 1 : 0;
    if (quiet >= 3) return std::max(1, n - 3);
  }
  return 64;
}

}  // namespace

std::vector<LevelAssignment> example_assignments(const FadingDist& s1,
                                                 const FadingDist& s2,
                                                 AssignmentStyle style,
                                                 int max_level) {
  if (max_level <= 0) max_level = auto_max_level(s1, s2);

  std::vector<LevelAssignment> fam;
  if (style == AssignmentStyle::threshold) {
    for (int n2 = 0; n2 <= max_level; ++n2) {
      LevelAssignment a(max_level);
      if (n2 >= 1) a.assign_range(1, n2, LevelUser::user2);
      if (n2 < max_level) a.assign_range(n2 + 1, max_level, LevelUser::user1);
      fam.push_back(std::move(a));
    }
    return fam;
  }

  // AWGN-vs-rayleigh sweeps need the peak level the bounded channel supports.
  const int n1 = std::min(nhat(s1.intermittent_s_star()), max_level);
  for (int t = 0; t <= n1; ++t) {
    LevelAssignment a(max_level);
    if (t >= 1) a.assign_range(1, t, LevelUser::user2);
    if (t < n1) a.assign_range(t + 1, n1, LevelUser::user1);
    if (style == AssignmentStyle::awgn_rayleigh_inner1 && n1 < max_level)
      a.assign_range(n1 + 1, max_level, LevelUser::user2);
    fam.push_back(std::move(a));
  }
  return fam;
}

}  // namespace fbc
