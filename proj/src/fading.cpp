#include "fbc/fading.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fbc/region.hpp"

namespace fbc {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

FadingDist FadingDist::intermittent(double p, double s_star) {
  if (!(p > 0.0) || !(p <= 1.0))
    throw invalid_input("intermittent: need 0 < p <= 1");
  if (!(s_star > 0.0) || !std::isfinite(s_star))
    throw invalid_input("intermittent: need finite s_star > 0");
  FadingDist d;
  d.kind_ = Kind::intermittent;
  d.p_ = p;
  d.s_star_ = s_star;
  d.ccdf_ = [p, s_star](double s) { return s <= s_star ? p : 0.0; };
  d.atoms_ = {s_star};
  d.support_max_ = s_star;
  d.label_ = "intermittent(p=" + fmt(p) + ",s=" + fmt(s_star) + ")";
  return d;
}

FadingDist FadingDist::rayleigh(double gamma_mean) {
  if (!(gamma_mean > 0.0) || !std::isfinite(gamma_mean))
    throw invalid_input("rayleigh: need finite mean gain > 0");
  FadingDist d;
  d.kind_ = Kind::rayleigh;
  d.gamma_ = gamma_mean;
  d.ccdf_ = [gamma_mean](double s) { return std::exp(-s / gamma_mean); };
  d.support_max_ = inf;
  d.label_ = "rayleigh(gamma=" + fmt(gamma_mean) + ")";
  return d;
}

FadingDist FadingDist::tabulated(std::vector<std::pair<double, double>> points) {
  if (points.size() < 2)
    throw invalid_input("tabulated: need at least two (s, ccdf) points");
  if (points.front().first != 0.0)
    throw invalid_input("tabulated: first point must be at s = 0");
  for (size_t i = 0; i < points.size(); ++i) {
    const auto& [s, v] = points[i];
    if (!std::isfinite(s) || s < 0.0)
      throw invalid_input("tabulated: s values must be finite and >= 0");
    if (!(v >= 0.0) || !(v <= 1.0))
      throw invalid_input("tabulated: ccdf values must lie in [0, 1]");
    if (i > 0) {
      if (s <= points[i - 1].first)
        throw invalid_input("tabulated: s values must be strictly increasing");
      if (v > points[i - 1].second)
        throw invalid_input("tabulated: ccdf values must be non-increasing");
    }
  }
  if (points.back().second != 0.0)
    throw invalid_input("tabulated: last ccdf value must be 0");
  FadingDist d;
  d.kind_ = Kind::tabulated;
  d.points_ = std::move(points);
  const auto pts = d.points_;
  d.ccdf_ = [pts](double s) {
    if (s < 0.0) return 1.0;
    double v = 0.0;
    for (const auto& [sj, vj] : pts) {
      if (s < sj) break;
      v = vj;
    }
    return v;
  };
  for (const auto& [sj, vj] : d.points_) d.atoms_.push_back(sj);
  d.support_max_ = d.points_.back().first;
  d.label_ = "tabulated(" + std::to_string(d.points_.size()) + " pts)";
  return d;
}

FadingDist FadingDist::from_ccdf(std::function<double(double)> ccdf,
                                 std::vector<double> atoms, double support_max,
                                 std::string label) {
  if (!ccdf) throw invalid_input("from_ccdf: missing ccdf");
  if (!(support_max > 0.0)) throw invalid_input("from_ccdf: bad support bound");
  FadingDist d;
  d.kind_ = Kind::derived;
  d.ccdf_ = std::move(ccdf);
  for (double a : atoms)
    if (!(a >= 0.0) || !std::isfinite(a))
      throw invalid_input("from_ccdf: atoms must be finite and >= 0");
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  d.atoms_ = std::move(atoms);
  d.support_max_ = support_max;
  d.label_ = std::move(label);
  return d;
}

double FadingDist::intermittent_p() const {
  if (kind_ != Kind::intermittent)
    throw invalid_input("intermittent_p: wrong kind");
  return p_;
}

double FadingDist::intermittent_s_star() const {
  if (kind_ != Kind::intermittent)
    throw invalid_input("intermittent_s_star: wrong kind");
  return s_star_;
}

double FadingDist::rayleigh_gamma() const {
  if (kind_ != Kind::rayleigh) throw invalid_input("rayleigh_gamma: wrong kind");
  return gamma_;
}

const std::vector<std::pair<double, double>>& FadingDist::tabulated_points()
    const {
  if (kind_ != Kind::tabulated)
    throw invalid_input("tabulated_points: wrong kind");
  return points_;
}

double FadingDist::sample(double u01) const {
  if (!(u01 > 0.0) || !(u01 < 1.0))
    throw invalid_input("sample: u must lie in (0, 1)");
  switch (kind_) {
    case Kind::intermittent:
      return u01 <= p_ ? s_star_ : 0.0;
    case Kind::rayleigh:
      return -gamma_ * std::log(u01);
    case Kind::tabulated: {
      // Mass v_{j-1} - v_j sits at s_j (v_{-1} = 1); invert the right-step ccdf.
      for (const auto& [sj, vj] : points_)
        if (u01 > vj) return sj;
      return points_.back().first;
    }
    case Kind::derived:
      throw invalid_input("sample: unavailable for derived distributions");
  }
  throw invalid_input("sample: unknown kind");
}

double ergodic_capacity(const FadingDist& s, const QuadratureConfig& cfg) {
  IntervalSet domain({Interval{0.0, s.support_max()}});
  return integrate_ccdf_weighted([&s](double x) { return s.ccdf(x); }, domain,
                                 s.atoms(), cfg);
}

namespace {

std::pair<IntervalSet, IntervalSet> make_sets(
    std::vector<Interval> one, std::vector<Interval> two) {
  auto clean = [](std::vector<Interval>& v) {
    v.erase(std::remove_if(v.begin(), v.end(),
                           [](const Interval& iv) { return !(iv.hi > iv.lo); }),
            v.end());
  };
  clean(one);
  clean(two);
  return {IntervalSet(std::move(one)), IntervalSet(std::move(two))};
}

std::pair<IntervalSet, IntervalSet> partition_general(
    const FadingDist& s1, const FadingDist& s2, double omega,
    const PartitionConfig& pcfg) {
  const auto diff = [&](double s) { return s1.ccdf(s) - omega * s2.ccdf(s); };

  std::vector<double> edges{0.0};
  for (double a : s1.atoms())
    if (a > 0.0) edges.push_back(a);
  for (double a : s2.atoms())
    if (a > 0.0) edges.push_back(a);

  const bool unbounded =
      !std::isfinite(std::max(s1.support_max(), s2.support_max()));
  double shi;
  if (unbounded) {
    shi = 1.0;
    for (double a : edges) shi = std::max(shi, a);
    while ((s1.ccdf(shi) > 1e-18 || s2.ccdf(shi) > 1e-18) && shi < 1e15)
      shi *= 2.0;
  } else {
    shi = std::max(s1.support_max(), s2.support_max());
  }
  edges.push_back(shi);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges.erase(std::remove_if(edges.begin(), edges.end(),
                             [shi](double e) { return e > shi; }),
              edges.end());

  // Scan in u = log1p(s): resolves both the unit scale and heavy tails.
  const double uhi = std::log1p(shi);
  std::vector<double> grid;
  grid.reserve(pcfg.grid_points + edges.size());
  for (int k = 0; k <= pcfg.grid_points; ++k)
    grid.push_back(std::expm1(uhi * k / pcfg.grid_points));
  grid.insert(grid.end(), edges.begin(), edges.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<double> cuts{0.0};
  for (double e : edges) cuts.push_back(e);
  for (size_t k = 0; k + 1 < grid.size(); ++k) {
    const bool a = diff(grid[k]) > 0.0;
    const bool b = diff(grid[k + 1]) > 0.0;
    if (a == b) continue;
    double lo = grid[k], hi = grid[k + 1];
    while (hi - lo > pcfg.refine_rel_tol * std::max(1.0, hi)) {
      const double mid = 0.5 * (lo + hi);
      if ((diff(mid) > 0.0) == a)
        lo = mid;
      else
        hi = mid;
    }
    cuts.push_back(0.5 * (lo + hi));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Interval> one, two;
  for (size_t k = 0; k + 1 < cuts.size(); ++k) {
    const Interval cell{cuts[k], cuts[k + 1]};
    if (diff(0.5 * (cell.lo + cell.hi)) > 0.0)
      one.push_back(cell);
    else
      two.push_back(cell);
  }
  // Beyond both supports the balance is zero, and ties go to user 2.
  const Interval tail{shi, inf};
  if (unbounded && diff(2.0 * shi) > 0.0)
    one.push_back(tail);
  else
    two.push_back(tail);
  // Re-merge adjacent same-owner cells happens inside IntervalSet.
  return make_sets(std::move(one), std::move(two));
}

}  // namespace

std::pair<IntervalSet, IntervalSet> partition_states(
    const FadingDist& s1, const FadingDist& s2, double omega,
    const PartitionConfig& pcfg) {
  if (!(omega >= 0.0)) throw invalid_input("partition_states: omega must be >= 0");
  using K = FadingDist::Kind;

  if (s1.kind() == K::intermittent && s2.kind() == K::intermittent) {
    const double p1 = s1.intermittent_p(), a1 = s1.intermittent_s_star();
    const double p2 = s2.intermittent_p(), a2 = s2.intermittent_s_star();
    // The point is discontinuous across the knife edge p1 = omega p2, and a
    // caller passing omega = p1 / p2 deserves the tie: absorb the division
    // roundoff before comparing.
    if (p1 > omega * p2 * (1.0 + 8.0 * 1.1e-16))
      return make_sets({{0.0, a1}}, {{a1, inf}});
    return make_sets({{std::min(a2, a1), a1}}, {{0.0, std::min(a2, a1)},
                                                {a1, inf}});
  }
  if (s1.kind() == K::intermittent && s2.kind() == K::rayleigh) {
    const double p1 = s1.intermittent_p(), a1 = s1.intermittent_s_star();
    const double g2 = s2.rayleigh_gamma();
    const double s_lo =
        omega > 0.0 ? std::max(0.0, g2 * std::log(omega / p1)) : 0.0;
    if (s_lo >= a1) return make_sets({}, {{0.0, inf}});
    return make_sets({{s_lo, a1}}, {{0.0, s_lo}, {a1, inf}});
  }
  if (s1.kind() == K::rayleigh && s2.kind() == K::intermittent) {
    const double g1 = s1.rayleigh_gamma();
    const double p2 = s2.intermittent_p(), a2 = s2.intermittent_s_star();
    // Below a2 user 1 wins while e^{-s/g1} > omega p2; above a2 always.
    double s_c;
    if (omega * p2 <= 0.0)
      s_c = inf;
    else if (omega * p2 >= 1.0)
      s_c = 0.0;
    else
      s_c = g1 * std::log(1.0 / (omega * p2));
    if (s_c >= a2) return make_sets({{0.0, inf}}, {});
    return make_sets({{0.0, s_c}, {a2, inf}}, {{s_c, a2}});
  }
  if (s1.kind() == K::rayleigh && s2.kind() == K::rayleigh) {
    const double g1 = s1.rayleigh_gamma(), g2 = s2.rayleigh_gamma();
    if (g1 == g2) {
      if (omega < 1.0) return make_sets({{0.0, inf}}, {});
      return make_sets({}, {{0.0, inf}});
    }
    if (omega == 0.0) return make_sets({{0.0, inf}}, {});
    const double d = 1.0 / g2 - 1.0 / g1;
    const double cross = std::log(omega) / d;
    if (g1 > g2) {
      const double c = std::max(0.0, cross);
      return make_sets({{c, inf}}, {{0.0, c}});
    }
    if (omega >= 1.0) return make_sets({}, {{0.0, inf}});
    return make_sets({{0.0, cross}}, {{cross, inf}});
  }
  return partition_general(s1, s2, omega, pcfg);
}

RatePoint outer_extreme_point(const FadingDist& s1, const FadingDist& s2,
                              double omega, const QuadratureConfig& cfg,
                              const PartitionConfig& pcfg) {
  const auto [one, two] = partition_states(s1, s2, omega, pcfg);
  RatePoint r;
  r.r1 = integrate_ccdf_weighted([&](double s) { return s1.ccdf(s); }, one,
                                 s1.atoms(), cfg);
  r.r2 = integrate_ccdf_weighted([&](double s) { return s2.ccdf(s); }, two,
                                 s2.atoms(), cfg);
  return r;
}

RateRegionBoundary outer_region(const FadingDist& s1, const FadingDist& s2,
                                const std::vector<double>& omegas,
                                const QuadratureConfig& cfg) {
  std::vector<RatePoint> pts;
  for (double w : omegas) pts.push_back(outer_extreme_point(s1, s2, w, cfg));
  pts.push_back(RatePoint{ergodic_capacity(s1, cfg), 0.0});
  pts.push_back(RatePoint{0.0, ergodic_capacity(s2, cfg)});
  RateRegionBoundary out;
  out.points = pareto_hull(std::move(pts));
  out.critical_weights = omegas;
  std::sort(out.critical_weights.begin(), out.critical_weights.end());
  out.critical_weights.erase(std::unique(out.critical_weights.begin(),
                                         out.critical_weights.end()),
                             out.critical_weights.end());
  return out;
}

FadingDist enhance_continuous(const FadingDist& s1, const FadingDist& s2,
                              double omega) {
  if (!(omega >= 1.0))
    throw invalid_input("enhance_continuous: omega must be >= 1");
  auto c1 = [&s1](double s) { return s1.ccdf(s); };
  auto c2 = [&s2](double s) { return s2.ccdf(s); };
  std::vector<double> atoms = s1.atoms();
  atoms.insert(atoms.end(), s2.atoms().begin(), s2.atoms().end());
  const double sup = std::max(s1.support_max(), s2.support_max());
  return FadingDist::from_ccdf(
      [c1, c2, omega](double s) {
        return std::min(1.0, std::max(c1(s), omega * c2(s)));
      },
      std::move(atoms), sup, "enhanced(" + s1.label() + "," + s2.label() + ")");
}

double expect_by_parts(const FadingDist& s, double g_at_zero,
                       const std::function<double(double)>& gprime,
                       const std::vector<std::pair<double, double>>& jumps,
                       const QuadratureConfig& cfg) {
  std::vector<double> breaks = s.atoms();
  for (const auto& [where, size] : jumps) {
    (void)size;
    breaks.push_back(where);
  }
  IntervalSet domain({Interval{0.0, s.support_max()}});
  double val = g_at_zero;
  val += integrate_over_set(
      [&](double t) { return s.ccdf(t) * gprime(t); }, domain, breaks,
      [&](double t) { return s.ccdf(t); }, cfg);
  for (const auto& [where, size] : jumps) val += size * s.ccdf(where);
  return val;
}

}  // namespace fbc
