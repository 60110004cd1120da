#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "fbc/fading.hpp"
#include "fbc/region.hpp"
#include "oracles.hpp"

using fbc::enhance_continuous;
using fbc::ergodic_capacity;
using fbc::expect_by_parts;
using fbc::FadingDist;
using fbc::inf;
using fbc::IntervalSet;
using fbc::outer_extreme_point;
using fbc::outer_region;
using fbc::partition_states;

namespace {

// Same CCDF, forced through the general sign-scan path instead of the
// closed-form branches.
FadingDist generalize(const FadingDist& d) {
  return FadingDist::from_ccdf([d](double s) { return d.ccdf(s); }, d.atoms(),
                               d.support_max(), "general(" + d.label() + ")");
}

bool sets_agree(const IntervalSet& a, const IntervalSet& b, double tol) {
  for (double s = 0.0; s <= 12.0; s += 0.003) {
    // Skip points within tol of any edge of either set.
    bool near_edge = false;
    for (const auto& set : {a, b}) {
      for (const auto& part : set.parts()) {
        if (std::abs(s - part.lo) < tol || std::abs(s - part.hi) < tol) {
          near_edge = true;
        }
      }
    }
    if (near_edge) continue;
    if (a.contains(s) != b.contains(s)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("factory validation") {
  CHECK_THROWS_AS(FadingDist::intermittent(1.5, 10.0), fbc::invalid_input);
  CHECK_THROWS_AS(FadingDist::intermittent(0.5, -1.0), fbc::invalid_input);
  CHECK_THROWS_AS(FadingDist::rayleigh(0.0), fbc::invalid_input);
  CHECK_THROWS_AS(FadingDist::tabulated({{1.0, 0.5}, {2.0, 0.0}}),
                  fbc::invalid_input);
  CHECK_THROWS_AS(FadingDist::tabulated({{0.0, 0.5}, {2.0, 0.6}}),
                  fbc::invalid_input);
  CHECK_THROWS_AS(FadingDist::tabulated({{0.0, 0.5}, {2.0, 0.1}}),
                  fbc::invalid_input);
}

TEST_CASE("ccdf shapes and sampling") {
  const FadingDist a = FadingDist::intermittent(0.4, 10.0);
  CHECK(a.ccdf(0.0) == 0.4);
  CHECK(a.ccdf(10.0) == 0.4);
  CHECK(a.ccdf(10.0000001) == 0.0);
  CHECK(a.atoms() == std::vector<double>{10.0});
  CHECK(a.sample(0.3) == 10.0);
  CHECK(a.sample(0.7) == 0.0);

  const FadingDist r = FadingDist::rayleigh(2.0);
  CHECK(r.ccdf(0.0) == 1.0);
  CHECK(r.ccdf(2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(r.ccdf(r.sample(0.25)) == doctest::Approx(0.25).epsilon(1e-12));

  const FadingDist t = FadingDist::tabulated({{0.0, 1.0}, {1.0, 0.25}, {3.0, 0.0}});
  CHECK(t.ccdf(0.5) == 1.0);
  CHECK(t.ccdf(1.0) == 0.25);
  CHECK(t.ccdf(2.9) == 0.25);
  CHECK(t.ccdf(3.0) == 0.0);
  CHECK(t.sample(0.5) == 1.0);
  CHECK(t.sample(0.1) == 3.0);
  CHECK(t.support_max() == 3.0);
}

TEST_CASE("ergodic capacities against closed forms and oracle") {
  CHECK(ergodic_capacity(FadingDist::intermittent(1.0, 100.0)) ==
        doctest::Approx(std::log2(101.0)).epsilon(1e-12));
  CHECK(ergodic_capacity(FadingDist::intermittent(0.4, 1e6)) ==
        doctest::Approx(7.972628004807397).epsilon(1e-12));
  CHECK(ergodic_capacity(FadingDist::rayleigh(1.0)) ==
        doctest::Approx(0.8603473822708868).epsilon(1e-11));
  CHECK(ergodic_capacity(FadingDist::rayleigh(1000.0)) ==
        doctest::Approx(9.143619491037331).epsilon(1e-11));
  // Density-form oracle: log2(e) Int f(s) ln(1+s) ds for the smooth case.
  const double gamma = 10.0;
  const double pdf_form = static_cast<double>(oracle::simpson(
      [gamma](long double s) {
        return expl(-s / gamma) / gamma * logl(1.0L + s) *
               1.44269504088896340736L;
      },
      0.0L, 400.0L, 200000));
  CHECK(ergodic_capacity(FadingDist::rayleigh(gamma)) ==
        doctest::Approx(pdf_form).epsilon(1e-7));
}

TEST_CASE("intermittent pair partitions, both weight regimes") {
  const FadingDist s1 = FadingDist::intermittent(0.8, 6.0);
  const FadingDist s2 = FadingDist::intermittent(0.5, 3.0);
  const double rho = 0.8 / 0.5;

  auto [lo1, lo2] = partition_states(s1, s2, 0.5 * rho);
  CHECK(lo1.contains(0.0));
  CHECK(lo1.contains(5.9));
  CHECK(!lo1.contains(6.1));
  CHECK(lo2.contains(6.1));

  auto [hi1, hi2] = partition_states(s1, s2, 2.0 * rho);
  CHECK(!hi1.contains(1.0));
  CHECK(hi2.contains(1.0));
  CHECK(hi1.contains(4.0));
  CHECK(!hi1.contains(6.5));

  // General scan on the same CCDFs must agree away from the edges.
  auto [g1, g2] = partition_states(generalize(s1), generalize(s2), 2.0 * rho);
  CHECK(sets_agree(hi1, g1, 1e-6));
  CHECK(sets_agree(hi2, g2, 1e-6));
}

TEST_CASE("identical channels at weight one belong to user 2") {
  const FadingDist s = FadingDist::rayleigh(5.0);
  auto [i1, i2] = partition_states(s, s, 1.0);
  CHECK(i1.empty());
  CHECK(i2.contains(0.0));
  CHECK(i2.contains(100.0));
}

TEST_CASE("intermittent versus rayleigh partition threshold") {
  const FadingDist s1 = FadingDist::intermittent(0.4, 8.0);
  const FadingDist s2 = FadingDist::rayleigh(2.0);
  const double w = 1.2;
  const double s_lo = 2.0 * std::log(w / 0.4);
  auto [i1, i2] = partition_states(s1, s2, w);
  CHECK(i2.contains(0.5 * s_lo));
  CHECK(i1.contains(0.5 * (s_lo + 8.0)));
  CHECK(i2.contains(8.5));
  auto [g1, g2] = partition_states(generalize(s1), generalize(s2), w);
  CHECK(sets_agree(i1, g1, 1e-6));
  CHECK(sets_agree(i2, g2, 1e-6));
}

TEST_CASE("rayleigh versus rayleigh partition") {
  const FadingDist fast = FadingDist::rayleigh(6.0);
  const FadingDist slow = FadingDist::rayleigh(2.0);
  // Stronger user 1: crossing at ln(w)/(1/2 - 1/6).
  const double w = 3.0;
  const double cross = std::log(w) / (1.0 / 2.0 - 1.0 / 6.0);
  auto [i1, i2] = partition_states(fast, slow, w);
  CHECK(i2.contains(0.5 * cross));
  CHECK(i1.contains(cross + 1.0));
  auto [g1, g2] = partition_states(generalize(fast), generalize(slow), w);
  CHECK(sets_agree(i1, g1, 1e-6));
  CHECK(sets_agree(i2, g2, 1e-6));
}

TEST_CASE("partition is total and disjoint") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uw(0.05, 20.0);
  const FadingDist s1 = FadingDist::intermittent(0.7, 5.0);
  const FadingDist s2 = FadingDist::rayleigh(3.0);
  for (int it = 0; it < 25; ++it) {
    const double w = uw(rng);
    auto [i1, i2] = partition_states(s1, s2, w);
    for (double s = 0.0; s < 30.0; s += 0.37) {
      CHECK(i1.contains(s) != i2.contains(s));
    }
  }
}

TEST_CASE("outer extreme points: monotone in the weight and nonnegative") {
  const FadingDist s1 = FadingDist::intermittent(0.6, 50.0);
  const FadingDist s2 = FadingDist::rayleigh(10.0);
  double prev_r1 = inf;
  double prev_r2 = -1.0;
  for (double w = 0.05; w <= 40.0; w *= 1.7) {
    const auto p = outer_extreme_point(s1, s2, w);
    CHECK(p.r1 >= -1e-12);
    CHECK(p.r2 >= -1e-12);
    CHECK(p.r1 <= prev_r1 + 1e-9);
    CHECK(p.r2 >= prev_r2 - 1e-9);
    prev_r1 = p.r1;
    prev_r2 = p.r2;
  }
}

TEST_CASE("intermittent pair closed form") {
  const double p1 = 0.9, p2 = 0.45, st1 = 40.0, st2 = 12.0;
  const FadingDist s1 = FadingDist::intermittent(p1, st1);
  const FadingDist s2 = FadingDist::intermittent(p2, st2);
  const double c1 = p1 * std::log2(1.0 + st1);
  const double c2 = p2 * std::log2(1.0 + st2);
  const double rho = p1 / p2;
  const auto low = outer_extreme_point(s1, s2, 0.5 * rho);
  CHECK(low.r1 == doctest::Approx(c1).epsilon(1e-10));
  CHECK(low.r2 == doctest::Approx(0.0).epsilon(1e-10));
  const auto high = outer_extreme_point(s1, s2, 1.8 * rho);
  CHECK(high.r1 == doctest::Approx(c1 - rho * c2).epsilon(1e-10));
  CHECK(high.r2 == doctest::Approx(c2).epsilon(1e-10));
}

TEST_CASE("awgn versus rayleigh closed form spot checks") {
  const FadingDist s1 = FadingDist::intermittent(0.4, 1e6);
  const FadingDist s2 = FadingDist::rayleigh(1000.0);
  const struct {
    double w, r1, r2;
  } spots[] = {
      {0.5, 4.849316331632973, 7.511112498274555},
      {1.0, 4.036133903654443, 8.77895527635883},
      {3.0, 3.581743796349509, 9.074536075832487},
  };
  for (const auto& spot : spots) {
    const auto p = outer_extreme_point(s1, s2, spot.w);
    CHECK(p.r1 == doctest::Approx(spot.r1).epsilon(1e-8));
    CHECK(p.r2 == doctest::Approx(spot.r2).epsilon(1e-8));
  }
}

TEST_CASE("outer region endpoints and hull ordering") {
  const FadingDist s1 = FadingDist::intermittent(1.0, 100.0);
  const FadingDist s2 = FadingDist::intermittent(1.0, 10.0);
  std::vector<double> omegas;
  for (double w = 1e-3; w <= 1e3; w *= 2.0) omegas.push_back(w);
  const auto region = outer_region(s1, s2, omegas);
  REQUIRE(region.points.size() >= 2);
  CHECK(region.points.front().r1 ==
        doctest::Approx(std::log2(101.0)).epsilon(1e-9));
  CHECK(region.points.front().r2 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(region.points.back().r1 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(region.points.back().r2 ==
        doctest::Approx(std::log2(11.0)).epsilon(1e-9));
  for (std::size_t i = 1; i < region.points.size(); ++i) {
    CHECK(region.points[i].r1 <= region.points[i - 1].r1 + 1e-12);
    CHECK(region.points[i].r2 >= region.points[i - 1].r2 - 1e-12);
  }
}

TEST_CASE("continuous enhancement formula and dominance") {
  const FadingDist s1 = FadingDist::intermittent(0.4, 1000.0);
  const FadingDist s2 = FadingDist::rayleigh(100.0);
  const double w = 1.0;
  const FadingDist enh = enhance_continuous(s1, s2, w);
  for (double s = 0.0; s <= 2000.0; s += 0.37) {
    const double expect =
        std::min(1.0, std::max(s1.ccdf(s), w * s2.ccdf(s)));
    CHECK(enh.ccdf(s) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(enh.ccdf(s) >= s1.ccdf(s));
  }
  CHECK_THROWS_AS(enhance_continuous(s1, s2, 0.9), fbc::invalid_input);

  // Self-enhancement doubles the tail, clipped at one.
  const FadingDist twice = enhance_continuous(s2, s2, 2.0);
  for (double s : {0.0, 10.0, 200.0, 900.0}) {
    CHECK(twice.ccdf(s) ==
          doctest::Approx(std::min(1.0, 2.0 * s2.ccdf(s))).epsilon(1e-14));
  }

  // Enhancement can only grow the support in every direction, and at the
  // enhancement weight itself the extreme point is unchanged: the stronger
  // tail only adds mass on states the second user already owned.
  std::vector<double> omegas;
  for (double x = 1e-2; x <= 1e2; x *= 3.0) omegas.push_back(x);
  const auto base = outer_region(s1, s2, omegas);
  const auto bigger = outer_region(enh, s2, omegas);
  for (double x : omegas) {
    CHECK(fbc::support_value(bigger.points, x) >=
          fbc::support_value(base.points, x) - 1e-7);
  }
  CHECK(bigger.points.front().r1 >= base.points.front().r1 - 1e-9);
  const auto pinned = outer_extreme_point(enh, s2, w);
  const auto at_w = outer_extreme_point(s1, s2, w);
  CHECK(pinned.r1 == doctest::Approx(at_w.r1).epsilon(1e-6));
  CHECK(pinned.r2 == doctest::Approx(at_w.r2).epsilon(1e-6));
}

TEST_CASE("expectation by parts handles atoms and jumps") {
  const FadingDist a = FadingDist::intermittent(0.35, 7.0);
  // E[S] through the ccdf route.
  const double mean_a =
      expect_by_parts(a, 0.0, [](double) { return 1.0; });
  CHECK(mean_a == doctest::Approx(0.35 * 7.0).epsilon(1e-12));
  const FadingDist r = FadingDist::rayleigh(3.0);
  const double mean_r =
      expect_by_parts(r, 0.0, [](double) { return 1.0; });
  CHECK(mean_r == doctest::Approx(3.0).epsilon(1e-10));
  // Pure step g(s) = 1{s >= c}: expectation is the ccdf at the step.
  const double step = expect_by_parts(
      r, 0.0, [](double) { return 0.0; }, {{2.0, 1.0}});
  CHECK(step == doctest::Approx(r.ccdf(2.0)).epsilon(1e-12));
  // Smooth case with known answer: E[log2(1+S)] equals the ergodic capacity.
  const double cap = expect_by_parts(
      r, 0.0,
      [](double s) { return 1.4426950408889634 / (1.0 + s); });
  CHECK(cap == doctest::Approx(ergodic_capacity(r)).epsilon(1e-10));
}
