#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "fbc/bes.hpp"
#include "fbc/special.hpp"
#include "oracles.hpp"

using fbc::antipodal_expand;
using fbc::AntipodalWord;
using fbc::assignment_rates;
using fbc::binary_entropy;
using fbc::crossover_half_snr;
using fbc::depth_infinite;
using fbc::depth_of_level;
using fbc::epsilon_d;
using fbc::epsilon_d_deriv;
using fbc::epsilon_hat;
using fbc::example_assignments;
using fbc::FadingDist;
using fbc::level_rate;
using fbc::LevelAssignment;
using fbc::LevelUser;
using fbc::nearest_constellation;
using fbc::nhat;
using fbc::q_function;

TEST_CASE("antipodal expansion basics") {
  CHECK(antipodal_expand(0.3, 0).bits.empty());
  const AntipodalWord w = antipodal_expand(0.3, 3);
  REQUIRE(w.bits.size() == 3);
  // 0.3: +1 (0.5), then -1 (0.25), then +1 (0.375).
  CHECK(w.bits[0] == 1);
  CHECK(w.bits[1] == -1);
  CHECK(w.bits[2] == 1);
  CHECK(w.value() == doctest::Approx(0.375).epsilon(1e-15));
  // sgn(0) = +1 at every stage.
  const AntipodalWord z = antipodal_expand(0.0, 2);
  CHECK(z.bits[0] == 1);
  CHECK(z.bits[1] == -1);
  CHECK_THROWS_AS(antipodal_expand(1.5, 2), fbc::invalid_input);
}

TEST_CASE("expansion converges at rate two to the minus m") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int it = 0; it < 1000; ++it) {
    const double a = u(rng);
    const int m = 1 + static_cast<int>(rng() % 12);
    const AntipodalWord w = antipodal_expand(a, m);
    CHECK(std::abs(a - w.value()) <= std::ldexp(1.0, -m) + 1e-15);
    for (int b : w.bits) CHECK(std::abs(b) == 1);
  }
}

TEST_CASE("nearest constellation point is the exhaustive argmin") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.6, 1.6);
  for (int it = 0; it < 2000; ++it) {
    const int m = 1 + static_cast<int>(rng() % 10);
    const double y = u(rng);
    const AntipodalWord got = nearest_constellation(y, m);
    double best = 2.0;
    for (uint32_t mask = 0; mask < (1u << m); ++mask) {
      AntipodalWord cand;
      for (int j = 0; j < m; ++j) {
        cand.bits.push_back((mask >> j) & 1 ? 1 : -1);
      }
      best = std::min(best, std::abs(y - cand.value()));
    }
    CHECK(std::abs(y - got.value()) <= best + 1e-15);
  }
}

TEST_CASE("crossover probability: pinned points") {
  CHECK(crossover_half_snr(0) ==
        doctest::Approx(0.5405207194609891).epsilon(1e-10));
  CHECK(epsilon_d(0.5405, 0).value() ==
        doctest::Approx(0.5000068721126897).epsilon(1e-10));
  const double a0 = crossover_half_snr(0);
  CHECK(epsilon_d(a0, 0).value() == doctest::Approx(0.5).epsilon(1e-12));
  // Deep stripping reduces to the pure gaussian tail.
  for (double a : {0.01, 0.4, 2.0, 30.0}) {
    CHECK(epsilon_d(a, depth_infinite).value() ==
          doctest::Approx(2.0 * q_function(std::sqrt(a)).value())
              .epsilon(1e-13));
    CHECK(std::abs(epsilon_d(a, 31).value() -
                   2.0 * q_function(std::sqrt(a)).value()) <= 1e-15);
  }
}

TEST_CASE("crossover matches the interval mean of the gaussian tail") {
  // Independent Simpson evaluation of mean 2Q over the interference span.
  for (double a : {0.2, 1.0, 7.0}) {
    for (int d : {0, 1, 2, 4, 9}) {
      const long double root = sqrtl(static_cast<long double>(a));
      const long double span = powl(2.0L, -d);
      const long double x1 = root * (1.0L - span);
      const long double x2 = root * (1.0L + span);
      const long double ref =
          oracle::simpson([](long double x) { return oracle::q_ld(x); }, x1,
                          x2, 4000) /
          (x2 - x1) * 2.0L;
      CHECK(epsilon_d(a, d).value() ==
            doctest::Approx(static_cast<double>(ref)).epsilon(1e-9));
    }
  }
}

TEST_CASE("crossover monotone in snr and in depth") {
  for (int d : {0, 1, 3, 7}) {
    double prev = 1.1;
    for (double a = 1e-3; a <= 1e3; a *= 1.45) {
      const double e = epsilon_d(a, d).value();
      CHECK(e <= prev + 1e-13);
      prev = e;
    }
  }
  for (double a : {0.3, 1.0, 5.0}) {
    double prev = 1.1;
    for (int d = 0; d <= 12; ++d) {
      const double e = epsilon_d(a, d).value();
      CHECK(e <= prev + 1e-13);
      prev = e;
    }
    CHECK(epsilon_d(a, depth_infinite).value() <= prev + 1e-13);
  }
}

TEST_CASE("deep but finite stripping is numerically the limit") {
  for (double a = 0.01; a <= 100.0; a *= 1.9) {
    CHECK(std::abs(epsilon_d(a, 25).value() -
                   2.0 * q_function(std::sqrt(a)).value()) <= 1e-6);
  }
}

TEST_CASE("crossover derivative matches finite differences") {
  for (double a : {0.3, 1.0, 4.0, 20.0}) {
    for (int d : {0, 1, 2, 5, 12, depth_infinite}) {
      const double h = 1e-5 * a;
      const double diff =
          (epsilon_d(a + h, d).value() - epsilon_d(a - h, d).value()) /
          (2.0 * h);
      const double got = epsilon_d_deriv(a, d);
      CHECK(got < 0.0);
      CHECK(got == doctest::Approx(diff).epsilon(2e-5));
    }
  }
}

TEST_CASE("half-crossover roots per depth") {
  for (int d : {0, 1, 2, 5, 31}) {
    const double a = crossover_half_snr(d);
    CHECK(epsilon_d(a, d).value() == doctest::Approx(0.5).epsilon(1e-10));
  }
  // Clipped variant saturates at one half below the root.
  const double a0 = crossover_half_snr(0);
  CHECK(epsilon_hat(0.5 * a0, 0).value() == 0.5);
  CHECK(epsilon_hat(2.0 * a0, 0).value() < 0.5);
}

TEST_CASE("decodable level count") {
  CHECK(nhat(1e6) == 11);
  CHECK(nhat(0.1) == 0);
  const double boundary = 0.7206942926146521;
  CHECK(nhat(boundary * (1.0 - 1e-6)) == 0);
  CHECK(nhat(boundary * (1.0 + 1e-6)) == 1);
  // Exhaustive scan oracle away from boundaries.
  const double a0 = crossover_half_snr(0);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 9.0);
  for (int it = 0; it < 300; ++it) {
    const double s = std::pow(10.0, u(rng));
    int ref = 0;
    for (int n = 1; n <= 64; ++n) {
      if (3.0 * s * std::ldexp(1.0, -2 * n) >= a0) ref = n;
    }
    if (ref > 0) {
      const double slack =
          std::abs(3.0 * s * std::ldexp(1.0, -2 * ref) - a0);
      if (slack < 1e-9 * a0) continue;  // too close to a flip to pin
    }
    CHECK(nhat(s) == ref);
  }
}

TEST_CASE("stripping depth counts levels to the first rival") {
  LevelAssignment a(5);
  a.assign(1, LevelUser::user2);
  a.assign(2, LevelUser::user1);
  a.assign(3, LevelUser::user1);
  a.assign(4, LevelUser::user2);
  // level 5 left unused
  CHECK(depth_of_level(a, 1) == 0);   // rival at level 2
  CHECK(depth_of_level(a, 2) == 1);   // own level 3 passes, rival at 4
  CHECK(depth_of_level(a, 3) == 0);   // rival at 4
  CHECK(depth_of_level(a, 4) == depth_infinite);  // unused below carries none

  // Threshold split: user 2 on 1..n2, user 1 above.
  LevelAssignment t(6);
  t.assign_range(1, 2, LevelUser::user2);
  t.assign_range(3, 6, LevelUser::user1);
  CHECK(depth_of_level(t, 1) == 1);
  CHECK(depth_of_level(t, 2) == 0);
  for (int n = 3; n <= 6; ++n) {
    CHECK(depth_of_level(t, n) == depth_infinite);
  }
}

TEST_CASE("per-level rate: intermittent closed form") {
  const FadingDist s = FadingDist::intermittent(0.7, 300.0);
  for (int n : {1, 2, 4}) {
    for (int d : {0, 2, depth_infinite}) {
      const double a = 3.0 * 300.0 * std::ldexp(1.0, -2 * n);
      const double expect =
          2.0 * 0.7 * (1.0 - binary_entropy(epsilon_hat(a, d).value()));
      CHECK(level_rate(s, n, d) == doctest::Approx(expect).epsilon(1e-9));
    }
  }
}

TEST_CASE("per-level rate: rayleigh against grid and monte carlo oracles") {
  const double gamma = 1000.0;
  const FadingDist s = FadingDist::rayleigh(gamma);
  const int n = 3;
  const double got = level_rate(s, n, 0);

  // Midpoint-rule density oracle.
  const int cells = 4000;
  const double top = 40.0 * gamma;
  double grid_sum = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double mid = top * (i + 0.5) / cells;
    const double a = 3.0 * mid * std::ldexp(1.0, -2 * n);
    const double g =
        2.0 * (1.0 - binary_entropy(epsilon_hat(a, 0).value()));
    grid_sum += g * std::exp(-mid / gamma) / gamma * (top / cells);
  }
  CHECK(got == doctest::Approx(grid_sum).epsilon(2e-4));

  // Small Monte Carlo cross-check.
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(1e-12, 1.0);
  const int draws = 4000;
  double mc = 0.0, mc2 = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double state = -gamma * std::log(u(rng));
    const double a = 3.0 * state * std::ldexp(1.0, -2 * n);
    const double g =
        2.0 * (1.0 - binary_entropy(epsilon_hat(a, 0).value()));
    mc += g;
    mc2 += g * g;
  }
  mc /= draws;
  mc2 = mc2 / draws - mc * mc;
  const double sigma = std::sqrt(std::max(mc2, 0.0) / draws);
  CHECK(std::abs(got - mc) <= 4.0 * sigma + 1e-6);
}

TEST_CASE("assignment rates split by user and respect stripping") {
  const FadingDist s1 = FadingDist::intermittent(1.0, 100.0);
  const FadingDist s2 = FadingDist::intermittent(1.0, 10.0);
  LevelAssignment a(4);
  a.assign_range(1, 1, LevelUser::user2);
  a.assign_range(2, 4, LevelUser::user1);
  const auto rs = assignment_rates(s1, s2, a, true);
  const auto nors = assignment_rates(s1, s2, a, false);
  CHECK(rs.r1 >= nors.r1 - 1e-12);
  CHECK(rs.r2 >= nors.r2 - 1e-12);
  // User 2 rate comes from level 1 at depth 0 when stripping (rival at 2).
  const double expect_r2 = level_rate(s2, 1, 0);
  CHECK(rs.r2 == doctest::Approx(expect_r2).epsilon(1e-12));
  // User 1 top level sees no rival above.
  const double expect_r1 = level_rate(s1, 2, depth_infinite) +
                           level_rate(s1, 3, depth_infinite) +
                           level_rate(s1, 4, depth_infinite);
  CHECK(rs.r1 == doctest::Approx(expect_r1).epsilon(1e-12));
}

TEST_CASE("threshold family sweeps the split point") {
  const FadingDist s1 = FadingDist::intermittent(1.0, 100.0);
  const FadingDist s2 = FadingDist::intermittent(1.0, 10.0);
  const auto family =
      example_assignments(s1, s2, fbc::AssignmentStyle::threshold, 6);
  REQUIRE(family.size() == 7);  // n2 = 0..6
  for (std::size_t k = 0; k < family.size(); ++k) {
    for (int n = 1; n <= 6; ++n) {
      const LevelUser expect =
          n <= static_cast<int>(k) ? LevelUser::user2 : LevelUser::user1;
      CHECK(family[k].owner(n) == expect);
    }
  }
}
