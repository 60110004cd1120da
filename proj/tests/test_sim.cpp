#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "fbc/bes.hpp"
#include "fbc/erasure.hpp"
#include "fbc/sim.hpp"

using fbc::CounterRng;
using fbc::depth_infinite;
using fbc::epsilon_d;
using fbc::ErasurePmf;
using fbc::FadingDist;
using fbc::LevelAssignment;
using fbc::LevelUser;
using fbc::partition_levels;
using fbc::simulate_bes_detector;
using fbc::simulate_bes_link;
using fbc::simulate_erasure_scheme;

TEST_CASE("counter generator is a pure function of its inputs") {
  const CounterRng rng(42);
  CHECK(rng.bits(1, 7) == rng.bits(1, 7));
  CHECK(rng.bits(1, 7) != rng.bits(1, 8));
  CHECK(rng.bits(1, 7) != rng.bits(2, 7));
  CHECK(rng.bits(1, 7) != CounterRng(43).bits(1, 7));

  double mean = 0.0, var = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01(3, static_cast<uint64_t>(i));
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    mean += u;
  }
  mean /= n;
  CHECK(std::abs(mean - 0.5) < 0.005);

  double gsum = 0.0, g2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gaussian(4, static_cast<uint64_t>(i));
    gsum += g;
    g2 += g * g;
  }
  gsum /= n;
  var = g2 / n - gsum * gsum;
  CHECK(std::abs(gsum) < 0.02);
  CHECK(std::abs(var - 1.0) < 0.03);

  int pluses = 0;
  for (int i = 0; i < n; ++i) {
    const int s = rng.sign(5, static_cast<uint64_t>(i));
    CHECK((s == 1 || s == -1));
    pluses += s == 1;
  }
  CHECK(std::abs(pluses - n / 2) < 4 * std::sqrt(n / 4.0));
}

TEST_CASE("erasure scheme reproduces the worked example rates") {
  const ErasurePmf n1(2, {0.25, 0.5, 0.25});
  const ErasurePmf n2(2, {0.5, 0.0, 0.5});
  const auto part = partition_levels(n1, n2, 1.0);
  const auto res = simulate_erasure_scheme(n1, n2, part, 200000, 99);
  CHECK(res.r1.half_width_95 > 0.0);
  CHECK(std::abs(res.r1.estimate - 0.75) <= 3.0 * res.r1.half_width_95);
  CHECK(std::abs(res.r2.estimate - 0.5) <= 3.0 * res.r2.half_width_95);
  CHECK(res.r1.trials == 200000);
  CHECK(res.r1.seed == 99);

  const auto again = simulate_erasure_scheme(n1, n2, part, 200000, 99);
  CHECK(again.r1.estimate == res.r1.estimate);
  CHECK(again.r2.estimate == res.r2.estimate);
  CHECK(again.r1.half_width_95 == res.r1.half_width_95);

  const auto threaded = simulate_erasure_scheme(n1, n2, part, 200000, 99, 4);
  CHECK(threaded.r1.estimate == res.r1.estimate);
  CHECK(threaded.r2.estimate == res.r2.estimate);
}

TEST_CASE("deterministic channel delivers every level with zero variance") {
  const ErasurePmf sure(3, {0.0, 0.0, 0.0, 1.0});
  const ErasurePmf silent(3, {1.0, 0.0, 0.0, 0.0});
  const auto part = partition_levels(sure, silent, 1.0);
  const auto res = simulate_erasure_scheme(sure, silent, part, 10000, 5);
  CHECK(res.r1.estimate == 3.0);
  CHECK(res.r1.half_width_95 == 0.0);
  CHECK(res.r2.estimate == 0.0);
}

TEST_CASE("half widths shrink like the square root of the sample count") {
  const ErasurePmf n1(2, {0.25, 0.5, 0.25});
  const ErasurePmf n2(2, {0.5, 0.0, 0.5});
  const auto part = partition_levels(n1, n2, 1.0);
  const auto small = simulate_erasure_scheme(n1, n2, part, 10000, 7);
  const auto big = simulate_erasure_scheme(n1, n2, part, 40000, 7);
  const double ratio = big.r1.half_width_95 / small.r1.half_width_95;
  CHECK(ratio > 0.4);
  CHECK(ratio < 0.62);
}

TEST_CASE("detector frequency tracks the analytic crossover") {
  struct Cell {
    double a;
    int d;
  };
  const std::vector<Cell> cells = {{0.5405, 0}, {0.5405, 1},
                                   {0.5405, depth_infinite}, {1.0, 0},
                                   {1.0, 1},    {1.0, depth_infinite},
                                   {4.0, 0},    {4.0, 1},
                                   {4.0, depth_infinite}};
  for (const auto& cell : cells) {
    for (int n : {1, 2, 3}) {
      const double s = cell.a * std::ldexp(1.0, 2 * n) / 3.0;
      const auto res = simulate_bes_detector(s, n, cell.d, 100000, 31);
      const double expect = epsilon_d(cell.a, cell.d).value();
      CHECK(std::abs(res.strict.estimate - expect) <=
            3.0 * res.strict.half_width_95 + 1e-9);
      CHECK(res.word.estimate <= res.strict.estimate);
      CHECK(res.strict.extras.at("epsilon_d") ==
            doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("detector is deterministic and thread invariant") {
  const auto a = simulate_bes_detector(2.0, 2, 1, 50000, 12);
  const auto b = simulate_bes_detector(2.0, 2, 1, 50000, 12);
  const auto c = simulate_bes_detector(2.0, 2, 1, 50000, 12, 8);
  CHECK(a.strict.estimate == b.strict.estimate);
  CHECK(a.word.estimate == b.word.estimate);
  CHECK(a.strict.estimate == c.strict.estimate);
  CHECK(a.word.estimate == c.word.estimate);
}

TEST_CASE("link simulation at constant state matches the no-interference tail") {
  const double s_state = 170.0;
  const FadingDist s = FadingDist::intermittent(1.0, s_state);
  LevelAssignment all1(4);
  all1.assign_range(1, 4, LevelUser::user1);
  const auto reports =
      simulate_bes_link(s, all1, LevelUser::user1, true, 150000, 77);
  REQUIRE(reports.size() == 4);
  for (const auto& rep : reports) {
    CHECK(rep.depth == depth_infinite);
    const double a = 3.0 * s_state * std::ldexp(1.0, -2 * rep.level);
    const double expect = epsilon_d(a, depth_infinite).value();
    // Strict frequency sits at the analytic crossover when nothing is
    // guessed.  The observed interval collapses when no event fires, so
    // widen with the binomial spread at the analytic rate.
    const double spread =
        std::sqrt(expect * (1.0 - expect) / 150000.0);
    CHECK(std::abs(rep.strict.estimate - expect) <=
          3.0 * std::max(rep.strict.half_width_95, spread) + 1e-9);
    CHECK(rep.bit_error.estimate <=
          rep.strict.estimate + 3.0 * rep.strict.half_width_95 + 1e-9);
    CHECK(rep.bit_error.estimate <= rep.analytic_bound + 1e-9);
  }
}

TEST_CASE("a dead channel forces coin flips on every level") {
  const FadingDist dead = FadingDist::tabulated({{0.0, 0.0}, {1.0, 0.0}});
  LevelAssignment a(2);
  a.assign_range(1, 2, LevelUser::user1);
  const auto reports =
      simulate_bes_link(dead, a, LevelUser::user1, true, 50000, 3);
  for (const auto& rep : reports) {
    CHECK(std::abs(rep.bit_error.estimate - 0.5) <=
          3.0 * rep.bit_error.half_width_95);
    CHECK(rep.analytic_bound == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("stripping never hurts and estimates stay under the bound") {
  const FadingDist s = FadingDist::rayleigh(800.0);
  LevelAssignment split(5);
  split.assign_range(1, 2, LevelUser::user2);
  split.assign_range(3, 5, LevelUser::user1);
  const auto with =
      simulate_bes_link(s, split, LevelUser::user2, true, 120000, 55);
  const auto without =
      simulate_bes_link(s, split, LevelUser::user2, false, 120000, 55);
  REQUIRE(with.size() == 2);
  REQUIRE(without.size() == 2);
  for (std::size_t i = 0; i < with.size(); ++i) {
    CHECK(with[i].bit_error.estimate <=
          without[i].bit_error.estimate +
              3.0 * (with[i].bit_error.half_width_95 +
                     without[i].bit_error.half_width_95));
    CHECK(with[i].bit_error.estimate <=
          with[i].analytic_bound + 3.0 * with[i].bit_error.half_width_95);
    CHECK(without[i].bit_error.estimate <=
          without[i].analytic_bound +
              3.0 * without[i].bit_error.half_width_95);
  }
  // Depths recorded per level: rival user 1 starts at level 3.
  CHECK(with[0].depth == 1);
  CHECK(with[1].depth == 0);
  CHECK(without[0].depth == 0);
  CHECK(without[1].depth == 0);

  const auto threaded =
      simulate_bes_link(s, split, LevelUser::user2, true, 120000, 55, 6);
  for (std::size_t i = 0; i < with.size(); ++i) {
    CHECK(threaded[i].bit_error.estimate == with[i].bit_error.estimate);
    CHECK(threaded[i].strict.estimate == with[i].strict.estimate);
  }
}
