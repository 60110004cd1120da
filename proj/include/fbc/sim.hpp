#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fbc/bes.hpp"
#include "fbc/erasure.hpp"
#include "fbc/fading.hpp"
#include "fbc/types.hpp"

namespace fbc {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so results are independent of worker count and
// iteration order.
class CounterRng {
 public:
  explicit CounterRng(uint64_t seed) : seed_(seed) {}

  uint64_t bits(uint64_t stream, uint64_t counter) const;
  double uniform01(uint64_t stream, uint64_t counter) const;  // open (0,1)
  // Standard normal; consumes counters 2*counter and 2*counter+1 internally.
  double gaussian(uint64_t stream, uint64_t counter) const;
  int sign(uint64_t stream, uint64_t counter) const;  // +1 or -1

  uint64_t seed() const { return seed_; }

 private:
  uint64_t seed_;
};

struct SimReport {
  std::string quantity;
  uint64_t trials = 0;
  double estimate = 0.0;
  double half_width_95 = 0.0;
  uint64_t seed = 0;
  std::map<std::string, double> extras;
};

struct ErasureSimResult {
  SimReport r1;
  SimReport r2;
};

// Monte Carlo of the level-assignment scheme on the layered erasure pair:
// per symbol, each user collects its assigned levels that arrived intact.
ErasureSimResult simulate_erasure_scheme(const ErasurePmf& n1,
                                         const ErasurePmf& n2,
                                         const LevelPartition& part,
                                         uint64_t symbols, uint64_t seed,
                                         int threads = 1);

struct DetectorSimResult {
  SimReport strict;  // frequency of |Y~ - x~^n| >= 2^-n; equals epsilon_d
  SimReport word;    // decoded-word error frequency; <= strict (clipping)
};

// Level-n detector under depth-d uniform LSB interference at normalized SNR
// a = 3 s 4^{-n}.
DetectorSimResult simulate_bes_detector(double s, int n, int d,
                                        uint64_t trials, uint64_t seed,
                                        int threads = 1);

struct LevelSimReport {
  int level = 0;
  int depth = 0;  // depth_infinite allowed
  SimReport bit_error;      // crossover incl. guessed symbols
  SimReport strict;         // strict-event frequency over non-guessed symbols
  double analytic_bound = 0.0;  // E_S[1/2 above the guess threshold, eps_hat below]
};

// Full-link Monte Carlo for one receiver: all assigned levels superposed,
// fading drawn per symbol, per-state guess threshold nhat(s), genie-aided
// stripping of the receiver's own higher levels when enabled.
std::vector<LevelSimReport> simulate_bes_link(const FadingDist& s,
                                              const LevelAssignment& assign,
                                              LevelUser user, bool stripping,
                                              uint64_t symbols, uint64_t seed,
                                              int threads = 1);

}  // namespace fbc
