#include "fbc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "fbc/special.hpp"

namespace fbc {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

int clamp_threads(int threads) {
  return std::clamp(threads, 1, 512);
}

// Runs fn(lo, hi, slot) on contiguous chunks; slots let workers accumulate
// into disjoint integer buckets so totals are order-independent.
template <typename F>
void parallel_chunks(uint64_t total, int threads, F fn) {
  threads = clamp_threads(threads);
  if (threads == 1 || total < 2 * static_cast<uint64_t>(threads)) {
    fn(uint64_t{0}, total, 0);
    return;
  }
  std::vector<std::thread> pool;
  const uint64_t chunk = (total + threads - 1) / threads;
  for (int k = 0; k < threads; ++k) {
    const uint64_t lo = chunk * k;
    const uint64_t hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([=] { fn(lo, hi, k); });
  }
  for (auto& t : pool) t.join();
}

double binomial_half_width(uint64_t hits, uint64_t trials) {
  if (trials == 0) return 0.0;
  const double p = static_cast<double>(hits) / static_cast<double>(trials);
  return 1.96 * std::sqrt(std::max(0.0, p * (1.0 - p)) /
                          static_cast<double>(trials));
}

}  // namespace

uint64_t CounterRng::bits(uint64_t stream, uint64_t counter) const {
  uint64_t z = seed_ + 0x9E3779B97F4A7C15ull;
  z = mix64(z);
  z = mix64(z + stream * 0x9E3779B97F4A7C15ull);
  z = mix64(z + counter * 0x9E3779B97F4A7C15ull);
  return z;
}

double CounterRng::uniform01(uint64_t stream, uint64_t counter) const {
  const uint64_t top = bits(stream, counter) >> 11;  // 53 bits
  return (static_cast<double>(top) + 0.5) * 0x1.0p-53;
}

double CounterRng::gaussian(uint64_t stream, uint64_t counter) const {
  const double u1 = uniform01(stream, 2 * counter);
  const double u2 = uniform01(stream, 2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

int CounterRng::sign(uint64_t stream, uint64_t counter) const {
  return bits(stream, counter) & 1u ? 1 : -1;
}

ErasureSimResult simulate_erasure_scheme(const ErasurePmf& n1,
                                         const ErasurePmf& n2,
                                         const LevelPartition& part,
                                         uint64_t symbols, uint64_t seed,
                                         int threads) {
  if (n1.q() != n2.q() ||
      part.owner.size() != static_cast<size_t>(n1.q()))
    throw invalid_input("simulate_erasure_scheme: partition size mismatch");
  if (symbols == 0) throw invalid_input("simulate_erasure_scheme: no symbols");
  const int q = n1.q();

  // got_k[s] = bits user k collects when its state is s.
  std::vector<uint64_t> got1(q + 1, 0), got2(q + 1, 0);
  for (int s = 0; s <= q; ++s)
    for (int n = 1; n <= s; ++n) {
      if (part.owner[n - 1] == LevelOwner::user1)
        ++got1[s];
      else
        ++got2[s];
    }

  const CounterRng rng(seed);
  const auto draw_state = [q](const ErasurePmf& dist, double u) {
    double c = 0.0;
    for (int n = 0; n < q; ++n) {
      c += dist.pmf()[n];
      if (u <= c) return n;
    }
    return q;
  };

  const int nthreads = clamp_threads(threads);
  std::vector<uint64_t> sum1(nthreads, 0), sq1(nthreads, 0);
  std::vector<uint64_t> sum2(nthreads, 0), sq2(nthreads, 0);
  parallel_chunks(symbols, nthreads,
                  [&](uint64_t lo, uint64_t hi, int slot) {
                    for (uint64_t t = lo; t < hi; ++t) {
                      const int s1 = draw_state(n1, rng.uniform01(1, t));
                      const int s2 = draw_state(n2, rng.uniform01(2, t));
                      const uint64_t b1 = got1[s1], b2 = got2[s2];
                      sum1[slot] += b1;
                      sq1[slot] += b1 * b1;
                      sum2[slot] += b2;
                      sq2[slot] += b2 * b2;
                    }
                  });

  const auto report = [&](const std::vector<uint64_t>& sums,
                          const std::vector<uint64_t>& sqs,
                          const char* name) {
    uint64_t s = 0, ss = 0;
    for (uint64_t v : sums) s += v;
    for (uint64_t v : sqs) ss += v;
    const double n = static_cast<double>(symbols);
    const double mean = static_cast<double>(s) / n;
    double hw = 0.0;
    if (symbols > 1) {
      const double var =
          std::max(0.0, (static_cast<double>(ss) - n * mean * mean) / (n - 1.0));
      hw = 1.96 * std::sqrt(var / n);
    }
    SimReport r;
    r.quantity = name;
    r.trials = symbols;
    r.estimate = mean;
    r.half_width_95 = hw;
    r.seed = seed;
    return r;
  };
  return {report(sum1, sq1, "erasure_rate_user1"),
          report(sum2, sq2, "erasure_rate_user2")};
}

DetectorSimResult simulate_bes_detector(double s, int n, int d,
                                        uint64_t trials, uint64_t seed,
                                        int threads) {
  if (!(s > 0.0) || !std::isfinite(s))
    throw invalid_input("simulate_bes_detector: snr must be finite and > 0");
  if (n < 1 || n > 60)
    throw invalid_input("simulate_bes_detector: level out of range");
  if (d != depth_infinite && d < 0)
    throw invalid_input("simulate_bes_detector: bad depth");
  if (trials == 0) throw invalid_input("simulate_bes_detector: no trials");

  const double boundary = std::ldexp(1.0, -n);
  const bool no_interference = d == depth_infinite || d > 1000;
  const double vspan = no_interference ? 0.0 : std::ldexp(1.0, -n - d);
  const double noise_scale = 1.0 / std::sqrt(3.0 * s);

  const CounterRng rng(seed);
  const int nthreads = clamp_threads(threads);
  std::vector<uint64_t> strict_hits(nthreads, 0), word_hits(nthreads, 0);
  parallel_chunks(trials, nthreads, [&](uint64_t lo, uint64_t hi, int slot) {
    for (uint64_t t = lo; t < hi; ++t) {
      const uint64_t word = rng.bits(0, t);
      AntipodalWord sent;
      sent.bits.resize(n);
      for (int j = 0; j < n; ++j)
        sent.bits[j] = (word >> j) & 1u ? 1 : -1;
      const double x = sent.value();
      double v = 0.0;
      if (vspan > 0.0) v = vspan * (2.0 * rng.uniform01(1, t) - 1.0);
      const double y = x + v + noise_scale * rng.gaussian(2, t);
      if (std::abs(y - x) >= boundary) ++strict_hits[slot];
      if (!(nearest_constellation(y, n) == sent)) ++word_hits[slot];
    }
  });

  uint64_t strict = 0, word = 0;
  for (uint64_t v : strict_hits) strict += v;
  for (uint64_t v : word_hits) word += v;
  const double a = 3.0 * s * std::ldexp(1.0, -2 * n);

  DetectorSimResult out;
  out.strict.quantity = "detector_strict";
  out.strict.trials = trials;
  out.strict.estimate = static_cast<double>(strict) / static_cast<double>(trials);
  out.strict.half_width_95 = binomial_half_width(strict, trials);
  out.strict.seed = seed;
  out.strict.extras["epsilon_d"] = epsilon_d(a, d);
  out.word = out.strict;
  out.word.quantity = "detector_word";
  out.word.estimate = static_cast<double>(word) / static_cast<double>(trials);
  out.word.half_width_95 = binomial_half_width(word, trials);
  out.word.extras.clear();
  return out;
}

std::vector<LevelSimReport> simulate_bes_link(const FadingDist& s,
                                              const LevelAssignment& assign,
                                              LevelUser user, bool stripping,
                                              uint64_t symbols, uint64_t seed,
                                              int threads) {
  if (user == LevelUser::unused)
    throw invalid_input("simulate_bes_link: pick a user");
  if (symbols == 0) throw invalid_input("simulate_bes_link: no symbols");
  const int top = assign.max_level();
  if (top > 60) throw invalid_input("simulate_bes_link: too many levels");

  const std::vector<int> own = assign.levels_of(user);
  std::vector<int> depth(top + 1, 0);
  for (int n : own)
    depth[n] = stripping ? depth_of_level(assign, n) : 0;

  std::vector<int> used;  // levels carrying signal
  for (int n = 1; n <= top; ++n)
    if (assign.owner(n) != LevelUser::unused) used.push_back(n);

  const CounterRng rng(seed);
  const int nthreads = clamp_threads(threads);
  const size_t L = own.size();
  std::vector<std::vector<uint64_t>> bit_err(nthreads,
                                             std::vector<uint64_t>(L, 0));
  std::vector<std::vector<uint64_t>> strict_hits(nthreads,
                                                 std::vector<uint64_t>(L, 0));
  std::vector<std::vector<uint64_t>> detected(nthreads,
                                              std::vector<uint64_t>(L, 0));

  parallel_chunks(symbols, nthreads, [&](uint64_t lo, uint64_t hi, int slot) {
    std::vector<int> bits(top + 1, 0);
    for (uint64_t t = lo; t < hi; ++t) {
      const double state = s.sample(rng.uniform01(0, t));
      const uint64_t word = rng.bits(1, t);
      for (int n : used) bits[n] = (word >> (n - 1)) & 1u ? 1 : -1;
      const int guess_above = nhat(state);
      const uint64_t coins = rng.bits(3, t);
      double noise = 0.0;
      if (guess_above > 0)
        noise = rng.gaussian(2, t) / std::sqrt(3.0 * state);

      for (size_t j = 0; j < L; ++j) {
        const int n = own[j];
        if (n > guess_above) {
          // Random guess: wrong with probability 1/2.
          if (((coins >> (n - 1)) & 1u) != (bits[n] > 0 ? 1u : 0u))
            ++bit_err[slot][j];
          continue;
        }
        ++detected[slot][j];
        double residual = 0.0, prefix = 0.0;
        for (int m : used) {
          const double w = std::ldexp(static_cast<double>(bits[m]), -m);
          if (m <= n) {
            residual += w;
            prefix += w;
          } else if (!(stripping && assign.owner(m) == user)) {
            residual += w;
          }
        }
        const double y = residual + noise;
        if (std::abs(y - prefix) >= std::ldexp(1.0, -n))
          ++strict_hits[slot][j];
        const AntipodalWord hat = nearest_constellation(y, n);
        if (hat.bits[n - 1] != bits[n]) ++bit_err[slot][j];
      }
    }
  });

  std::vector<LevelSimReport> out;
  for (size_t j = 0; j < L; ++j) {
    const int n = own[j];
    const int d = depth[n];
    uint64_t errs = 0, hits = 0, det = 0;
    for (int k = 0; k < nthreads; ++k) {
      errs += bit_err[k][j];
      hits += strict_hits[k][j];
      det += detected[k][j];
    }
    LevelSimReport rep;
    rep.level = n;
    rep.depth = d;
    rep.bit_error.quantity = "link_bit_error";
    rep.bit_error.trials = symbols;
    rep.bit_error.estimate =
        static_cast<double>(errs) / static_cast<double>(symbols);
    rep.bit_error.half_width_95 = binomial_half_width(errs, symbols);
    rep.bit_error.seed = seed;
    rep.strict.quantity = "link_strict";
    rep.strict.trials = det;
    rep.strict.estimate =
        det ? static_cast<double>(hits) / static_cast<double>(det) : 0.0;
    rep.strict.half_width_95 = binomial_half_width(hits, det);
    rep.strict.seed = seed;

    // E_S[1/2 below the guess threshold, eps_hat above], via the ccdf.
    const double scale = 3.0 * std::ldexp(1.0, -2 * n);
    const double s_guess = crossover_half_snr(0) / scale;
    const auto gprime = [scale, d, s_guess](double t2) {
      if (t2 <= s_guess) return 0.0;  // guessing region: bound pinned at 1/2
      const double a = scale * t2;
      const double eps = epsilon_d(a, d);
      if (eps <= 0.0 || eps >= 0.5) return 0.0;
      return epsilon_d_deriv(a, d) * scale;
    };
    const double at_thresh = epsilon_hat(scale * s_guess, d);
    rep.analytic_bound =
        expect_by_parts(s, 0.5, gprime, {{s_guess, at_thresh - 0.5}});
    out.push_back(rep);
  }
  return out;
}

}  // namespace fbc
