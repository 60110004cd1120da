#include "fbc/erasure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fbc/region.hpp"

namespace fbc {

namespace {

double entropy_bits(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p) {
    if (v < -1e-15) throw invalid_input("entropy: negative probability");
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

}  // namespace

ErasurePmf::ErasurePmf(int q, std::vector<double> pmf) : q_(q), pmf_(std::move(pmf)) {
  if (q_ < 1) throw invalid_input("ErasurePmf: q must be >= 1");
  if (pmf_.size() != static_cast<size_t>(q_) + 1)
    throw invalid_input("ErasurePmf: pmf must have q + 1 entries");
  double sum = 0.0;
  for (double& v : pmf_) {
    if (v < -1e-15) throw invalid_input("ErasurePmf: negative pmf entry");
    if (v < 0.0) v = 0.0;
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw invalid_input("ErasurePmf: pmf entries must sum to 1");
  for (double& v : pmf_) v /= sum;
  ccdf_.assign(q_ + 1, 0.0);
  ccdf_[q_] = pmf_[q_];
  for (int n = q_ - 1; n >= 1; --n) ccdf_[n] = ccdf_[n + 1] + pmf_[n];
  ccdf_[0] = 1.0;
}

double ErasurePmf::ccdf(int n) const {
  if (n <= 0) return 1.0;
  if (n > q_) return 0.0;
  return ccdf_[n];
}

double ErasurePmf::mean() const {
  double m = 0.0;
  for (int n = 1; n <= q_; ++n) m += ccdf_[n];
  return m;
}

ErasurePmf ErasurePmf::from_ccdf(const std::vector<double>& ccdf_values) {
  if (ccdf_values.size() < 2)
    throw invalid_input("from_ccdf: need entries for n = 0..q with q >= 1");
  if (std::abs(ccdf_values[0] - 1.0) > 1e-12)
    throw invalid_input("from_ccdf: ccdf(0) must be 1");
  const int q = static_cast<int>(ccdf_values.size()) - 1;
  std::vector<double> pmf(q + 1, 0.0);
  for (int n = 0; n <= q; ++n) {
    const double next = n < q ? ccdf_values[n + 1] : 0.0;
    const double step = ccdf_values[n] - next;
    if (step < -1e-12) throw invalid_input("from_ccdf: ccdf must be non-increasing");
    pmf[n] = std::max(step, 0.0);
  }
  ErasurePmf out(q, std::move(pmf));
  // Keep the caller's exact ccdf values; rebuilding them from the pmf would
  // perturb the last ulp and break exact dual-route comparisons.
  out.ccdf_ = ccdf_values;
  out.ccdf_[0] = 1.0;
  return out;
}

std::vector<int> LevelPartition::levels_of(LevelOwner u) const {
  std::vector<int> out;
  for (size_t i = 0; i < owner.size(); ++i)
    if (owner[i] == u) out.push_back(static_cast<int>(i) + 1);
  return out;
}

LevelPartition partition_levels(const ErasurePmf& n1, const ErasurePmf& n2,
                                double omega) {
  if (n1.q() != n2.q())
    throw invalid_input("partition_levels: channels must share q");
  if (!(omega >= 0.0))
    throw invalid_input("partition_levels: omega must be >= 0");
  LevelPartition part;
  part.omega = omega;
  part.owner.resize(n1.q());
  for (int n = 1; n <= n1.q(); ++n)
    part.owner[n - 1] = n1.ccdf(n) > omega * n2.ccdf(n) ? LevelOwner::user1
                                                        : LevelOwner::user2;
  return part;
}

RatePoint achievable_rates(const ErasurePmf& n1, const ErasurePmf& n2,
                           const LevelPartition& part) {
  if (part.owner.size() != static_cast<size_t>(n1.q()) || n1.q() != n2.q())
    throw invalid_input("achievable_rates: partition size mismatch");
  RatePoint r{0.0, 0.0};
  for (int n = 1; n <= n1.q(); ++n) {
    if (part.owner[n - 1] == LevelOwner::user1)
      r.r1 += n1.ccdf(n);
    else
      r.r2 += n2.ccdf(n);
  }
  return r;
}

std::vector<double> critical_weights(const ErasurePmf& n1,
                                     const ErasurePmf& n2) {
  if (n1.q() != n2.q())
    throw invalid_input("critical_weights: channels must share q");
  std::vector<double> w;
  for (int n = 1; n <= n1.q(); ++n)
    if (n2.ccdf(n) > 0.0) w.push_back(n1.ccdf(n) / n2.ccdf(n));
  std::sort(w.begin(), w.end());
  std::vector<double> out;
  for (double v : w)
    if (out.empty() || v - out.back() > 1e-12 * std::max(1.0, v))
      out.push_back(v);
  return out;
}

std::vector<ErasureRegionRow> capacity_region_table(const ErasurePmf& n1,
                                                    const ErasurePmf& n2) {
  const std::vector<double> w = critical_weights(n1, n2);
  std::vector<ErasureRegionRow> rows;
  if (w.empty()) {
    rows.push_back({0.0, inf, RatePoint{n1.mean(), 0.0}});
    return rows;
  }
  rows.push_back({0.0, w.front(), RatePoint{n1.mean(), 0.0}});
  for (size_t j = 0; j + 1 < w.size(); ++j) {
    const double mid = 0.5 * (w[j] + w[j + 1]);
    rows.push_back({w[j], w[j + 1],
                    achievable_rates(n1, n2, partition_levels(n1, n2, mid))});
  }
  const double past = w.back() + 1.0;
  rows.push_back({w.back(), inf,
                  achievable_rates(n1, n2, partition_levels(n1, n2, past))});
  return rows;
}

RateRegionBoundary capacity_region(const ErasurePmf& n1, const ErasurePmf& n2) {
  std::vector<RatePoint> pts;
  for (const ErasureRegionRow& row : capacity_region_table(n1, n2))
    pts.push_back(row.rates);
  pts.push_back(RatePoint{n1.mean(), 0.0});
  pts.push_back(RatePoint{0.0, n2.mean()});
  RateRegionBoundary out;
  out.points = pareto_hull(std::move(pts));
  out.critical_weights = critical_weights(n1, n2);
  return out;
}

ErasurePmf enhance_channel(const ErasurePmf& n1, const ErasurePmf& n2,
                           double omega) {
  if (n1.q() != n2.q())
    throw invalid_input("enhance_channel: channels must share q");
  if (!(omega >= 1.0))
    throw invalid_input("enhance_channel: omega must be >= 1");
  std::vector<double> ccdf(n1.q() + 1);
  for (int n = 0; n <= n1.q(); ++n)
    ccdf[n] = std::min(1.0, std::max(n1.ccdf(n), omega * n2.ccdf(n)));
  return ErasurePmf::from_ccdf(ccdf);
}

double converse_weighted_rate(const ErasurePmf& n1, const ErasurePmf& n2,
                              double omega) {
  const ErasurePmf enh = enhance_channel(n1, n2, omega);
  double total = 0.0;
  for (int n = 1; n <= n1.q(); ++n) {
    const double slack = enh.ccdf(n) - omega * n2.ccdf(n);
    if (slack > 0.0) total += slack;
    total += omega * n2.ccdf(n);
  }
  return total;
}

bool is_degraded(const ErasurePmf& n1, const ErasurePmf& n2) {
  if (n1.q() != n2.q())
    throw invalid_input("is_degraded: channels must share q");
  for (int n = 1; n <= n1.q(); ++n)
    if (n1.ccdf(n) < n2.ccdf(n)) return false;
  return true;
}

std::pair<double, double> entropy_identity_check(const ErasurePmf& n,
                                                 const JointSourceDist& joint,
                                                 EntropyIdentity which) {
  const int q = n.q();
  if (joint.q != q) throw invalid_input("entropy identity: q mismatch");
  if (joint.v_card < 1 || joint.p.size() != static_cast<size_t>(joint.v_card))
    throw invalid_input("entropy identity: bad v cardinality");
  const int nx = 1 << q;
  double sum = 0.0;
  for (const auto& row : joint.p) {
    if (row.size() != static_cast<size_t>(nx))
      throw invalid_input("entropy identity: joint row must have 2^q entries");
    for (double v : row) {
      if (v < -1e-15) throw invalid_input("entropy identity: negative joint entry");
      sum += v;
    }
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw invalid_input("entropy identity: joint must sum to 1");

  const int nv = joint.v_card;
  std::vector<double> marg_v(nv, 0.0);
  for (int v = 0; v < nv; ++v)
    for (int x = 0; x < nx; ++x) marg_v[v] += joint.p[v][x];
  const double h_v = entropy_bits(marg_v);

  // h_vw[m] = H(V, X^m), h_w[m] = H(X^m): prefixes marginalize onto low bits.
  std::vector<double> h_vw(q + 1, 0.0), h_w(q + 1, 0.0);
  for (int m = 0; m <= q; ++m) {
    const int words = 1 << m;
    const int mask = words - 1;
    std::vector<double> table(static_cast<size_t>(nv) * words, 0.0);
    for (int v = 0; v < nv; ++v)
      for (int x = 0; x < nx; ++x)
        table[static_cast<size_t>(v) * words + (x & mask)] += joint.p[v][x];
    h_vw[m] = entropy_bits(table);
    std::vector<double> wmarg(words, 0.0);
    for (int v = 0; v < nv; ++v)
      for (int w = 0; w < words; ++w)
        wmarg[w] += table[static_cast<size_t>(v) * words + w];
    h_w[m] = entropy_bits(wmarg);
  }

  // Output symbol: observed prefix together with its length.
  const auto y_index = [nx](int state, int x) {
    const int mask = (1 << state) - 1;
    return static_cast<size_t>(state) * nx + (x & mask);
  };
  std::vector<double> vy(static_cast<size_t>(nv) * (q + 1) * nx, 0.0);
  std::vector<double> y(static_cast<size_t>(q + 1) * nx, 0.0);
  std::vector<double> vxy(static_cast<size_t>(nv) * nx * (q + 1), 0.0);
  for (int v = 0; v < nv; ++v)
    for (int x = 0; x < nx; ++x) {
      const double pvx = joint.p[v][x];
      if (pvx <= 0.0) continue;
      for (int state = 0; state <= q; ++state) {
        const double w = pvx * n.pmf()[state];
        if (w <= 0.0) continue;
        const size_t yi = y_index(state, x);
        vy[static_cast<size_t>(v) * (q + 1) * nx + yi] += w;
        y[yi] += w;
        vxy[(static_cast<size_t>(v) * nx + x) * (q + 1) + state] += w;
      }
    }
  const double h_vy = entropy_bits(vy);
  const double h_y = entropy_bits(y);
  const double h_vxy = entropy_bits(vxy);
  const double h_vx = h_vw[q];

  switch (which) {
    case EntropyIdentity::output_entropy: {
      const double lhs = (h_vy - h_v) - (h_vxy - h_vx);
      double rhs = 0.0;
      for (int state = 0; state <= q; ++state)
        rhs += n.pmf()[state] * (h_vw[state] - h_v);
      return {lhs, rhs};
    }
    case EntropyIdentity::chain_decomposition: {
      double lhs = 0.0;
      for (int state = 0; state <= q; ++state)
        lhs += n.pmf()[state] * (h_vw[state] - h_v);
      double rhs = 0.0;
      for (int m = 1; m <= q; ++m)
        rhs += n.ccdf(m) * (h_vw[m] - h_vw[m - 1]);
      return {lhs, rhs};
    }
    case EntropyIdentity::common_message: {
      const double lhs = h_y - (h_vy - h_v);
      double rhs = 0.0;
      for (int m = 1; m <= q; ++m)
        rhs += n.ccdf(m) * ((h_w[m] - h_w[m - 1]) - (h_vw[m] - h_vw[m - 1]));
      return {lhs, rhs};
    }
  }
  throw invalid_input("entropy identity: unknown identity");
}

}  // namespace fbc
