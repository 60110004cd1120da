#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "fbc/bes.hpp"
#include "fbc/erasure.hpp"
#include "fbc/fading.hpp"
#include "fbc/gap.hpp"
#include "fbc/io.hpp"
#include "fbc/sim.hpp"
#include "fbc/types.hpp"

namespace {

void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
  } else {
    fbc::atomic_write_file(path, content);
    fbc::log_msg(1, "wrote " + path);
  }
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi >= lo) || points < 1) {
    throw fbc::invalid_input(
        "omega grid requires 0 < omega-min <= omega-max and points >= 1");
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(points));
  if (points == 1) {
    out.push_back(lo);
    return out;
  }
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (int i = 0; i < points; ++i) {
    out.push_back(std::exp(llo + (lhi - llo) * i / (points - 1)));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

struct OmegaGridOpts {
  double min = 1e-4;
  double max = 1e4;
  int points = 256;

  void attach(CLI::App* cmd) {
    cmd->add_option("--omega-min", min, "Smallest weight in the sweep")
        ->capture_default_str();
    cmd->add_option("--omega-max", max, "Largest weight in the sweep")
        ->capture_default_str();
    cmd->add_option("--omega-points", points, "Grid size (log-spaced)")
        ->capture_default_str();
  }
};

int run_erasure_region(const std::string& input, const std::string& output) {
  auto [n1, n2] = fbc::erasure_pair_from_json(fbc::read_file(input));
  auto rows = fbc::capacity_region_table(n1, n2);
  fbc::log_msg(1, "erasure-region: " + std::to_string(rows.size()) +
                      " weight intervals");
  emit(output, fbc::region_csv(rows));
  return 0;
}

int run_gaussian_outer(const std::string& input, const std::string& output,
                       const OmegaGridOpts& grid, double rel_tol,
                       bool real_channel) {
  auto [s1, s2] = fbc::fading_pair_from_json(fbc::read_file(input));
  std::vector<double> omegas = log_grid(grid.min, grid.max, grid.points);
  if (s1.kind() == fbc::FadingDist::Kind::intermittent &&
      s2.kind() == fbc::FadingDist::Kind::intermittent &&
      s2.intermittent_p() > 0.0) {
    const double rho = s1.intermittent_p() / s2.intermittent_p();
    if (rho > grid.min && rho < grid.max) {
      omegas.push_back(rho);
      std::sort(omegas.begin(), omegas.end());
    }
  }
  fbc::QuadratureConfig cfg;
  cfg.rel_tol = rel_tol;
  const double scale = real_channel ? 0.5 : 1.0;
  std::vector<fbc::GaussianSweepRow> rows;
  rows.reserve(omegas.size());
  for (double w : omegas) {
    fbc::RatePoint p = fbc::outer_extreme_point(s1, s2, w, cfg);
    rows.push_back({w, {scale * p.r1, scale * p.r2}, "outer"});
  }
  emit(output, fbc::gaussian_sweep_csv(rows));
  return 0;
}

int run_bes_inner(const std::string& input, const std::string& output,
                  const std::string& assignment_path, bool stripping,
                  int max_level, double rel_tol, bool real_channel) {
  auto [s1, s2] = fbc::fading_pair_from_json(fbc::read_file(input));
  fbc::QuadratureConfig cfg;
  cfg.rel_tol = rel_tol;
  const double scale = real_channel ? 0.5 : 1.0;
  const std::string kind = stripping ? "inner-rs" : "inner-nors";
  std::vector<fbc::LevelAssignment> family;
  if (!assignment_path.empty()) {
    family.push_back(
        fbc::assignment_from_json(fbc::read_file(assignment_path)));
  } else {
    family = fbc::example_assignments(
        s1, s2, fbc::AssignmentStyle::threshold, max_level);
  }
  fbc::log_msg(1, "bes-inner: " + std::to_string(family.size()) +
                      " assignments, stripping " + (stripping ? "on" : "off"));
  std::vector<fbc::GaussianSweepRow> rows;
  rows.reserve(family.size());
  // The first column indexes the swept assignment family; these rows are
  // achievable points, not a weighted-sum sweep.
  for (std::size_t i = 0; i < family.size(); ++i) {
    fbc::RatePoint p = fbc::assignment_rates(s1, s2, family[i], stripping, cfg);
    rows.push_back({static_cast<double>(i), {scale * p.r1, scale * p.r2},
                    kind});
  }
  emit(output, fbc::gaussian_sweep_csv(rows));
  return 0;
}

int run_gap(const std::string& input, const std::string& output, double gamma,
            bool gamma_given, const OmegaGridOpts& grid, bool real_channel) {
  const double scale = real_channel ? 0.5 : 1.0;
  if (input.empty()) {
    if (gamma_given) {
      const double delta = scale * fbc::universal_gap(gamma);
      emit(output, "{\"gamma\": " + fbc::double_repr(gamma) +
                       ", \"delta\": " + fbc::double_repr(delta) + "}\n");
    } else {
      auto [gstar, delta] = fbc::minimize_gap(0.5, 50.0);
      emit(output, "{\"gamma_star\": " + fbc::double_repr(gstar) +
                       ", \"delta\": " + fbc::double_repr(scale * delta) +
                       "}\n");
    }
    return 0;
  }
  auto [s1, s2] = fbc::fading_pair_from_json(fbc::read_file(input));
  const double g = gamma_given ? gamma : 5.65;
  auto qgrid = fbc::QuantizationGrid::for_pair(s1, s2, g);
  fbc::log_msg(1, "gap: quantization grid with " + std::to_string(qgrid.max_n) +
                      " bands");
  fbc::GapReport report =
      fbc::empirical_gap(s1, s2, log_grid(grid.min, grid.max, grid.points),
                         qgrid);
  if (real_channel) {
    report.delta_universal *= scale;
    report.max_gap1 *= scale;
    report.max_gap2 *= scale;
    for (auto& row : report.per_omega) {
      row.outer.r1 *= scale;
      row.outer.r2 *= scale;
      row.inner.r1 *= scale;
      row.inner.r2 *= scale;
      row.gap1 *= scale;
      row.gap2 *= scale;
    }
  }
  emit(output, fbc::gap_report_to_json(report));
  return 0;
}

int parse_depth(const std::string& text) {
  if (text == "inf") return fbc::depth_infinite;
  std::size_t used = 0;
  int d = std::stoi(text, &used);
  if (used != text.size() || d < 0) {
    throw fbc::invalid_input("depth must be a nonnegative integer or inf");
  }
  return d;
}

int run_simulate(const std::string& scenario, const std::string& input,
                 const std::string& output, const std::string& assignment_path,
                 double omega, double snr, int level,
                 const std::string& depth_text, int user, bool stripping,
                 uint64_t trials, uint64_t seed, int threads) {
  std::string lines;
  if (scenario == "erasure") {
    auto [n1, n2] = fbc::erasure_pair_from_json(fbc::read_file(input));
    auto part = fbc::partition_levels(n1, n2, omega);
    auto res = fbc::simulate_erasure_scheme(n1, n2, part, trials, seed,
                                            threads);
    lines = fbc::sim_report_to_json_line(res.r1) + "\n" +
            fbc::sim_report_to_json_line(res.r2) + "\n";
  } else if (scenario == "detector") {
    const int d = parse_depth(depth_text);
    auto res = fbc::simulate_bes_detector(snr, level, d, trials, seed,
                                          threads);
    lines = fbc::sim_report_to_json_line(res.strict) + "\n" +
            fbc::sim_report_to_json_line(res.word) + "\n";
  } else if (scenario == "link") {
    fbc::FadingDist s = fbc::fading_dist_from_json(fbc::read_file(input));
    fbc::LevelAssignment assign =
        fbc::assignment_from_json(fbc::read_file(assignment_path));
    const fbc::LevelUser u =
        user == 1 ? fbc::LevelUser::user1 : fbc::LevelUser::user2;
    auto reports =
        fbc::simulate_bes_link(s, assign, u, stripping, trials, seed, threads);
    for (auto& lr : reports) {
      lr.bit_error.extras["level"] = lr.level;
      lr.strict.extras["level"] = lr.level;
      const double depth_tag =
          lr.depth == fbc::depth_infinite ? -1.0 : lr.depth;
      lr.bit_error.extras["depth"] = depth_tag;
      lr.strict.extras["depth"] = depth_tag;
      lr.bit_error.extras["analytic_bound"] = lr.analytic_bound;
      lines += fbc::sim_report_to_json_line(lr.bit_error) + "\n";
      lines += fbc::sim_report_to_json_line(lr.strict) + "\n";
    }
  } else {
    throw fbc::invalid_input("unknown scenario: " + scenario);
  }
  emit(output, lines);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Capacity regions, constant-gap bounds, and Monte Carlo checks for "
      "two-user broadcast channels with receiver-only channel knowledge"};
  app.require_subcommand(1);

  std::string input, output, assignment_path, scenario, depth_text = "0";
  std::string stripping_text = "on";
  OmegaGridOpts grid;
  double gamma = 5.65;
  double rel_tol = 1e-9;
  double omega = 1.0;
  double snr = 10.0;
  int level = 1;
  int user = 1;
  int max_level = 0;
  uint64_t trials = 1000000;
  uint64_t seed = 1;
  int threads = 1;
  bool real_channel = false;

  auto* erasure = app.add_subcommand(
      "erasure-region",
      "Exact capacity region of a layered erasure broadcast pair (CSV)");
  erasure->add_option("--input", input, "Pair file {\"N1\":{...},\"N2\":{...}}")
      ->required();
  erasure->add_option("--output", output, "CSV path (stdout when omitted)");

  auto* gaussian = app.add_subcommand(
      "gaussian-outer",
      "Outer-bound extreme points of a fading Gaussian pair over a weight "
      "sweep (CSV)");
  gaussian->add_option("--input", input,
                       "Pair file {\"S1\":{...},\"S2\":{...}}")
      ->required();
  gaussian->add_option("--output", output, "CSV path (stdout when omitted)");
  grid.attach(gaussian);
  gaussian->add_option("--rel-tol", rel_tol, "Quadrature relative tolerance")
      ->capture_default_str();
  gaussian->add_flag("--real-channel", real_channel,
                     "Report real-channel rates (half the complex ones)");

  auto* inner = app.add_subcommand(
      "bes-inner",
      "Achievable rate pairs of the binary-expansion superposition scheme "
      "(CSV)");
  inner->add_option("--input", input, "Pair file {\"S1\":{...},\"S2\":{...}}")
      ->required();
  inner->add_option("--output", output, "CSV path (stdout when omitted)");
  inner->add_option("--assignment", assignment_path,
                    "Level-assignment file; default sweeps the threshold "
                    "family");
  inner
      ->add_option("--stripping", stripping_text,
                   "Strip same-user levels before detection")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  inner->add_option("--max-level", max_level,
                    "Levels to model; 0 picks automatically")
      ->capture_default_str();
  inner->add_option("--rel-tol", rel_tol, "Quadrature relative tolerance")
      ->capture_default_str();
  inner->add_flag("--real-channel", real_channel,
                  "Report real-channel rates (half the complex ones)");

  auto* gap = app.add_subcommand(
      "gap",
      "Universal outer-minus-inner gap; with --input, the per-weight "
      "quantized bounds for a fading pair (JSON)");
  gap->add_option("--input", input,
                  "Optional pair file {\"S1\":{...},\"S2\":{...}}");
  gap->add_option("--output", output, "JSON path (stdout when omitted)");
  auto* gamma_opt =
      gap->add_option("--gamma", gamma,
                      "Quantization SNR step; omitted -> minimize over "
                      "[0.5, 50]");
  grid.attach(gap);
  gap->add_flag("--real-channel", real_channel,
                "Report real-channel rates (half the complex ones)");

  auto* simulate = app.add_subcommand(
      "simulate", "Monte Carlo checks (JSON lines); deterministic per seed");
  simulate
      ->add_option("--scenario", scenario,
                   "erasure: level scheme on an erasure pair; detector: "
                   "one-level crossover; link: full superposed receiver")
      ->check(CLI::IsMember({"erasure", "detector", "link"}))
      ->required();
  simulate->add_option("--input", input,
                       "Erasure pair, or fading pair/distribution file");
  simulate->add_option("--output", output,
                       "JSON-lines path (stdout when omitted)");
  simulate->add_option("--assignment", assignment_path,
                       "Level-assignment file (link scenario)");
  simulate->add_option("--omega", omega, "Partition weight (erasure scenario)")
      ->capture_default_str();
  simulate->add_option("--snr", snr, "Channel SNR s (detector scenario)")
      ->capture_default_str();
  simulate->add_option("--level", level, "Bit level n (detector scenario)")
      ->capture_default_str();
  simulate
      ->add_option("--depth", depth_text,
                   "Stripping depth d, integer or inf (detector scenario)")
      ->capture_default_str();
  simulate->add_option("--user", user, "Receiver index (link scenario)")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  simulate
      ->add_option("--stripping", stripping_text,
                   "Strip same-user levels (link scenario)")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  simulate->add_option("--trials", trials, "Symbols or trials to draw")
      ->capture_default_str();
  simulate->add_option("--seed", seed, "RNG seed; results are bit-exact per "
                                       "seed")
      ->capture_default_str();
  simulate->add_option("--threads", threads,
                       "Worker threads; estimates do not depend on this")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*erasure) return run_erasure_region(input, output);
    if (*gaussian) {
      return run_gaussian_outer(input, output, grid, rel_tol, real_channel);
    }
    if (*inner) {
      return run_bes_inner(input, output, assignment_path,
                           stripping_text == "on", max_level, rel_tol,
                           real_channel);
    }
    if (*gap) {
      return run_gap(input, output, gamma, gamma_opt->count() > 0, grid,
                     real_channel);
    }
    if (*simulate) {
      return run_simulate(scenario, input, output, assignment_path, omega,
                          snr, level, depth_text, user,
                          stripping_text == "on", trials, seed, threads);
    }
  } catch (const fbc::schema_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const fbc::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
