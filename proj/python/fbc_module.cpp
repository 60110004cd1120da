#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>
#include <vector>

#include "fbc/bes.hpp"
#include "fbc/erasure.hpp"
#include "fbc/fading.hpp"
#include "fbc/gap.hpp"
#include "fbc/sim.hpp"
#include "fbc/special.hpp"
#include "fbc/types.hpp"

namespace py = pybind11;

namespace {

std::vector<std::pair<double, double>> points_of(
    const fbc::RateRegionBoundary& b) {
  std::vector<std::pair<double, double>> out;
  out.reserve(b.points.size());
  for (const auto& p : b.points) out.emplace_back(p.r1, p.r2);
  return out;
}

}  // namespace

PYBIND11_MODULE(pyfbc, m) {
  m.doc() =
      "Capacity regions and constant-gap bounds for two-user broadcast "
      "channels with receiver-only channel knowledge";

  m.def("q_function", [](double x) { return fbc::q_function(x).value(); },
        py::arg("x"), "Gaussian tail P(Z >= x)");
  m.def("g_function", &fbc::g_function, py::arg("x"),
        "Antiderivative of the Gaussian tail: G' = Q");
  m.def("binary_entropy", &fbc::binary_entropy, py::arg("p"),
        "Binary entropy in bits");

  m.def("epsilon_d",
        [](double a, int d) { return fbc::epsilon_d(a, d).value(); },
        py::arg("a"), py::arg("d"),
        "Detector crossover at normalized SNR a under depth-d interference");
  m.def("epsilon_hat",
        [](double a, int d) { return fbc::epsilon_hat(a, d).value(); },
        py::arg("a"), py::arg("d"), "min(epsilon_d, 1/2)");
  m.def("crossover_half_snr",
        [](int d) { return fbc::crossover_half_snr(d); }, py::arg("d"),
        "Root of epsilon_d(a, d) = 1/2");
  m.def("nhat", &fbc::nhat, py::arg("s"),
        "Deepest level decoded rather than guessed at state s");
  m.def("level_rate", [](const fbc::FadingDist& s, int n, int d) {
          return fbc::level_rate(s, n, d);
        },
        py::arg("s"), py::arg("n"), py::arg("d"),
        "Per-level ergodic rate, complex-channel bits/s/Hz");

  py::class_<fbc::ErasurePmf>(m, "ErasurePmf")
      .def(py::init<int, std::vector<double>>(), py::arg("q"), py::arg("pmf"))
      .def_property_readonly("q", &fbc::ErasurePmf::q)
      .def("ccdf", &fbc::ErasurePmf::ccdf, py::arg("n"))
      .def("mean", &fbc::ErasurePmf::mean);

  m.def("critical_weights", &fbc::critical_weights, py::arg("n1"),
        py::arg("n2"), "Weights where the optimal level split changes");
  m.def("capacity_region",
        [](const fbc::ErasurePmf& n1, const fbc::ErasurePmf& n2) {
          auto region = fbc::capacity_region(n1, n2);
          return py::make_tuple(points_of(region), region.critical_weights);
        },
        py::arg("n1"), py::arg("n2"),
        "(extreme points, critical weights) of the erasure pair");
  m.def("converse_weighted_rate", &fbc::converse_weighted_rate, py::arg("n1"),
        py::arg("n2"), py::arg("omega"));

  py::class_<fbc::FadingDist>(m, "FadingDist")
      .def_static("intermittent", &fbc::FadingDist::intermittent,
                  py::arg("p"), py::arg("snr"))
      .def_static("rayleigh", &fbc::FadingDist::rayleigh,
                  py::arg("mean_snr"))
      .def_static("tabulated", &fbc::FadingDist::tabulated,
                  py::arg("points"))
      .def("ccdf", &fbc::FadingDist::ccdf, py::arg("s"));

  m.def("ergodic_capacity",
        [](const fbc::FadingDist& s) { return fbc::ergodic_capacity(s); },
        py::arg("s"), "Complex-channel bits/s/Hz");
  m.def("outer_extreme_point",
        [](const fbc::FadingDist& s1, const fbc::FadingDist& s2, double w) {
          auto p = fbc::outer_extreme_point(s1, s2, w);
          return py::make_tuple(p.r1, p.r2);
        },
        py::arg("s1"), py::arg("s2"), py::arg("omega"));
  m.def("outer_region",
        [](const fbc::FadingDist& s1, const fbc::FadingDist& s2,
           const std::vector<double>& omegas) {
          return points_of(fbc::outer_region(s1, s2, omegas));
        },
        py::arg("s1"), py::arg("s2"), py::arg("omegas"));

  py::class_<fbc::LevelAssignment>(m, "LevelAssignment")
      .def(py::init<int>(), py::arg("max_level"))
      .def("assign",
           [](fbc::LevelAssignment& a, int level, int user) {
             a.assign(level, user == 0 ? fbc::LevelUser::unused
                             : user == 1 ? fbc::LevelUser::user1
                                         : fbc::LevelUser::user2);
           },
           py::arg("level"), py::arg("user"),
           "user: 0 = unused, 1, or 2")
      .def_property_readonly("max_level", &fbc::LevelAssignment::max_level);

  m.def("assignment_rates",
        [](const fbc::FadingDist& s1, const fbc::FadingDist& s2,
           const fbc::LevelAssignment& a, bool stripping) {
          auto p = fbc::assignment_rates(s1, s2, a, stripping);
          return py::make_tuple(p.r1, p.r2);
        },
        py::arg("s1"), py::arg("s2"), py::arg("assignment"),
        py::arg("stripping"));
  m.def("threshold_region",
        [](const fbc::FadingDist& s1, const fbc::FadingDist& s2,
           bool stripping) {
          auto family = fbc::example_assignments(
              s1, s2, fbc::AssignmentStyle::threshold, 0);
          return points_of(
              fbc::achievable_region(s1, s2, family, stripping));
        },
        py::arg("s1"), py::arg("s2"), py::arg("stripping"),
        "Hull over the threshold assignment family");

  m.def("universal_gap", &fbc::universal_gap, py::arg("gamma"),
        py::arg("max_terms") = 200);
  m.def("minimize_gap",
        [](double lo, double hi) {
          auto [g, d] = fbc::minimize_gap(lo, hi);
          return py::make_tuple(g, d);
        },
        py::arg("lo") = 0.5, py::arg("hi") = 50.0);

  m.def("simulate_erasure_scheme",
        [](const fbc::ErasurePmf& n1, const fbc::ErasurePmf& n2, double omega,
           uint64_t symbols, uint64_t seed) {
          auto part = fbc::partition_levels(n1, n2, omega);
          auto res = fbc::simulate_erasure_scheme(n1, n2, part, symbols, seed);
          return py::make_tuple(
              py::make_tuple(res.r1.estimate, res.r1.half_width_95),
              py::make_tuple(res.r2.estimate, res.r2.half_width_95));
        },
        py::arg("n1"), py::arg("n2"), py::arg("omega"), py::arg("symbols"),
        py::arg("seed"),
        "((R1 estimate, half width), (R2 estimate, half width))");
  m.def("simulate_bes_detector",
        [](double s, int n, int d, uint64_t trials, uint64_t seed) {
          auto res = fbc::simulate_bes_detector(s, n, d, trials, seed);
          return py::make_tuple(res.strict.estimate,
                                res.strict.half_width_95);
        },
        py::arg("s"), py::arg("n"), py::arg("d"), py::arg("trials"),
        py::arg("seed"), "(strict-event frequency, half width)");

  m.attr("depth_infinite") = fbc::depth_infinite;

  py::register_exception<fbc::numeric_error>(m, "NumericError");
  py::register_exception<fbc::invalid_input>(m, "InvalidInput");
}
