#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fbc/bes.hpp"
#include "fbc/erasure.hpp"
#include "fbc/fading.hpp"
#include "fbc/gap.hpp"
#include "fbc/sim.hpp"
#include "fbc/types.hpp"

namespace fbc {

// Input-file violation: JSON syntax or schema.  `where` is "line N" for
// syntax errors and the offending field path otherwise.
class schema_error : public std::runtime_error {
 public:
  schema_error(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// {"q": int, "pmf": [...]}
ErasurePmf erasure_pmf_from_json(const std::string& text,
                                 const std::string& field_prefix = "");
std::string erasure_pmf_to_json(const ErasurePmf& pmf);

// {"N1": {...}, "N2": {...}}
std::pair<ErasurePmf, ErasurePmf> erasure_pair_from_json(
    const std::string& text);

// {"kind": "intermittent"|"rayleigh"|"tabulated", ...}
FadingDist fading_dist_from_json(const std::string& text,
                                 const std::string& field_prefix = "");
std::string fading_dist_to_json(const FadingDist& d);

// {"S1": {...}, "S2": {...}}
std::pair<FadingDist, FadingDist> fading_pair_from_json(
    const std::string& text);

// {"max_level": int, "levels": {"1": "user2", ...}}; unlisted levels unused.
LevelAssignment assignment_from_json(const std::string& text);
std::string assignment_to_json(const LevelAssignment& a);

// Shortest decimal string that parses back to the same double; inf/nan
// spelled out.
std::string double_repr(double v);

std::string region_csv(const std::vector<ErasureRegionRow>& rows);

struct GaussianSweepRow {
  double omega = 0.0;
  RatePoint rates;
  std::string kind;  // outer | inner-rs | inner-nors
};
std::string gaussian_sweep_csv(const std::vector<GaussianSweepRow>& rows);

std::string gap_report_to_json(const GapReport& report);
std::string sim_report_to_json_line(const SimReport& report);

// Write via a temp file on the same directory and rename into place.
void atomic_write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// FBC_LOG env var: off (default) / info / debug.  Messages go to stderr.
bool log_enabled(int level);  // 1 = info, 2 = debug
void log_msg(int level, const std::string& msg);

}  // namespace fbc
