#include "fbc/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

namespace fbc {

std::string double_repr(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

using nlohmann::json;

std::string fmt(double v) { return double_repr(v); }

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t pos = e.byte > 0 ? e.byte - 1 : 0;
    pos = std::min(pos, text.size());
    long line = 1 + std::count(text.begin(),
                               text.begin() + static_cast<long>(pos), '\n');
    throw schema_error("line " + std::to_string(line), e.what());
  }
}

std::string join_path(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

const json& member(const json& j, const std::string& key,
                   const std::string& prefix) {
  if (!j.is_object()) {
    throw schema_error(prefix.empty() ? "(root)" : prefix,
                       "expected a JSON object");
  }
  auto it = j.find(key);
  if (it == j.end()) {
    throw schema_error(join_path(prefix, key), "missing required field");
  }
  return *it;
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) throw schema_error(path, "expected a number");
  return j.get<double>();
}

int int_at(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw schema_error(path, "expected an integer");
  return j.get<int>();
}

std::string string_at(const json& j, const std::string& path) {
  if (!j.is_string()) throw schema_error(path, "expected a string");
  return j.get<std::string>();
}

ErasurePmf erasure_pmf_from_value(const json& j, const std::string& prefix) {
  int q = int_at(member(j, "q", prefix), join_path(prefix, "q"));
  const json& arr = member(j, "pmf", prefix);
  const std::string apath = join_path(prefix, "pmf");
  if (!arr.is_array()) throw schema_error(apath, "expected an array");
  std::vector<double> pmf;
  pmf.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    pmf.push_back(number_at(arr[i], apath + "[" + std::to_string(i) + "]"));
  }
  try {
    return ErasurePmf(q, std::move(pmf));
  } catch (const invalid_input& e) {
    throw schema_error(apath, e.what());
  }
}

FadingDist fading_dist_from_value(const json& j, const std::string& prefix) {
  std::string kind =
      string_at(member(j, "kind", prefix), join_path(prefix, "kind"));
  try {
    if (kind == "intermittent") {
      double p = number_at(member(j, "p", prefix), join_path(prefix, "p"));
      double snr =
          number_at(member(j, "snr", prefix), join_path(prefix, "snr"));
      return FadingDist::intermittent(p, snr);
    }
    if (kind == "rayleigh") {
      double mean = number_at(member(j, "mean_snr", prefix),
                              join_path(prefix, "mean_snr"));
      return FadingDist::rayleigh(mean);
    }
    if (kind == "tabulated") {
      const json& arr = member(j, "points", prefix);
      const std::string apath = join_path(prefix, "points");
      if (!arr.is_array()) throw schema_error(apath, "expected an array");
      std::vector<std::pair<double, double>> pts;
      pts.reserve(arr.size());
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string epath = apath + "[" + std::to_string(i) + "]";
        const json& pair = arr[i];
        if (!pair.is_array() || pair.size() != 2) {
          throw schema_error(epath, "expected [s, ccdf]");
        }
        pts.emplace_back(number_at(pair[0], epath + "[0]"),
                         number_at(pair[1], epath + "[1]"));
      }
      return FadingDist::tabulated(std::move(pts));
    }
  } catch (const invalid_input& e) {
    throw schema_error(prefix.empty() ? "(root)" : prefix, e.what());
  }
  throw schema_error(join_path(prefix, "kind"),
                     "expected intermittent, rayleigh, or tabulated");
}

json fading_dist_to_value(const FadingDist& d) {
  json j;
  switch (d.kind()) {
    case FadingDist::Kind::intermittent:
      j["kind"] = "intermittent";
      j["p"] = d.intermittent_p();
      j["snr"] = d.intermittent_s_star();
      break;
    case FadingDist::Kind::rayleigh:
      j["kind"] = "rayleigh";
      j["mean_snr"] = d.rayleigh_gamma();
      break;
    case FadingDist::Kind::tabulated: {
      j["kind"] = "tabulated";
      json pts = json::array();
      for (const auto& [s, v] : d.tabulated_points()) {
        pts.push_back(json::array({s, v}));
      }
      j["points"] = std::move(pts);
      break;
    }
    case FadingDist::Kind::derived:
      throw invalid_input("derived fading distributions have no JSON form");
  }
  return j;
}

json rate_pair_value(const RatePoint& p) {
  return json::array({p.r1, p.r2});
}

int log_level_from_env() {
  const char* v = std::getenv("FBC_LOG");
  if (v == nullptr) return 0;
  std::string s(v);
  if (s == "debug") return 2;
  if (s == "info") return 1;
  return 0;
}

}  // namespace

ErasurePmf erasure_pmf_from_json(const std::string& text,
                                 const std::string& field_prefix) {
  return erasure_pmf_from_value(parse_text(text), field_prefix);
}

std::string erasure_pmf_to_json(const ErasurePmf& pmf) {
  json j;
  j["q"] = pmf.q();
  j["pmf"] = pmf.pmf();
  return j.dump();
}

std::pair<ErasurePmf, ErasurePmf> erasure_pair_from_json(
    const std::string& text) {
  json j = parse_text(text);
  ErasurePmf n1 = erasure_pmf_from_value(member(j, "N1", ""), "N1");
  ErasurePmf n2 = erasure_pmf_from_value(member(j, "N2", ""), "N2");
  if (n1.q() != n2.q()) {
    throw schema_error("N2.q", "level counts of N1 and N2 differ");
  }
  return {std::move(n1), std::move(n2)};
}

FadingDist fading_dist_from_json(const std::string& text,
                                 const std::string& field_prefix) {
  return fading_dist_from_value(parse_text(text), field_prefix);
}

std::string fading_dist_to_json(const FadingDist& d) {
  return fading_dist_to_value(d).dump();
}

std::pair<FadingDist, FadingDist> fading_pair_from_json(
    const std::string& text) {
  json j = parse_text(text);
  FadingDist s1 = fading_dist_from_value(member(j, "S1", ""), "S1");
  FadingDist s2 = fading_dist_from_value(member(j, "S2", ""), "S2");
  return {std::move(s1), std::move(s2)};
}

LevelAssignment assignment_from_json(const std::string& text) {
  json j = parse_text(text);
  int max_level = int_at(member(j, "max_level", ""), "max_level");
  if (max_level < 1 || max_level > 64) {
    throw schema_error("max_level", "expected an integer in [1, 64]");
  }
  LevelAssignment a(max_level);
  auto it = j.find("levels");
  if (it == j.end()) return a;
  if (!it->is_object()) throw schema_error("levels", "expected an object");
  for (const auto& [key, value] : it->items()) {
    const std::string path = "levels." + key;
    int level = 0;
    auto res = std::from_chars(key.data(), key.data() + key.size(), level);
    if (res.ec != std::errc() || res.ptr != key.data() + key.size() ||
        level < 1 || level > max_level) {
      throw schema_error(path, "key must name a level in [1, max_level]");
    }
    std::string user = string_at(value, path);
    if (user == "user1") {
      a.assign(level, LevelUser::user1);
    } else if (user == "user2") {
      a.assign(level, LevelUser::user2);
    } else if (user == "unused") {
      a.assign(level, LevelUser::unused);
    } else {
      throw schema_error(path, "expected user1, user2, or unused");
    }
  }
  return a;
}

std::string assignment_to_json(const LevelAssignment& a) {
  json levels = json::object();
  for (int n = 1; n <= a.max_level(); ++n) {
    switch (a.owner(n)) {
      case LevelUser::user1:
        levels[std::to_string(n)] = "user1";
        break;
      case LevelUser::user2:
        levels[std::to_string(n)] = "user2";
        break;
      case LevelUser::unused:
        break;
    }
  }
  json j;
  j["max_level"] = a.max_level();
  j["levels"] = std::move(levels);
  return j.dump();
}

std::string region_csv(const std::vector<ErasureRegionRow>& rows) {
  std::string out = "omega_low,omega_high,R1,R2\n";
  for (const auto& row : rows) {
    out += fmt(row.omega_lo) + "," + fmt(row.omega_hi) + "," +
           fmt(row.rates.r1) + "," + fmt(row.rates.r2) + "\n";
  }
  return out;
}

std::string gaussian_sweep_csv(const std::vector<GaussianSweepRow>& rows) {
  std::string out = "omega,R1,R2,kind\n";
  for (const auto& row : rows) {
    out += fmt(row.omega) + "," + fmt(row.rates.r1) + "," + fmt(row.rates.r2) +
           "," + row.kind + "\n";
  }
  return out;
}

std::string gap_report_to_json(const GapReport& report) {
  json j;
  j["gamma"] = report.gamma;
  j["delta_universal"] = report.delta_universal;
  json rows = json::array();
  for (const auto& row : report.per_omega) {
    json r;
    r["omega"] = row.omega;
    r["outer"] = rate_pair_value(row.outer);
    r["inner"] = rate_pair_value(row.inner);
    r["gap"] = json::array({row.gap1, row.gap2});
    rows.push_back(std::move(r));
  }
  j["per_omega"] = std::move(rows);
  j["max_gap"] = json::array({report.max_gap1, report.max_gap2});
  return j.dump(2) + "\n";
}

std::string sim_report_to_json_line(const SimReport& report) {
  json j;
  j["quantity"] = report.quantity;
  j["trials"] = report.trials;
  j["estimate"] = report.estimate;
  j["half_width_95"] = report.half_width_95;
  j["seed"] = report.seed;
  if (!report.extras.empty()) {
    json ex;
    for (const auto& [key, value] : report.extras) ex[key] = value;
    j["extras"] = std::move(ex);
  }
  return j.dump();
}

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot rename into place: " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool log_enabled(int level) {
  static const int env_level = log_level_from_env();
  return level <= env_level;
}

void log_msg(int level, const std::string& msg) {
  if (log_enabled(level)) std::cerr << "[fbc] " << msg << "\n";
}

}  // namespace fbc
