#ifndef LATTICECOND_CONFIG_HPP
#define LATTICECOND_CONFIG_HPP

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "latticecond/errors.hpp"
#include "latticecond/model.hpp"
#include "latticecond/verify.hpp"

namespace latticecond {

enum class RunMode { bands, sweep, scatter, verify };

inline std::string mode_name(RunMode m) {
  switch (m) {
    case RunMode::bands: return "bands";
    case RunMode::sweep: return "sweep";
    case RunMode::scatter: return "scatter";
    case RunMode::verify: return "verify";
  }
  return "?";
}

inline RunMode parse_mode(const std::string& s) {
  if (s == "bands") return RunMode::bands;
  if (s == "sweep") return RunMode::sweep;
  if (s == "scatter") return RunMode::scatter;
  if (s == "verify") return RunMode::verify;
  throw ConfigError("unknown mode '" + s + "' (expected bands|sweep|scatter|verify)");
}

struct RunConfig {
  RunMode mode = RunMode::bands;
  ModelParams params;
  int M = 12;
  double efield_min = 0.0;
  double efield_max = 1.0;
  int efield_count = 40;
  std::vector<double> fermi_levels;
  std::filesystem::path output_dir = ".";
  int threads = 0;  // 0 = auto
  bool drop_duplicate_edge = false;
  VerifyLevel verify_level = VerifyLevel::quick;
  // scatter mode
  double scatter_U = 1.0;
  double scatter_kwave = 1.0;
  double scatter_m = 1.0;
  int scatter_theta_count = 100;  // grid over [0, pi]
};

namespace detail {

inline double to_double(const std::string& key, const std::string& v, int line) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line) + ": value of '" + key +
                          "' is not a number: '" + v + "'",
                      line);
  }
}

inline int to_int(const std::string& key, const std::string& v, int line) {
  const double d = to_double(key, v, line);
  const int i = int(d);
  if (double(i) != d)
    throw ConfigError("line " + std::to_string(line) + ": value of '" + key +
                          "' is not an integer: '" + v + "'",
                      line);
  return i;
}

inline bool to_bool(const std::string& key, const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "on") return true;
  if (v == "false" || v == "0" || v == "off") return false;
  throw ConfigError("line " + std::to_string(line) + ": value of '" + key +
                        "' is not a boolean: '" + v + "'",
                    line);
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

/// Parses a flat key=value document with '#' comments. Unknown keys are
/// errors; the geometry (L, a) may not be set directly.
inline RunConfig parse_config(const std::string& text, RunMode mode) {
  static const std::set<std::string> known = {
      "m", "e", "lambda", "Ux", "Uy", "Efield", "N", "Q", "J", "spin", "M",
      "efield_min", "efield_max", "efield_count", "fermi_levels", "output_dir",
      "threads", "drop_duplicate_edge", "verify_level", "scatter_U",
      "scatter_kwave", "scatter_m", "scatter_theta_count"};

  RunConfig cfg;
  cfg.mode = mode;
  std::map<std::string, std::pair<std::string, int>> kv;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    std::string s = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line) + ": expected key=value, got '" + s + "'", line);
    const std::string key = detail::trim(s.substr(0, eq));
    const std::string val = detail::trim(s.substr(eq + 1));
    if (key == "L" || key == "a")
      throw ConfigError("line " + std::to_string(line) + ": '" + key +
                            "' is derived from (Q, lambda, N) and cannot be set",
                        line);
    if (!known.count(key))
      throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'", line);
    if (kv.count(key))
      throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + key + "'", line);
    kv[key] = {val, line};
  }
  std::set<std::string> present;
  for (const auto& [key, unused] : kv) present.insert(key);

  auto take = [&](const std::string& key) -> std::optional<std::pair<std::string, int>> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    auto v = it->second;
    kv.erase(it);
    return v;
  };

  using detail::to_bool;
  using detail::to_double;
  using detail::to_int;
  if (auto v = take("m")) cfg.params.m = to_double("m", v->first, v->second);
  if (auto v = take("e")) cfg.params.e = to_double("e", v->first, v->second);
  if (auto v = take("lambda")) cfg.params.lambda = to_double("lambda", v->first, v->second);
  if (auto v = take("Ux")) cfg.params.Ux = to_double("Ux", v->first, v->second);
  if (auto v = take("Uy")) cfg.params.Uy = to_double("Uy", v->first, v->second);
  if (auto v = take("Efield")) cfg.params.Efield = to_double("Efield", v->first, v->second);
  if (auto v = take("N")) cfg.params.N = to_int("N", v->first, v->second);
  if (auto v = take("Q")) cfg.params.Q = to_int("Q", v->first, v->second);
  if (auto v = take("J")) cfg.params.J = to_int("J", v->first, v->second);
  if (auto v = take("spin")) cfg.params.spin = to_int("spin", v->first, v->second);
  if (auto v = take("M")) cfg.M = to_int("M", v->first, v->second);
  if (auto v = take("efield_min")) cfg.efield_min = to_double("efield_min", v->first, v->second);
  if (auto v = take("efield_max")) cfg.efield_max = to_double("efield_max", v->first, v->second);
  if (auto v = take("efield_count")) cfg.efield_count = to_int("efield_count", v->first, v->second);
  if (auto v = take("fermi_levels")) {
    std::istringstream fs(v->first);
    std::string tok;
    while (std::getline(fs, tok, ','))
      cfg.fermi_levels.push_back(to_double("fermi_levels", detail::trim(tok), v->second));
  }
  if (auto v = take("output_dir")) cfg.output_dir = v->first;
  if (auto v = take("threads")) cfg.threads = to_int("threads", v->first, v->second);
  if (auto v = take("drop_duplicate_edge"))
    cfg.drop_duplicate_edge = to_bool("drop_duplicate_edge", v->first, v->second);
  if (auto v = take("verify_level")) {
    if (v->first == "quick") cfg.verify_level = VerifyLevel::quick;
    else if (v->first == "full") cfg.verify_level = VerifyLevel::full;
    else throw ConfigError("verify_level must be quick or full", v->second);
  }
  if (auto v = take("scatter_U")) cfg.scatter_U = to_double("scatter_U", v->first, v->second);
  if (auto v = take("scatter_kwave")) cfg.scatter_kwave = to_double("scatter_kwave", v->first, v->second);
  if (auto v = take("scatter_m")) cfg.scatter_m = to_double("scatter_m", v->first, v->second);
  if (auto v = take("scatter_theta_count"))
    cfg.scatter_theta_count = to_int("scatter_theta_count", v->first, v->second);

  // mode-specific validation
  if (mode != RunMode::scatter) {
    static const char* required[] = {"lambda", "Q", "J", "N", "Ux", "Uy"};
    for (const char* key : required) {
      if (!present.count(key))
        throw ConfigError(std::string("missing required field '") + key + "'");
    }
    const ValidationReport rep = validate(cfg.params);
    if (!rep.valid()) {
      std::string msg = "invalid parameters:";
      for (const auto& v : rep.violations) msg += " " + v + ";";
      throw ConfigError(msg);
    }
  }
  if (mode == RunMode::sweep) {
    if (cfg.fermi_levels.empty())
      throw ConfigError("missing required field 'fermi_levels' for sweep mode");
    if (cfg.efield_count < 1) throw ConfigError("efield_count must be >= 1");
    if (cfg.efield_max < cfg.efield_min)
      throw ConfigError("efield_max must be >= efield_min");
  }
  if (cfg.M < 1) throw ConfigError("M must be >= 1");
  if (cfg.threads < 0) throw ConfigError("threads must be >= 0 (0 = auto)");
  if (cfg.scatter_theta_count < 2) throw ConfigError("scatter_theta_count must be >= 2");
  return cfg;
}

}  // namespace latticecond

#endif
