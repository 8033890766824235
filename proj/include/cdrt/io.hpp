#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cdrt/experiments.hpp"

// Config parsing (strict JSON schema) and bit-stable CSV/JSON table output.

namespace cdrt::io {

enum class OutputFormat { CSV, JSON };

struct RunConfig {
  exp::SweepSpec spec;
  OutputFormat format = OutputFormat::CSV;
  std::string out_path;  // empty = stdout
  int verbosity = 0;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline const std::vector<std::string> kKnownKeys = {
    "d_s1", "d_sr", "d_r1", "d_r2", "alpha", "n_antennas", "rho_s_db", "rho_r_db",
    "rho_db", "g0", "eta", "rth", "rth_x1", "rth_x2", "rth_x3", "a1_fixed", "ben2_beam",
    "axis", "grid", "schemes", "mode", "trials", "seed", "threads", "format", "out",
    "verbosity"};

inline double num(const nlohmann::json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError(std::string("config: '") + key + "' must be a number");
  return j.at(key).get<double>();
}

}  // namespace detail

/// Parses the documented key schema; unknown keys are rejected, omitted keys
/// take the default parameter set.
inline RunConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  for (const auto& [key, _] : j.items()) {
    if (std::find(detail::kKnownKeys.begin(), detail::kKnownKeys.end(), key) ==
        detail::kKnownKeys.end())
      throw ConfigError("config: unknown key '" + key + "'");
  }

  RunConfig cfg;
  SystemParams& p = cfg.spec.fixed;
  p.d_s1 = detail::num(j, "d_s1", p.d_s1);
  p.d_sr = detail::num(j, "d_sr", p.d_sr);
  p.d_r1 = detail::num(j, "d_r1", p.d_r1);
  p.d_r2 = detail::num(j, "d_r2", p.d_r2);
  p.alpha = detail::num(j, "alpha", p.alpha);
  p.n_antennas = static_cast<int>(detail::num(j, "n_antennas", p.n_antennas));
  if (j.contains("rho_db")) p.rho_s_db = p.rho_r_db = detail::num(j, "rho_db", 0.0);
  p.rho_s_db = detail::num(j, "rho_s_db", p.rho_s_db);
  p.rho_r_db = detail::num(j, "rho_r_db", p.rho_r_db);
  p.g0 = detail::num(j, "g0", p.g0);
  p.eta = detail::num(j, "eta", p.eta);
  if (j.contains("rth")) p.rth_x1 = p.rth_x2 = p.rth_x3 = detail::num(j, "rth", 0.2);
  p.rth_x1 = detail::num(j, "rth_x1", p.rth_x1);
  p.rth_x2 = detail::num(j, "rth_x2", p.rth_x2);
  p.rth_x3 = detail::num(j, "rth_x3", p.rth_x3);
  p.a1_fixed = detail::num(j, "a1_fixed", p.a1_fixed);
  if (j.contains("ben2_beam")) {
    const std::string b = j.at("ben2_beam").get<std::string>();
    if (b == "u1") p.ben2_beam_toward_relay = false;
    else if (b == "r") p.ben2_beam_toward_relay = true;
    else throw ConfigError("config: 'ben2_beam' must be \"u1\" or \"r\"");
  }
  try {
    validate(p);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  if (j.contains("axis")) cfg.spec.axis = exp::axis_from_string(j.at("axis").get<std::string>());
  if (j.contains("grid")) cfg.spec.grid = j.at("grid").get<std::vector<double>>();
  if (j.contains("schemes")) {
    cfg.spec.schemes.clear();
    for (const auto& s : j.at("schemes")) cfg.spec.schemes.push_back(scheme_from_string(s.get<std::string>()));
  }
  if (j.contains("mode")) {
    const std::string m = j.at("mode").get<std::string>();
    if (m == "mc") cfg.spec.mode = exp::RunMode::MC;
    else if (m == "analytic") cfg.spec.mode = exp::RunMode::ANALYTIC;
    else if (m == "both") cfg.spec.mode = exp::RunMode::BOTH;
    else throw ConfigError("config: 'mode' must be mc|analytic|both");
  }
  cfg.spec.n_trials = static_cast<long>(detail::num(j, "trials", cfg.spec.n_trials));
  cfg.spec.seed = static_cast<std::uint64_t>(detail::num(j, "seed", cfg.spec.seed));
  cfg.spec.threads = static_cast<int>(detail::num(j, "threads", cfg.spec.threads));
  if (j.contains("format")) {
    const std::string f = j.at("format").get<std::string>();
    if (f == "csv") cfg.format = OutputFormat::CSV;
    else if (f == "json") cfg.format = OutputFormat::JSON;
    else throw ConfigError("config: 'format' must be csv|json");
  }
  if (j.contains("out")) cfg.out_path = j.at("out").get<std::string>();
  cfg.verbosity = static_cast<int>(detail::num(j, "verbosity", 0));
  return cfg;
}

inline RunConfig parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return parse_config(j);
}

// ---- Table emission ----

/// Fixed 12-significant-digit, locale-independent rendering.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline const char* mode_label(exp::RunMode m) {
  return m == exp::RunMode::MC ? "mc" : "analytic";
}

inline void emit_csv(const std::vector<exp::SweepRow>& rows, std::ostream& os) {
  os << "axis,scheme,mode,op_x1,se_x1,op_x2,se_x2,op_x3,se_x3,est\n";
  for (const auto& r : rows) {
    os << format_number(r.axis_value) << ',' << to_string(r.scheme) << ',' << mode_label(r.method);
    for (int s = 0; s < 3; ++s) {
      os << ',' << format_number(r.op[s]) << ',';
      if (r.has_se) os << format_number(r.se[s]);
    }
    os << ',' << format_number(r.est) << '\n';
  }
}

inline nlohmann::json rows_to_json(const std::vector<exp::SweepRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json o;
    o["axis"] = r.axis_value;
    o["scheme"] = to_string(r.scheme);
    o["mode"] = mode_label(r.method);
    o["op_x1"] = r.op[0];
    o["op_x2"] = r.op[1];
    o["op_x3"] = r.op[2];
    if (r.has_se) {
      o["se_x1"] = r.se[0];
      o["se_x2"] = r.se[1];
      o["se_x3"] = r.se[2];
    }
    o["est"] = r.est;
    arr.push_back(o);
  }
  return arr;
}

inline std::vector<exp::SweepRow> rows_from_json(const nlohmann::json& arr) {
  std::vector<exp::SweepRow> rows;
  for (const auto& o : arr) {
    exp::SweepRow r;
    r.axis_value = o.at("axis").get<double>();
    r.scheme = scheme_from_string(o.at("scheme").get<std::string>());
    r.method = o.at("mode").get<std::string>() == "mc" ? exp::RunMode::MC : exp::RunMode::ANALYTIC;
    r.op = {o.at("op_x1").get<double>(), o.at("op_x2").get<double>(), o.at("op_x3").get<double>()};
    r.has_se = o.contains("se_x1");
    if (r.has_se)
      r.se = {o.at("se_x1").get<double>(), o.at("se_x2").get<double>(), o.at("se_x3").get<double>()};
    r.est = o.at("est").get<double>();
    rows.push_back(r);
  }
  return rows;
}

inline void emit_table(const std::vector<exp::SweepRow>& rows, OutputFormat format,
                       std::ostream& os) {
  if (format == OutputFormat::CSV)
    emit_csv(rows, os);
  else
    os << rows_to_json(rows).dump(2) << '\n';
}

inline void emit_table_to_file(const std::vector<exp::SweepRow>& rows, OutputFormat format,
                               const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  emit_table(rows, format, out);
  if (!out.good()) throw std::runtime_error("write failed: " + path);
}

}  // namespace cdrt::io
