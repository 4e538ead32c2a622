#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "normlab/serialize.hpp"

namespace normlab {

/// Fully deterministic experiment description. Every output embeds the
/// hash of the canonical JSON rendering of this struct.
struct ExperimentConfig {
  std::string mode = "exact";  // exact | float
  std::uint64_t seed = 1;
  int dim = 8;
  std::string epsilon = "1/2";
  std::string generator = "disc";  // disc | biortho | explicit
  int rows = 0;                    // 0 = generator default
  int mesh_factor = 16;
  std::string suite;
  std::vector<int> horizons = {4, 6, 8};
  std::string out_dir = "out";

  int duality_functionals = 1000;
  int duality_dim_lo = 2;
  int duality_dim_hi = 12;

  int dichotomy_pairs = 200;
  int dichotomy_saved_certificates = 3;

  std::vector<int> geometry_dims = {8, 16, 24, 32};
  int geometry_slices = 3;
  std::string geometry_delta = "1/10";
  std::string geometry_margin = "1/20";  // admissible deficit from 2 - eps

  int acosta_count = 32;

  int discrange_max_m = 6;
  int discrange_max_power = 200;
  int discrange_truncation = 64;
  int discrange_poly_count = 500;
  std::string discrange_density_tol = "1/1000";
  int biortho_systems = 100;
  int biortho_max_dim = 10;

  Json to_json() const {
    Json j;
    j["mode"] = mode;
    j["seed"] = seed;
    j["spec"] = Json{{"dim", dim},
                     {"epsilon", epsilon},
                     {"generator", generator},
                     {"rows", rows},
                     {"mesh_factor", mesh_factor}};
    j["suite"] = suite;
    j["horizons"] = horizons;
    j["out"] = out_dir;
    j["duality"] = Json{{"functionals", duality_functionals},
                        {"dim_lo", duality_dim_lo},
                        {"dim_hi", duality_dim_hi}};
    j["dichotomy"] = Json{{"pairs", dichotomy_pairs},
                          {"saved_certificates", dichotomy_saved_certificates}};
    j["geometry"] = Json{{"dims", geometry_dims},
                         {"slices", geometry_slices},
                         {"delta", geometry_delta},
                         {"margin", geometry_margin}};
    j["acosta"] = Json{{"count", acosta_count}};
    j["discrange"] = Json{{"max_m", discrange_max_m},
                          {"max_power", discrange_max_power},
                          {"truncation", discrange_truncation},
                          {"poly_count", discrange_poly_count},
                          {"density_tol", discrange_density_tol},
                          {"biortho_systems", biortho_systems},
                          {"biortho_max_dim", biortho_max_dim}};
    return j;
  }

  std::string hash() const { return json_fingerprint(to_json()); }

  static ExperimentConfig from_json(const Json& j);
  static ExperimentConfig from_text(const std::string& text);
  static ExperimentConfig from_file(const std::string& path) {
    return from_text(read_file(path));
  }
};

namespace detail {

inline void apply_config_key(ExperimentConfig& cfg, const std::string& key, const Json& value) {
  auto as_int = [&](const char* name) {
    if (!value.is_number_integer())
      throw ConfigError(std::string(name) + " expects an integer, got " + value.dump());
    return value.get<int>();
  };
  auto as_string = [&]() {
    return value.is_string() ? value.get<std::string>() : value.dump();
  };
  auto as_int_list = [&]() {
    std::vector<int> out;
    if (value.is_array())
      for (const auto& v : value) out.push_back(v.get<int>());
    else
      out.push_back(value.get<int>());
    return out;
  };

  if (key == "mode") {
    cfg.mode = as_string();
    if (cfg.mode != "exact" && cfg.mode != "float")
      throw ConfigError("mode must be exact or float");
  } else if (key == "seed") {
    cfg.seed = value.get<std::uint64_t>();
  } else if (key == "spec.dim" || key == "dim") {
    cfg.dim = as_int("dim");
  } else if (key == "spec.epsilon" || key == "epsilon") {
    cfg.epsilon = as_string();
  } else if (key == "spec.generator" || key == "generator") {
    cfg.generator = as_string();
  } else if (key == "spec.rows" || key == "rows") {
    cfg.rows = as_int("rows");
  } else if (key == "spec.mesh_factor" || key == "mesh_factor") {
    cfg.mesh_factor = as_int("mesh_factor");
  } else if (key == "suite") {
    cfg.suite = as_string();
  } else if (key == "horizons") {
    cfg.horizons = as_int_list();
  } else if (key == "out") {
    cfg.out_dir = as_string();
  } else if (key == "duality.functionals") {
    cfg.duality_functionals = as_int(key.c_str());
  } else if (key == "duality.dim_lo") {
    cfg.duality_dim_lo = as_int(key.c_str());
  } else if (key == "duality.dim_hi") {
    cfg.duality_dim_hi = as_int(key.c_str());
  } else if (key == "dichotomy.pairs") {
    cfg.dichotomy_pairs = as_int(key.c_str());
  } else if (key == "dichotomy.saved_certificates") {
    cfg.dichotomy_saved_certificates = as_int(key.c_str());
  } else if (key == "geometry.dims") {
    cfg.geometry_dims = as_int_list();
  } else if (key == "geometry.slices") {
    cfg.geometry_slices = as_int(key.c_str());
  } else if (key == "geometry.delta") {
    cfg.geometry_delta = as_string();
  } else if (key == "geometry.margin") {
    cfg.geometry_margin = as_string();
  } else if (key == "acosta.count") {
    cfg.acosta_count = as_int(key.c_str());
  } else if (key == "discrange.max_m") {
    cfg.discrange_max_m = as_int(key.c_str());
  } else if (key == "discrange.max_power") {
    cfg.discrange_max_power = as_int(key.c_str());
  } else if (key == "discrange.truncation") {
    cfg.discrange_truncation = as_int(key.c_str());
  } else if (key == "discrange.poly_count") {
    cfg.discrange_poly_count = as_int(key.c_str());
  } else if (key == "discrange.density_tol") {
    cfg.discrange_density_tol = as_string();
  } else if (key == "discrange.biortho_systems") {
    cfg.biortho_systems = as_int(key.c_str());
  } else if (key == "discrange.biortho_max_dim") {
    cfg.biortho_max_dim = as_int(key.c_str());
  } else {
    throw ConfigError("unknown config key: " + key);
  }
}

inline void walk_config(ExperimentConfig& cfg, const Json& j, const std::string& prefix) {
  for (const auto& [k, v] : j.items()) {
    const std::string key = prefix.empty() ? k : prefix + "." + k;
    if (v.is_object())
      walk_config(cfg, v, key);
    else
      apply_config_key(cfg, key, v);
  }
}

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

/// "4,6,8" -> [4,6,8]; "12" -> 12; "1/2" and words stay strings.
inline Json parse_text_value(const std::string& raw) {
  const std::string v = trim(raw);
  if (v.find(',') != std::string::npos) {
    Json arr = Json::array();
    std::size_t start = 0;
    while (start <= v.size()) {
      const auto comma = v.find(',', start);
      const std::string part = trim(v.substr(start, comma - start));
      if (!part.empty()) arr.push_back(std::stoi(part));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return arr;
  }
  if (!v.empty() && (std::isdigit(static_cast<unsigned char>(v[0])) ||
                     (v[0] == '-' && v.size() > 1 && std::isdigit(static_cast<unsigned char>(v[1]))))) {
    if (v.find_first_not_of("-0123456789") == std::string::npos) {
      try {
        return Json(std::stoll(v));
      } catch (const std::exception&) {
        // falls through to string (e.g. out-of-range literals)
      }
    }
  }
  return Json(v);
}

}  // namespace detail

inline ExperimentConfig ExperimentConfig::from_json(const Json& j) {
  ExperimentConfig cfg;
  detail::walk_config(cfg, j, "");
  return cfg;
}

/// Accepts the key = value text format (dotted keys, '#' comments) or a
/// JSON object interchangeably.
inline ExperimentConfig ExperimentConfig::from_text(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j = Json::parse(text, nullptr, true, true);
    return from_json(j);
  }
  ExperimentConfig cfg;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    ++line_no;
    const auto hash_at = line.find('#');
    if (hash_at != std::string::npos) line = line.substr(0, hash_at);
    line = detail::trim(line);
    if (!line.empty()) {
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError("config line " + std::to_string(line_no) + " has no '='");
      const std::string key = detail::trim(line.substr(0, eq));
      detail::apply_config_key(cfg, key, detail::parse_text_value(line.substr(eq + 1)));
    }
    if (nl == std::string::npos) break;
    pos = nl + 1;
  }
  return cfg;
}

}  // namespace normlab
