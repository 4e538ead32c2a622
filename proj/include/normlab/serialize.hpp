#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"
#include "normlab/acosta.hpp"
#include "normlab/attain.hpp"
#include "normlab/ball_sum.hpp"

namespace normlab {

using Json = nlohmann::json;

constexpr const char* kSchemaVersion = "1";

/// Exact scalars travel as "p/q" strings, float scalars as JSON numbers.
/// Readers accept either form in both modes.
template <class R>
Json scalar_to_json(const R& v) {
  if constexpr (scalar_traits<R>::exact) return Json(rational_string(v));
  else return Json(v);
}

template <class R>
R scalar_from_json(const Json& j) {
  using T = scalar_traits<R>;
  if (j.is_string()) return T::parse(j.get<std::string>());
  if (j.is_number_integer()) return T::from_long(j.get<long>());
  if (j.is_number()) return T::from_double(j.get<double>());
  throw ConfigError("expected a scalar, got: " + j.dump());
}

template <class R>
Json vec_to_json(const Vec<R>& v) {
  Json arr = Json::array();
  for (const R& x : v.dense()) arr.push_back(scalar_to_json(x));
  return arr;
}

template <class R>
Vec<R> vec_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("expected a nonempty coordinate array");
  Vec<R> v(static_cast<int>(j.size()));
  for (int i = 1; i <= static_cast<int>(j.size()); ++i)
    v.set(i, scalar_from_json<R>(j[static_cast<std::size_t>(i - 1)]));
  return v;
}

/// Matrix form: element [i][j] is coordinate i+1 of the image of e_{j+1}.
template <class R>
Json matrix_to_json(const OperatorColumns<R>& op) {
  Json rows = Json::array();
  for (int i = 1; i <= op.codomain_dim; ++i) {
    Json row = Json::array();
    for (int n = 1; n <= op.domain_dim; ++n)
      row.push_back(scalar_to_json(op.column(n).get(i)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class R>
OperatorColumns<R> matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("expected a matrix (array of rows)");
  const int codom = static_cast<int>(j.size());
  const int dom = static_cast<int>(j[0].size());
  std::vector<Vec<R>> cols(static_cast<std::size_t>(dom), Vec<R>(codom));
  for (int i = 0; i < codom; ++i) {
    if (static_cast<int>(j[static_cast<std::size_t>(i)].size()) != dom)
      throw ConfigError("ragged matrix rows");
    for (int n = 0; n < dom; ++n)
      cols[static_cast<std::size_t>(n)].set(
          i + 1, scalar_from_json<R>(j[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)]));
  }
  return OperatorColumns<R>(std::move(cols), codom);
}

template <class R>
Json spec_to_json(const SumNormSpec<R>& spec) {
  Json j;
  j["dim"] = spec.dim;
  j["base"] = "sup";
  Json r = Json::array();
  for (const R& w : spec.r) r.push_back(scalar_to_json(w));
  j["r"] = std::move(r);
  Json rows = Json::array();
  for (const auto& v : spec.rows) rows.push_back(vec_to_json(v));
  j["V"] = std::move(rows);
  if (spec.epsilon) j["epsilon"] = scalar_to_json(*spec.epsilon);
  return j;
}

template <class R>
SumNormSpec<R> spec_from_json(const Json& j, int mesh_factor = 32) {
  if (!j.contains("dim") || !j.contains("r") || !j.contains("V"))
    throw ConfigError("spec json needs dim, r, V");
  if (j.contains("base") && j["base"] != "sup")
    throw ConfigError("only the sup base norm is supported");
  const int dim = j["dim"].get<int>();
  std::vector<R> weights;
  for (const auto& w : j["r"]) weights.push_back(scalar_from_json<R>(w));
  std::vector<Vec<R>> rows;
  for (const auto& row : j["V"]) rows.push_back(vec_from_json<R>(row));
  std::optional<R> eps;
  if (j.contains("epsilon")) eps = scalar_from_json<R>(j["epsilon"]);
  return make_sum_norm_spec(dim, std::move(weights), std::move(rows), eps, mesh_factor);
}

template <class R>
Json ballsum_to_json(const BallSumSpec<R>& spec) {
  Json j;
  j["base"] = spec.base ? spec_to_json(*spec.base) : Json("sup");
  j["S"] = matrix_to_json(spec.s_op);
  j["rho_s"] = scalar_to_json(spec.rho_s);
  if (spec.target_epsilon) j["epsilon"] = scalar_to_json(*spec.target_epsilon);
  return j;
}

template <class R>
BallSumSpec<R> ballsum_from_json(const Json& j, int mesh_factor = 32) {
  BallSumSpec<R> out;
  if (!j.contains("base") || !j.contains("S") || !j.contains("rho_s"))
    throw ConfigError("ball-sum json needs base, S, rho_s");
  if (!(j["base"].is_string() && j["base"] == "sup"))
    out.base = spec_from_json<R>(j["base"], mesh_factor);
  out.s_op = matrix_from_json<R>(j["S"]);
  out.rho_s = scalar_from_json<R>(j["rho_s"]);
  if (j.contains("epsilon")) out.target_epsilon = scalar_from_json<R>(j["epsilon"]);
  return out;
}

template <class R>
Json acosta_to_json(const AcostaSpec<R>& spec) {
  Json j;
  j["dim"] = spec.dim;
  Json w = Json::array();
  for (const R& wn : spec.w) w.push_back(scalar_to_json(wn));
  j["w"] = std::move(w);
  if (spec.tail) {
    j["tail"] = Json{{"coeff", scalar_to_json(spec.tail->coeff)},
                     {"exponent", spec.tail->exponent}};
  }
  return j;
}

template <class R>
AcostaSpec<R> acosta_from_json(const Json& j) {
  if (!j.contains("dim") || !j.contains("w")) throw ConfigError("acosta json needs dim, w");
  if (j.contains("tail"))
    return AcostaSpec<R>::power_law(j["dim"].get<int>(),
                                    scalar_from_json<R>(j["tail"]["coeff"]),
                                    j["tail"]["exponent"].get<int>());
  std::vector<R> w;
  for (const auto& wn : j["w"]) w.push_back(scalar_from_json<R>(wn));
  auto spec = AcostaSpec<R>::from_weights(std::move(w));
  if (spec.dim != j["dim"].get<int>()) throw ConfigError("acosta json: dim/w mismatch");
  return spec;
}

template <class R>
Json decomposition_to_json(const Decomposition<R>& dec) {
  Json j;
  j["f0"] = vec_to_json(dec.f0);
  Json s = Json::array();
  for (const R& v : dec.s) s.push_back(scalar_to_json(v));
  j["s"] = std::move(s);
  j["residual_check"] = dec.residual_check;
  return j;
}

/// Stable content hash of a canonical JSON rendering.
inline std::string json_fingerprint(const Json& j) { return hex_fingerprint(j.dump()); }

template <class R>
Json certificate_to_json(const NonAttainmentCertificate<R>& cert,
                         const std::string& spec_hash,
                         std::optional<std::uint64_t> seed = std::nullopt) {
  Json j;
  j["version"] = kSchemaVersion;
  j["spec_hash"] = spec_hash;
  if (seed) j["seed"] = *seed;
  j["theta"] = cert.theta;
  j["cancel_indices"] = cert.cancel_indices;
  j["cap"] = Json{{"direction", vec_to_json(cert.cap_direction)},
                  {"radius", scalar_to_json(cert.cap_radius)}};
  j["witness_x"] = vec_to_json(cert.witness_x);
  j["witness_z"] = vec_to_json(cert.witness_z);
  return j;
}

template <class R>
NonAttainmentCertificate<R> certificate_from_json(const Json& j) {
  NonAttainmentCertificate<R> cert;
  cert.theta = j.at("theta").get<int>();
  cert.cancel_indices = j.at("cancel_indices").get<std::vector<int>>();
  cert.cap_direction = vec_from_json<R>(j.at("cap").at("direction"));
  cert.cap_radius = scalar_from_json<R>(j.at("cap").at("radius"));
  cert.witness_x = vec_from_json<R>(j.at("witness_x"));
  cert.witness_z = vec_from_json<R>(j.at("witness_z"));
  return cert;
}

/// Atomic whole-file write: temp file in the same directory, then rename.
inline void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open for writing: " + tmp);
    out << contents;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error("cannot rename " + tmp + " to " + path);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace normlab
