#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "normlab/normlab.hpp"

namespace fs = std::filesystem;
using namespace normlab;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitGateFailure = 1;
constexpr int kExitUsage = 2;

struct CliOverrides {
  std::optional<int> dim;
  std::optional<std::string> epsilon;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<std::string> generator;
  std::optional<int> rows;
  std::optional<std::string> horizons;
  std::optional<std::string> out;
};

ExperimentConfig resolve_config(const std::string& config_path, const CliOverrides& ov) {
  ExperimentConfig cfg;
  if (!config_path.empty()) cfg = ExperimentConfig::from_file(config_path);
  if (ov.dim) cfg.dim = *ov.dim;
  if (ov.epsilon) cfg.epsilon = *ov.epsilon;
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.mode) cfg.mode = *ov.mode;
  if (ov.generator) cfg.generator = *ov.generator;
  if (ov.rows) cfg.rows = *ov.rows;
  if (ov.out) cfg.out_dir = *ov.out;
  if (ov.horizons) {
    cfg.horizons.clear();
    std::size_t start = 0;
    const std::string& h = *ov.horizons;
    while (start <= h.size()) {
      const auto comma = h.find(',', start);
      const std::string part = h.substr(start, comma - start);
      if (!part.empty()) cfg.horizons.push_back(std::stoi(part));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  if (cfg.mode != "exact" && cfg.mode != "float")
    throw ConfigError("mode must be exact or float");
  return cfg;
}

/// Hash over the spec-determining subset of the config; build writes it
/// into the manifest and run verifies it, so suite selection at run time
/// does not invalidate previously built spec files.
std::string spec_scope_hash(const ExperimentConfig& cfg) {
  Json j;
  j["mode"] = cfg.mode;
  j["seed"] = cfg.seed;
  j["dim"] = cfg.dim;
  j["epsilon"] = cfg.epsilon;
  j["generator"] = cfg.generator;
  j["rows"] = cfg.rows;
  j["mesh_factor"] = cfg.mesh_factor;
  j["acosta_count"] = cfg.acosta_count;
  return json_fingerprint(j);
}

template <class R>
Json build_spec_files(const ExperimentConfig& cfg, const fs::path& out) {
  using T = scalar_traits<R>;
  const R eps = T::parse(cfg.epsilon);
  RowGenerator gen;
  if (cfg.generator == "disc") gen = RowGenerator::disc;
  else if (cfg.generator == "biortho") gen = RowGenerator::biortho;
  else throw ConfigError("unknown generator: " + cfg.generator);

  BuildOptions opts;
  opts.rows = cfg.rows > 0 ? cfg.rows : 8 * cfg.dim;
  opts.mesh_factor = cfg.mesh_factor;
  const auto sum_spec = build_sum_spec<R>(cfg.dim, eps, gen, cfg.seed, opts);

  // Smoothed variant: base budget eps' = eps/2 and ball scale rho_s
  // strictly inside the constant inequality (2-eps')(1+rho_s)^-1 > 2-eps.
  const R eps_base = eps / T::from_long(2);
  const R rho_s = eps / (T::from_long(4) * (T::from_long(2) - eps));
  BuildOptions base_opts = opts;
  const auto base_spec = build_sum_spec<R>(cfg.dim, eps_base, gen, cfg.seed, base_opts);
  std::vector<Vec<R>> dense_points;
  {
    Rng rng(cfg.seed + 5);
    const int count = std::min(cfg.dim, 8);
    for (int i = 0; i < count; ++i) {
      Vec<R> v = convert_vec<R>(random_rational_vec(cfg.dim, rng));
      if (v.is_zero()) v = Vec<R>::basis(1, cfg.dim);
      dense_points.push_back(v * (T::one() / p_norm(base_spec, v)));
    }
  }
  const auto ball = smooth_variant(base_spec, rho_s, dense_points, std::optional<R>(eps));
  const auto acosta = AcostaSpec<R>::power_law(std::max(cfg.acosta_count, cfg.dim),
                                               T::one(), 1);

  const Json sum_json = spec_to_json(sum_spec);
  const Json ball_json = ballsum_to_json(ball);
  const Json acosta_json = acosta_to_json(acosta);

  write_file_atomic((out / "sum_spec.json").string(), sum_json.dump(2) + "\n");
  write_file_atomic((out / "ball_sum_spec.json").string(), ball_json.dump(2) + "\n");
  write_file_atomic((out / "acosta_spec.json").string(), acosta_json.dump(2) + "\n");

  Json manifest;
  manifest["version"] = kSchemaVersion;
  manifest["mode"] = cfg.mode;
  manifest["config_hash"] = cfg.hash();
  manifest["spec_scope_hash"] = spec_scope_hash(cfg);
  manifest["files"] = Json{
      {"sum_spec", Json{{"path", "sum_spec.json"}, {"hash", json_fingerprint(sum_json)}}},
      {"ball_sum_spec",
       Json{{"path", "ball_sum_spec.json"}, {"hash", json_fingerprint(ball_json)}}},
      {"acosta_spec",
       Json{{"path", "acosta_spec.json"}, {"hash", json_fingerprint(acosta_json)}}}};
  manifest["rho"] = T::str(sum_spec.rho);
  manifest["covering_radius"] = T::str(sum_spec.covering_radius);
  return manifest;
}

int cmd_build(const ExperimentConfig& cfg) {
  const fs::path out(cfg.out_dir);
  fs::create_directories(out);
  Json manifest = cfg.mode == "exact" ? build_spec_files<Rat>(cfg, out)
                                      : build_spec_files<double>(cfg, out);
  write_file_atomic((out / "manifest.json").string(), manifest.dump(2) + "\n");
  std::cout << "wrote " << (out / "manifest.json").string() << "\n"
            << "config_hash " << manifest["config_hash"].get<std::string>() << "\n"
            << "rho " << manifest["rho"].get<std::string>() << "\n";
  return kExitPass;
}

Json load_manifest(const ExperimentConfig& cfg) {
  const fs::path path = fs::path(cfg.out_dir) / "manifest.json";
  if (!fs::exists(path))
    throw ConfigError("missing spec files: " + path.string() + " (run `build` first)");
  Json manifest = Json::parse(read_file(path.string()));
  if (manifest.at("spec_scope_hash").get<std::string>() != spec_scope_hash(cfg))
    throw ConfigError("spec files were built from a different configuration; rebuild");
  for (const auto& [name, entry] : manifest.at("files").items()) {
    const fs::path f = fs::path(cfg.out_dir) / entry.at("path").get<std::string>();
    if (!fs::exists(f)) throw ConfigError("missing spec file: " + f.string());
    if (json_fingerprint(Json::parse(read_file(f.string()))) !=
        entry.at("hash").get<std::string>())
      throw ConfigError("spec file hash mismatch: " + f.string());
  }
  return manifest;
}

int cmd_run(const ExperimentConfig& cfg, const std::string& suite_flag) {
  ExperimentConfig cfg_run = cfg;
  if (!suite_flag.empty()) cfg_run.suite = suite_flag;
  const std::string& suite = cfg_run.suite;
  if (suite.empty()) throw ConfigError("no suite selected (use --suite)");
  const Json manifest = load_manifest(cfg_run);

  SuiteOutput result;
  if (suite == "duality") {
    result = cfg_run.mode == "exact" ? run_duality_suite<Rat>(cfg_run)
                                     : run_duality_suite<double>(cfg_run);
  } else if (cfg_run.mode != "exact") {
    throw ConfigError("suite '" + suite + "' runs in exact mode only");
  } else if (suite == "dichotomy") {
    const fs::path spec_path = fs::path(cfg_run.out_dir) / "sum_spec.json";
    auto spec = std::make_shared<const SumNormSpec<Rat>>(
        spec_from_json<Rat>(Json::parse(read_file(spec_path.string())), cfg_run.mesh_factor));
    result = run_dichotomy_suite(cfg_run, spec);
  } else if (suite == "geometry") {
    result = run_geometry_suite(cfg_run);
  } else if (suite == "acosta") {
    const fs::path spec_path = fs::path(cfg_run.out_dir) / "acosta_spec.json";
    const auto spec = acosta_from_json<Rat>(Json::parse(read_file(spec_path.string())));
    result = run_acosta_suite(cfg_run, spec);
  } else if (suite == "discrange") {
    result = run_discrange_suite(cfg_run);
  } else {
    throw ConfigError("unknown suite: " + suite +
                      " (expected duality|dichotomy|geometry|acosta|discrange)");
  }

  result.report["config_hash"] = cfg_run.hash();
  result.report["spec_scope_hash"] = manifest.at("spec_scope_hash");
  result.report["version"] = kSchemaVersion;

  const fs::path out(cfg_run.out_dir);
  fs::create_directories(out);
  write_file_atomic((out / (suite + "_report.json")).string(), result.report.dump(2) + "\n");
  {
    std::string csv = "suite,metric,value,status\n";
    for (const auto& line : result.summary_csv) csv += line + "\n";
    write_file_atomic((out / (suite + "_summary.csv")).string(), csv);
  }
  if (!result.diagnostics_csv.empty()) {
    std::string csv = "spec_hash,dim,epsilon,metric,value,swept_n,runtime_ms\n";
    for (const auto& line : result.diagnostics_csv) csv += line + "\n";
    write_file_atomic((out / (suite + "_diagnostics.csv")).string(), csv);
  }
  for (const auto& [name, json] : result.artifacts) {
    const fs::path path = out / name;
    fs::create_directories(path.parent_path());
    write_file_atomic(path.string(), json.dump(2) + "\n");
  }

  std::cout << "suite " << suite << ": " << (result.pass ? "PASS" : "FAIL") << "\n"
            << "report " << (out / (suite + "_report.json")).string() << "\n";
  return result.pass ? kExitPass : kExitGateFailure;
}

int cmd_replay(const std::string& cert_path, const std::string& spec_path) {
  const Json cert_json = Json::parse(read_file(cert_path));
  const Json spec_json = Json::parse(read_file(spec_path));
  const std::string actual_hash = json_fingerprint(spec_json);
  if (cert_json.at("spec_hash").get<std::string>() != actual_hash)
    throw ConfigError("certificate spec_hash " +
                      cert_json.at("spec_hash").get<std::string>() +
                      " does not match the given spec file (" + actual_hash + ")");

  auto spec = std::make_shared<const SumNormSpec<Rat>>(spec_from_json<Rat>(spec_json));
  const auto cert = certificate_from_json<Rat>(cert_json);

  std::string why;
  if (!validate_certificate(*spec, cert, &why)) {
    std::cout << "DIVERGENCE: " << why << "\n";
    return kExitGateFailure;
  }
  const auto f = make_attaining(spec, cert.witness_x);
  const auto g = make_attaining(spec, cert.witness_z);

  const Vec<Rat> sum =
      f.assembled() + g.assembled() * scalar_traits<Rat>::from_long(cert.theta);
  const auto [value, maximizer] = dual_norm_support(*spec, sum);
  const auto refuted = certificate_check(*spec, cert, f, g, maximizer);

  bool matches = true;
  if (cert_json.contains("maximizer"))
    matches = vec_from_json<Rat>(cert_json["maximizer"]) == maximizer;
  if (cert_json.contains("refuted_index"))
    matches = matches && cert_json["refuted_index"].get<int>() == refuted.value_or(0);

  if (!matches) {
    std::cout << "DIVERGENCE: recomputed refutation disagrees with the certificate\n";
    return kExitGateFailure;
  }
  if (refuted)
    std::cout << "verdict: Refuted(" << *refuted << ")\n";
  else
    std::cout << "verdict: Inconclusive\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"normlab: finite-truncation norm renorming laboratory"};
  app.require_subcommand(1);

  CliOverrides ov;
  std::string config_path, suite_flag, cert_path, spec_path;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "config file (key=value text or JSON)");
    cmd->add_option("--dim", ov.dim, "truncation dimension");
    cmd->add_option("--epsilon", ov.epsilon, "budget epsilon in (0,2), e.g. 1/2 or 0.5");
    cmd->add_option("--seed", ov.seed, "deterministic seed");
    cmd->add_option("--mode", ov.mode, "exact | float");
    cmd->add_option("--generator", ov.generator, "disc | biortho");
    cmd->add_option("--rows", ov.rows, "row count (0 = default)");
    cmd->add_option("--horizons", ov.horizons, "comma-separated horizon list");
    cmd->add_option("--out", ov.out, "output directory");
  };

  CLI::App* build = app.add_subcommand("build", "build spec files and manifest");
  add_common(build);
  CLI::App* run = app.add_subcommand("run", "run an experiment suite");
  add_common(run);
  run->add_option("--suite", suite_flag, "duality|dichotomy|geometry|acosta|discrange");
  CLI::App* replay = app.add_subcommand("replay", "re-derive a certificate from scratch");
  replay->add_option("--certificate", cert_path, "certificate JSON file")->required();
  replay->add_option("--spec", spec_path, "spec JSON file the certificate references")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (build->parsed()) return cmd_build(resolve_config(config_path, ov));
    if (run->parsed()) return cmd_run(resolve_config(config_path, ov), suite_flag);
    if (replay->parsed()) return cmd_replay(cert_path, spec_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
