#include "apnls/io/config.hpp"

#include <fstream>
#include <random>

#include "apnls/core/errors.hpp"
#include "apnls/io/series_literal.hpp"

namespace apnls::io {

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Picard: return "picard";
    case RunMode::Step: return "step";
    case RunMode::Classify: return "classify";
    case RunMode::Scan: return "scan";
  }
  return "step";
}

namespace {

RunMode mode_from(const std::string& s) {
  if (s == "picard") return RunMode::Picard;
  if (s == "step") return RunMode::Step;
  if (s == "classify") return RunMode::Classify;
  if (s == "scan") return RunMode::Scan;
  throw ConfigError("mode must be one of picard, step, classify, scan (got '" + s + "')");
}

APSeries random_series(const BasisPtr& basis, const json& spec, std::uint64_t seed) {
  require_known_keys(spec, {"terms", "radius", "amplitude"}, "initial_data.random");
  const int terms = spec.value("terms", 5);
  const int radius = spec.value("radius", 2);
  const double amplitude = spec.value("amplitude", 0.5);
  if (terms < 1 || radius < 0 || !(amplitude > 0.0)) {
    throw ConfigError("initial_data.random: need terms >= 1, radius >= 0, amplitude > 0");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> index(-radius, radius);
  std::uniform_real_distribution<double> coeff(-amplitude, amplitude);
  std::vector<Term> out;
  for (int t = 0; t < terms; ++t) {
    FreqVector n(basis->dim());
    for (std::size_t j = 0; j < basis->dim(); ++j) n[j] = index(rng);
    const double re = coeff(rng);
    const double im = coeff(rng);
    out.push_back({n, Complex(re, im)});
  }
  return APSeries(basis, std::move(out));
}

NonlinearitySpec nonlinearity_from(const json& j) {
  require_known_keys(j, {"p", "k", "lambda", "modulus"}, "nonlinearity");
  NonlinearitySpec spec;
  spec.p = j.value("p", 2);
  spec.modulus = j.value("modulus", false);
  spec.k = j.contains("k") ? j.at("k").get<int>() : (spec.modulus ? spec.p / 2 : spec.p);
  if (j.contains("lambda")) spec.lambda = complex_from_json(j.at("lambda"), "nonlinearity.lambda");
  spec.validate();
  return spec;
}

SolverConfig solver_from(const json& j) {
  require_known_keys(j, {"truncation", "picard", "stepper", "theta"}, "solver");
  SolverConfig cfg;
  if (j.contains("truncation")) {
    const json& t = j.at("truncation");
    require_known_keys(t, {"threshold", "max_support", "window_radius"}, "solver.truncation");
    cfg.trunc.threshold = t.value("threshold", 0.0);
    if (t.contains("max_support")) cfg.trunc.max_support = t.at("max_support").get<std::size_t>();
    if (t.contains("window_radius") && !t.at("window_radius").is_null()) {
      cfg.trunc.window_radius = t.at("window_radius").get<int>();
    }
  }
  if (j.contains("picard")) {
    const json& p = j.at("picard");
    require_known_keys(p, {"max_iters", "tol", "grid"}, "solver.picard");
    cfg.picard.max_iters = p.value("max_iters", cfg.picard.max_iters);
    cfg.picard.tol = p.value("tol", cfg.picard.tol);
    cfg.picard.grid = p.value("grid", cfg.picard.grid);
  }
  if (j.contains("stepper")) {
    const json& s = j.at("stepper");
    require_known_keys(s, {"dt", "max_steps", "blowup_norm_threshold", "snapshot_stride"},
                       "solver.stepper");
    cfg.stepper.dt = s.value("dt", cfg.stepper.dt);
    cfg.stepper.max_steps = s.value("max_steps", cfg.stepper.max_steps);
    cfg.stepper.blowup_norm_threshold =
        s.value("blowup_norm_threshold", cfg.stepper.blowup_norm_threshold);
    cfg.stepper.snapshot_stride = s.value("snapshot_stride", cfg.stepper.snapshot_stride);
  }
  cfg.theta = j.value("theta", cfg.theta);
  cfg.validate();
  return cfg;
}

ScanConfig scan_from(const json& j) {
  require_known_keys(j, {"lambdas", "means", "oscillation", "simulate"}, "scan");
  ScanConfig s;
  for (const json& l : j.value("lambdas", json::array())) s.lambdas.push_back(complex_from_json(l, "scan.lambdas"));
  for (const json& m : j.value("means", json::array())) s.means.push_back(complex_from_json(m, "scan.means"));
  s.oscillation = j.value("oscillation", 0.0);
  s.simulate = j.value("simulate", false);
  if (s.lambdas.empty() || s.means.empty()) throw ConfigError("scan: lambdas and means must be non-empty");
  return s;
}

}  // namespace

ExperimentConfig parse_config(const json& doc, std::optional<std::uint64_t> seed_override) {
  try {
    require_known_keys(doc, {"schema_version", "basis", "initial_data", "nonlinearity", "solver",
                             "mode", "output", "seed", "scan", "check_basis"},
                       "config");
    if (!doc.contains("schema_version") || doc.at("schema_version").get<int>() != kSchemaVersion) {
      throw ConfigError("config: schema_version must be " + std::to_string(kSchemaVersion));
    }
    ExperimentConfig cfg;
    if (!doc.contains("basis")) throw ConfigError("config: missing 'basis'");
    cfg.basis = basis_from_json(doc.at("basis"));
    cfg.seed = doc.value("seed", std::uint64_t{0});
    if (seed_override) cfg.seed = *seed_override;

    cfg.initial = APSeries(cfg.basis);
    if (doc.contains("initial_data")) {
      const json& init = doc.at("initial_data");
      if (init.is_object()) {
        require_known_keys(init, {"random"}, "initial_data");
        cfg.initial = random_series(cfg.basis, init.at("random"), cfg.seed);
      } else {
        cfg.initial = series_from_json(cfg.basis, init);
      }
    }
    if (doc.contains("nonlinearity")) cfg.nonlinearity = nonlinearity_from(doc.at("nonlinearity"));
    if (doc.contains("solver")) cfg.solver = solver_from(doc.at("solver"));
    if (doc.contains("mode")) cfg.mode = mode_from(doc.at("mode").get<std::string>());
    if (doc.contains("output")) {
      const json& o = doc.at("output");
      require_known_keys(o, {"trace_csv", "summary_json", "scan_csv"}, "output");
      cfg.trace_csv = o.value("trace_csv", cfg.trace_csv);
      cfg.summary_json = o.value("summary_json", cfg.summary_json);
      cfg.scan_csv = o.value("scan_csv", cfg.scan_csv);
    }
    if (doc.contains("scan")) cfg.scan = scan_from(doc.at("scan"));
    if (cfg.mode == RunMode::Scan && cfg.scan.lambdas.empty()) {
      throw ConfigError("config: mode 'scan' needs a 'scan' section");
    }
    if (doc.contains("check_basis")) {
      const json& c = doc.at("check_basis");
      require_known_keys(c, {"radius"}, "check_basis");
      cfg.check_radius = c.value("radius", cfg.check_radius);
      if (cfg.check_radius < 1) throw ConfigError("check_basis: radius must be >= 1");
    }
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

ExperimentConfig load_config(const std::filesystem::path& path,
                             std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(doc, seed_override);
}

}  // namespace apnls::io
