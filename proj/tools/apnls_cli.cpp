#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <omp.h>

#include <CLI11.hpp>

#include "apnls/core/errors.hpp"
#include "apnls/io/config.hpp"
#include "apnls/io/runner.hpp"

namespace {

struct Options {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  int threads = 0;
  int radius = 0;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--config", opt.config, "experiment config (JSON)")->envname("APNLS_CONFIG")->required();
  cmd->add_option("--out", opt.out, "output directory")->envname("APNLS_OUT");
  cmd->add_option("--seed", opt.seed, "seed for generated initial data")->envname("APNLS_SEED");
  cmd->add_option("--threads", opt.threads, "OpenMP threads (0 = runtime default)")
      ->envname("APNLS_THREADS")
      ->check(CLI::NonNegativeNumber);
}

int dispatch(const std::string& verb, const Options& opt) {
  if (opt.threads > 0) omp_set_num_threads(opt.threads);
  apnls::io::ExperimentConfig cfg = apnls::io::load_config(opt.config, opt.seed);
  apnls::io::RunOutcome out;
  if (verb == "check-basis") {
    if (opt.radius > 0) cfg.check_radius = opt.radius;
    out = apnls::io::check_basis(cfg, opt.out);
  } else {
    if (verb == "classify") cfg.mode = apnls::io::RunMode::Classify;
    if (verb == "scan") {
      if (cfg.scan.lambdas.empty()) throw apnls::ConfigError("config: verb 'scan' needs a 'scan' section");
      cfg.mode = apnls::io::RunMode::Scan;
    }
    out = apnls::io::run_experiment(cfg, opt.out);
  }
  std::cout << out.summary.dump(2) << '\n';
  if (out.summary.contains("error")) std::cerr << "error: " << out.summary["error"].get<std::string>() << '\n';
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Almost periodic NLS experiments"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* run = app.add_subcommand("run", "run the mode named in the config");
  CLI::App* scan = app.add_subcommand("scan", "lambda x mean-value classification grid");
  CLI::App* classify = app.add_subcommand("classify", "sign-condition classification of the initial data");
  CLI::App* check = app.add_subcommand("check-basis", "search a box for frequency collisions");
  for (CLI::App* cmd : {run, scan, classify, check}) add_common(cmd, opt);
  check->add_option("--radius", opt.radius, "box radius (overrides check_basis.radius)")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    return dispatch(verb, opt);
  } catch (const apnls::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return apnls::io::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return apnls::io::kExitSolverError;
  }
}
