#include "apnls/io/runner.hpp"

#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <vector>

#include "apnls/core/errors.hpp"
#include "apnls/io/series_literal.hpp"
#include "apnls/io/trace_io.hpp"
#include "apnls/nls/blowup.hpp"
#include "apnls/nls/solver.hpp"

namespace apnls::io {

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json classification_json(const ExperimentConfig& cfg, const APSeries& f) {
  BlowupClassification c = classify_blowup(cfg.nonlinearity.lambda, f);
  json j;
  j["classification"] = to_string(c.kind);
  j["forward"] = c.forward;
  j["backward"] = c.backward;
  j["mean_value"] = complex_to_json(c.mean);
  j["theorem_applies"] = cfg.nonlinearity.modulus && cfg.nonlinearity.p % 2 == 0;
  auto bound = riccati_bound(f, cfg.nonlinearity.lambda, cfg.nonlinearity.p);
  j["riccati_bound"] = bound ? json(*bound) : json(nullptr);
  return j;
}

bool all_snapshots(const SolutionTrace& trace) {
  for (const TraceSample& s : trace.samples) {
    if (!s.snapshot) return false;
  }
  return trace.size() > 1;
}

void write_summary(const ExperimentConfig& cfg, const std::filesystem::path& out_dir, const json& summary) {
  write_text_atomic(out_dir / cfg.summary_json, summary.dump(2) + "\n");
}

APSeries scan_data(const ExperimentConfig& cfg, Complex mean) {
  std::vector<Term> terms{{cfg.basis->zero(), mean}};
  if (cfg.scan.oscillation != 0.0) {
    FreqVector n = cfg.basis->zero();
    n[0] = 1;
    terms.push_back({n, Complex(cfg.scan.oscillation, 0.0)});
  }
  return APSeries(cfg.basis, std::move(terms));
}

RunOutcome run_scan(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
  const auto& lambdas = cfg.scan.lambdas;
  const auto& means = cfg.scan.means;
  const std::size_t cells = lambdas.size() * means.size();
  struct Cell {
    std::string kind;
    double forward_halt = std::numeric_limits<double>::quiet_NaN();
    double backward_halt = std::numeric_limits<double>::quiet_NaN();
    std::string forward_reason, backward_reason, error;
  };
  std::vector<Cell> results(cells);

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(cells); ++c) {
    const std::size_t li = c / means.size();
    const std::size_t mi = c % means.size();
    Cell& cell = results[c];
    try {
      APSeries f = scan_data(cfg, means[mi]);
      cell.kind = to_string(classify_blowup(lambdas[li], f).kind);
      if (cfg.scan.simulate) {
        NonlinearitySpec spec = cfg.nonlinearity;
        spec.lambda = lambdas[li];
        StepResult fw = step_solve(f, spec, cfg.solver);
        StepResult bw = step_solve_backward(f, spec, cfg.solver);
        cell.forward_halt = fw.halt_time;
        cell.backward_halt = bw.halt_time;
        cell.forward_reason = to_string(fw.halt);
        cell.backward_reason = to_string(bw.halt);
        const std::string stem = "scan_cell_" + std::to_string(li) + "_" + std::to_string(mi);
        write_trace_csv(out_dir / (stem + "_forward.csv"), fw.trace);
        write_trace_csv(out_dir / (stem + "_backward.csv"), bw.trace);
      }
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  }

  std::string table =
      "lambda_re,lambda_im,mean_re,mean_im,classification,forward_halt_time,forward_halt_reason,"
      "backward_halt_time,backward_halt_reason,error\n";
  json rows = json::array();
  std::size_t failures = 0;
  for (std::size_t c = 0; c < cells; ++c) {
    const Complex l = lambdas[c / means.size()];
    const Complex m = means[c % means.size()];
    const Cell& cell = results[c];
    if (!cell.error.empty()) ++failures;
    std::string err = cell.error;
    for (char& ch : err) {
      if (ch == ',' || ch == '\n') ch = ';';
    }
    table += format_double(l.real()) + ',' + format_double(l.imag()) + ',' + format_double(m.real()) + ',' +
             format_double(m.imag()) + ',' + cell.kind + ',' +
             (cfg.scan.simulate ? format_double(cell.forward_halt) : "") + ',' + cell.forward_reason + ',' +
             (cfg.scan.simulate ? format_double(cell.backward_halt) : "") + ',' + cell.backward_reason + ',' +
             err + '\n';
    json row = {{"lambda", complex_to_json(l)}, {"mean", complex_to_json(m)}, {"classification", cell.kind}};
    if (cfg.scan.simulate) {
      row["forward_halt_time"] = finite_or_null(cell.forward_halt);
      row["backward_halt_time"] = finite_or_null(cell.backward_halt);
      row["forward_halt_reason"] = cell.forward_reason;
      row["backward_halt_reason"] = cell.backward_reason;
    }
    if (!cell.error.empty()) row["error"] = cell.error;
    rows.push_back(std::move(row));
  }
  write_text_atomic(out_dir / cfg.scan_csv, table);

  RunOutcome out;
  out.summary = {{"mode", "scan"}, {"cells", rows}, {"failed_cells", failures}};
  return out;
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  RunOutcome out;
  const APSeries& f = cfg.initial;
  const NonlinearitySpec& spec = cfg.nonlinearity;

  try {
    switch (cfg.mode) {
      case RunMode::Classify: {
        out.summary = classification_json(cfg, f);
        out.summary["mode"] = "classify";
        break;
      }
      case RunMode::Scan: {
        out = run_scan(cfg, out_dir);
        break;
      }
      case RunMode::Picard: {
        PicardResult r = picard_solve(f, spec, cfg.solver);
        write_trace_csv(out_dir / cfg.trace_csv, r.trace);
        out.summary = classification_json(cfg, f);
        out.summary["mode"] = "picard";
        out.summary["halt_reason"] = "converged";
        out.summary["certified_window"] = finite_or_null(r.window);
        out.summary["iterations"] = r.iterations;
        out.summary["contraction_ratios"] = r.ratios;
        out.summary["ball_fill"] = r.ball_fill;
        if (all_snapshots(r.trace)) {
          out.summary["zero_mode_residual"] = zero_mode_residual(r.trace, spec).max_residual;
        }
        break;
      }
      case RunMode::Step: {
        StepResult r = step_solve(f, spec, cfg.solver);
        write_trace_csv(out_dir / cfg.trace_csv, r.trace);
        out.summary = classification_json(cfg, f);
        out.summary["mode"] = "step";
        out.summary["halt_reason"] = to_string(r.halt);
        out.summary["halt_time"] = r.halt_time;
        out.summary["steps"] = r.steps;
        out.summary["final_a_norm"] = finite_or_null(r.trace.back().a_norm);
        out.summary["discarded_mass"] = r.trace.back().discarded_mass;
        out.summary["certified_window"] = finite_or_null(certified_window(f, spec, cfg.solver.theta));
        if (all_snapshots(r.trace)) {
          out.summary["zero_mode_residual"] = zero_mode_residual(r.trace, spec).max_residual;
        }
        if (r.halt == HaltReason::AccuracyAbort) out.exit_code = kExitAccuracyAbort;
        break;
      }
    }
  } catch (const ContractionFailure& e) {
    out.exit_code = kExitSolverError;
    out.summary = {{"mode", to_string(cfg.mode)}, {"error", e.what()}, {"contraction_ratios", e.ratios()}};
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    out.exit_code = kExitSolverError;
    out.summary = {{"mode", to_string(cfg.mode)}, {"error", e.what()}};
  }
  out.summary["schema_version"] = kSchemaVersion;
  out.summary["seed"] = cfg.seed;
  write_summary(cfg, out_dir, out.summary);
  return out;
}

RunOutcome check_basis(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  CollisionScan scan = collision_scan(*cfg.basis, cfg.check_radius);
  json pairs = json::array();
  for (const auto& [a, b] : scan.pairs) {
    json pa = json::array(), pb = json::array();
    for (int v : a.components()) pa.push_back(v);
    for (int v : b.components()) pb.push_back(v);
    pairs.push_back({pa, pb});
  }
  RunOutcome out;
  out.summary = {{"mode", "check-basis"},
                 {"radius", cfg.check_radius},
                 {"box_size", scan.box_size},
                 {"large_box_warning", scan.large_box_warning},
                 {"collisions", pairs},
                 {"basis_warnings", cfg.basis->warnings()},
                 {"declared_independent", cfg.basis->declared_independent()},
                 {"schema_version", kSchemaVersion}};
  write_summary(cfg, out_dir, out.summary);
  return out;
}

}  // namespace apnls::io
