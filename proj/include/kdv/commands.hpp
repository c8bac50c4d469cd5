#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kdv/config.hpp"
#include "kdv/linalg.hpp"
#include "kdv/run.hpp"

namespace kdv::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitBlowUp = 2 };

// Runs the configured scheme from `ic`.
RunResult run_configured(const RunConfig& cfg, const WaveField& ic);

// "snapshot_t<t>.csv" with t printed to 10 significant digits.
std::string snapshot_filename(double t);

std::string run_meta(const RunConfig& cfg, const RunResult& result);

// Writes one CSV per snapshot and run.meta into cfg.output_dir.
int cmd_run(const RunConfig& cfg, std::ostream& log);

// Writes scan.csv: max |lambda| over theta in [0, pi] for every (dx, dt, u0).
int cmd_scan(const RunConfig& cfg, std::ostream& log);
std::string scan_csv(const RunConfig& cfg);

struct EigenReport {
  std::size_t n = 0;
  double symmetric_part_defect = 0.0;
  linalg::PowerIterationReport power;
  linalg::PowerIterationReport gram;
  linalg::InvertibilityReport certificate;
};

EigenReport eigen_report(const linalg::Pentadiagonal& a, double tol, int max_iters);
std::string format_eigen_report(const EigenReport& report);

// Probes the Crank-Nicolson matrix A assembled from the initial field.
int cmd_eigen(const RunConfig& cfg, std::ostream& out);

struct ConvergenceRow {
  std::size_t level = 0;
  double h = 0.0;
  double dx = 0.0;
  double dt = 0.0;
  std::optional<double> error;  // empty for the reference level or after blow-up
  std::optional<double> order;  // pairwise order against the previous level
  bool blew_up = false;
  bool reference = false;  // finest level serving as the reference
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  bool analytic_reference = false;
  std::optional<double> fitted_order;  // least-squares slope over all errors
  bool order_undefined = false;        // several levels but no positive errors to fit
  bool blew_up = false;
};

// Level l halves dt (time), dx (space) or both l times. Traveling-wave runs
// are compared with the exact solution; anything else with the finest level.
ConvergenceStudy convergence_study(const RunConfig& cfg);
std::string convergence_csv(const ConvergenceStudy& study);

// Writes converge.csv.
int cmd_converge(const RunConfig& cfg, std::ostream& log);

}  // namespace kdv::cli
