#include "kdv/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "kdv/analysis.hpp"
#include "kdv/cn_scheme.hpp"
#include "kdv/csv.hpp"
#include "kdv/explicit_scheme.hpp"

namespace kdv::cli {

namespace fs = std::filesystem;

namespace {

void prepare_output_dir(const RunConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) throw Error("cannot create output directory '" + cfg.output_dir + "': " + ec.message());
}

std::size_t refined_nx(std::size_t nx, std::size_t level) { return (nx - 1) * (std::size_t{1} << level) + 1; }

}  // namespace

RunResult run_configured(const RunConfig& cfg, const WaveField& ic) {
  const TimeGrid time = cfg.time();
  if (cfg.scheme == SchemeChoice::Explicit) {
    return run_explicit(ic, cfg.explicit_config(), time, cfg.snapshot_times);
  }
  return run_cn(ic, cfg.cn_config(), time, cfg.snapshot_times);
}

std::string snapshot_filename(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "snapshot_t%.10g.csv", t);
  return buf;
}

std::string run_meta(const RunConfig& cfg, const RunResult& result) {
  std::string out = "# kdvlab run metadata\n[config]\n";
  out += echo_config(cfg);
  out += "[result]\n";
  out += std::string("outcome = ") +
         (result.outcome == Outcome::Completed ? "completed" : "blow-up") + "\n";
  out += "blowup_step = " +
         (result.blowup_step ? std::to_string(*result.blowup_step) : std::string("none")) + "\n";
  out += "steps_taken = " + std::to_string(result.steps_taken) + "\n";
  out += "initial_mass = " + format_csv_value(result.initial_mass) + "\n";
  out += "initial_max_abs = " + format_csv_value(result.initial_max_abs) + "\n";
  out += "growth_ratio = " + format_csv_value(result.growth_ratio) + "\n";
  out += "snapshot_count = " + std::to_string(result.snapshots.size()) + "\n";
  out += "[snapshots]\nindex,requested_t,t,step,mass,max_abs,peak_x,file\n";
  for (std::size_t i = 0; i < result.snapshots.size(); ++i) {
    const auto& s = result.snapshots[i];
    out += std::to_string(i) + "," + format_number(s.requested_time) + "," +
           format_csv_value(s.field.time()) + "," + std::to_string(s.step) + "," +
           format_csv_value(s.diagnostics.mass) + "," + format_csv_value(s.diagnostics.max_abs) +
           "," + format_csv_value(s.diagnostics.peak_x) + "," + snapshot_filename(s.field.time()) +
           "\n";
  }
  return out;
}

int cmd_run(const RunConfig& cfg, std::ostream& log) {
  const Grid1D grid = cfg.grid();
  const WaveField ic = make_initial_field(cfg, grid);
  prepare_output_dir(cfg);
  const RunResult result = run_configured(cfg, ic);

  const fs::path dir(cfg.output_dir);
  for (const auto& s : result.snapshots) {
    write_text_file(dir / snapshot_filename(s.field.time()), field_csv(s.field));
  }
  write_text_file(dir / "run.meta", run_meta(cfg, result));

  log << "scheme " << to_string(cfg.scheme) << ", " << result.steps_taken << " steps, "
      << result.snapshots.size() << " snapshots written to " << cfg.output_dir << "\n";
  if (result.outcome == Outcome::BlowUp) {
    log << "blow-up at step " << *result.blowup_step << "\n";
    return kExitBlowUp;
  }
  return kExitOk;
}

std::string scan_csv(const RunConfig& cfg) {
  const std::vector<double> dxs = cfg.scan_dx.value_or(std::vector<double>{cfg.grid().dx()});
  const std::vector<double> dts = cfg.scan_dt.value_or(std::vector<double>{cfg.dt});
  std::vector<SchemeParams> params;
  for (double dx : dxs) {
    for (double dt : dts) params.emplace_back(dx, dt);
  }
  const bool explicit_scheme = cfg.scan_scheme == SchemeChoice::Explicit;
  const auto rows = analysis::stability_scan(
      explicit_scheme ? analysis::SchemeKind::Explicit : analysis::SchemeKind::CrankNicolson,
      params, cfg.scan_u0, analysis::theta_grid(cfg.scan_theta_samples));

  std::string out = "scheme,dx,dt,alpha,beta,u0,max_abs_lambda\n";
  const std::string name = explicit_scheme ? "explicit" : "cn";
  for (const auto& row : rows) {
    out += name + "," + format_number(row.params.dx()) + "," + format_number(row.params.dt()) +
           "," + format_csv_value(row.params.alpha()) + "," + format_csv_value(row.params.beta()) +
           "," + format_number(row.u0) + "," + format_csv_value(row.max_magnitude) + "\n";
  }
  return out;
}

int cmd_scan(const RunConfig& cfg, std::ostream& log) {
  const std::string table = scan_csv(cfg);
  prepare_output_dir(cfg);
  write_text_file(fs::path(cfg.output_dir) / "scan.csv", table);
  log << "stability scan written to " << (fs::path(cfg.output_dir) / "scan.csv").string() << "\n";
  return kExitOk;
}

EigenReport eigen_report(const linalg::Pentadiagonal& a, double tol, int max_iters) {
  EigenReport report;
  report.n = a.n();
  report.symmetric_part_defect = linalg::symmetric_part_defect(a);
  std::vector<double> b0(a.n());
  for (std::size_t i = 0; i < b0.size(); ++i) {
    b0[i] = 1.0 + 0.5 * std::sin(1.3 * static_cast<double>(i) + 0.7);
  }
  report.power = linalg::power_iteration(a, b0, tol, max_iters);
  report.gram = linalg::gram_power_iteration(a, tol, max_iters);
  report.certificate = linalg::invertibility_certificate(a);
  return report;
}

std::string format_eigen_report(const EigenReport& r) {
  auto probe = [](const char* name, const char* quantity, const linalg::PowerIterationReport& p) {
    return std::string(name) + ": " + quantity + " = " + format_number(p.estimate) +
           ", iterations = " + std::to_string(p.iterations) +
           ", converged = " + (p.converged ? "true" : "false") +
           ", residual = " + format_number(p.residual) + "\n";
  };
  std::string out = "n = " + std::to_string(r.n) + "\n";
  out += "symmetric_part_defect = " + format_number(r.symmetric_part_defect) + "\n";
  out += probe("power_iteration", "estimate", r.power);
  out += probe("gram_power_iteration", "sigma_max", r.gram);
  out += "invertibility: method = " + r.certificate.method +
         ", certified = " + (r.certificate.certified ? "true" : "false") +
         ", detail = " + r.certificate.detail + "\n";
  return out;
}

int cmd_eigen(const RunConfig& cfg, std::ostream& out) {
  if (cfg.scheme == SchemeChoice::Explicit) {
    throw ConfigError("eigen: the explicit scheme has no system matrix; use cn-lagged or cn-implicit");
  }
  const Grid1D grid = cfg.grid();
  const WaveField ic = make_initial_field(cfg, grid);
  const CnConfig cn = cfg.cn_config();
  const auto system = cfg.scheme == SchemeChoice::CnImplicit ? assemble_implicit(ic, ic, cn)
                                                             : assemble_lagged(ic, cn);
  const auto report = eigen_report(system.a, cfg.eigen_tol, cfg.eigen_max_iters);
  const std::string text = "matrix = A (" + to_string(cfg.scheme) + ", " +
                           to_string(cfg.gamma_mode) + ") at t = 0\n" +
                           "alpha = " + format_number(cn.params.alpha()) +
                           ", beta = " + format_number(cn.params.beta()) + "\n" +
                           format_eigen_report(report);
  out << text;
  prepare_output_dir(cfg);
  write_text_file(fs::path(cfg.output_dir) / "eigen.txt", text);
  return kExitOk;
}

ConvergenceStudy convergence_study(const RunConfig& cfg) {
  const std::size_t levels = cfg.converge_levels;
  const bool refine_time = cfg.converge_mode != ConvergeMode::Space;
  const bool refine_space = cfg.converge_mode != ConvergeMode::Time;
  if (refine_space && cfg.ic.kind == IcKind::File) {
    throw ConfigError("converge: space refinement needs an analytic initial condition, not a file");
  }

  ConvergenceStudy study;
  study.analytic_reference = cfg.ic.kind == IcKind::Traveling;

  std::vector<std::optional<WaveField>> finals;
  for (std::size_t level = 0; level < levels; ++level) {
    RunConfig lc = cfg;
    lc.snapshot_times.clear();
    if (refine_time) lc.dt = cfg.dt / static_cast<double>(std::size_t{1} << level);
    if (refine_space) lc.nx = refined_nx(cfg.nx, level);
    const Grid1D grid = lc.grid();
    const RunResult result = run_configured(lc, make_initial_field(lc, grid));

    ConvergenceRow row;
    row.level = level;
    row.dx = grid.dx();
    row.dt = lc.dt;
    row.h = refine_space ? row.dx : row.dt;
    if (result.outcome == Outcome::BlowUp) {
      row.blew_up = true;
      study.blew_up = true;
      finals.emplace_back();
    } else {
      finals.emplace_back(result.final_field);
      if (study.analytic_reference) {
        const WaveField exact =
            traveling_wave(grid, cfg.ic.parameter, result.final_field.time());
        double err = 0.0;
        for (std::size_t i = 0; i < grid.nx(); ++i) {
          err = std::max(err, std::abs(result.final_field[i] - exact[i]));
        }
        row.error = err;
      }
    }
    study.rows.push_back(row);
  }

  if (!study.analytic_reference && levels > 1) study.rows.back().reference = true;
  if (!study.analytic_reference && levels > 1 && finals.back()) {
    const WaveField& finest = *finals.back();
    for (std::size_t level = 0; level + 1 < levels; ++level) {
      if (!finals[level]) continue;
      const std::size_t stride = refine_space ? (std::size_t{1} << (levels - 1 - level)) : 1;
      double err = 0.0;
      for (std::size_t i = 0; i < finals[level]->size(); ++i) {
        err = std::max(err, std::abs((*finals[level])[i] - finest[i * stride]));
      }
      study.rows[level].error = err;
    }
  }

  std::vector<std::pair<double, double>> fit;
  for (const auto& row : study.rows) {
    if (row.error && *row.error > 0.0) fit.emplace_back(row.h, *row.error);
  }
  for (std::size_t k = 1; k < study.rows.size(); ++k) {
    const auto& prev = study.rows[k - 1];
    auto& row = study.rows[k];
    if (prev.error && row.error && *prev.error > 0.0 && *row.error > 0.0) {
      row.order = std::log(*prev.error / *row.error) / std::log(prev.h / row.h);
    }
  }
  if (fit.size() >= 2) study.fitted_order = analysis::observed_order(fit);
  study.order_undefined = levels > 1 && !study.fitted_order;
  return study;
}

std::string convergence_csv(const ConvergenceStudy& study) {
  std::string out = "level,h,dx,dt,error,observed_order\n";
  for (std::size_t k = 0; k < study.rows.size(); ++k) {
    const auto& row = study.rows[k];
    out += std::to_string(row.level) + "," + format_number(row.h) + "," + format_number(row.dx) +
           "," + format_number(row.dt) + ",";
    if (row.blew_up) {
      out += "blow-up";
    } else if (row.reference) {
      out += "reference";
    } else if (row.error) {
      out += format_csv_value(*row.error);
    }
    out += ",";
    if (row.order) {
      out += format_csv_value(*row.order);
    } else if (k > 0 && !row.reference) {
      out += "undefined";
    }
    out += "\n";
  }
  return out;
}

int cmd_converge(const RunConfig& cfg, std::ostream& log) {
  const auto study = convergence_study(cfg);
  prepare_output_dir(cfg);
  write_text_file(fs::path(cfg.output_dir) / "converge.csv", convergence_csv(study));
  log << "convergence study (" << to_string(cfg.converge_mode) << ", "
      << (study.analytic_reference ? "exact reference" : "finest-level reference") << ", "
      << study.rows.size() << " levels)\n";
  if (study.fitted_order) {
    log << "observed order = " << format_number(*study.fitted_order) << "\n";
  } else if (study.order_undefined) {
    log << "observed order = undefined\n";
  }
  return study.blew_up ? kExitBlowUp : kExitOk;
}

}  // namespace kdv::cli
