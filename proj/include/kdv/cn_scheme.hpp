#pragma once

#include <span>

#include "kdv/linalg.hpp"
#include "kdv/model.hpp"
#include "kdv/run.hpp"

namespace kdv {

// Which time level supplies the coefficient u_i of the linearized u*u_x term.
enum class LinearizationKind {
  LaggedCoefficient,    // u_i^n: one linear solve per step
  ImplicitCoefficient,  // u_i^{n+1}: Picard iteration on the coefficient
};

// Where the coefficient is sampled.
enum class GammaMode {
  RowVarying,      // each row uses its own u_i
  FrozenMidpoint,  // every row uses u at the domain midpoint
};

struct CnConfig {
  SchemeParams params;
  LinearizationKind linearization = LinearizationKind::LaggedCoefficient;
  GammaMode gamma_mode = GammaMode::RowVarying;
  double picard_tol = 1e-10;
  int picard_max_iters = 50;
  // Divide the interior by max|u| after every solve. This changes the problem
  // being solved and is off by default.
  bool paper_normalization = false;
  double max_amplitude = 1e6;
};

// A U^{n+1} = B U^n on the interior cells 2..nx-3 (dimension nx-4).
struct CnSystem {
  linalg::Pentadiagonal a;
  linalg::Pentadiagonal b;
};

// Grid index whose value is used by GammaMode::FrozenMidpoint.
constexpr std::size_t midpoint_index(std::size_t nx) noexcept { return (nx - 1) / 2; }

// Rows of A: (-a/4, g_i, 1, -g_i, a/4); rows of B: (a/4, -g_i, 1, g_i, -a/4),
// with g_i = alpha/2 + (3 beta/8) * coefficient_i.
CnSystem assemble_lagged(const WaveField& u_n, const CnConfig& cfg);

// Rows of A: (-a/4, z_i, e_i, -z_i, a/4) with z_i = alpha/2 + (3 beta/8) guess_i
// and e_i = 1 - (3 beta/8)(u^n_{i+1} - u^n_{i-1}); B rows are the constant
// (a/4, -a/2, 1, a/2, -a/4).
CnSystem assemble_implicit(const WaveField& u_n, const WaveField& u_guess, const CnConfig& cfg);

WaveField cn_step_lagged(const WaveField& u_n, const CnConfig& cfg);

struct ImplicitStepResult {
  WaveField field;
  int iterations;
};

// Picard iteration: u^(0) = u^n, solve A(u^(m)) u^(m+1) = B u^n until
// max|u^(m+1) - u^(m)| < picard_tol. Throws FixedPointFailure otherwise.
ImplicitStepResult cn_step_implicit(const WaveField& u_n, const CnConfig& cfg);

RunResult run_cn(const WaveField& ic, const CnConfig& cfg, const TimeGrid& time,
                 std::span<const double> snapshot_times);

}  // namespace kdv
