#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "kdv/model.hpp"

namespace kdv::analysis {

enum class StencilKind {
  FirstDerivCentered,   // (u_{i+1} - u_{i-1}) / 2dx
  SecondDerivCentered,  // (u_{i+1} - 2u_i + u_{i-1}) / dx^2
  ThirdDerivCentered,   // (u_{i+2} - 2u_{i+1} + 2u_{i-1} - u_{i-2}) / 2dx^3
  NonlinearProduct,     // u_i (u_{i+1} - u_{i-1}) / 2dx
};

double apply_stencil(StencilKind kind, std::span<const double> u, double dx, std::size_t i);

struct AmplificationPoint {
  double theta = 0.0;
  double lambda_re = 0.0;
  double lambda_im = 0.0;
  double magnitude = 0.0;
};

// Symbol of the frozen-coefficient Crank-Nicolson step for a Fourier mode
// exp(i*theta*j): lambda = conj(D)/D with D = 1 + i*g,
// g = (alpha/2) sin 2theta - alpha sin theta - (3 beta/4) u0 sin theta.
AmplificationPoint cn_amplification(double theta, const SchemeParams& params, double u0);

// Symbol of the explicit update:
// lambda = 1 + i [(3 beta/2) u0 sin theta + 2 alpha sin theta - alpha sin 2theta].
AmplificationPoint explicit_amplification(double theta, const SchemeParams& params, double u0);

enum class SchemeKind { CrankNicolson, Explicit };

struct StabilityRow {
  SchemeParams params;
  double u0;
  double max_magnitude;
};

// One row per (params, u0) pair, params-major, in input order.
std::vector<StabilityRow> stability_scan(SchemeKind scheme, std::span<const SchemeParams> params_list,
                                         std::span<const double> u0_list,
                                         std::span<const double> theta_samples);

// `count` equally spaced angles covering [0, pi] inclusive.
std::vector<double> theta_grid(std::size_t count);

enum class TruncationScheme { CnLagged, Explicit };

// One-step defect of a scheme against a manufactured solution f:
//   max_i |step(f(., t0))_i - [f(x_i, t0 + dt) - dt R(x_i, t0 + dt/2)]| / dt
// over interior cells, where R is the PDE residual of f. The window's dx must
// equal params.dx().
double truncation_error(TruncationScheme scheme, const SpaceTimeFunction& manufactured,
                        const SchemeParams& params, const Grid1D& window, double t0 = 0.0,
                        double oracle_step = 1e-3);

// Least-squares slope of log e against log h.
double observed_order(std::span<const std::pair<double, double>> errors);

}  // namespace kdv::analysis
