#include "kdv/analysis.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "kdv/cn_scheme.hpp"
#include "kdv/explicit_scheme.hpp"

namespace kdv::analysis {

namespace {

AmplificationPoint make_point(double theta, std::complex<double> lambda) {
  return {theta, lambda.real(), lambda.imag(), std::hypot(lambda.real(), lambda.imag())};
}

}  // namespace

double apply_stencil(StencilKind kind, std::span<const double> u, double dx, std::size_t i) {
  const std::size_t reach = kind == StencilKind::ThirdDerivCentered ? 2 : 1;
  if (i < reach || i + reach >= u.size()) {
    throw InvalidParameter("apply_stencil: index " + std::to_string(i) +
                           " lacks the required neighbours");
  }
  if (!(dx > 0.0) || !std::isfinite(dx)) throw InvalidParameter("apply_stencil: dx must be positive");
  switch (kind) {
    case StencilKind::FirstDerivCentered:
      return (u[i + 1] - u[i - 1]) / (2.0 * dx);
    case StencilKind::SecondDerivCentered:
      return (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (dx * dx);
    case StencilKind::ThirdDerivCentered:
      return (u[i + 2] - 2.0 * u[i + 1] + 2.0 * u[i - 1] - u[i - 2]) / (2.0 * dx * dx * dx);
    case StencilKind::NonlinearProduct:
      return u[i] * (u[i + 1] - u[i - 1]) / (2.0 * dx);
  }
  throw InvalidParameter("apply_stencil: unknown stencil");
}

AmplificationPoint cn_amplification(double theta, const SchemeParams& params, double u0) {
  const double a = params.alpha();
  const double s = std::sin(theta);
  const double g = 0.5 * a * std::sin(2.0 * theta) - a * s - 0.75 * params.beta() * u0 * s;
  const std::complex<double> d(1.0, g);
  return make_point(theta, std::conj(d) / d);
}

AmplificationPoint explicit_amplification(double theta, const SchemeParams& params, double u0) {
  const double a = params.alpha();
  const double s = std::sin(theta);
  const double g = 1.5 * params.beta() * u0 * s + 2.0 * a * s - a * std::sin(2.0 * theta);
  return make_point(theta, {1.0, g});
}

std::vector<StabilityRow> stability_scan(SchemeKind scheme, std::span<const SchemeParams> params_list,
                                         std::span<const double> u0_list,
                                         std::span<const double> theta_samples) {
  for (double theta : theta_samples) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
      throw InvalidParameter("stability_scan: theta samples must lie in [0, pi]");
    }
  }
  const auto symbol = scheme == SchemeKind::CrankNicolson ? cn_amplification
                                                          : explicit_amplification;
  std::vector<StabilityRow> rows;
  rows.reserve(params_list.size() * u0_list.size());
  for (const auto& params : params_list) {
    for (double u0 : u0_list) {
      double worst = 0.0;
      for (double theta : theta_samples) worst = std::max(worst, symbol(theta, params, u0).magnitude);
      rows.push_back({params, u0, worst});
    }
  }
  return rows;
}

std::vector<double> theta_grid(std::size_t count) {
  std::vector<double> thetas(count);
  if (count == 1) thetas[0] = 0.0;
  for (std::size_t k = 0; count > 1 && k < count; ++k) {
    thetas[k] = std::numbers::pi * static_cast<double>(k) / static_cast<double>(count - 1);
  }
  return thetas;
}

double truncation_error(TruncationScheme scheme, const SpaceTimeFunction& manufactured,
                        const SchemeParams& params, const Grid1D& window, double t0,
                        double oracle_step) {
  if (std::abs(window.dx() - params.dx()) > 1e-12 * params.dx()) {
    throw InvalidParameter("truncation_error: window dx differs from params dx");
  }
  const std::size_t nx = window.nx();
  const double dt = params.dt();
  std::vector<double> start(nx);
  for (std::size_t i = 0; i < nx; ++i) {
    start[i] = static_cast<double>(manufactured(window.x(i), t0));
  }
  const WaveField u0(window, t0, std::move(start));

  const double no_limit = std::numeric_limits<double>::max();
  const WaveField stepped =
      scheme == TruncationScheme::Explicit
          ? explicit_step(u0, ExplicitConfig{params, no_limit, true})
          : cn_step_lagged(u0, CnConfig{.params = params, .max_amplitude = no_limit});

  long double worst = 0.0L;
  const long double t_mid = static_cast<long double>(t0) + 0.5L * dt;
  for (std::size_t i = 2; i + 2 < nx; ++i) {
    const long double x = window.x(i);
    const long double target = manufactured(x, static_cast<long double>(t0) + dt) -
                               dt * pde_residual_at(manufactured, x, t_mid, oracle_step);
    worst = std::max(worst, std::abs(static_cast<long double>(stepped[i]) - target));
  }
  return static_cast<double>(worst / dt);
}

double observed_order(std::span<const std::pair<double, double>> errors) {
  if (errors.size() < 2) throw InvalidParameter("observed_order: need at least two entries");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [h, e] : errors) {
    if (!(h > 0.0) || !(e > 0.0)) {
      throw InvalidParameter("observed_order: step sizes and errors must be positive");
    }
    const double lx = std::log(h), ly = std::log(e);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = static_cast<double>(errors.size());
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) throw InvalidParameter("observed_order: step sizes must differ");
  return (m * sxy - sx * sy) / denom;
}

}  // namespace kdv::analysis
