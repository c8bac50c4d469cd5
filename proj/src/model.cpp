#include "kdv/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kdv {

Grid1D::Grid1D(double x_min, double x_max, std::size_t nx)
    : x_min_(x_min), x_max_(x_max), nx_(nx), dx_(0.0) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min)) {
    throw InvalidParameter("Grid1D: require finite x_max > x_min");
  }
  if (nx < 7) {
    throw InvalidParameter("Grid1D: nx must be at least 7, got " + std::to_string(nx));
  }
  dx_ = (x_max - x_min) / static_cast<double>(nx - 1);
}

std::vector<double> Grid1D::points() const {
  std::vector<double> xs(nx_);
  for (std::size_t i = 0; i < nx_; ++i) xs[i] = x(i);
  return xs;
}

TimeGrid::TimeGrid(double t_end, double dt) : t_end_(t_end), dt_(dt), nt_(0) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidParameter("TimeGrid: dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw InvalidParameter("TimeGrid: t_end must be non-negative");
  }
  // The small slack absorbs quotients like 4/0.0025 = 1599.9999...
  nt_ = static_cast<std::size_t>(std::floor(t_end / dt + 1e-9)) + 1;
}

WaveField::WaveField(Grid1D grid, double time, std::vector<double> values)
    : grid_(grid), time_(time), values_(std::move(values)) {
  if (values_.size() != grid_.nx()) {
    throw DimensionMismatch("WaveField: expected " + std::to_string(grid_.nx()) +
                            " values, got " + std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw NonFiniteValue("WaveField: non-finite value at index " + std::to_string(i));
    }
  }
}

WaveField WaveField::zeros(const Grid1D& grid, double time) {
  return WaveField(grid, time, std::vector<double>(grid.nx(), 0.0));
}

double WaveField::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double WaveField::peak_x() const noexcept {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (std::abs(values_[i]) > std::abs(values_[best])) best = i;
  }
  return grid_.x(best);
}

SchemeParams::SchemeParams(double dx, double dt) : dx_(dx), dt_(dt) {
  if (!(dx > 0.0) || !(dt > 0.0) || !std::isfinite(dx) || !std::isfinite(dt)) {
    throw InvalidParameter("SchemeParams: dx and dt must be positive and finite");
  }
  alpha_ = dt / (dx * dx * dx);
  beta_ = dt / dx;
}

SolitonSpec SolitonSpec::from_celerity(double c) {
  if (!(c > 0.0)) throw InvalidParameter("initial condition: c must be positive");
  return {c / 8.0, 2.0 / std::sqrt(c), 0.0};
}

double sech(double x) noexcept { return 2.0 / (std::exp(x) + std::exp(-x)); }

long double sech(long double x) noexcept { return 2.0L / (std::exp(x) + std::exp(-x)); }

WaveField soliton_profile(const Grid1D& grid, const SolitonSpec& spec, double t) {
  if (spec.width == 0.0) throw InvalidParameter("soliton width must be non-zero");
  std::vector<double> u(grid.nx());
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    const double s = sech((grid.x(i) - spec.speed * t) / spec.width);
    u[i] = spec.amplitude * s * s;
  }
  return WaveField(grid, t, std::move(u));
}

WaveField initial_condition(const Grid1D& grid, double c) {
  return soliton_profile(grid, SolitonSpec::from_celerity(c));
}

SpaceTimeFunction traveling_wave_function(double v, TravelingWaveForm form) {
  if (!(v > 0.0)) throw InvalidParameter("traveling wave: speed must be positive");
  const long double c = v;
  const long double k = std::sqrt(c) / 2.0L;
  const long double amp = form == TravelingWaveForm::Verified ? -2.0L * c : c;
  return [=](long double x, long double t) {
    const long double s = sech(k * (x - c * t));
    return amp * s * s;
  };
}

WaveField traveling_wave(const Grid1D& grid, double v, double t, TravelingWaveForm form) {
  const auto u = traveling_wave_function(v, form);
  std::vector<double> values(grid.nx());
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    values[i] = static_cast<double>(u(grid.x(i), t));
  }
  return WaveField(grid, t, std::move(values));
}

long double pde_residual_at(const SpaceTimeFunction& u, long double x, long double t,
                            long double h) {
  const auto fx = [&](int k) { return u(x + k * h, t); };
  const auto ft = [&](int k) { return u(x, t + k * h); };

  const long double u0 = u(x, t);
  const long double ut = (-ft(2) + 8.0L * ft(1) - 8.0L * ft(-1) + ft(-2)) / (12.0L * h);
  const long double ux = (-fx(2) + 8.0L * fx(1) - 8.0L * fx(-1) + fx(-2)) / (12.0L * h);
  const long double uxxx = (-fx(3) + 8.0L * fx(2) - 13.0L * fx(1) + 13.0L * fx(-1) -
                            8.0L * fx(-2) + fx(-3)) /
                           (8.0L * h * h * h);
  return ut - 1.5L * u0 * ux + uxxx;
}

double pde_residual(const SpaceTimeFunction& u, std::span<const double> x_samples, double t,
                    double oracle_step) {
  if (!(oracle_step > 0.0)) throw InvalidParameter("pde_residual: oracle_step must be positive");
  long double worst = 0.0L;
  for (double x : x_samples) {
    const long double r = pde_residual_at(u, x, t, oracle_step);
    if (!std::isfinite(r)) {
      throw OracleFailure("pde_residual: non-finite evaluation at x = " + std::to_string(x));
    }
    worst = std::max(worst, std::abs(r));
  }
  return static_cast<double>(worst);
}

double mass(const WaveField& field) noexcept {
  const auto u = field.values();
  double interior = 0.0;
  for (std::size_t i = 1; i + 1 < u.size(); ++i) interior += u[i];
  return field.grid().dx() * (interior + 0.5 * (u.front() + u.back()));
}

}  // namespace kdv
