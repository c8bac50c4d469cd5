#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "kdv/errors.hpp"

// Domain types for u_t - (3/2) u u_x + u_xxx = 0 on a bounded interval,
// together with initial data and closed-form reference solutions.
namespace kdv {

// Uniform grid with inclusive endpoints: x_i = x_min + i*dx, i = 0..nx-1.
class Grid1D {
 public:
  Grid1D(double x_min, double x_max, std::size_t nx);

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  std::size_t nx() const noexcept { return nx_; }
  double dx() const noexcept { return dx_; }
  double x(std::size_t i) const noexcept { return x_min_ + static_cast<double>(i) * dx_; }
  std::vector<double> points() const;

  bool operator==(const Grid1D&) const = default;

 private:
  double x_min_;
  double x_max_;
  std::size_t nx_;
  double dx_;
};

class TimeGrid {
 public:
  TimeGrid(double t_end, double dt);

  double t_end() const noexcept { return t_end_; }
  double dt() const noexcept { return dt_; }
  std::size_t nt() const noexcept { return nt_; }
  double t(std::size_t n) const noexcept { return static_cast<double>(n) * dt_; }

 private:
  double t_end_;
  double dt_;
  std::size_t nt_;
};

// Sampled solution at one time level. Values are always finite.
class WaveField {
 public:
  WaveField(Grid1D grid, double time, std::vector<double> values);

  static WaveField zeros(const Grid1D& grid, double time = 0.0);

  const Grid1D& grid() const noexcept { return grid_; }
  double time() const noexcept { return time_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  double max_abs() const noexcept;
  // Abscissa of the sample with the largest |u| (first one on ties).
  double peak_x() const noexcept;

 private:
  Grid1D grid_;
  double time_;
  std::vector<double> values_;
};

// alpha = dt/dx^3, beta = dt/dx, always derived from the stored steps.
class SchemeParams {
 public:
  SchemeParams(double dx, double dt);

  double dx() const noexcept { return dx_; }
  double dt() const noexcept { return dt_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

 private:
  double dx_;
  double dt_;
  double alpha_;
  double beta_;
};

// u(x, t) = amplitude * sech^2((x - speed*t) / width)
struct SolitonSpec {
  double amplitude = 0.5;
  double width = 2.0;
  double speed = 0.0;

  // Profile (c/8) sech^2(sqrt(c)/2 x).
  static SolitonSpec from_celerity(double c);
  // 0.5 / cosh^2(x/2), the default demo profile.
  static SolitonSpec appendix() { return {0.5, 2.0, 0.0}; }
};

// Closed-form u(x, t). Extended precision keeps the finite-difference
// residual oracle well clear of cancellation error.
using SpaceTimeFunction = std::function<long double(long double x, long double t)>;

enum class TravelingWaveForm {
  Verified,  // -2v sech^2(sqrt(v)/2 (x - v t)); satisfies the PDE exactly
  Claimed,   // c sech^2(sqrt(c)/2 (x - c t)); does not satisfy the PDE
};

double sech(double x) noexcept;
long double sech(long double x) noexcept;

WaveField initial_condition(const Grid1D& grid, double c);
WaveField soliton_profile(const Grid1D& grid, const SolitonSpec& spec, double t = 0.0);

SpaceTimeFunction traveling_wave_function(double v, TravelingWaveForm form);
WaveField traveling_wave(const Grid1D& grid, double v, double t,
                         TravelingWaveForm form = TravelingWaveForm::Verified);

// u_t - 1.5 u u_x + u_xxx at a single point, with fourth-order central
// differences of step `oracle_step` in both x and t.
long double pde_residual_at(const SpaceTimeFunction& u, long double x, long double t,
                            long double oracle_step);

// sup over x_samples of |u_t - 1.5 u u_x + u_xxx|.
double pde_residual(const SpaceTimeFunction& u, std::span<const double> x_samples, double t,
                    double oracle_step = 1e-3);

// Trapezoidal integral of u over the grid.
double mass(const WaveField& field) noexcept;

}  // namespace kdv
