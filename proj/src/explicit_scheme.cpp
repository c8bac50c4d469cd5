#include "kdv/explicit_scheme.hpp"

#include <cmath>
#include <vector>

namespace kdv {

namespace {

WaveField explicit_step_indexed(const WaveField& u, const ExplicitConfig& cfg, std::size_t step,
                                double new_time) {
  const std::size_t nx = u.size();
  const double dt = cfg.params.dt();
  const double dx = cfg.params.dx();
  const double c1 = cfg.include_nonlinear ? 3.0 * dt / (4.0 * dx) : 0.0;
  const double c3 = dt / (2.0 * dx * dx * dx);
  const auto v = u.values();

  std::vector<double> next(nx, 0.0);
  for (std::size_t i = 2; i + 2 < nx; ++i) {
    next[i] = v[i] * (1.0 + c1 * (v[i + 1] - v[i - 1])) -
              c3 * (v[i + 2] - 2.0 * v[i + 1] + 2.0 * v[i - 1] - v[i - 2]);
  }
  check_amplitude(next, cfg.max_amplitude, step);
  return WaveField(u.grid(), new_time, std::move(next));
}

}  // namespace

WaveField explicit_step(const WaveField& u, const ExplicitConfig& cfg) {
  if (!(cfg.max_amplitude > 0.0)) throw InvalidParameter("max_amplitude must be positive");
  const auto step = static_cast<std::size_t>(std::llround(u.time() / cfg.params.dt())) + 1;
  return explicit_step_indexed(u, cfg, step, u.time() + cfg.params.dt());
}

RunResult run_explicit(const WaveField& ic, const ExplicitConfig& cfg, const TimeGrid& time,
                       std::span<const double> snapshot_times) {
  if (!(cfg.max_amplitude > 0.0)) throw InvalidParameter("max_amplitude must be positive");
  require_matching_steps(ic.grid(), time, cfg.params);
  return run_time_loop(ic, time, snapshot_times, [&](const WaveField& u, std::size_t n) {
    return explicit_step_indexed(u, cfg, n, time.t(n));
  });
}

}  // namespace kdv
