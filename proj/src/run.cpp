#include "kdv/run.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kdv {

SnapshotDiagnostics SnapshotDiagnostics::of(const WaveField& field) {
  return {kdv::mass(field), field.max_abs(), field.peak_x()};
}

void validate_snapshot_times(std::span<const double> snapshot_times, const TimeGrid& time) {
  const double slack = 1e-9 * time.dt();
  for (std::size_t i = 0; i < snapshot_times.size(); ++i) {
    const double s = snapshot_times[i];
    if (!std::isfinite(s) || s < 0.0 || s > time.t_end() + slack) {
      throw InvalidParameter("snapshot time " + std::to_string(s) + " outside [0, t_end]");
    }
    if (i > 0 && !(s > snapshot_times[i - 1])) {
      throw InvalidParameter("snapshot times must be strictly ascending");
    }
  }
}

void require_matching_steps(const Grid1D& grid, const TimeGrid& time, const SchemeParams& params) {
  const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::abs(b); };
  if (!close(params.dx(), grid.dx()) || !close(params.dt(), time.dt())) {
    throw InvalidParameter("scheme dx/dt do not match the space and time grids");
  }
}

void check_amplitude(std::span<const double> values, double max_amplitude, std::size_t step) {
  for (double v : values) {
    if (!std::isfinite(v) || std::abs(v) > max_amplitude) throw BlowUp(step);
  }
}

RunResult run_time_loop(const WaveField& ic, const TimeGrid& time,
                        std::span<const double> snapshot_times, const StepFunction& step) {
  validate_snapshot_times(snapshot_times, time);
  const double slack = 1e-9 * time.dt();

  RunResult result(ic);
  result.initial_mass = mass(ic);
  result.initial_max_abs = ic.max_abs();

  std::size_t next = 0;
  auto record = [&](const WaveField& field, std::size_t n) {
    while (next < snapshot_times.size() && time.t(n) >= snapshot_times[next] - slack) {
      result.snapshots.push_back(
          {snapshot_times[next], n, field, SnapshotDiagnostics::of(field)});
      ++next;
    }
  };

  WaveField current = ic;
  record(current, 0);
  for (std::size_t n = 1; n < time.nt(); ++n) {
    try {
      current = step(current, n);
    } catch (const BlowUp& e) {
      result.outcome = Outcome::BlowUp;
      result.blowup_step = e.step();
      break;
    }
    result.steps_taken = n;
    if (result.initial_max_abs > 0.0) {
      result.growth_ratio =
          std::max(result.growth_ratio, current.max_abs() / result.initial_max_abs);
    }
    record(current, n);
  }
  result.final_field = current;
  return result;
}

}  // namespace kdv
