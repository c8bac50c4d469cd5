#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "kdv/model.hpp"

namespace kdv {

struct SnapshotDiagnostics {
  double mass = 0.0;
  double max_abs = 0.0;
  double peak_x = 0.0;

  static SnapshotDiagnostics of(const WaveField& field);
};

struct Snapshot {
  double requested_time;
  std::size_t step;
  WaveField field;  // field.time() is the step time t_n = n*dt
  SnapshotDiagnostics diagnostics;
};

enum class Outcome { Completed, BlowUp };

struct RunResult {
  explicit RunResult(WaveField start) : final_field(std::move(start)) {}

  std::vector<Snapshot> snapshots;
  Outcome outcome = Outcome::Completed;
  std::optional<std::size_t> blowup_step;
  std::size_t steps_taken = 0;
  double initial_mass = 0.0;
  double initial_max_abs = 0.0;
  // max over the run of max|u(t_n)| / max|u(0)|; 1 for a zero start.
  double growth_ratio = 1.0;
  WaveField final_field;
};

// Advances `from` by one step; `step` is the index n+1 of the level produced.
using StepFunction = std::function<WaveField(const WaveField& from, std::size_t step)>;

// Shared time loop. A snapshot requested at time s is taken at the first
// level n with n*dt >= s (up to 1e-9*dt). A BlowUp raised by `step` ends the
// run and is recorded in the result.
RunResult run_time_loop(const WaveField& ic, const TimeGrid& time,
                        std::span<const double> snapshot_times, const StepFunction& step);

void validate_snapshot_times(std::span<const double> snapshot_times, const TimeGrid& time);

// The scheme's dx/dt must be the grid's and the time grid's.
void require_matching_steps(const Grid1D& grid, const TimeGrid& time, const SchemeParams& params);

// Throws BlowUp(step) if any value is non-finite or exceeds max_amplitude.
void check_amplitude(std::span<const double> values, double max_amplitude, std::size_t step);

}  // namespace kdv
