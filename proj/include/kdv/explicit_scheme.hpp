#pragma once

#include <span>

#include "kdv/model.hpp"
#include "kdv/run.hpp"

namespace kdv {

struct ExplicitConfig {
  SchemeParams params;
  double max_amplitude = 1e6;
  // Test hook: drop the u*u_x term so the update is linear.
  bool include_nonlinear = true;
};

// Forward-in-time update
//   u_i <- u_i [1 + (3dt/4dx)(u_{i+1} - u_{i-1})] - (dt/2dx^3)(u_{i+2} - 2u_{i+1} + 2u_{i-1} - u_{i-2})
// on i = 2..nx-3; the two outermost cells at each end are held at zero.
// Throws BlowUp carrying the index of the produced level.
WaveField explicit_step(const WaveField& u, const ExplicitConfig& cfg);

RunResult run_explicit(const WaveField& ic, const ExplicitConfig& cfg, const TimeGrid& time,
                       std::span<const double> snapshot_times);

}  // namespace kdv
