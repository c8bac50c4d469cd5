#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kdv/cn_scheme.hpp"
#include "kdv/explicit_scheme.hpp"
#include "kdv/model.hpp"

namespace kdv::cli {

// Raised for malformed or out-of-range configuration; the message names the
// offending line (or override) and key.
class ConfigError : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

enum class SchemeChoice { Explicit, CnLagged, CnImplicit };

enum class IcKind { PaperEq2, Appendix, Traveling, File };

struct IcSpec {
  IcKind kind = IcKind::Appendix;
  double parameter = 0.0;  // c for paper-eq2, v for traveling
  std::string path;        // for file
};

enum class ConvergeMode { Time, Space, Both };

// Defaults are the demo setup: [-20, 20] with dx = 0.01,
// dt = 0.01, frozen-midpoint Crank-Nicolson and snapshots at 1.01 ... 8.01.
struct RunConfig {
  std::string preset = "appendix";  // "appendix" or "alpha-1000"
  SchemeChoice scheme = SchemeChoice::CnLagged;
  GammaMode gamma_mode = GammaMode::FrozenMidpoint;
  double x_min = -20.0;
  double x_max = 20.0;
  std::size_t nx = 4001;
  double dt = 0.01;
  double t_end = 10.0;
  IcSpec ic;
  std::vector<double> snapshot_times{1.01, 2.01, 3.01, 4.01, 5.01, 6.01, 7.01, 8.01};
  bool paper_normalization = false;
  std::string output_dir = "kdv_out";

  double max_amplitude = 1e6;
  double picard_tol = 1e-10;
  int picard_max_iters = 50;

  // scan
  SchemeChoice scan_scheme = SchemeChoice::CnLagged;
  std::optional<std::vector<double>> scan_dx;  // unset: use the run's dx
  std::optional<std::vector<double>> scan_dt;  // unset: use the run's dt
  std::vector<double> scan_u0{0.0};
  std::size_t scan_theta_samples = 181;

  // eigen
  double eigen_tol = 1e-10;
  int eigen_max_iters = 10000;

  // converge
  std::size_t converge_levels = 3;
  ConvergeMode converge_mode = ConvergeMode::Time;

  Grid1D grid() const { return Grid1D(x_min, x_max, nx); }
  TimeGrid time() const { return TimeGrid(t_end, dt); }
  SchemeParams params() const { return SchemeParams(grid().dx(), dt); }
  CnConfig cn_config() const;
  ExplicitConfig explicit_config() const;
};

using Override = std::pair<std::string, std::string>;

// Parses `key = value` lines ('#' starts a comment), then applies overrides
// in order, then validates. Unknown keys are rejected.
RunConfig parse_config(std::string_view text, const std::vector<Override>& overrides = {});

// Defaults for a named preset: "appendix" (the struct defaults) or
// "alpha-1000" (dt = 0.001 on the same grid, so alpha = 1000).
RunConfig preset_config(std::string_view name);

// Every key understood by parse_config, in echo order.
const std::vector<std::string>& config_keys();

// `key = value` lines that parse back to an equal configuration.
std::string echo_config(const RunConfig& cfg);

WaveField make_initial_field(const RunConfig& cfg, const Grid1D& grid);

std::string to_string(SchemeChoice s);
std::string to_string(GammaMode g);
std::string to_string(ConvergeMode m);
std::string to_string(const IcSpec& ic);

// Shortest decimal text that round-trips to the same double.
std::string format_number(double v);

}  // namespace kdv::cli
