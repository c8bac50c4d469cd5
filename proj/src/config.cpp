#include "kdv/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>

#include "kdv/csv.hpp"

namespace kdv::cli {

namespace {

// Thrown by value parsers; the caller adds the location.
struct ValueError {
  std::string message;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double to_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ValueError{"expected a finite number, got '" + std::string(s) + "'"};
  }
  return v;
}

double to_positive(std::string_view s) {
  const double v = to_double(s);
  if (!(v > 0.0)) throw ValueError{"must be positive, got " + std::string(trim(s))};
  return v;
}

long long to_integer(std::string_view s) {
  s = trim(s);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValueError{"expected an integer, got '" + std::string(s) + "'"};
  }
  return v;
}

bool to_bool(std::string_view s) {
  s = trim(s);
  if (s == "true" || s == "on" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "off" || s == "no" || s == "0") return false;
  throw ValueError{"expected true/false, got '" + std::string(s) + "'"};
}

std::vector<double> to_list(std::string_view s) {
  std::vector<double> out;
  s = trim(s);
  if (s.empty()) return out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(to_double(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

SchemeChoice to_scheme(std::string_view s) {
  s = trim(s);
  if (s == "explicit") return SchemeChoice::Explicit;
  if (s == "cn-lagged") return SchemeChoice::CnLagged;
  if (s == "cn-implicit") return SchemeChoice::CnImplicit;
  throw ValueError{"expected explicit, cn-lagged or cn-implicit, got '" + std::string(s) + "'"};
}

IcSpec to_ic(std::string_view s) {
  s = trim(s);
  const auto space = s.find_first_of(" \t");
  const std::string_view kind = s.substr(0, space);
  const std::string_view arg =
      space == std::string_view::npos ? std::string_view{} : trim(s.substr(space));
  auto positive_arg = [&](const char* name) {
    if (arg.empty()) throw ValueError{std::string(kind) + " needs a parameter " + name};
    const double v = to_double(arg);
    if (!(v > 0.0)) throw ValueError{std::string(name) + " must be positive"};
    return v;
  };
  if (kind == "appendix") {
    if (!arg.empty()) throw ValueError{"appendix takes no parameter"};
    return {IcKind::Appendix, 0.0, {}};
  }
  if (kind == "paper-eq2") return {IcKind::PaperEq2, positive_arg("c"), {}};
  if (kind == "traveling") return {IcKind::Traveling, positive_arg("v"), {}};
  if (kind == "file") {
    if (arg.empty()) throw ValueError{"file needs a path"};
    return {IcKind::File, 0.0, std::string(arg)};
  }
  throw ValueError{"expected paper-eq2 <c>, appendix, traveling <v> or file <path>, got '" +
                   std::string(s) + "'"};
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"scheme", [](RunConfig& c, std::string_view v) { c.scheme = to_scheme(v); }},
      {"gamma_mode",
       [](RunConfig& c, std::string_view v) {
         v = trim(v);
         if (v == "row-varying") {
           c.gamma_mode = GammaMode::RowVarying;
         } else if (v == "frozen-midpoint") {
           c.gamma_mode = GammaMode::FrozenMidpoint;
         } else {
           throw ValueError{"expected row-varying or frozen-midpoint, got '" + std::string(v) + "'"};
         }
       }},
      {"x_min", [](RunConfig& c, std::string_view v) { c.x_min = to_double(v); }},
      {"x_max", [](RunConfig& c, std::string_view v) { c.x_max = to_double(v); }},
      {"nx",
       [](RunConfig& c, std::string_view v) {
         const auto n = to_integer(v);
         if (n < 7) throw ValueError{"must be at least 7"};
         c.nx = static_cast<std::size_t>(n);
       }},
      {"dt", [](RunConfig& c, std::string_view v) { c.dt = to_positive(v); }},
      {"t_end", [](RunConfig& c, std::string_view v) { c.t_end = to_positive(v); }},
      {"ic", [](RunConfig& c, std::string_view v) { c.ic = to_ic(v); }},
      {"snapshot_times", [](RunConfig& c, std::string_view v) { c.snapshot_times = to_list(v); }},
      {"paper_normalization",
       [](RunConfig& c, std::string_view v) { c.paper_normalization = to_bool(v); }},
      {"output_dir",
       [](RunConfig& c, std::string_view v) {
         v = trim(v);
         if (v.empty()) throw ValueError{"must not be empty"};
         c.output_dir = std::string(v);
       }},
      {"max_amplitude", [](RunConfig& c, std::string_view v) { c.max_amplitude = to_positive(v); }},
      {"picard_tol", [](RunConfig& c, std::string_view v) { c.picard_tol = to_positive(v); }},
      {"picard_max_iters",
       [](RunConfig& c, std::string_view v) {
         const auto n = to_integer(v);
         if (n < 1) throw ValueError{"must be at least 1"};
         c.picard_max_iters = static_cast<int>(n);
       }},
      {"scan_scheme",
       [](RunConfig& c, std::string_view v) {
         c.scan_scheme = to_scheme(v);
         if (c.scan_scheme == SchemeChoice::CnImplicit) c.scan_scheme = SchemeChoice::CnLagged;
       }},
      {"scan_dx",
       [](RunConfig& c, std::string_view v) {
         c.scan_dx = to_list(v);
         for (double d : *c.scan_dx) {
           if (!(d > 0.0)) throw ValueError{"entries must be positive"};
         }
       }},
      {"scan_dt",
       [](RunConfig& c, std::string_view v) {
         c.scan_dt = to_list(v);
         for (double d : *c.scan_dt) {
           if (!(d > 0.0)) throw ValueError{"entries must be positive"};
         }
       }},
      {"scan_u0", [](RunConfig& c, std::string_view v) { c.scan_u0 = to_list(v); }},
      {"scan_theta_samples",
       [](RunConfig& c, std::string_view v) {
         const auto n = to_integer(v);
         if (n < 1) throw ValueError{"must be at least 1"};
         c.scan_theta_samples = static_cast<std::size_t>(n);
       }},
      {"eigen_tol", [](RunConfig& c, std::string_view v) { c.eigen_tol = to_positive(v); }},
      {"eigen_max_iters",
       [](RunConfig& c, std::string_view v) {
         const auto n = to_integer(v);
         if (n < 1) throw ValueError{"must be at least 1"};
         c.eigen_max_iters = static_cast<int>(n);
       }},
      {"converge_levels",
       [](RunConfig& c, std::string_view v) {
         const auto n = to_integer(v);
         if (n < 1 || n > 12) throw ValueError{"must be between 1 and 12"};
         c.converge_levels = static_cast<std::size_t>(n);
       }},
      {"converge_mode",
       [](RunConfig& c, std::string_view v) {
         v = trim(v);
         if (v == "time") {
           c.converge_mode = ConvergeMode::Time;
         } else if (v == "space") {
           c.converge_mode = ConvergeMode::Space;
         } else if (v == "both") {
           c.converge_mode = ConvergeMode::Both;
         } else {
           throw ValueError{"expected time, space or both, got '" + std::string(v) + "'"};
         }
       }},
  };
  return table;
}

const Setter* find_setter(std::string_view key) {
  for (const auto& [name, setter] : setters()) {
    if (name == key) return &setter;
  }
  return nullptr;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += format_number(values[i]);
  }
  return out;
}

}  // namespace

CnConfig RunConfig::cn_config() const {
  return CnConfig{.params = params(),
                  .linearization = scheme == SchemeChoice::CnImplicit
                                       ? LinearizationKind::ImplicitCoefficient
                                       : LinearizationKind::LaggedCoefficient,
                  .gamma_mode = gamma_mode,
                  .picard_tol = picard_tol,
                  .picard_max_iters = picard_max_iters,
                  .paper_normalization = paper_normalization,
                  .max_amplitude = max_amplitude};
}

ExplicitConfig RunConfig::explicit_config() const {
  return ExplicitConfig{params(), max_amplitude, true};
}

RunConfig preset_config(std::string_view name) {
  RunConfig cfg;
  if (name == "appendix") return cfg;
  if (name == "alpha-1000") {
    // dx = 0.01 and dt = 0.001: alpha = dt/dx^3 = 1000, beta = 0.1.
    cfg.preset = "alpha-1000";
    cfg.dt = 0.001;
    return cfg;
  }
  throw ConfigError("unknown preset '" + std::string(name) + "' (expected appendix or alpha-1000)");
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k{"preset"};
    for (const auto& entry : setters()) k.push_back(entry.first);
    return k;
  }();
  return keys;
}

RunConfig parse_config(std::string_view text, const std::vector<Override>& overrides) {
  struct Entry {
    std::string key, value, where;
  };
  std::vector<Entry> entries;
  std::size_t line_no = 0;
  for (std::size_t pos = 0; pos < text.size();) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(where + ": expected 'key = value', got '" + std::string(line) + "'");
    }
    entries.push_back({std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))), where});
  }
  for (const auto& [key, value] : overrides) entries.push_back({key, value, "--" + key});

  // The preset supplies the defaults, wherever it appears; the last one wins.
  RunConfig cfg;
  std::map<std::string, std::string, std::less<>> origin;
  for (const auto& e : entries) {
    if (e.key != "preset") continue;
    try {
      cfg = preset_config(e.value);
    } catch (const ConfigError& err) {
      throw ConfigError(e.where + ": preset: " + err.what());
    }
  }

  for (const auto& e : entries) {
    if (e.key == "preset") continue;
    const Setter* setter = find_setter(e.key);
    if (setter == nullptr) throw ConfigError(e.where + ": unknown key '" + e.key + "'");
    try {
      (*setter)(cfg, e.value);
    } catch (const ValueError& err) {
      throw ConfigError(e.where + ": " + e.key + ": " + err.message);
    }
    origin[e.key] = e.where;
  }

  auto fail = [&](std::string_view key, const std::string& message) -> void {
    const auto it = origin.find(key);
    const std::string where = it == origin.end() ? "defaults" : it->second;
    throw ConfigError(where + ": " + std::string(key) + ": " + message);
  };

  if (!(cfg.x_max > cfg.x_min)) fail(origin.count("x_max") ? "x_max" : "x_min", "x_max must exceed x_min");
  if (cfg.scheme != SchemeChoice::Explicit && cfg.nx < 9) {
    fail("nx", "Crank-Nicolson schemes need nx >= 9");
  }
  if (!origin.contains("snapshot_times")) {
    // Preset snapshot times beyond a user-chosen t_end are dropped.
    std::erase_if(cfg.snapshot_times, [&](double s) { return s > cfg.t_end + 1e-9 * cfg.dt; });
  }
  for (std::size_t i = 0; i < cfg.snapshot_times.size(); ++i) {
    const double s = cfg.snapshot_times[i];
    if (s < 0.0 || s > cfg.t_end + 1e-9 * cfg.dt) {
      fail("snapshot_times", "time " + format_number(s) + " outside [0, t_end]");
    }
    if (i > 0 && !(s > cfg.snapshot_times[i - 1])) fail("snapshot_times", "must be ascending");
  }
  if (cfg.dt > cfg.t_end) fail("dt", "must not exceed t_end");
  return cfg;
}

std::string to_string(SchemeChoice s) {
  switch (s) {
    case SchemeChoice::Explicit: return "explicit";
    case SchemeChoice::CnLagged: return "cn-lagged";
    case SchemeChoice::CnImplicit: return "cn-implicit";
  }
  return "?";
}

std::string to_string(GammaMode g) {
  return g == GammaMode::RowVarying ? "row-varying" : "frozen-midpoint";
}

std::string to_string(ConvergeMode m) {
  switch (m) {
    case ConvergeMode::Time: return "time";
    case ConvergeMode::Space: return "space";
    case ConvergeMode::Both: return "both";
  }
  return "?";
}

std::string to_string(const IcSpec& ic) {
  switch (ic.kind) {
    case IcKind::Appendix: return "appendix";
    case IcKind::PaperEq2: return "paper-eq2 " + format_number(ic.parameter);
    case IcKind::Traveling: return "traveling " + format_number(ic.parameter);
    case IcKind::File: return "file " + ic.path;
  }
  return "?";
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string echo_config(const RunConfig& c) {
  std::string out;
  auto line = [&out](const std::string& key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  };
  line("preset", c.preset);
  line("scheme", to_string(c.scheme));
  line("gamma_mode", to_string(c.gamma_mode));
  line("x_min", format_number(c.x_min));
  line("x_max", format_number(c.x_max));
  line("nx", std::to_string(c.nx));
  line("dt", format_number(c.dt));
  line("t_end", format_number(c.t_end));
  line("ic", to_string(c.ic));
  line("snapshot_times", join(c.snapshot_times));
  line("paper_normalization", c.paper_normalization ? "true" : "false");
  line("output_dir", c.output_dir);
  line("max_amplitude", format_number(c.max_amplitude));
  line("picard_tol", format_number(c.picard_tol));
  line("picard_max_iters", std::to_string(c.picard_max_iters));
  line("scan_scheme", to_string(c.scan_scheme));
  if (c.scan_dx) line("scan_dx", join(*c.scan_dx));
  if (c.scan_dt) line("scan_dt", join(*c.scan_dt));
  line("scan_u0", join(c.scan_u0));
  line("scan_theta_samples", std::to_string(c.scan_theta_samples));
  line("eigen_tol", format_number(c.eigen_tol));
  line("eigen_max_iters", std::to_string(c.eigen_max_iters));
  line("converge_levels", std::to_string(c.converge_levels));
  line("converge_mode", to_string(c.converge_mode));
  return out;
}

WaveField make_initial_field(const RunConfig& cfg, const Grid1D& grid) {
  switch (cfg.ic.kind) {
    case IcKind::Appendix: return soliton_profile(grid, SolitonSpec::appendix());
    case IcKind::PaperEq2: return initial_condition(grid, cfg.ic.parameter);
    case IcKind::Traveling: return traveling_wave(grid, cfg.ic.parameter, 0.0);
    case IcKind::File: return read_field_csv(cfg.ic.path, grid);
  }
  throw ConfigError("unknown initial condition");
}

}  // namespace kdv::cli
