#include "kdv/cn_scheme.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace kdv {

namespace {

using linalg::Pentadiagonal;

constexpr std::size_t kPinned = 2;  // zero cells at each end

std::size_t interior_size(const WaveField& u) {
  if (u.size() < 2 * kPinned + 5) {
    throw InvalidParameter("Crank-Nicolson needs nx >= 9, got " + std::to_string(u.size()));
  }
  return u.size() - 2 * kPinned;
}

void validate(const CnConfig& cfg) {
  if (!(cfg.picard_tol > 0.0)) throw InvalidParameter("picard_tol must be positive");
  if (cfg.picard_max_iters < 1) throw InvalidParameter("picard_max_iters must be >= 1");
  if (!(cfg.max_amplitude > 0.0)) throw InvalidParameter("max_amplitude must be positive");
}

// (3 beta / 8) * u sampled per interior row according to the gamma mode.
std::vector<double> coefficient_terms(const WaveField& u, const CnConfig& cfg) {
  const std::size_t n = interior_size(u);
  const double scale = 3.0 * cfg.params.beta() / 8.0;
  std::vector<double> c(n);
  if (cfg.gamma_mode == GammaMode::FrozenMidpoint) {
    std::fill(c.begin(), c.end(), scale * u[midpoint_index(u.size())]);
  } else {
    for (std::size_t k = 0; k < n; ++k) c[k] = scale * u[k + kPinned];
  }
  return c;
}

std::span<const double> interior(const WaveField& u) {
  return u.values().subspan(kPinned, u.size() - 2 * kPinned);
}

WaveField embed(const WaveField& like, std::span<const double> inner, double time,
                const CnConfig& cfg, std::size_t step) {
  std::vector<double> values(like.size(), 0.0);
  std::copy(inner.begin(), inner.end(), values.begin() + kPinned);
  if (cfg.paper_normalization) {
    double m = 0.0;
    for (double v : inner) m = std::max(m, std::abs(v));
    if (m > 0.0 && std::isfinite(m)) {
      for (std::size_t k = 0; k < inner.size(); ++k) values[k + kPinned] /= m;
    }
  }
  check_amplitude(values, cfg.max_amplitude, step);
  return WaveField(like.grid(), time, std::move(values));
}

std::vector<double> solve_with_context(const Pentadiagonal& a, std::span<const double> rhs,
                                       std::size_t step) {
  try {
    return linalg::solve_banded(a, rhs);
  } catch (const SingularMatrix& e) {
    throw SingularMatrix(e.row(), "Crank-Nicolson step " + std::to_string(step));
  }
}

WaveField lagged_step(const WaveField& u_n, const CnConfig& cfg, std::size_t step, double time) {
  const auto sys = assemble_lagged(u_n, cfg);
  const auto rhs = linalg::matvec(sys.b, interior(u_n));
  const auto next = solve_with_context(sys.a, rhs, step);
  return embed(u_n, next, time, cfg, step);
}

ImplicitStepResult implicit_step(const WaveField& u_n, const CnConfig& cfg, std::size_t step,
                                 double time) {
  validate(cfg);
  WaveField guess = u_n;
  const auto rhs = linalg::matvec(assemble_implicit(u_n, u_n, cfg).b, interior(u_n));
  double change = 0.0;
  for (int it = 1; it <= cfg.picard_max_iters; ++it) {
    const auto sys = assemble_implicit(u_n, guess, cfg);
    const auto next = solve_with_context(sys.a, rhs, step);
    const auto prev = interior(guess);
    change = 0.0;
    for (std::size_t k = 0; k < next.size(); ++k) {
      change = std::max(change, std::abs(next[k] - prev[k]));
    }
    if (!std::isfinite(change)) throw BlowUp(step);
    std::vector<double> values(u_n.size(), 0.0);
    std::copy(next.begin(), next.end(), values.begin() + kPinned);
    check_amplitude(values, cfg.max_amplitude, step);
    guess = WaveField(u_n.grid(), time, std::move(values));
    if (change < cfg.picard_tol) {
      return {embed(u_n, interior(guess), time, cfg, step), it};
    }
  }
  throw FixedPointFailure(cfg.picard_max_iters, change);
}

std::size_t step_index_of(const WaveField& u, const CnConfig& cfg) {
  return static_cast<std::size_t>(std::llround(u.time() / cfg.params.dt())) + 1;
}

}  // namespace

CnSystem assemble_lagged(const WaveField& u_n, const CnConfig& cfg) {
  const std::size_t n = interior_size(u_n);
  const double a4 = cfg.params.alpha() / 4.0;
  const double a2 = cfg.params.alpha() / 2.0;
  const auto coef = coefficient_terms(u_n, cfg);

  Pentadiagonal a(n), b(n);
  std::fill(a.sub2().begin(), a.sub2().end(), -a4);
  std::fill(a.sup2().begin(), a.sup2().end(), a4);
  std::fill(b.sub2().begin(), b.sub2().end(), a4);
  std::fill(b.sup2().begin(), b.sup2().end(), -a4);
  std::fill(a.diag().begin(), a.diag().end(), 1.0);
  std::fill(b.diag().begin(), b.diag().end(), 1.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double gamma_below = a2 + coef[k + 1];  // row k+1
    const double gamma_row = a2 + coef[k];        // row k
    a.sub1()[k] = gamma_below;
    b.sub1()[k] = -gamma_below;
    a.sup1()[k] = -gamma_row;
    b.sup1()[k] = gamma_row;
  }
  return {std::move(a), std::move(b)};
}

CnSystem assemble_implicit(const WaveField& u_n, const WaveField& u_guess, const CnConfig& cfg) {
  const std::size_t n = interior_size(u_n);
  if (!(u_guess.grid() == u_n.grid())) {
    throw DimensionMismatch("assemble_implicit: guess and u_n live on different grids");
  }
  const double a4 = cfg.params.alpha() / 4.0;
  const double a2 = cfg.params.alpha() / 2.0;
  const double s = 3.0 * cfg.params.beta() / 8.0;
  const auto zeta_terms = coefficient_terms(u_guess, cfg);

  Pentadiagonal a(n);
  std::fill(a.sub2().begin(), a.sub2().end(), -a4);
  std::fill(a.sup2().begin(), a.sup2().end(), a4);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = k + kPinned;
    a.diag()[k] = 1.0 - s * (u_n[i + 1] - u_n[i - 1]);
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    a.sub1()[k] = a2 + zeta_terms[k + 1];
    a.sup1()[k] = -(a2 + zeta_terms[k]);
  }
  auto b = Pentadiagonal::from_row(n, {a4, -a2, 1.0, a2, -a4});
  return {std::move(a), std::move(b)};
}

WaveField cn_step_lagged(const WaveField& u_n, const CnConfig& cfg) {
  validate(cfg);
  return lagged_step(u_n, cfg, step_index_of(u_n, cfg), u_n.time() + cfg.params.dt());
}

ImplicitStepResult cn_step_implicit(const WaveField& u_n, const CnConfig& cfg) {
  return implicit_step(u_n, cfg, step_index_of(u_n, cfg), u_n.time() + cfg.params.dt());
}

RunResult run_cn(const WaveField& ic, const CnConfig& cfg, const TimeGrid& time,
                 std::span<const double> snapshot_times) {
  validate(cfg);
  interior_size(ic);
  require_matching_steps(ic.grid(), time, cfg.params);
  if (cfg.linearization == LinearizationKind::LaggedCoefficient) {
    return run_time_loop(ic, time, snapshot_times, [&](const WaveField& u, std::size_t n) {
      return lagged_step(u, cfg, n, time.t(n));
    });
  }
  return run_time_loop(ic, time, snapshot_times, [&](const WaveField& u, std::size_t n) {
    return implicit_step(u, cfg, n, time.t(n)).field;
  });
}

}  // namespace kdv
