#include <doctest.h>

#include <cmath>
#include <limits>

#include "kdv/explicit_scheme.hpp"
#include "oracles.hpp"

using namespace kdv;

namespace {

bool within_ulps(double a, double b, int ulps) {
  if (a == b) return true;
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= ulps * std::numeric_limits<double>::epsilon() * scale;
}

std::vector<double> to_vector(const WaveField& f) { return {f.values().begin(), f.values().end()}; }

WaveField random_field(const Grid1D& grid, double lo = -1.0, double hi = 1.0) {
  auto v = oracle::random_vector(grid.nx(), lo, hi);
  v[0] = v[1] = v[grid.nx() - 2] = v[grid.nx() - 1] = 0.0;
  return WaveField(grid, 0.0, v);
}

}  // namespace

TEST_CASE("explicit step on zero data") {
  const Grid1D grid(0.0, 1.0, 11);
  const ExplicitConfig cfg{.params = SchemeParams(grid.dx(), 0.01)};
  const auto next = explicit_step(WaveField::zeros(grid), cfg);
  for (double v : next.values()) CHECK(v == 0.0);
  CHECK(next.time() == doctest::Approx(0.01));
}

TEST_CASE("explicit step by hand, nx = 7") {
  // dt = dx = 1, single unit spike at i = 3:
  //   i=2: -0.5 (0 - 2 + 0 - 0) = 1
  //   i=3: 1 (1 + 0.75 (0 - 0)) - 0.5 (0 - 0 + 0 - 0) = 1
  //   i=4: -0.5 (0 - 0 + 2 - 0) = -1
  const Grid1D grid(0.0, 6.0, 7);
  const ExplicitConfig cfg{.params = SchemeParams(1.0, 1.0)};
  const auto next = explicit_step(WaveField(grid, 0.0, {0, 0, 0, 1, 0, 0, 0}), cfg);
  CHECK(to_vector(next) == std::vector<double>{0, 0, 1, 1, -1, 0, 0});

  // A nonlinear case: u = (0, 0, 1, 2, 1, 0, 0).
  //   i=2: 1 (1 + 0.75 (2 - 0)) - 0.5 (1 - 4 + 0 - 0) = 2.5 + 1.5 = 4
  //   i=3: 2 (1 + 0.75 (1 - 1)) - 0.5 (0 - 2 + 2 - 0) = 2
  //   i=4: 1 (1 + 0.75 (0 - 2)) - 0.5 (0 - 0 + 4 - 1) = -0.5 - 1.5 = -2
  const auto second = explicit_step(WaveField(grid, 0.0, {0, 0, 1, 2, 1, 0, 0}), cfg);
  CHECK(to_vector(second) == std::vector<double>{0, 0, 4, 2, -2, 0, 0});
}

TEST_CASE("explicit step matches a direct transcription") {
  const Grid1D grid(0.0, 3.0, 31);
  const ExplicitConfig cfg{.params = SchemeParams(0.1, 1e-4)};
  for (int trial = 0; trial < 100; ++trial) {
    const auto u = random_field(grid);
    const auto got = explicit_step(u, cfg);
    const auto want = oracle::explicit_update(to_vector(u), 0.1, 1e-4);
    for (std::size_t i = 0; i < grid.nx(); ++i) CHECK(within_ulps(got[i], want[i], 2));
  }
}

TEST_CASE("explicit step without the nonlinear term is linear") {
  const Grid1D grid(-1.0, 1.0, 41);
  const ExplicitConfig cfg{.params = SchemeParams(grid.dx(), 1e-5), .include_nonlinear = false};
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = random_field(grid), w = random_field(grid);
    const double a = oracle::uniform(-3, 3), b = oracle::uniform(-3, 3);
    std::vector<double> combo(grid.nx());
    for (std::size_t i = 0; i < grid.nx(); ++i) combo[i] = a * u[i] + b * w[i];
    const auto lhs = explicit_step(WaveField(grid, 0.0, combo), cfg);
    const auto su = explicit_step(u, cfg), sw = explicit_step(w, cfg);
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      CHECK(lhs[i] == doctest::Approx(a * su[i] + b * sw[i]).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("explicit boundary cells stay zero") {
  const Grid1D grid(-5.0, 5.0, 101);
  const ExplicitConfig cfg{.params = SchemeParams(grid.dx(), 1e-5)};
  auto u = random_field(grid, -0.1, 0.1);
  for (int n = 0; n < 50; ++n) {
    u = explicit_step(u, cfg);
    CHECK(u[0] == 0.0);
    CHECK(u[1] == 0.0);
    CHECK(u[grid.nx() - 2] == 0.0);
    CHECK(u[grid.nx() - 1] == 0.0);
  }
}

TEST_CASE("explicit step reports blow-up") {
  const Grid1D grid(0.0, 6.0, 7);
  const ExplicitConfig cfg{.params = SchemeParams(1.0, 1.0), .max_amplitude = 3.0};
  try {
    explicit_step(WaveField(grid, 4.0, {0, 0, 1, 2, 1, 0, 0}), cfg);
    FAIL("expected BlowUp");
  } catch (const BlowUp& e) {
    CHECK(e.step() == 5);
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(explicit_step(WaveField::zeros(grid), ExplicitConfig{.params = SchemeParams(1.0, 1.0),
                                                                        .max_amplitude = nan}),
                  InvalidParameter);
}

TEST_CASE("run_explicit") {
  SUBCASE("zero initial data gives zero snapshots") {
    const Grid1D grid(-1.0, 1.0, 21);
    const TimeGrid time(0.5, 0.01);
    const ExplicitConfig cfg{.params = SchemeParams(grid.dx(), 0.01)};
    const std::vector<double> snaps{0.0, 0.25, 0.5};
    const auto r = run_explicit(WaveField::zeros(grid), cfg, time, snaps);
    CHECK(r.outcome == Outcome::Completed);
    REQUIRE(r.snapshots.size() == 3);
    for (const auto& s : r.snapshots) {
      for (double v : s.field.values()) CHECK(v == 0.0);
    }
  }

  SUBCASE("snapshots land on the first level at or after the request") {
    const Grid1D grid(-20.0, 20.0, 201);
    const TimeGrid time(1.2, 0.01);
    const ExplicitConfig cfg{.params = SchemeParams(grid.dx(), 0.01), .include_nonlinear = false};
    const std::vector<double> snaps{1.0, 1.01, 1.015};
    const auto r = run_explicit(WaveField::zeros(grid), cfg, time, snaps);
    REQUIRE(r.snapshots.size() == 3);
    CHECK(r.snapshots[0].step == 100);
    CHECK(r.snapshots[1].step == 101);
    CHECK(r.snapshots[1].field.time() == doctest::Approx(1.01));
    CHECK(r.snapshots[2].step == 102);
  }

  SUBCASE("appendix-scale soliton blows up") {
    const Grid1D grid(-20.0, 20.0, 4001);
    const TimeGrid time(10.0, 0.01);
    const ExplicitConfig cfg{.params = SchemeParams(grid.dx(), 0.01)};
    const std::vector<double> snaps{1.01};
    const auto r = run_explicit(soliton_profile(grid, SolitonSpec::appendix()), cfg, time, snaps);
    CHECK(r.outcome == Outcome::BlowUp);
    REQUIRE(r.blowup_step.has_value());
    CHECK(*r.blowup_step == 5);
    CHECK(r.growth_ratio > 10.0);
    CHECK(r.snapshots.empty());
  }

  SUBCASE("mismatched steps are rejected") {
    const Grid1D grid(-1.0, 1.0, 21);
    const ExplicitConfig cfg{.params = SchemeParams(grid.dx(), 0.02)};
    const std::vector<double> snaps;
    CHECK_THROWS_AS(run_explicit(WaveField::zeros(grid), cfg, TimeGrid(1.0, 0.01), snaps), InvalidParameter);
  }
}
