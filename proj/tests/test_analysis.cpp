#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "kdv/analysis.hpp"
#include "oracles.hpp"

using namespace kdv;
using namespace kdv::analysis;
using cplx = std::complex<double>;

namespace {

constexpr double pi = std::numbers::pi;

// Frozen-coefficient symbols obtained by applying each update to exp(i theta j).
cplx mode(double theta, int j) { return std::polar(1.0, theta * j); }

cplx explicit_symbol(double theta, double alpha, double beta, double u0) {
  const cplx up1 = mode(theta, 1), um1 = mode(theta, -1), up2 = mode(theta, 2), um2 = mode(theta, -2);
  return 1.0 + (3.0 * beta / 4.0) * u0 * (up1 - um1) - (alpha / 2.0) * (up2 - 2.0 * up1 + 2.0 * um1 - um2);
}

cplx cn_symbol(double theta, double alpha, double beta, double u0) {
  const double g = alpha / 2.0 + 3.0 * beta / 8.0 * u0;
  const cplx up1 = mode(theta, 1), um1 = mode(theta, -1), up2 = mode(theta, 2), um2 = mode(theta, -2);
  const cplx a = -alpha / 4.0 * um2 + g * um1 + 1.0 - g * up1 + alpha / 4.0 * up2;
  const cplx b = alpha / 4.0 * um2 - g * um1 + 1.0 + g * up1 - alpha / 4.0 * up2;
  return b / a;
}

// alpha = dt/dx^3 and beta = dt/dx fix dx and dt.
SchemeParams params_for(double alpha, double beta) {
  const double dx = std::sqrt(beta / alpha);
  return SchemeParams(dx, beta * dx);
}

double log_uniform(double lo, double hi) { return std::exp(oracle::uniform(std::log(lo), std::log(hi))); }

}  // namespace

TEST_CASE("stencils") {
  const std::vector<double> lin{1, 3, 5, 7, 9, 11};
  CHECK(apply_stencil(StencilKind::FirstDerivCentered, lin, 0.5, 2) == 4.0);
  CHECK(apply_stencil(StencilKind::SecondDerivCentered, lin, 0.5, 2) == 0.0);
  CHECK(apply_stencil(StencilKind::NonlinearProduct, lin, 0.5, 2) == 20.0);
  CHECK(apply_stencil(StencilKind::ThirdDerivCentered, lin, 0.5, 2) == 0.0);
  CHECK_THROWS_AS(apply_stencil(StencilKind::ThirdDerivCentered, lin, 0.5, 1), InvalidParameter);
  CHECK_THROWS_AS(apply_stencil(StencilKind::FirstDerivCentered, lin, 0.5, 5), InvalidParameter);
  CHECK_THROWS_AS(apply_stencil(StencilKind::FirstDerivCentered, lin, 0.0, 2), InvalidParameter);

  SUBCASE("third derivative of x^3 is exactly 6") {
    for (int trial = 0; trial < 20; ++trial) {
      // Dyadic samples keep x^3 exact in binary floating point.
      const double dx = std::ldexp(1.0, -static_cast<int>(oracle::uniform(1, 6)));
      const double x0 = std::ldexp(std::round(oracle::uniform(-64, 64)), -4);
      std::vector<double> u(5);
      for (int k = 0; k < 5; ++k) {
        const double x = x0 + (k - 2) * dx;
        u[k] = x * x * x;
      }
      CHECK(apply_stencil(StencilKind::ThirdDerivCentered, u, dx, 2) == 6.0);
    }
  }

  SUBCASE("exact on quadratics for the second derivative") {
    std::vector<double> u(5);
    for (int k = 0; k < 5; ++k) u[k] = 3.0 * (k * 0.25) * (k * 0.25) - (k * 0.25) + 2.0;
    CHECK(apply_stencil(StencilKind::SecondDerivCentered, u, 0.25, 2) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(apply_stencil(StencilKind::FirstDerivCentered, u, 0.25, 2) == doctest::Approx(2.0).epsilon(1e-14));
  }

  SUBCASE("second-order error on sin") {
    const double x0 = 0.7;
    auto error = [&](double dx) {
      std::vector<double> u(5);
      for (int k = 0; k < 5; ++k) u[k] = std::sin(x0 + (k - 2) * dx);
      return std::abs(apply_stencil(StencilKind::ThirdDerivCentered, u, dx, 2) + std::cos(x0));
    };
    for (double dx : {0.1, 0.05, 0.025}) {
      CHECK(error(dx) / error(dx / 2.0) == doctest::Approx(4.0).epsilon(0.15));
    }
  }
}

TEST_CASE("Crank-Nicolson amplification") {
  const auto p1 = params_for(1.0, 1.0);
  const auto at0 = cn_amplification(0.0, p1, 0.3);
  CHECK(at0.lambda_re == 1.0);
  CHECK(at0.lambda_im == 0.0);

  SUBCASE("alpha = 1, u0 = 0, theta = pi/2 gives i") {
    // g = -1, D = 1 - i, conj(D)/D = i
    const auto p = cn_amplification(pi / 2, p1, 0.0);
    CHECK(p.lambda_re == doctest::Approx(0.0).scale(1.0));
    CHECK(p.lambda_im == doctest::Approx(1.0));
  }

  SUBCASE("unit magnitude and agreement with the band symbol") {
    for (int trial = 0; trial < 1000; ++trial) {
      const double theta = oracle::uniform(0, pi);
      const double alpha = log_uniform(1e-2, 1e4), beta = log_uniform(1e-3, 10);
      const double u0 = oracle::uniform(-2, 2);
      const auto p = cn_amplification(theta, params_for(alpha, beta), u0);
      CHECK(std::abs(p.magnitude - 1.0) <= 1e-12);
      const auto want = cn_symbol(theta, alpha, beta, u0);
      CHECK(std::abs(cplx(p.lambda_re, p.lambda_im) - want) <= 1e-9);
    }
  }
}

TEST_CASE("explicit amplification") {
  const auto p = explicit_amplification(pi / 2, params_for(0.1, 1.0), 0.0);
  CHECK(p.magnitude == doctest::Approx(1.019804).epsilon(1e-6));

  for (int trial = 0; trial < 1000; ++trial) {
    const double theta = oracle::uniform(0, pi);
    const double alpha = log_uniform(1e-2, 1e4), beta = log_uniform(1e-3, 10);
    const double u0 = oracle::uniform(-2, 2);
    const auto a = explicit_amplification(theta, params_for(alpha, beta), u0);
    const auto sp = params_for(alpha, beta);
    const double g = 1.5 * sp.beta() * u0 * std::sin(theta) + 2.0 * sp.alpha() * std::sin(theta) -
                     sp.alpha() * std::sin(2.0 * theta);
    CHECK(std::abs(a.magnitude * a.magnitude - (1.0 + g * g)) <= 1e-12 * (1.0 + g * g));
    CHECK(a.magnitude >= 1.0);
    const auto want = explicit_symbol(theta, sp.alpha(), sp.beta(), u0);
    CHECK(std::abs(cplx(a.lambda_re, a.lambda_im) - want) <= 1e-10 * std::abs(want));
  }
  CHECK(explicit_amplification(0.0, params_for(5.0, 1.0), 1.0).magnitude == 1.0);
  CHECK(explicit_amplification(pi, params_for(5.0, 1.0), 1.0).magnitude == doctest::Approx(1.0));
}

TEST_CASE("theta grid") {
  const auto g = theta_grid(5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == pi);
  CHECK(g[2] == doctest::Approx(pi / 2));
  CHECK(theta_grid(0).empty());
  CHECK(theta_grid(1) == std::vector<double>{0.0});
}

TEST_CASE("stability scan") {
  const std::vector<SchemeParams> params{params_for(0.1, 1.0), params_for(10.0, 0.5), params_for(1e3, 2.0)};
  const std::vector<double> u0{-1.0, 0.0, 1.5};
  const auto thetas = theta_grid(181);

  SUBCASE("Crank-Nicolson rows are all 1") {
    const auto rows = stability_scan(SchemeKind::CrankNicolson, params, u0, thetas);
    REQUIRE(rows.size() == 9);
    for (const auto& r : rows) CHECK(std::abs(r.max_magnitude - 1.0) <= 1e-12);
    CHECK(rows[1].u0 == 0.0);
    CHECK(rows[3].params.alpha() == doctest::Approx(10.0));
  }

  SUBCASE("explicit rows exceed 1") {
    const auto rows = stability_scan(SchemeKind::Explicit, params, u0, thetas);
    for (const auto& r : rows) CHECK(r.max_magnitude > 1.0);
    const std::vector<double> zero{0.0};
    const std::vector<SchemeParams> big{params_for(10.0, 1.0)};
    CHECK(stability_scan(SchemeKind::Explicit, big, zero, thetas)[0].max_magnitude > 10.0);
  }

  SUBCASE("empty inputs") {
    CHECK(stability_scan(SchemeKind::Explicit, {}, u0, thetas).empty());
    CHECK(stability_scan(SchemeKind::Explicit, params, {}, thetas).empty());
  }

  SUBCASE("invariant under reordering theta") {
    auto shuffled = thetas;
    std::shuffle(shuffled.begin(), shuffled.end(), oracle::rng());
    const auto a = stability_scan(SchemeKind::Explicit, params, u0, thetas);
    const auto b = stability_scan(SchemeKind::Explicit, params, u0, shuffled);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].max_magnitude == b[k].max_magnitude);
  }

  SUBCASE("theta outside [0, pi]") {
    const std::vector<double> bad{-0.1};
    CHECK_THROWS_AS(stability_scan(SchemeKind::CrankNicolson, params, u0, bad), InvalidParameter);
  }
}

TEST_CASE("observed order") {
  std::vector<std::pair<double, double>> quad, lin;
  for (double h : {0.4, 0.2, 0.1, 0.05}) {
    quad.emplace_back(h, 3.0 * h * h);
    lin.emplace_back(h, 0.7 * h);
  }
  CHECK(observed_order(quad) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(observed_order(lin) == doctest::Approx(1.0).epsilon(1e-12));

  const std::vector<std::pair<double, double>> one{{0.1, 1.0}};
  CHECK_THROWS_AS(observed_order(one), InvalidParameter);
  const std::vector<std::pair<double, double>> zero{{0.1, 0.0}, {0.05, 0.0}};
  CHECK_THROWS_AS(observed_order(zero), InvalidParameter);
}

TEST_CASE("truncation error") {
  const auto wave = traveling_wave_function(0.5, TravelingWaveForm::Verified);

  SUBCASE("Crank-Nicolson is first order in time") {
    const Grid1D window(-50.0, 50.0, 10001);
    std::vector<std::pair<double, double>> errors;
    for (double dt : {0.02, 0.01, 0.005}) {
      errors.emplace_back(dt, truncation_error(TruncationScheme::CnLagged, wave, SchemeParams(window.dx(), dt), window));
    }
    CHECK(errors[0].second == doctest::Approx(5.59e-4).epsilon(0.02));
    CHECK(observed_order(errors) == doctest::Approx(1.0).epsilon(0.1));
  }

  SUBCASE("Crank-Nicolson is second order in space") {
    std::vector<std::pair<double, double>> errors;
    for (double dx : {0.4, 0.2, 0.1}) {
      const Grid1D window(-50.0, 50.0, static_cast<std::size_t>(std::lround(100.0 / dx)) + 1);
      errors.emplace_back(dx, truncation_error(TruncationScheme::CnLagged, wave, SchemeParams(window.dx(), 1e-5), window));
    }
    CHECK(observed_order(errors) == doctest::Approx(2.0).epsilon(0.1));
  }

  SUBCASE("explicit scheme is second order in space") {
    std::vector<std::pair<double, double>> errors;
    for (double dx : {0.4, 0.2, 0.1}) {
      const Grid1D window(-50.0, 50.0, static_cast<std::size_t>(std::lround(100.0 / dx)) + 1);
      errors.emplace_back(dx, truncation_error(TruncationScheme::Explicit, wave, SchemeParams(window.dx(), 1e-7), window));
    }
    CHECK(observed_order(errors) == doctest::Approx(2.0).epsilon(0.1));
  }

  SUBCASE("window must share dx") {
    const Grid1D window(-5.0, 5.0, 101);
    CHECK_THROWS_AS(truncation_error(TruncationScheme::Explicit, wave, SchemeParams(0.2, 1e-3), window),
                    InvalidParameter);
  }
}
