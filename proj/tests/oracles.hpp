#pragma once

// Test-only reference computations. Nothing here calls into the solver code
// paths it is used to check.

#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline std::vector<double> random_vector(std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::vector<double> v(n);
  for (double& x : v) x = uniform(lo, hi);
  return v;
}

inline double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double sup_norm(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

// Adaptive Simpson quadrature.
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol,
                      int depth = 50) {
  struct Rec {
    const std::function<double(double)>& f;
    double step(double a, double b, double fa, double fm, double fb, double whole, double tol,
                int depth) const {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
      }
      return step(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
             step(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
  } rec{f};
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return rec.step(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, depth);
}

// Direct per-point transcription of the explicit update
//   u^{n+1}_i = u_i [1 + 3dt/(4dx) (u_{i+1} - u_{i-1})] - dt/(2dx^3) (u_{i+2} - 2u_{i+1} + 2u_{i-1} - u_{i-2})
// with the two outer cells at each end held at zero.
inline std::vector<double> explicit_update(const std::vector<double>& u, double dx, double dt) {
  const std::size_t nx = u.size();
  std::vector<double> out(nx, 0.0);
  for (std::size_t i = 2; i < nx - 2; ++i) {
    const double nonlinear_factor = 1.0 + (3.0 * dt / (4.0 * dx)) * (u[i + 1] - u[i - 1]);
    const double dispersion =
        (dt / (2.0 * dx * dx * dx)) * (u[i + 2] - 2.0 * u[i + 1] + 2.0 * u[i - 1] - u[i - 2]);
    out[i] = u[i] * nonlinear_factor - dispersion;
  }
  return out;
}

// Dense row-major n x n matrix helpers.
using Dense = std::vector<std::vector<double>>;

inline std::vector<double> dense_mul(const Dense& m, const std::vector<double>& x) {
  std::vector<double> y(m.size(), 0.0);
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < x.size(); ++c) y[r] += m[r][c] * x[c];
  }
  return y;
}

// Gaussian elimination with partial pivoting on a dense copy.
inline std::vector<double> dense_solve(Dense m, std::vector<double> b) {
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(m[r][k]) > std::abs(m[p][k])) p = r;
    }
    std::swap(m[k], m[p]);
    std::swap(b[k], b[p]);
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = m[r][k] / m[k][k];
      if (f == 0.0) continue;
      for (std::size_t c = k; c < n; ++c) m[r][c] -= f * m[k][c];
      b[r] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    double acc = b[k];
    for (std::size_t c = k + 1; c < n; ++c) acc -= m[k][c] * x[c];
    x[k] = acc / m[k][k];
  }
  return x;
}

// Largest singular value via power iteration on the dense Gram matrix M^T M.
inline double dense_sigma_max(const Dense& m, int iterations) {
  const std::size_t n = m.size();
  Dense gram(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) gram[i][j] += m[k][i] * m[k][j];
    }
  }
  std::vector<double> b(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) b[i] += 0.01 * static_cast<double>(i % 7);
  double rq = 0.0;
  for (int it = 0; it < iterations; ++it) {
    auto y = dense_mul(gram, b);
    double norm = 0.0;
    for (double v : y) norm += v * v;
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) b[i] = y[i] / norm;
    rq = norm;
  }
  return std::sqrt(rq);
}

}  // namespace oracle
