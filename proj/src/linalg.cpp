#include "kdv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <utility>

namespace kdv::linalg {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void require_size(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    throw DimensionMismatch(std::string(what) + ": expected length " + std::to_string(expected) +
                            ", got " + std::to_string(got));
  }
}

using Operator = std::function<std::vector<double>(std::span<const double>)>;

PowerIterationReport run_power_loop(const Operator& apply, std::vector<double> b, double tol,
                                    int max_iters) {
  if (!(tol > 0.0)) throw InvalidParameter("power iteration: tol must be positive");
  if (max_iters < 1) throw InvalidParameter("power iteration: max_iters must be >= 1");
  const double nb = norm2(b);
  if (!(nb > 0.0) || !std::isfinite(nb)) {
    throw InvalidParameter("power iteration: start vector must be nonzero and finite");
  }
  for (double& v : b) v /= nb;

  std::vector<double> y = apply(b);
  double rq_prev = dot(b, y);
  PowerIterationReport report;
  std::vector<double> r(b.size());
  for (int it = 1; it <= max_iters; ++it) {
    const double ny = norm2(y);
    report.iterations = it;
    if (ny == 0.0) {
      // b is in the null space: eigenvalue 0 exactly.
      report.estimate = 0.0;
      report.residual = 0.0;
      report.converged = true;
      return report;
    }
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = y[i] / ny;
    y = apply(b);
    const double rq = dot(b, y);
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = y[i] - rq * b[i];
    report.estimate = rq;
    report.residual = norm2(r);
    const double scale = std::max(1.0, std::abs(rq));
    if (std::abs(rq - rq_prev) < tol * scale && report.residual <= std::sqrt(tol) * scale) {
      report.converged = true;
      return report;
    }
    rq_prev = rq;
  }
  report.converged = false;
  return report;
}

}  // namespace

Pentadiagonal::Pentadiagonal(std::size_t n)
    : sub2_(n >= 2 ? n - 2 : 0, 0.0),
      sub1_(n >= 1 ? n - 1 : 0, 0.0),
      diag_(n, 0.0),
      sup1_(n >= 1 ? n - 1 : 0, 0.0),
      sup2_(n >= 2 ? n - 2 : 0, 0.0) {
  validate();
}

Pentadiagonal::Pentadiagonal(std::vector<double> sub2, std::vector<double> sub1,
                             std::vector<double> diag, std::vector<double> sup1,
                             std::vector<double> sup2)
    : sub2_(std::move(sub2)),
      sub1_(std::move(sub1)),
      diag_(std::move(diag)),
      sup1_(std::move(sup1)),
      sup2_(std::move(sup2)) {
  validate();
}

void Pentadiagonal::validate() const {
  const std::size_t n = diag_.size();
  if (n < 5) throw InvalidParameter("Pentadiagonal: dimension must be >= 5");
  if (sub1_.size() != n - 1 || sup1_.size() != n - 1 || sub2_.size() != n - 2 ||
      sup2_.size() != n - 2) {
    throw DimensionMismatch("Pentadiagonal: band lengths must be (n-2, n-1, n, n-1, n-2)");
  }
}

Pentadiagonal Pentadiagonal::identity(std::size_t n) {
  Pentadiagonal p(n);
  std::fill(p.diag_.begin(), p.diag_.end(), 1.0);
  return p;
}

Pentadiagonal Pentadiagonal::from_row(std::size_t n, const std::array<double, 5>& row) {
  Pentadiagonal p(n);
  std::fill(p.sub2_.begin(), p.sub2_.end(), row[0]);
  std::fill(p.sub1_.begin(), p.sub1_.end(), row[1]);
  std::fill(p.diag_.begin(), p.diag_.end(), row[2]);
  std::fill(p.sup1_.begin(), p.sup1_.end(), row[3]);
  std::fill(p.sup2_.begin(), p.sup2_.end(), row[4]);
  return p;
}

double Pentadiagonal::at(std::size_t r, std::size_t c) const noexcept {
  if (r >= n() || c >= n()) return 0.0;
  if (r == c) return diag_[r];
  if (r == c + 1) return sub1_[c];
  if (r == c + 2) return sub2_[c];
  if (c == r + 1) return sup1_[r];
  if (c == r + 2) return sup2_[r];
  return 0.0;
}

std::array<double, 5> Pentadiagonal::row(std::size_t r) const noexcept {
  std::array<double, 5> out{};
  for (int k = -2; k <= 2; ++k) {
    const auto c = static_cast<std::ptrdiff_t>(r) + k;
    if (c >= 0) out[static_cast<std::size_t>(k + 2)] = at(r, static_cast<std::size_t>(c));
  }
  return out;
}

double Pentadiagonal::max_abs() const noexcept {
  double m = 0.0;
  for (const auto* band : {&sub2_, &sub1_, &diag_, &sup1_, &sup2_}) {
    for (double v : *band) m = std::max(m, std::abs(v));
  }
  return m;
}

DenseMatrix to_dense(const Pentadiagonal& p) {
  DenseMatrix m(p.n());
  for (std::size_t r = 0; r < p.n(); ++r) {
    const std::size_t lo = r >= 2 ? r - 2 : 0;
    const std::size_t hi = std::min(p.n() - 1, r + 2);
    for (std::size_t c = lo; c <= hi; ++c) m(r, c) = p.at(r, c);
  }
  return m;
}

std::vector<double> matvec(const Pentadiagonal& p, std::span<const double> x) {
  const std::size_t n = p.n();
  require_size(n, x.size(), "matvec");
  const auto s2 = p.sub2(), s1 = p.sub1(), d = p.diag(), u1 = p.sup1(), u2 = p.sup2();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = d[i] * x[i];
    if (i >= 2) acc += s2[i - 2] * x[i - 2];
    if (i >= 1) acc += s1[i - 1] * x[i - 1];
    if (i + 1 < n) acc += u1[i] * x[i + 1];
    if (i + 2 < n) acc += u2[i] * x[i + 2];
    y[i] = acc;
  }
  return y;
}

std::vector<double> matvec_transpose(const Pentadiagonal& p, std::span<const double> x) {
  const std::size_t n = p.n();
  require_size(n, x.size(), "matvec_transpose");
  const auto s2 = p.sub2(), s1 = p.sub1(), d = p.diag(), u1 = p.sup1(), u2 = p.sup2();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = d[i] * x[i];
    if (i >= 2) acc += u2[i - 2] * x[i - 2];
    if (i >= 1) acc += u1[i - 1] * x[i - 1];
    if (i + 1 < n) acc += s1[i] * x[i + 1];
    if (i + 2 < n) acc += s2[i] * x[i + 2];
    y[i] = acc;
  }
  return y;
}

std::vector<double> matvec(const DenseMatrix& m, std::span<const double> x) {
  require_size(m.n, x.size(), "matvec");
  std::vector<double> y(m.n, 0.0);
  for (std::size_t r = 0; r < m.n; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < m.n; ++c) acc += m(r, c) * x[c];
    y[r] = acc;
  }
  return y;
}

BandedLu::BandedLu(const Pentadiagonal& p)
    : n_(p.n()), work_(p.n() * kWidth, 0.0), multipliers_(p.n()), pivots_(p.n()) {
  for (std::size_t r = 0; r < n_; ++r) {
    const std::size_t lo = r >= 2 ? r - 2 : 0;
    const std::size_t hi = std::min(n_ - 1, r + 2);
    for (std::size_t c = lo; c <= hi; ++c) u(r, c) = p.at(r, c);
  }
  const double scale = p.max_abs();
  const double threshold = kPivotTolerance * scale;
  min_pivot_ = std::numeric_limits<double>::infinity();

  for (std::size_t k = 0; k < n_; ++k) {
    const std::size_t last_row = std::min(n_ - 1, k + 2);
    const std::size_t last_col = std::min(n_ - 1, k + 4);

    std::size_t piv = k;
    for (std::size_t r = k + 1; r <= last_row; ++r) {
      if (std::abs(u(r, k)) > std::abs(u(piv, k))) piv = r;
    }
    pivots_[k] = piv;
    if (!(std::abs(u(piv, k)) > threshold) || scale == 0.0) throw SingularMatrix(k);
    if (piv != k) {
      for (std::size_t c = k; c <= last_col; ++c) std::swap(u(k, c), u(piv, c));
    }
    const double pivot = u(k, k);
    min_pivot_ = std::min(min_pivot_, std::abs(pivot));

    multipliers_[k] = {0.0, 0.0};
    for (std::size_t r = k + 1; r <= last_row; ++r) {
      const double m = u(r, k) / pivot;
      multipliers_[k][r - k - 1] = m;
      u(r, k) = 0.0;
      if (m == 0.0) continue;
      for (std::size_t c = k + 1; c <= last_col; ++c) u(r, c) -= m * u(k, c);
    }
  }
}

std::vector<double> BandedLu::solve(std::span<const double> b) const {
  require_size(n_, b.size(), "solve_banded");
  std::vector<double> y(b.begin(), b.end());
  for (std::size_t k = 0; k < n_; ++k) {
    if (pivots_[k] != k) std::swap(y[k], y[pivots_[k]]);
    if (k + 1 < n_) y[k + 1] -= multipliers_[k][0] * y[k];
    if (k + 2 < n_) y[k + 2] -= multipliers_[k][1] * y[k];
  }
  for (std::size_t k = n_; k-- > 0;) {
    double acc = y[k];
    const std::size_t last_col = std::min(n_ - 1, k + 4);
    for (std::size_t c = k + 1; c <= last_col; ++c) acc -= u(k, c) * y[c];
    y[k] = acc / u(k, k);
  }
  return y;
}

std::vector<double> solve_banded(const Pentadiagonal& p, std::span<const double> b) {
  require_size(p.n(), b.size(), "solve_banded");
  return BandedLu(p).solve(b);
}

std::vector<double> dense_reference_solve(const DenseMatrix& m, std::span<const double> b) {
  const std::size_t n = m.n;
  require_size(n, b.size(), "dense_reference_solve");
  DenseMatrix a = m;
  std::vector<double> x(b.begin(), b.end());
  const double scale = a.data.empty() ? 0.0
                                      : std::abs(*std::max_element(
                                            a.data.begin(), a.data.end(),
                                            [](double l, double r) { return std::abs(l) < std::abs(r); }));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(a(r, k)) > std::abs(a(piv, k))) piv = r;
    }
    if (scale == 0.0 || !(std::abs(a(piv, k)) > BandedLu::kPivotTolerance * scale)) {
      throw SingularMatrix(k, "dense reference");
    }
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
      std::swap(x[k], x[piv]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = a(r, k) / a(k, k);
      if (f == 0.0) continue;
      for (std::size_t c = k; c < n; ++c) a(r, c) -= f * a(k, c);
      x[r] -= f * x[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    double acc = x[k];
    for (std::size_t c = k + 1; c < n; ++c) acc -= a(k, c) * x[c];
    x[k] = acc / a(k, k);
  }
  return x;
}

PowerIterationReport power_iteration(const Pentadiagonal& p, std::span<const double> b0,
                                     double tol, int max_iters) {
  require_size(p.n(), b0.size(), "power_iteration");
  return run_power_loop([&p](std::span<const double> v) { return matvec(p, v); },
                        std::vector<double>(b0.begin(), b0.end()), tol, max_iters);
}

PowerIterationReport gram_power_iteration(const Pentadiagonal& p, double tol, int max_iters) {
  std::vector<double> b0(p.n());
  for (std::size_t i = 0; i < b0.size(); ++i) {
    b0[i] = 1.0 + 0.5 * std::sin(1.3 * static_cast<double>(i) + 0.7);
  }
  auto report = run_power_loop(
      [&p](std::span<const double> v) { return matvec_transpose(p, matvec(p, v)); },
      std::move(b0), tol, max_iters);
  report.estimate = std::sqrt(std::max(0.0, report.estimate));
  return report;
}

double symmetric_part_defect(const Pentadiagonal& p) noexcept {
  double defect = 0.0;
  for (std::size_t r = 0; r < p.n(); ++r) {
    double row_sum = std::abs(p.diag()[r] - 1.0);
    if (r >= 1) row_sum += std::abs(0.5 * (p.sub1()[r - 1] + p.sup1()[r - 1]));
    if (r >= 2) row_sum += std::abs(0.5 * (p.sub2()[r - 2] + p.sup2()[r - 2]));
    if (r + 1 < p.n()) row_sum += std::abs(0.5 * (p.sup1()[r] + p.sub1()[r]));
    if (r + 2 < p.n()) row_sum += std::abs(0.5 * (p.sup2()[r] + p.sub2()[r]));
    defect = std::max(defect, row_sum);
  }
  return defect;
}

InvertibilityReport invertibility_certificate(const Pentadiagonal& p) {
  if (symmetric_part_defect(p) == 0.0) {
    return {"identity-plus-skew", true,
            "P = I + K with K^T = -K: eigenvalues 1 + i*mu, sigma_min >= 1"};
  }
  try {
    const BandedLu lu(p);
    return {"LU-factorization", true,
            "banded LU succeeded; min |pivot| = " + std::to_string(lu.min_abs_pivot())};
  } catch (const SingularMatrix& e) {
    return {"LU-factorization", false, e.what()};
  }
}

}  // namespace kdv::linalg
