#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kdv/errors.hpp"

namespace kdv::linalg {

// Square matrix with two sub- and two super-diagonals.
//   sub2[k] = P(k+2, k)   sub1[k] = P(k+1, k)   diag[k] = P(k, k)
//   sup1[k] = P(k, k+1)   sup2[k] = P(k, k+2)
class Pentadiagonal {
 public:
  explicit Pentadiagonal(std::size_t n);
  Pentadiagonal(std::vector<double> sub2, std::vector<double> sub1, std::vector<double> diag,
                std::vector<double> sup1, std::vector<double> sup2);

  static Pentadiagonal identity(std::size_t n);
  // Every row gets the same five coefficients (c_{-2}, c_{-1}, c_0, c_{+1}, c_{+2}).
  static Pentadiagonal from_row(std::size_t n, const std::array<double, 5>& row);

  std::size_t n() const noexcept { return diag_.size(); }

  std::span<const double> sub2() const noexcept { return sub2_; }
  std::span<const double> sub1() const noexcept { return sub1_; }
  std::span<const double> diag() const noexcept { return diag_; }
  std::span<const double> sup1() const noexcept { return sup1_; }
  std::span<const double> sup2() const noexcept { return sup2_; }

  std::span<double> sub2() noexcept { return sub2_; }
  std::span<double> sub1() noexcept { return sub1_; }
  std::span<double> diag() noexcept { return diag_; }
  std::span<double> sup1() noexcept { return sup1_; }
  std::span<double> sup2() noexcept { return sup2_; }

  // Entry (row, col); zero outside the band.
  double at(std::size_t row, std::size_t col) const noexcept;
  // Row `row` as (c_{-2}, ..., c_{+2}); out-of-matrix slots are zero.
  std::array<double, 5> row(std::size_t row) const noexcept;
  double max_abs() const noexcept;

 private:
  void validate() const;

  std::vector<double> sub2_, sub1_, diag_, sup1_, sup2_;
};

// Row-major dense square matrix; used as a reference for the banded code.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<double> data;

  explicit DenseMatrix(std::size_t size = 0) : n(size), data(size * size, 0.0) {}
  double& operator()(std::size_t r, std::size_t c) { return data[r * n + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * n + c]; }
};

DenseMatrix to_dense(const Pentadiagonal& p);

std::vector<double> matvec(const Pentadiagonal& p, std::span<const double> x);
std::vector<double> matvec_transpose(const Pentadiagonal& p, std::span<const double> x);
std::vector<double> matvec(const DenseMatrix& m, std::span<const double> x);

// LU factorization with partial pivoting restricted to the band. Row swaps
// widen the upper bandwidth from 2 to at most 4.
class BandedLu {
 public:
  explicit BandedLu(const Pentadiagonal& p);

  std::size_t n() const noexcept { return n_; }
  std::vector<double> solve(std::span<const double> b) const;
  double min_abs_pivot() const noexcept { return min_pivot_; }

  // Relative pivot threshold: |pivot| <= kPivotTolerance * max|P| is singular.
  static constexpr double kPivotTolerance = 1e-14;

 private:
  static constexpr std::size_t kWidth = 7;  // columns row-2 .. row+4
  double& u(std::size_t r, std::size_t c) { return work_[r * kWidth + (c + 2 - r)]; }
  double u(std::size_t r, std::size_t c) const { return work_[r * kWidth + (c + 2 - r)]; }

  std::size_t n_;
  std::vector<double> work_;
  std::vector<std::array<double, 2>> multipliers_;
  std::vector<std::size_t> pivots_;
  double min_pivot_ = 0.0;
};

std::vector<double> solve_banded(const Pentadiagonal& p, std::span<const double> b);

// Gaussian elimination with partial pivoting on a dense copy.
std::vector<double> dense_reference_solve(const DenseMatrix& m, std::span<const double> b);

struct PowerIterationReport {
  double estimate = 0.0;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;
};

// b_{k+1} = P b_k / |P b_k|. Stops once successive Rayleigh quotients agree to
// `tol` (relative to max(1, |estimate|)) and the eigen-residual
// |P b - estimate b| / |b| is below sqrt(tol) * max(1, |estimate|); otherwise
// runs to max_iters and reports converged = false.
PowerIterationReport power_iteration(const Pentadiagonal& p, std::span<const double> b0,
                                     double tol, int max_iters);

// Power iteration on P^T P. The estimate is sigma_max(P); the residual is
// measured for the Gram operator.
PowerIterationReport gram_power_iteration(const Pentadiagonal& p, double tol, int max_iters);

struct InvertibilityReport {
  std::string method;
  bool certified = false;
  std::string detail;
};

// Identity-plus-skew matrices are certified structurally; everything else by
// attempting a banded LU factorization.
InvertibilityReport invertibility_certificate(const Pentadiagonal& p);

// |(P + P^T)/2 - I|_inf
double symmetric_part_defect(const Pentadiagonal& p) noexcept;

}  // namespace kdv::linalg
