#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kdv {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Raised when banded or dense elimination meets a zero (or sub-tolerance) pivot.
class SingularMatrix : public Error {
 public:
  SingularMatrix(std::size_t row, const std::string& context = {})
      : Error("singular matrix: pivot vanished at row " + std::to_string(row) +
              (context.empty() ? "" : " (" + context + ")")),
        row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

// A time step produced a non-finite value or exceeded the amplitude threshold.
class BlowUp : public Error {
 public:
  explicit BlowUp(std::size_t step)
      : Error("blow-up detected at step " + std::to_string(step)), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

class FixedPointFailure : public Error {
 public:
  FixedPointFailure(int iterations, double last_change)
      : Error("Picard iteration did not converge after " + std::to_string(iterations) +
              " iterations (last change " + std::to_string(last_change) + ")"),
        iterations_(iterations),
        last_change_(last_change) {}
  int iterations() const noexcept { return iterations_; }
  double last_change() const noexcept { return last_change_; }

 private:
  int iterations_;
  double last_change_;
};

class OracleFailure : public Error {
 public:
  using Error::Error;
};

class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

}  // namespace kdv
