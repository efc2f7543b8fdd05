#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace mink {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Numerical thresholds shared by every rank test and every equality check.
//
// rank cutoff  = rank_rtol * max(rows, cols) * max(sigma_max, reference)
// equality     = ||residual|| <= eq_atol + eq_rtol * scale
struct Tolerance {
  double rank_rtol = 1e-10;
  double eq_atol = 1e-12;
  double eq_rtol = 1e-9;

  // True when `residual` is acceptable relative to a reference magnitude.
  [[nodiscard]] bool accepts(double residual, double scale = 1.0) const {
    return residual <= eq_atol + eq_rtol * scale;
  }
};

// Throws ErrorCode::InvalidArgument when any field is negative or non-finite.
void validate(const Tolerance& tol);

enum class ErrorCode {
  InvalidArgument,
  ShapeMismatch,
  NotSquare,
  NonFinite,
  NonConvergence,
  ZeroMatrix,
  Singular,
  IndexNotOne,
  RankMismatch,
  NotExistent,
  NotExistent13m,
  NotExistent14m,
  SingularFactor,
  BlockSingular,
  SingularParam,
  InvalidWitness,
  InternalInconsistency,
  RetryExhausted,
  Parse,
  Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Gate for the inverse algorithms. Force evaluates the formula even when the
// existence diagnosis fails, substituting pseudoinverses for singular factors.
enum class Gate { Checked, Force };

}  // namespace mink
