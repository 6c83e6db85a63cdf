#pragma once

#include <optional>
#include <string>

#include <Eigen/LU>

#include "calderon/types.hpp"

namespace calderon {

/// Raised when elimination meets an exactly zero pivot column. For the
/// boundary-integral systems this signals a wavenumber k for which -k^2 is an
/// interior Dirichlet or Neumann eigenvalue.
class SingularMatrixError : public NumericalError {
 public:
  SingularMatrixError(const std::string& what, Eigen::Index pivot_step)
      : NumericalError(what), pivot_step_(pivot_step) {}
  Eigen::Index pivot_step() const { return pivot_step_; }

 private:
  Eigen::Index pivot_step_;
};

/// Condition estimates above this produce a warning on the solve.
inline constexpr double kConditionWarningThreshold = 1e12;

/// Dense LU factorization with partial (row) pivoting, reusable across
/// right-hand sides.
class LuFactorization {
 public:
  /// Factorizes a square matrix with finite entries. Throws InvalidInput for
  /// bad shapes or non-finite entries and SingularMatrixError for an exact
  /// zero pivot.
  explicit LuFactorization(const ComplexMatrix& a);

  ComplexVector solve(const ComplexVector& b) const;
  ComplexMatrix solve(const ComplexMatrix& b) const;

  Eigen::Index size() const { return lu_.rows(); }
  /// Estimate of 1 / cond_1(A).
  double rcond() const { return rcond_; }
  double condition_estimate() const { return rcond_ > 0.0 ? 1.0 / rcond_ : INFINITY; }
  /// max |U_ij| / max |A_ij|.
  double pivot_growth() const { return pivot_growth_; }
  /// Set when the condition estimate exceeds kConditionWarningThreshold.
  const std::optional<std::string>& warning() const { return warning_; }

  ComplexMatrix lower() const;
  ComplexMatrix upper() const;
  /// P with P A = L U.
  Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic> permutation() const;

 private:
  Eigen::PartialPivLU<ComplexMatrix> lu_;
  double rcond_ = 0.0;
  double pivot_growth_ = 1.0;
  std::optional<std::string> warning_;
};

struct SolveResult {
  ComplexVector x;
  double rcond = 0.0;
  std::optional<std::string> warning;
};

/// One-shot factorize and solve.
SolveResult lu_solve(const ComplexMatrix& a, const ComplexVector& b);

}  // namespace calderon
