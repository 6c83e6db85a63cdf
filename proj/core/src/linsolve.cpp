#include "calderon/linsolve.hpp"

#include <cmath>
#include <sstream>

namespace calderon {

LuFactorization::LuFactorization(const ComplexMatrix& a) {
  if (a.rows() < 1 || a.rows() != a.cols()) {
    throw InvalidInput("lu: matrix must be square and non-empty, got " +
                       std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  if (!a.allFinite()) throw InvalidInput("lu: matrix has non-finite entries");

  lu_.compute(a);
  // Eigen skips exactly zero pivot columns instead of dividing by them; the
  // first zero on the diagonal of U is the failed elimination step.
  const auto& packed = lu_.matrixLU();
  for (Eigen::Index step = 0; step < packed.rows(); ++step) {
    if (packed(step, step) == Complex(0.0)) {
      throw SingularMatrixError(
          "singular matrix: zero pivot at elimination step " + std::to_string(step) +
              ". If this is a boundary-integral system, the wavenumber is likely an interior "
              "resonance (-k^2 a Dirichlet or Neumann eigenvalue of the enclosed domain)",
          step);
    }
  }

  const double max_a = a.cwiseAbs().maxCoeff();
  const double max_u = packed.triangularView<Eigen::Upper>().toDenseMatrix().cwiseAbs().maxCoeff();
  pivot_growth_ = max_a > 0.0 ? max_u / max_a : 1.0;
  rcond_ = lu_.rcond();
  if (!(rcond_ * kConditionWarningThreshold >= 1.0)) {
    std::ostringstream msg;
    msg << "ill-conditioned system: condition estimate " << condition_estimate()
        << " exceeds " << kConditionWarningThreshold
        << "; the wavenumber may be close to an interior resonance";
    warning_ = msg.str();
  }
}

ComplexVector LuFactorization::solve(const ComplexVector& b) const {
  if (b.size() != size()) throw InvalidInput("lu: right-hand side has the wrong length");
  return lu_.solve(b);
}

ComplexMatrix LuFactorization::solve(const ComplexMatrix& b) const {
  if (b.rows() != size()) throw InvalidInput("lu: right-hand side has the wrong length");
  return lu_.solve(b);
}

ComplexMatrix LuFactorization::lower() const {
  ComplexMatrix l = lu_.matrixLU().triangularView<Eigen::UnitLower>();
  return l;
}

ComplexMatrix LuFactorization::upper() const {
  ComplexMatrix u = lu_.matrixLU().triangularView<Eigen::Upper>();
  return u;
}

Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic> LuFactorization::permutation() const {
  return lu_.permutationP();
}

SolveResult lu_solve(const ComplexMatrix& a, const ComplexVector& b) {
  const LuFactorization lu(a);
  return {lu.solve(b), lu.rcond(), lu.warning()};
}

}  // namespace calderon
