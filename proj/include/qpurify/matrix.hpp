#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <stdexcept>

namespace qpurify {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kGateTol = 1e-12;

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline bool is_unitary(const ComplexMatrix& u, double tol = kGateTol) {
  if (u.rows() != u.cols()) return false;
  ComplexMatrix d = u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols());
  return max_abs(d) < tol;
}

/// Hermitian within tol, trace 1 within tol, eigenvalues >= -1e-10.
inline bool is_density(const ComplexMatrix& rho, double tol = kGateTol) {
  if (rho.rows() != rho.cols()) return false;
  if (max_abs(ComplexMatrix(rho - rho.adjoint())) >= tol) return false;
  if (std::abs(rho.trace() - Complex(1.0)) >= tol) return false;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
  return es.eigenvalues().minCoeff() >= -1e-10;
}

struct PhaseMatch {
  bool equal = false;
  std::optional<Complex> phase;  // unit phase c with a = c*b, when equal
  double residual = 0.0;         // max elementwise |a - c*b| after the fit
};

/// Fits a single unit phase c to minimize ||a - c b||_max and reports the result.
inline PhaseMatch match_up_to_phase(const ComplexMatrix& a, const ComplexMatrix& b,
                                    double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("match_up_to_phase: dimension mismatch");
  Eigen::Index ri = 0, ci = 0;
  b.cwiseAbs().maxCoeff(&ri, &ci);
  PhaseMatch m;
  if (std::abs(b(ri, ci)) == 0.0) {
    m.residual = max_abs(a);
    m.equal = m.residual < tol;
    return m;
  }
  Complex c = a(ri, ci) / b(ri, ci);
  double ac = std::abs(c);
  if (ac == 0.0) {
    m.residual = std::max(max_abs(a), max_abs(b));
    m.equal = false;
    return m;
  }
  c /= ac;
  m.residual = max_abs(ComplexMatrix(a - c * b));
  m.equal = m.residual < tol;
  if (m.equal) m.phase = c;
  return m;
}

}  // namespace qpurify
