#include "prabhakar/spectra.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "prabhakar/error.hpp"

namespace prabhakar {

namespace {

template <typename Matrix>
void check_matrix(const Matrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw Error(ErrorKind::InvalidParam, "matrix must be square and non-empty");
  }
  if (m.rows() > kMaxMatrixSize) {
    throw Error(ErrorKind::InvalidParam,
                "matrix size exceeds the cap of " + std::to_string(kMaxMatrixSize));
  }
  if (!m.allFinite()) throw Error(ErrorKind::InvalidParam, "matrix entries must be finite");
}

// Roots of x^2 - tr x + det with the larger-magnitude root first.
std::array<Complex, 2> quadratic_roots(Complex tr, Complex det) {
  const Complex disc = std::sqrt(tr * tr - 4.0 * det);
  // choose the sign that avoids cancellation in tr +- disc
  const Complex q = std::real(std::conj(tr) * disc) >= 0.0 ? tr + disc : tr - disc;
  if (q == Complex(0.0, 0.0)) return {Complex(0.0, 0.0), Complex(0.0, 0.0)};
  const Complex big = 0.5 * q;
  return {big, det / big};
}

}  // namespace

std::array<Complex, 2> eigenvalues_2x2(const Eigen::MatrixXd& m) {
  if (m.rows() != 2 || m.cols() != 2 || !m.allFinite()) {
    throw Error(ErrorKind::InvalidParam, "eigenvalues_2x2 needs a finite 2x2 matrix");
  }
  const double tr = m(0, 0) + m(1, 1);
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  // discriminant as (a - d)^2 + 4bc avoids squaring the trace
  const double half_gap = 0.5 * (m(0, 0) - m(1, 1));
  const double disc = half_gap * half_gap + m(0, 1) * m(1, 0);
  if (disc < 0.0) {
    const double im = std::sqrt(-disc);
    return {Complex(0.5 * tr, im), Complex(0.5 * tr, -im)};
  }
  const double root = std::sqrt(disc);
  const double big = 0.5 * tr + std::copysign(root, tr);
  if (big == 0.0) return {Complex(0.0, 0.0), Complex(0.0, 0.0)};
  return {Complex(big, 0.0), Complex(det / big, 0.0)};
}

std::array<Complex, 2> eigenvalues_2x2(const Eigen::MatrixXcd& m) {
  if (m.rows() != 2 || m.cols() != 2 || !m.allFinite()) {
    throw Error(ErrorKind::InvalidParam, "eigenvalues_2x2 needs a finite 2x2 matrix");
  }
  return quadratic_roots(m(0, 0) + m(1, 1), m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
}

std::vector<Complex> eigenvalues(const Eigen::MatrixXd& m) {
  check_matrix(m);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NonConvergence, "real Schur iteration did not converge");
  }
  const Eigen::VectorXcd ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<Complex> eigenvalues(const Eigen::MatrixXcd& m) {
  check_matrix(m);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NonConvergence, "complex Schur iteration did not converge");
  }
  const Eigen::VectorXcd ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace prabhakar
