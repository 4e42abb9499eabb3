#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "prabhakar/complex.hpp"

namespace prabhakar {

inline constexpr int kMaxMatrixSize = 64;

/// Closed-form eigenvalues of a 2x2 matrix from trace and determinant. The
/// larger root is formed without cancellation and the smaller one from the
/// product. Real input with a negative discriminant gives an exact conjugate
/// pair. Throws InvalidParam unless the matrix is 2x2 and finite.
[[nodiscard]] std::array<Complex, 2> eigenvalues_2x2(const Eigen::MatrixXd& m);
[[nodiscard]] std::array<Complex, 2> eigenvalues_2x2(const Eigen::MatrixXcd& m);

/// All eigenvalues with multiplicity (balanced Hessenberg QR). Throws
/// InvalidParam for empty, non-square, non-finite or oversized input and
/// NonConvergence if the QR iteration fails.
[[nodiscard]] std::vector<Complex> eigenvalues(const Eigen::MatrixXd& m);
[[nodiscard]] std::vector<Complex> eigenvalues(const Eigen::MatrixXcd& m);

}  // namespace prabhakar
