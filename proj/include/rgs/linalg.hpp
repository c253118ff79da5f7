#pragma once

#include <Eigen/Dense>

#include <complex>
#include <numbers>

namespace rgs {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

class RngStream;

/// Largest singular value.
double spectral_norm(const Matrix& a);
double frobenius_norm(const Matrix& a);

/// ‖U*U − I‖_F.
double unitarity_defect(const Matrix& u);
/// ‖A − A*‖_F.
double hermiticity_defect(const Matrix& a);

// Superoperators act on column-major vectorizations: vec(A X B) = (Bᵀ ⊗ A) vec(X).
Vector vec(const Matrix& a);
Matrix unvec(const Vector& v, Eigen::Index dim);
Matrix kron(const Matrix& a, const Matrix& b);

/// Matrix of X ↦ U X U* on vec(X), i.e. conj(U) ⊗ U.
Matrix conjugation_superoperator(const Matrix& u);

/// Matrix of X ↦ Xᵀ on vec(X).
Matrix transpose_superoperator(Eigen::Index dim);

/// Row functional X ↦ tr(X) on vec(X).
Eigen::RowVectorXcd trace_functional(Eigen::Index dim);

/// Entries i.i.d. standard complex Gaussian (real and imaginary parts N(0, 1/2)).
Matrix random_ginibre(Eigen::Index rows, Eigen::Index cols, RngStream& rng);

/// G G* / tr(G G*) for a square Ginibre G.
Matrix random_density_matrix(Eigen::Index dim, RngStream& rng);

/// Sum of floating point values with Neumaier compensation.
template <typename Range>
double compensated_sum(const Range& values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

}  // namespace rgs
