#include "rgs/linalg.hpp"

#include "rgs/rng.hpp"

#include <cmath>

namespace rgs {

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() == 1 || a.cols() == 1) return a.norm();
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

double frobenius_norm(const Matrix& a) { return a.norm(); }

double unitarity_defect(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).norm();
}

double hermiticity_defect(const Matrix& a) { return (a - a.adjoint()).norm(); }

Vector vec(const Matrix& a) {
  return Eigen::Map<const Vector>(a.data(), a.size());
}

Matrix unvec(const Vector& v, Eigen::Index dim) {
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix conjugation_superoperator(const Matrix& u) { return kron(u.conjugate(), u); }

Matrix transpose_superoperator(Eigen::Index dim) {
  const Eigen::Index n = dim * dim;
  Matrix t = Matrix::Zero(n, n);
  // vec index of (i, j) is i + j*dim; the transpose sends it to j + i*dim.
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      t(j + i * dim, i + j * dim) = 1.0;
    }
  }
  return t;
}

Eigen::RowVectorXcd trace_functional(Eigen::Index dim) {
  Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(dim * dim);
  for (Eigen::Index j = 0; j < dim; ++j) row(j + j * dim) = 1.0;
  return row;
}

Matrix random_ginibre(Eigen::Index rows, Eigen::Index cols, RngStream& rng) {
  Matrix g(rows, cols);
  const double s = std::sqrt(0.5);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = Complex(s * re, s * im);
    }
  }
  return g;
}

Matrix random_density_matrix(Eigen::Index dim, RngStream& rng) {
  const Matrix g = random_ginibre(dim, dim, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

}  // namespace rgs
