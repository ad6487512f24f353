#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace brauer {

/// Dense column-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i + rows_ * j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i + rows_ * j]; }

  std::span<double> col(std::size_t j) { return {data_.data() + rows_ * j, rows_}; }
  std::span<const double> col(std::size_t j) const {
    return {data_.data() + rows_ * j, rows_};
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  Matrix transpose() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double c, Matrix m);

/// A^T A.
Matrix gram(const Matrix& a);
/// A A^T.
Matrix outer_gram(const Matrix& a);
/// Elementwise product.
Matrix hadamard(const Matrix& a, const Matrix& b);
double frobenius(const Matrix& m);

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Eigenvalues are sorted in decreasing order; eigenvectors are the columns.
struct SymmetricEigen {
  std::vector<double> values;
  Matrix vectors;
};
SymmetricEigen symmetric_eigen(const Matrix& s);

/// Solves S X = B for symmetric positive semi-definite S via Cholesky. When
/// the factorization breaks down or S is badly conditioned, retries on
/// S + mu I with mu = 1e-12 * trace(S).
Matrix solve_spd(const Matrix& s, const Matrix& b);

/// Minimum-norm least-squares solution of S x = b for symmetric S, using the
/// pseudo-inverse with relative cutoff `rcond`.
std::vector<double> solve_symmetric_pinv(const Matrix& s, std::span<const double> b,
                                         double rcond = 1e-12);

}  // namespace brauer
