#include "brauer/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace brauer {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw std::invalid_argument("Matrix: data length does not match rows * cols");
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) t(j, i) = (*this)(i, j);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: inner dimension mismatch");
  Matrix c(a.rows(), b.cols());
  const std::size_t m = a.rows();
  for (std::size_t j = 0; j < b.cols(); ++j) {
    double* cj = c.col(j).data();
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double bkj = b(k, j);
      if (bkj == 0.0) continue;
      const double* ak = a.col(k).data();
      for (std::size_t i = 0; i < m; ++i) cj[i] += ak[i] * bkj;
    }
  }
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix difference: shape mismatch");
  Matrix c = a;
  auto cd = c.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < cd.size(); ++i) cd[i] -= bd[i];
  return c;
}

Matrix operator*(double c, Matrix m) {
  for (double& x : m.data()) x *= c;
  return m;
}

Matrix gram(const Matrix& a) {
  const std::size_t n = a.cols();
  Matrix g(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    auto aj = a.col(j);
    for (std::size_t i = 0; i <= j; ++i) {
      auto ai = a.col(i);
      double s = std::inner_product(ai.begin(), ai.end(), aj.begin(), 0.0);
      g(i, j) = s;
      g(j, i) = s;
    }
  }
  return g;
}

Matrix outer_gram(const Matrix& a) {
  const std::size_t m = a.rows();
  Matrix g(m, m);
  for (std::size_t k = 0; k < a.cols(); ++k) {
    const double* ak = a.col(k).data();
    for (std::size_t j = 0; j < m; ++j) {
      const double akj = ak[j];
      if (akj == 0.0) continue;
      double* gj = g.col(j).data();
      for (std::size_t i = 0; i <= j; ++i) gj[i] += ak[i] * akj;
    }
  }
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < j; ++i) g(j, i) = g(i, j);
  return g;
}

Matrix hadamard(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("hadamard: shape mismatch");
  Matrix c = a;
  auto cd = c.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < cd.size(); ++i) cd[i] *= bd[i];
  return c;
}

double frobenius(const Matrix& m) {
  double s = 0.0;
  for (double x : m.data()) s += x * x;
  return std::sqrt(s);
}

SymmetricEigen symmetric_eigen(const Matrix& s) {
  const std::size_t n = s.rows();
  if (s.cols() != n) throw std::invalid_argument("symmetric_eigen: matrix is not square");
  Matrix a = s;
  Matrix v = Matrix::identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) {
        total += a(i, j) * a(i, j);
        if (i != j) off += a(i, j) * a(i, j);
      }
    if (off <= 1e-30 * total || off == 0.0) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });
  SymmetricEigen out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    auto src = v.col(order[k]);
    std::copy(src.begin(), src.end(), out.vectors.col(k).begin());
  }
  return out;
}

namespace {

// Lower Cholesky factor, or nullopt when a pivot is not safely positive.
std::optional<Matrix> cholesky(const Matrix& s) {
  const std::size_t n = s.rows();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(s(i, i)));
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = s(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 1e-13 * max_diag)) return std::nullopt;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double x = s(i, j);
      for (std::size_t k = 0; k < j; ++k) x -= l(i, k) * l(j, k);
      l(i, j) = x / ljj;
    }
  }
  return l;
}

Matrix cholesky_solve(const Matrix& l, const Matrix& b) {
  const std::size_t n = l.rows();
  Matrix x = b;
  for (std::size_t c = 0; c < x.cols(); ++c) {
    auto col = x.col(c);
    for (std::size_t i = 0; i < n; ++i) {
      double v = col[i];
      for (std::size_t k = 0; k < i; ++k) v -= l(i, k) * col[k];
      col[i] = v / l(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
      double v = col[i];
      for (std::size_t k = i + 1; k < n; ++k) v -= l(k, i) * col[k];
      col[i] = v / l(i, i);
    }
  }
  return x;
}

}  // namespace

Matrix solve_spd(const Matrix& s, const Matrix& b) {
  if (s.rows() != s.cols() || s.rows() != b.rows())
    throw std::invalid_argument("solve_spd: shape mismatch");
  if (auto l = cholesky(s)) return cholesky_solve(*l, b);
  double trace = 0.0;
  for (std::size_t i = 0; i < s.rows(); ++i) trace += s(i, i);
  Matrix reg = s;
  const double mu = 1e-12 * std::max(trace, 1e-300);
  for (std::size_t i = 0; i < s.rows(); ++i) reg(i, i) += mu;
  if (auto l = cholesky(reg)) return cholesky_solve(*l, b);
  // Numerically rank deficient even after regularization.
  Matrix x(b.rows(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    auto sol = solve_symmetric_pinv(s, b.col(c));
    std::copy(sol.begin(), sol.end(), x.col(c).begin());
  }
  return x;
}

std::vector<double> solve_symmetric_pinv(const Matrix& s, std::span<const double> b,
                                         double rcond) {
  if (s.rows() != s.cols() || s.rows() != b.size())
    throw std::invalid_argument("solve_symmetric_pinv: shape mismatch");
  const auto eig = symmetric_eigen(s);
  const std::size_t n = s.rows();
  double max_abs = 0.0;
  for (double v : eig.values) max_abs = std::max(max_abs, std::abs(v));
  std::vector<double> x(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = eig.values[k];
    if (std::abs(lam) <= rcond * max_abs || lam == 0.0) continue;
    auto vk = eig.vectors.col(k);
    const double coef = std::inner_product(vk.begin(), vk.end(), b.begin(), 0.0) / lam;
    for (std::size_t i = 0; i < n; ++i) x[i] += coef * vk[i];
  }
  return x;
}

}  // namespace brauer
