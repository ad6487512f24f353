#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "brauer/matrix.hpp"

namespace brauer {

using Rng = std::mt19937_64;

/// Extents (p, q, r) of a 3-way tensor.
struct Dims {
  std::size_t p = 0;
  std::size_t q = 0;
  std::size_t r = 0;

  std::size_t size() const { return p * q * r; }
  std::size_t operator[](int mode) const;  // mode in {1,2,3}
  friend bool operator==(const Dims&, const Dims&) = default;
};

/// Dense real p x q x r tensor.
///
/// Storage is mode-1 fastest: entry (i, j, k) lives at i + p * (j + q * k).
/// The mode-k flattening uses the matching Kronecker column order (the
/// lower-numbered remaining mode varies fastest), so the mode-1 flattening
/// shares its memory layout with the tensor itself.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(Dims dims);
  Tensor3(Dims dims, std::vector<double> data);
  Tensor3(std::size_t p, std::size_t q, std::size_t r) : Tensor3(Dims{p, q, r}) {}

  const Dims& dims() const { return dims_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return data_[i + dims_.p * (j + dims_.q * k)];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[i + dims_.p * (j + dims_.q * k)];
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  Tensor3& operator+=(const Tensor3& other);
  Tensor3& operator-=(const Tensor3& other);
  Tensor3& operator*=(double c);

  friend bool operator==(const Tensor3&, const Tensor3&) = default;

 private:
  Dims dims_;
  std::vector<double> data_;
};

Tensor3 operator+(Tensor3 a, const Tensor3& b);
Tensor3 operator-(Tensor3 a, const Tensor3& b);
Tensor3 operator*(double c, Tensor3 t);

/// A weighted rank-one term weight * a (x) b (x) c with unit a, b, c.
struct RankOneTriple {
  double weight = 1.0;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;

  Dims dims() const { return {a.size(), b.size(), c.size()}; }
  Tensor3 to_tensor() const;
};

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);
/// Scales x to unit length in place and returns the original length.
double normalize(std::span<double> x);

/// Sum of t_ijk * s_ijk. Throws std::invalid_argument on a shape mismatch.
double inner(const Tensor3& t, const Tensor3& s);
/// Euclidean (Frobenius) norm. Also serves as the degree-2 spectral surrogate.
double frobenius(const Tensor3& t);

Tensor3 outer3(std::span<const double> a, std::span<const double> b,
               std::span<const double> c);

/// Mode-k unfolding: rows indexed by mode k, columns in Kronecker order of the
/// two remaining modes with the lower-numbered one fastest.
Matrix flatten(const Tensor3& t, int mode);
/// Exact inverse of flatten for the given dims.
Tensor3 fold(const Matrix& m, int mode, Dims dims);

/// Contracts every mode except `free_mode` with a vector: u and v belong to
/// the two remaining modes in increasing order.
std::vector<double> contract_except(const Tensor3& t, int free_mode,
                                    std::span<const double> u, std::span<const double> v);

/// Applies a matrix along one mode: result = t x_mode A, A is (new_n x n_mode).
Tensor3 mode_product(const Tensor3& t, const Matrix& a, int mode);
/// (A, B, C) . T, the action of a triple of matrices on all three modes.
Tensor3 multilinear(const Tensor3& t, const Matrix& a, const Matrix& b,
                    const Matrix& c);
/// Reorders the modes: result mode m is input mode perm[m] (perm values 1..3).
Tensor3 permute_modes(const Tensor3& t, std::array<int, 3> perm);

std::vector<double> gaussian_vector(std::size_t n, Rng& rng);
std::vector<double> random_unit_vector(std::size_t n, Rng& rng);
/// Uniform on the unit sphere of R^{pqr} (Gaussian entries, normalized).
Tensor3 random_unit_tensor(Dims dims, Rng& rng);
RankOneTriple random_unit_rank1(Dims dims, Rng& rng);
/// Haar orthogonal n x n matrix: QR of a Gaussian matrix with R's diagonal
/// made positive.
Matrix random_orthogonal(std::size_t n, Rng& rng);

Tensor3 linear_combine(std::span<const std::pair<double, Tensor3>> terms);

/// Derives an independent 64-bit seed for stream `index` of `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace brauer
