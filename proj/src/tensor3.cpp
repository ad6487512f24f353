#include "brauer/tensor3.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace brauer {

namespace {

void require_valid_mode(int mode) {
  if (mode < 1 || mode > 3) throw std::invalid_argument("mode must be 1, 2 or 3");
}

void require_same_dims(const Tensor3& a, const Tensor3& b, const char* what) {
  if (a.dims() != b.dims()) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

std::size_t Dims::operator[](int mode) const {
  require_valid_mode(mode);
  return mode == 1 ? p : (mode == 2 ? q : r);
}

Tensor3::Tensor3(Dims dims) : dims_(dims), data_(dims.size(), 0.0) {}

Tensor3::Tensor3(Dims dims, std::vector<double> data) : dims_(dims), data_(std::move(data)) {
  if (data_.size() != dims_.size())
    throw std::invalid_argument("Tensor3: data length does not match p * q * r");
}

Tensor3& Tensor3::operator+=(const Tensor3& other) {
  require_same_dims(*this, other, "Tensor3 +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Tensor3& Tensor3::operator-=(const Tensor3& other) {
  require_same_dims(*this, other, "Tensor3 -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Tensor3& Tensor3::operator*=(double c) {
  for (double& x : data_) x *= c;
  return *this;
}

Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
Tensor3 operator*(double c, Tensor3 t) { return t *= c; }

Tensor3 RankOneTriple::to_tensor() const {
  Tensor3 t = outer3(a, b, c);
  t *= weight;
  return t;
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

double normalize(std::span<double> x) {
  const double n = norm2(x);
  if (n > 0.0)
    for (double& v : x) v /= n;
  return n;
}

double inner(const Tensor3& t, const Tensor3& s) {
  require_same_dims(t, s, "inner");
  return dot(t.data(), s.data());
}

double frobenius(const Tensor3& t) { return std::sqrt(inner(t, t)); }

Tensor3 outer3(std::span<const double> a, std::span<const double> b,
               std::span<const double> c) {
  Tensor3 t(a.size(), b.size(), c.size());
  for (std::size_t k = 0; k < c.size(); ++k)
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double bc = b[j] * c[k];
      for (std::size_t i = 0; i < a.size(); ++i) t(i, j, k) = a[i] * bc;
    }
  return t;
}

Matrix flatten(const Tensor3& t, int mode) {
  require_valid_mode(mode);
  const auto [p, q, r] = t.dims();
  switch (mode) {
    case 1: {
      auto d = t.data();
      return Matrix(p, q * r, std::vector<double>(d.begin(), d.end()));
    }
    case 2: {
      Matrix m(q, p * r);
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t j = 0; j < q; ++j)
          for (std::size_t i = 0; i < p; ++i) m(j, i + p * k) = t(i, j, k);
      return m;
    }
    default: {
      Matrix m(r, p * q);
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t j = 0; j < q; ++j)
          for (std::size_t i = 0; i < p; ++i) m(k, i + p * j) = t(i, j, k);
      return m;
    }
  }
}

Tensor3 fold(const Matrix& m, int mode, Dims dims) {
  require_valid_mode(mode);
  const auto [p, q, r] = dims;
  const std::size_t rows = dims[mode];
  if (m.rows() != rows || m.cols() * rows != dims.size())
    throw std::invalid_argument("fold: matrix shape does not match mode and dims");
  switch (mode) {
    case 1: {
      auto d = m.data();
      return Tensor3(dims, std::vector<double>(d.begin(), d.end()));
    }
    case 2: {
      Tensor3 t(dims);
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t j = 0; j < q; ++j)
          for (std::size_t i = 0; i < p; ++i) t(i, j, k) = m(j, i + p * k);
      return t;
    }
    default: {
      Tensor3 t(dims);
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t j = 0; j < q; ++j)
          for (std::size_t i = 0; i < p; ++i) t(i, j, k) = m(k, i + p * j);
      return t;
    }
  }
}

std::vector<double> contract_except(const Tensor3& t, int free_mode,
                                    std::span<const double> u, std::span<const double> v) {
  require_valid_mode(free_mode);
  const auto [p, q, r] = t.dims();
  const std::size_t nu = free_mode == 1 ? q : p;
  const std::size_t nv = free_mode == 3 ? q : r;
  if (u.size() != nu || v.size() != nv)
    throw std::invalid_argument("contract_except: vector lengths do not match the tensor");
  std::vector<double> out(t.dims()[free_mode], 0.0);
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t j = 0; j < q; ++j)
      for (std::size_t i = 0; i < p; ++i) {
        const double x = t(i, j, k);
        switch (free_mode) {
          case 1: out[i] += x * u[j] * v[k]; break;
          case 2: out[j] += x * u[i] * v[k]; break;
          default: out[k] += x * u[i] * v[j]; break;
        }
      }
  return out;
}

Tensor3 mode_product(const Tensor3& t, const Matrix& a, int mode) {
  require_valid_mode(mode);
  if (a.cols() != t.dims()[mode])
    throw std::invalid_argument("mode_product: matrix columns do not match the mode extent");
  Dims out = t.dims();
  (mode == 1 ? out.p : (mode == 2 ? out.q : out.r)) = a.rows();
  return fold(a * flatten(t, mode), mode, out);
}

Tensor3 multilinear(const Tensor3& t, const Matrix& a, const Matrix& b, const Matrix& c) {
  return mode_product(mode_product(mode_product(t, a, 1), b, 2), c, 3);
}

Tensor3 permute_modes(const Tensor3& t, std::array<int, 3> perm) {
  std::array<int, 3> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<int, 3>{1, 2, 3})
    throw std::invalid_argument("permute_modes: not a permutation of {1,2,3}");
  const Dims in = t.dims();
  const Dims out{in[perm[0]], in[perm[1]], in[perm[2]]};
  Tensor3 res(out);
  std::array<std::size_t, 3> idx{};
  for (std::size_t z = 0; z < out.r; ++z)
    for (std::size_t y = 0; y < out.q; ++y)
      for (std::size_t x = 0; x < out.p; ++x) {
        idx[perm[0] - 1] = x;
        idx[perm[1] - 1] = y;
        idx[perm[2] - 1] = z;
        res(x, y, z) = t(idx[0], idx[1], idx[2]);
      }
  return res;
}

std::vector<double> gaussian_vector(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = normal(rng);
  return v;
}

std::vector<double> random_unit_vector(std::size_t n, Rng& rng) {
  auto v = gaussian_vector(n, rng);
  while (normalize(v) == 0.0) v = gaussian_vector(n, rng);
  return v;
}

Tensor3 random_unit_tensor(Dims dims, Rng& rng) {
  return Tensor3(dims, random_unit_vector(dims.size(), rng));
}

RankOneTriple random_unit_rank1(Dims dims, Rng& rng) {
  RankOneTriple t;
  t.weight = 1.0;
  t.a = random_unit_vector(dims.p, rng);
  t.b = random_unit_vector(dims.q, rng);
  t.c = random_unit_vector(dims.r, rng);
  return t;
}

Matrix random_orthogonal(std::size_t n, Rng& rng) {
  // Modified Gram-Schmidt with one reorthogonalization pass; the implied R has
  // a positive diagonal, which makes Q Haar distributed.
  Matrix q(n, n, gaussian_vector(n * n, rng));
  for (std::size_t j = 0; j < n; ++j) {
    auto qj = q.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        auto qk = q.col(k);
        const double proj = dot(qk, qj);
        for (std::size_t i = 0; i < n; ++i) qj[i] -= proj * qk[i];
      }
    }
    if (normalize(qj) == 0.0) throw std::runtime_error("random_orthogonal: degenerate draw");
  }
  return q;
}

Tensor3 linear_combine(std::span<const std::pair<double, Tensor3>> terms) {
  if (terms.empty()) throw std::invalid_argument("linear_combine: no terms");
  Tensor3 out(terms.front().second.dims());
  for (const auto& [coef, t] : terms) {
    require_same_dims(out, t, "linear_combine");
    auto o = out.data();
    auto d = t.data();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] += coef * d[i];
  }
  return out;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finalizer over a Weyl-sequence offset.
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace brauer
