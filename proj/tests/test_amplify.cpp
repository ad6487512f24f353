#include <doctest.h>

#include <cmath>

#include "brauer/amplify.hpp"
#include "brauer/norms.hpp"
#include "oracles.hpp"

using namespace brauer;

TEST_CASE("rank-one fixed points") {
  Rng rng(41);
  const auto t = random_unit_rank1({4, 5, 6}, rng).to_tensor();
  for (int k = 1; k <= 3; ++k) CHECK(oracle::rel_err(frame_gradient(t, k), t) < 1e-12);
  CHECK(oracle::rel_err(tetra_gradient(t), t) < 1e-12);
  CHECK(oracle::rel_err(phi_sharp(t), 4.0 * t) < 1e-12);
  CHECK(oracle::rel_err(phi_sigma4(t), 4.0 * t) < 1e-12);
  for (auto kind : {AmplifierKind::sigma4, AmplifierKind::sharp}) {
    auto a = amplify(t, kind);
    a *= 1.0 / frobenius(a);
    CHECK(oracle::max_abs_diff(a, t) < 1e-12);
  }
}

TEST_CASE("zero tensor maps to zero") {
  const Tensor3 z(3, 4, 5);
  CHECK(frobenius(phi_sharp(z)) == 0.0);
  CHECK(frobenius(phi_sigma4(z)) == 0.0);
}

TEST_CASE("tetra_gradient against the loop oracle") {
  Rng rng(42);
  for (Dims dims : {Dims{2, 2, 2}, Dims{3, 4, 5}, Dims{5, 3, 4}, Dims{4, 5, 3}}) {
    const auto t = oracle::random_tensor(dims, rng);
    CHECK(oracle::rel_err(tetra_gradient(t), oracle::tetra_gradient(t)) < 1e-12);
  }
}

TEST_CASE("gradients match finite differences") {
  Rng rng(43);
  for (int trial = 0; trial < 3; ++trial) {
    const auto t = oracle::random_tensor({4, 5, 6}, rng);
    for (int k = 1; k <= 3; ++k) {
      const auto fd = oracle::finite_difference_gradient([k](const Tensor3& x) { return frame(x, k); }, t);
      CHECK(oracle::rel_err(4.0 * frame_gradient(t, k), fd) < 1e-6);
    }
    const auto fd = oracle::finite_difference_gradient([](const Tensor3& x) { return tetrahedron(x); }, t);
    CHECK(oracle::rel_err(4.0 * tetra_gradient(t), fd) < 1e-6);
  }
}

TEST_CASE("amplification maps are the norm gradients") {
  Rng rng(44);
  for (int trial = 0; trial < 3; ++trial) {
    const auto t = oracle::random_tensor({4, 5, 6}, rng);
    const auto fd_sharp = oracle::finite_difference_gradient(
        [](const Tensor3& x) { return invariants(x).sharp_pow4(); }, t);
    const auto fd_sigma = oracle::finite_difference_gradient(
        [](const Tensor3& x) { return invariants(x).sigma4_pow4(); }, t);
    CHECK(oracle::rel_err(phi_sharp(t), fd_sharp) < 1e-6);
    CHECK(oracle::rel_err(phi_sigma4(t), fd_sigma) < 1e-6);
  }
}

TEST_CASE("cubic homogeneity") {
  Rng rng(45);
  const auto t = oracle::random_tensor({3, 4, 5}, rng);
  for (double c : {2.0, -0.5}) {
    const double c3 = c * c * c;
    CHECK(oracle::rel_err(frame_gradient(c * t, 2), c3 * frame_gradient(t, 2)) < 1e-14);
    CHECK(oracle::rel_err(tetra_gradient(c * t), c3 * tetra_gradient(t)) < 1e-14);
    CHECK(oracle::rel_err(phi_sharp(c * t), c3 * phi_sharp(t)) < 1e-14);
    CHECK(oracle::rel_err(phi_sigma4(c * t), c3 * phi_sigma4(t)) < 1e-14);
  }
}

TEST_CASE("equivariance under orthogonal actions") {
  Rng rng(46);
  const auto t = oracle::random_tensor({4, 5, 6}, rng);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix a = random_orthogonal(4, rng), b = random_orthogonal(5, rng),
                 c = random_orthogonal(6, rng);
    const auto moved = multilinear(t, a, b, c);
    for (auto kind : {AmplifierKind::identity, AmplifierKind::sigma4, AmplifierKind::sharp})
      CHECK(oracle::rel_err(amplify(moved, kind), multilinear(amplify(t, kind), a, b, c)) < 1e-10);
  }
}

TEST_CASE("amplify dispatch") {
  Rng rng(47);
  const auto t = oracle::random_tensor({3, 3, 4}, rng);
  CHECK(amplify(t, AmplifierKind::identity) == t);
  CHECK(amplify(t, AmplifierKind::sigma4) == phi_sigma4(t));
  CHECK(amplify(t, AmplifierKind::sharp) == phi_sharp(t));
  CHECK(parse_amplifier_kind("sharp") == AmplifierKind::sharp);
  CHECK(parse_amplifier_kind(to_string(AmplifierKind::sigma4)) == AmplifierKind::sigma4);
  CHECK_THROWS(parse_amplifier_kind("cubic"));
}

TEST_CASE("matrix theta") {
  const Matrix d = Matrix::diagonal(std::vector<double>{2.0, 1.0});
  const Matrix th = matrix_theta(d);
  CHECK(std::abs(th(0, 0) - 8.0 / std::sqrt(65.0)) < 1e-12);
  CHECK(std::abs(th(1, 1) - 1.0 / std::sqrt(65.0)) < 1e-12);
  CHECK(std::abs(th(0, 1)) < 1e-12);
  CHECK_THROWS(matrix_theta(Matrix(2, 2)));

  Rng rng(48);
  const auto u = random_unit_vector(5, rng), v = random_unit_vector(7, rng);
  Matrix r1(5, 7);
  for (std::size_t j = 0; j < 7; ++j)
    for (std::size_t i = 0; i < 5; ++i) r1(i, j) = u[i] * v[j];
  CHECK(frobenius(matrix_theta(r1) - r1) < 1e-12);
}

TEST_CASE("theta cubes singular values of random matrices") {
  Rng rng(49);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix a = oracle::random_matrix(6, 4, rng);
    const auto sv = oracle::singular_values(a);
    const auto st = oracle::singular_values(matrix_theta(a));
    double norm = 0.0;
    for (double s : sv) norm += std::pow(s, 6);
    for (std::size_t i = 0; i < sv.size(); ++i)
      CHECK(std::abs(st[i] - std::pow(sv[i], 3) / std::sqrt(norm)) < 1e-12);
  }
}
