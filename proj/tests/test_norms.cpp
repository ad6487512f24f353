#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>

#include "brauer/diagrams.hpp"
#include "brauer/norms.hpp"
#include "oracles.hpp"

using namespace brauer;

TEST_CASE("unit rank-one tensors") {
  Rng rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const auto t = random_unit_rank1({4, 5, 6}, rng).to_tensor();
    const auto inv = invariants(t);
    CHECK(inv.frob4 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(inv.frame1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(inv.frame2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(inv.frame3 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(inv.tetra == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(sigma4(t) - 1.0) <= 1e-12);
    CHECK(std::abs(sharp(t) - 1.0) <= 1e-12);
  }
  CHECK(sigma4(Tensor3(2, 3, 4)) == 0.0);
  CHECK(sharp(Tensor3(2, 3, 4)) == 0.0);
}

TEST_CASE("frames and tetrahedron against loop oracles") {
  Rng rng(32);
  for (Dims dims : {Dims{3, 4, 5}, Dims{5, 4, 3}, Dims{4, 6, 2}, Dims{1, 3, 2}}) {
    const auto t = oracle::random_tensor(dims, rng);
    for (int k = 1; k <= 3; ++k) CHECK(oracle::rel_err(frame(t, k), oracle::frame(t, k)) < 1e-12);
    CHECK(oracle::rel_err(tetrahedron(t), oracle::tetra(t)) < 1e-12);
    const auto inv = invariants(t);
    const double n2 = oracle::inner(t, t);
    CHECK(oracle::rel_err(inv.frob4, n2 * n2) < 1e-13);
    CHECK(inv.tetra == tetrahedron(t));
  }
}

TEST_CASE("invariants on the distinguishing pair") {
  for (std::size_t n : {2u, 3u}) {
    const double inv_n2 = 1.0 / static_cast<double>(n * n);
    const auto i1 = invariants(oracle::diagonal_example(n));
    const auto i2 = invariants(oracle::cyclic_example(n));
    CHECK(std::abs(i1.frob4 - 1.0) < 1e-12);
    CHECK(std::abs(i2.frob4 - 1.0) < 1e-12);
    for (const auto& inv : {i1, i2}) {
      CHECK(std::abs(inv.frame1 - inv_n2) < 1e-12);
      CHECK(std::abs(inv.frame2 - inv_n2) < 1e-12);
      CHECK(std::abs(inv.frame3 - inv_n2) < 1e-12);
    }
    CHECK(std::abs(i1.tetra - inv_n2) < 1e-12);
    CHECK(std::abs(i2.tetra - inv_n2 / static_cast<double>(n)) < 1e-12);
    CHECK(i2.tetra == doctest::Approx(oracle::tetra(oracle::cyclic_example(n))).epsilon(1e-12));
  }
}

TEST_CASE("reported tetrahedron value on the cyclic tensor") {
  for (std::size_t n : {2u, 3u}) CHECK(std::abs(tetrahedron(oracle::cyclic_example(n)) - 1.0) < 1e-12);
}

TEST_CASE("invariant bounds on random tensors") {
  Rng rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = oracle::random_tensor({3, 4, 5}, rng);
    const auto inv = invariants(t);
    CHECK(inv.frame1 >= 0.0);
    CHECK(inv.frame1 <= inv.frob4 * (1 + 1e-12));
    CHECK(inv.frame2 <= inv.frob4 * (1 + 1e-12));
    CHECK(inv.frame3 <= inv.frob4 * (1 + 1e-12));
    CHECK(inv.tetra >= 0.0);
    CHECK(inv.tetra <= inv.frob4 * (1 + 1e-12));
    // tetra = sum_ab tr((A_a A_b^T)^2) <= sum_ab |A_a A_b^T|^2, and the latter is frame3.
    CHECK(inv.tetra <= inv.frame3 * (1 + 1e-12));
    CHECK(inv.tetra <= std::min({inv.frame1, inv.frame2, inv.frame3}) * (1 + 1e-12));
  }
}

TEST_CASE("mode permutation permutes the frames") {
  Rng rng(34);
  const auto t = oracle::random_tensor({3, 4, 5}, rng);
  const auto base = invariants(t);
  const std::array<double, 3> f{base.frame1, base.frame2, base.frame3};
  for (std::array<int, 3> perm : {std::array<int, 3>{2, 3, 1}, std::array<int, 3>{3, 2, 1},
                                  std::array<int, 3>{1, 3, 2}}) {
    const auto inv = invariants(permute_modes(t, perm));
    CHECK(oracle::rel_err(inv.frame1, f[perm[0] - 1]) < 1e-12);
    CHECK(oracle::rel_err(inv.frame2, f[perm[1] - 1]) < 1e-12);
    CHECK(oracle::rel_err(inv.frame3, f[perm[2] - 1]) < 1e-12);
    CHECK(oracle::rel_err(inv.frob4, base.frob4) < 1e-12);
    CHECK(oracle::rel_err(inv.tetra, base.tetra) < 1e-12);
  }
}

TEST_CASE("orthogonal invariance") {
  Rng rng(35);
  const auto t = oracle::random_tensor({4, 5, 6}, rng);
  const auto base = invariants(t);
  for (int trial = 0; trial < 5; ++trial) {
    const auto moved = multilinear(t, random_orthogonal(4, rng), random_orthogonal(5, rng),
                                   random_orthogonal(6, rng));
    const auto inv = invariants(moved);
    CHECK(oracle::rel_err(inv.frob4, base.frob4) < 1e-10);
    CHECK(oracle::rel_err(inv.frame1, base.frame1) < 1e-10);
    CHECK(oracle::rel_err(inv.frame2, base.frame2) < 1e-10);
    CHECK(oracle::rel_err(inv.frame3, base.frame3) < 1e-10);
    CHECK(oracle::rel_err(inv.tetra, base.tetra) < 1e-10);
    CHECK(oracle::rel_err(sigma4(moved), sigma4(t)) < 1e-10);
    CHECK(oracle::rel_err(sharp(moved), sharp(t)) < 1e-10);
  }
}

TEST_CASE("norm axioms on samples") {
  Rng rng(36);
  const auto t = oracle::random_tensor({3, 4, 5}, rng);
  for (double c : {-3.0, 0.5, 2.0, -0.125}) {
    CHECK(std::abs(sharp(c * t) - std::abs(c) * sharp(t)) <= 1e-12 * std::abs(c) * sharp(t));
    CHECK(std::abs(sigma4(c * t) - std::abs(c) * sigma4(t)) <= 1e-12 * std::abs(c) * sigma4(t));
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const auto x = oracle::random_tensor({2, 3, 3}, rng);
    auto y = oracle::random_tensor({2, 3, 3}, rng);
    if (trial % 3 == 0) y = random_unit_rank1({2, 3, 3}, rng).to_tensor();
    const auto s = x + y;
    CHECK(sharp(s) <= (sharp(x) + sharp(y)) * (1 + 1e-12));
    CHECK(sigma4(s) <= (sigma4(x) + sigma4(y)) * (1 + 1e-12));
  }
}

TEST_CASE("spectral sandwich") {
  Rng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = oracle::random_tensor({3, 4, 5}, rng);
    const double lb = spectral_lower_bound(t, 5, rng);
    CHECK(lb > 0.0);
    CHECK(lb <= sharp(t) * (1 + 1e-12));
    CHECK(lb <= sigma4(t) * (1 + 1e-12));
    CHECK(sharp(t) <= frobenius(t) * (1 + 1e-12));
    CHECK(sigma4(t) <= frobenius(t) * (1 + 1e-12));
  }
}

TEST_CASE("spectral lower bound on simple cases") {
  Rng rng(38);
  const auto r1 = random_unit_rank1({4, 5, 6}, rng).to_tensor();
  CHECK(std::abs(spectral_lower_bound(r1, 3, rng) - 1.0) <= 1e-8);

  Tensor3 diag(2, 2, 2);
  diag(0, 0, 0) = 1.0;
  diag(1, 1, 1) = 0.5;
  const double grid = oracle::spectral_grid_2x2x2(diag);
  CHECK(grid == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(spectral_lower_bound(diag, 10, rng) - grid) <= 1e-8);
}

TEST_CASE("expectation closed forms") {
  CHECK(expected_sigma4_pow4(1, 1, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(expected_sharp_pow4(1, 1, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(expected_sigma4_pow4(2, 2, 2) == doctest::Approx(64.0 / 90.0).epsilon(1e-15));
  CHECK(expected_sharp_pow4(2, 2, 2) == doctest::Approx(33.0 / 50.0).epsilon(1e-15));
  CHECK(expected_sharp_pow4(2, 2, 2) < expected_sigma4_pow4(2, 2, 2));
  CHECK_THROWS(expected_sharp_pow4(0, 2, 2));

  // The uniform-sphere fourth moment of T is a combination of the three
  // triple-edge pairings; pairing each norm combination against it with
  // diagram dots must reproduce the closed forms.
  const ColoredBrauerDiagram pairings[3] = {
      {Matching::from_pairs(4, {{1, 2}, {3, 4}}), Matching::from_pairs(4, {{1, 2}, {3, 4}}),
       Matching::from_pairs(4, {{1, 2}, {3, 4}})},
      {Matching::from_pairs(4, {{1, 3}, {2, 4}}), Matching::from_pairs(4, {{1, 3}, {2, 4}}),
       Matching::from_pairs(4, {{1, 3}, {2, 4}})},
      {Matching::from_pairs(4, {{1, 4}, {2, 3}}), Matching::from_pairs(4, {{1, 4}, {2, 3}}),
       Matching::from_pairs(4, {{1, 4}, {2, 3}})}};
  auto expectation = [&](const LinearDiagramCombination& combo, Dims dims) {
    const double n = static_cast<double>(dims.size());
    double s = 0.0;
    for (const auto& [w, dg] : combo.terms)
      for (const auto& pr : pairings) s += w * colored_diagram_dot(dg, pr, dims);
    return s / (n * (n + 2.0));
  };
  for (Dims dims : {Dims{2, 2, 2}, Dims{3, 4, 5}, Dims{5, 5, 5}, Dims{1, 7, 2}}) {
    CHECK(oracle::rel_err(expectation(named::sigma4_fourth_power(), dims),
                          expected_sigma4_pow4(dims.p, dims.q, dims.r)) < 1e-14);
    CHECK(oracle::rel_err(expectation(named::sharp_fourth_power(), dims),
                          expected_sharp_pow4(dims.p, dims.q, dims.r)) < 1e-14);
  }
}

TEST_CASE("sphere moments at small scale") {
  // Full-scale checks live in the acceptance suite.
  for (Dims dims : {Dims{3, 4, 5}, Dims{5, 5, 5}}) {
    const auto m = sample_sphere_moments(dims, 20000, 7);
    CHECK(m.samples == 20000);
    CHECK(std::abs(m.sigma4_mean - expected_sigma4_pow4(dims.p, dims.q, dims.r)) <= 4 * m.sigma4_stderr);
    CHECK(std::abs(m.sharp_mean - expected_sharp_pow4(dims.p, dims.q, dims.r)) <= 4 * m.sharp_stderr);
    CHECK(m.sharp_mean < m.sigma4_mean);
    const auto again = sample_sphere_moments(dims, 20000, 7);
    CHECK(again.sigma4_mean == m.sigma4_mean);
  }
}

TEST_CASE("resource guard on large tetrahedra") {
  // Smallest two extents 200 x 200 give a 1.6e9-entry Gram.
  const Tensor3 big(200, 200, 200);
  CHECK_THROWS_AS(tetrahedron(big), ResourceLimitError);
}
