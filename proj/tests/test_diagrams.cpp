#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>
#include <sstream>

#include "brauer/diagrams.hpp"
#include "brauer/norms.hpp"
#include "oracles.hpp"

using namespace brauer;

namespace {

double double_factorial(int n) {
  double r = 1.0;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

std::vector<int> random_permutation(int d, Rng& rng) {
  std::vector<int> p(d);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

ColoredBrauerDiagram random_diagram(int d, Rng& rng) {
  const auto all = enumerate_matchings(d);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  return {all[pick(rng)], all[pick(rng)], all[pick(rng)]};
}

const Matching example_a = Matching::from_pairs(6, {{1, 3}, {2, 6}, {4, 5}});
const Matching example_b = Matching::from_pairs(6, {{1, 2}, {3, 6}, {4, 5}});

}  // namespace

TEST_CASE("matching validation") {
  CHECK_THROWS(Matching({1, 0, 2}));
  CHECK_THROWS(Matching({1, 2, 0}));
  CHECK_THROWS(Matching::from_pairs(4, {{1, 2}, {2, 3}}));
  CHECK(example_a.pairs() == std::vector<std::pair<int, int>>{{0, 2}, {1, 5}, {3, 4}});
  CHECK_THROWS(ColoredBrauerDiagram(example_a, example_b, Matching::from_pairs(2, {{1, 2}})));
}

TEST_CASE("enumerate_matchings counts are (d-1)!!") {
  CHECK(enumerate_matchings(2).size() == 1);
  CHECK(enumerate_matchings(4).size() == 3);
  CHECK(enumerate_matchings(6).size() == 15);
  for (int d = 2; d <= 10; d += 2) {
    const auto all = enumerate_matchings(d);
    CHECK(static_cast<double>(all.size()) == double_factorial(d - 1));
    CHECK(std::set<Matching>(all.begin(), all.end()).size() == all.size());
  }
  CHECK_THROWS(enumerate_matchings(5));
  CHECK_THROWS(enumerate_matchings(14));
}

TEST_CASE("overlay cycles") {
  CHECK(overlay_cycle_count(example_a, example_a) == 3);
  CHECK(overlay_cycle_count(example_a, example_b) == 2);
  CHECK(single_color_diagram_dot(example_a, example_b, 3) == 9.0);
  // Pairing the outer vertices instead closes a single six-cycle.
  const auto adjacent = Matching::from_pairs(6, {{1, 2}, {3, 4}, {5, 6}});
  CHECK(overlay_cycle_count(example_a, adjacent) == 1);
  CHECK(single_color_diagram_dot(example_a, adjacent, 3) == 3.0);
  const auto m4 = Matching::from_pairs(4, {{1, 2}, {3, 4}});
  CHECK(single_color_diagram_dot(m4, m4, 2) == 4.0);
  CHECK_THROWS(overlay_cycle_count(m4, example_a));

  Rng rng(21);
  const auto all8 = enumerate_matchings(8);
  std::uniform_int_distribution<std::size_t> pick(0, all8.size() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto& x = all8[pick(rng)];
    const auto& y = all8[pick(rng)];
    CHECK(overlay_cycle_count(x, y) == oracle::union_cycles(x.partners(), y.partners()));
  }
}

TEST_CASE("single-colour dots equal explicit diagram tensor products") {
  for (int d = 2; d <= 8; d += 2) {
    const auto all = enumerate_matchings(d);
    for (int n : {2, 3}) {
      std::vector<std::vector<double>> built;
      for (const auto& m : all) {
        built.push_back(oracle::diagram_tensor(m.partners(), n));
        if (d <= 6) CHECK(build_diagram_tensor(m, n) == built.back());
      }
      for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i; j < all.size(); ++j) {
          const double explicit_dot = std::inner_product(built[i].begin(), built[i].end(),
                                                         built[j].begin(), 0.0);
          CHECK(single_color_diagram_dot(all[i], all[j], n) == explicit_dot);
        }
    }
  }
}

TEST_CASE("build_diagram_tensor structure") {
  const auto m2 = Matching::from_pairs(2, {{1, 2}});
  CHECK(build_diagram_tensor(m2, 2) == std::vector<double>{1, 0, 0, 1});
  for (const auto& m : enumerate_matchings(6)) {
    const auto t = build_diagram_tensor(m, 3);
    CHECK(std::count(t.begin(), t.end(), 1.0) == 27);
  }
  CHECK_THROWS_AS(build_diagram_tensor(enumerate_matchings(12).front(), 5), ResourceLimitError);
}

TEST_CASE("sum over all matchings gives n(n+2)...(n+d-2)") {
  for (int d : {4, 6}) {
    const auto all = enumerate_matchings(d);
    for (int n : {2, 3, 4}) {
      double want = 1.0;
      for (int k = 0; k < d / 2; ++k) want *= n + 2 * k;
      for (const auto& fixed : all) {
        double sum = 0.0;
        for (const auto& m : all) sum += single_color_diagram_dot(fixed, m, n);
        CHECK(sum == want);
      }
    }
  }
  // d = 4, n = 3 gives 3 * 5.
  double s = 0.0;
  const auto all4 = enumerate_matchings(4);
  for (const auto& m : all4) s += single_color_diagram_dot(all4.front(), m, 3);
  CHECK(s == 15.0);
}

TEST_CASE("colored diagram dots") {
  const Dims dims{2, 3, 5};
  const auto pl = named::plankton();
  CHECK(colored_diagram_dot(pl, pl, dims) == 30.0);
  // Red frame against the triple-edge pairing (1 2)(3 4): p q^2 r^2.
  CHECK(colored_diagram_dot(named::frame(1), named::double_plankton(), dims) == 2.0 * 9.0 * 25.0);
  // Tetrahedron against the same pairing: p^2 q r.
  CHECK(colored_diagram_dot(named::tetrahedron(), named::double_plankton(), dims) == 4.0 * 3.0 * 5.0);

  // Random pairs at p = q = r = 2 against explicit 2^4-entry diagram tensors.
  Rng rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_diagram(4, rng), b = random_diagram(4, rng);
    double want = 1.0;
    for (int c = 1; c <= 3; ++c) {
      const auto ta = oracle::diagram_tensor(a.color(c).partners(), 2);
      const auto tb = oracle::diagram_tensor(b.color(c).partners(), 2);
      want *= std::inner_product(ta.begin(), ta.end(), tb.begin(), 0.0);
    }
    CHECK(colored_diagram_dot(a, b, {2, 2, 2}) == want);
  }
}

TEST_CASE("connectivity") {
  CHECK(is_connected(named::plankton()));
  CHECK_FALSE(is_connected(named::double_plankton()));
  CHECK(is_connected(named::tetrahedron()));
  for (int k = 1; k <= 3; ++k) CHECK(is_connected(named::frame(k)));
}

TEST_CASE("connected class census") {
  CHECK(count_connected_classes(2) == 1);
  CHECK(count_connected_classes(4) == 4);
  CHECK(count_connected_classes(6) == 11);
  CHECK_THROWS(count_connected_classes(3));
  CHECK_THROWS(count_connected_classes(10));
}

TEST_CASE("census agrees with brute-force canonical forms") {
  for (int d : {2, 4, 6}) {
    const auto all = enumerate_matchings(d);
    std::set<ColoredBrauerDiagram> classes;
    for (const auto& r : all)
      for (const auto& g : all)
        for (const auto& b : all) {
          ColoredBrauerDiagram dg(r, g, b);
          if (is_connected(dg)) classes.insert(canonical_form(dg));
        }
    CHECK(classes.size() == count_connected_classes(d));
  }
}

TEST_CASE("isomorphism and canonical forms") {
  Rng rng(23);
  const auto tet = named::tetrahedron();
  for (int trial = 0; trial < 10; ++trial) {
    const auto relabeled = tet.relabeled(random_permutation(4, rng));
    CHECK(are_isomorphic(tet, relabeled));
    CHECK(canonical_form(relabeled) == canonical_form(tet));
  }
  CHECK_FALSE(are_isomorphic(named::frame(1), named::frame(2)));
  CHECK_FALSE(are_isomorphic(named::frame(1), tet));
}

TEST_CASE("evaluate matches brute-force index sums") {
  Rng rng(24);
  const auto t = oracle::random_tensor({2, 3, 2}, rng);
  CHECK(oracle::rel_err(evaluate(named::plankton(), t), oracle::inner(t, t)) < 1e-13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto dg = random_diagram(trial % 2 ? 4 : 6, rng);
    const double want = oracle::evaluate_brute(dg, t);
    CHECK(std::abs(evaluate(dg, t) - want) <= 1e-12 * std::max(1.0, std::abs(want)));
  }
  const auto t3 = oracle::random_tensor({3, 4, 5}, rng);
  for (int k = 1; k <= 3; ++k)
    CHECK(oracle::rel_err(evaluate(named::frame(k), t3), oracle::frame(t3, k)) < 1e-12);
  CHECK(oracle::rel_err(evaluate(named::tetrahedron(), t3), oracle::tetra(t3)) < 1e-12);
  const double n2 = oracle::inner(t3, t3);
  CHECK(oracle::rel_err(evaluate(named::double_plankton(), t3), n2 * n2) < 1e-12);
}

TEST_CASE("evaluate on the distinguishing pair") {
  for (std::size_t n : {2u, 3u}) {
    const auto t1 = oracle::diagonal_example(n);
    const auto t2 = oracle::cyclic_example(n);
    const double inv_n2 = 1.0 / static_cast<double>(n * n);
    CHECK(evaluate(named::plankton(), t1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(evaluate(named::plankton(), t2) == doctest::Approx(1.0).epsilon(1e-12));
    for (int k = 1; k <= 3; ++k) {
      CHECK(evaluate(named::frame(k), t1) == doctest::Approx(inv_n2).epsilon(1e-12));
      CHECK(evaluate(named::frame(k), t2) == doctest::Approx(inv_n2).epsilon(1e-12));
    }
    CHECK(evaluate(named::tetrahedron(), t1) == doctest::Approx(inv_n2).epsilon(1e-12));
    // Every contraction of the cyclic tensor collapses onto its n^3 support entries.
    CHECK(evaluate(named::tetrahedron(), t2) == doctest::Approx(inv_n2 / n).epsilon(1e-12));
  }
}

TEST_CASE("evaluate is invariant under vertex relabeling") {
  Rng rng(25);
  const auto t = oracle::random_tensor({3, 2, 4}, rng);
  for (int trial = 0; trial < 10; ++trial) {
    const auto dg = random_diagram(6, rng);
    const double base = evaluate(dg, t);
    const double moved = evaluate(dg.relabeled(random_permutation(6, rng)), t);
    CHECK(std::abs(moved - base) <= 1e-12 * std::max(1.0, std::abs(base)));
  }
}

TEST_CASE("evaluate is invariant under orthogonal actions") {
  Rng rng(26);
  const auto t = oracle::random_tensor({3, 4, 5}, rng);
  const auto moved = multilinear(t, random_orthogonal(3, rng), random_orthogonal(4, rng),
                                 random_orthogonal(5, rng));
  for (int trial = 0; trial < 10; ++trial) {
    const auto dg = random_diagram(trial < 5 ? 4 : 6, rng);
    const double base = evaluate(dg, t);
    // Scale by the product of norms, since individual diagram values can be near zero.
    const double scale = std::pow(oracle::inner(t, t), dg.size() / 2.0);
    CHECK(std::abs(evaluate(dg, moved) - base) <= 1e-10 * scale);
  }
}

TEST_CASE("linear combinations and the norm combinations") {
  Rng rng(27);
  const auto t = oracle::random_tensor({3, 4, 5}, rng);
  const auto inv = invariants(t);
  CHECK(oracle::rel_err(evaluate(named::sigma4_fourth_power(), t), inv.sigma4_pow4()) < 1e-12);
  CHECK(oracle::rel_err(evaluate(named::sharp_fourth_power(), t), inv.sharp_pow4()) < 1e-12);
}

TEST_CASE("resource guard") {
  Rng rng(28);
  const auto t = oracle::random_tensor({3, 3, 3}, rng);
  ContractionOptions tiny;
  tiny.max_intermediate = 4;
  CHECK_THROWS_AS(evaluate(named::tetrahedron(), t, tiny), ResourceLimitError);
}

TEST_CASE("diagram text round trip") {
  const auto tet = named::tetrahedron();
  const std::string text = format_diagram(tet);
  CHECK(text.find("red: (1 2)(3 4)") != std::string::npos);
  CHECK(parse_diagram(text) == tet);
  CHECK_THROWS(parse_diagram("red: (1 2)\ngreen: (1 2)(3 4)\nblue: (1 2)"));

  std::istringstream in("weight: 2\n" + format_diagram(named::plankton()) + "\n\n" +
                        format_diagram(named::plankton()));
  const auto combo = parse_combination(in);
  REQUIRE(combo.terms.size() == 2);
  CHECK(combo.terms[0].first == 2.0);
  CHECK(combo.terms[1].first == 1.0);
}
