#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "brauer/tensor3.hpp"

namespace brauer {

/// Thrown when a computation would exceed its configured size budget.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A perfect matching on vertices 0..d-1 (a single-colored Brauer diagram),
/// stored as the partner of every vertex.
class Matching {
 public:
  Matching() = default;
  /// Validates that `partner` is a fixed-point-free involution.
  explicit Matching(std::vector<int> partner);
  /// Builds from 1-based vertex pairs, e.g. {{1, 3}, {2, 6}, {4, 5}}.
  static Matching from_pairs(int d, const std::vector<std::pair<int, int>>& pairs);

  int size() const { return static_cast<int>(partner_.size()); }
  int partner(int v) const { return partner_[v]; }
  const std::vector<int>& partners() const { return partner_; }
  /// 0-based pairs (u, v) with u < v, ordered by u.
  std::vector<std::pair<int, int>> pairs() const;
  /// Image under the vertex map v -> perm[v].
  Matching relabeled(const std::vector<int>& perm) const;

  auto operator<=>(const Matching&) const = default;

 private:
  std::vector<int> partner_;
};

/// Overlay of three perfect matchings on the same vertex set; red, green and
/// blue contract the first, second and third tensor modes respectively.
struct ColoredBrauerDiagram {
  Matching red;
  Matching green;
  Matching blue;

  ColoredBrauerDiagram() = default;
  ColoredBrauerDiagram(Matching r, Matching g, Matching b);

  int size() const { return red.size(); }
  /// color in {1,2,3}.
  const Matching& color(int c) const;
  ColoredBrauerDiagram relabeled(const std::vector<int>& perm) const;

  auto operator<=>(const ColoredBrauerDiagram&) const = default;
};

struct LinearDiagramCombination {
  std::vector<std::pair<double, ColoredBrauerDiagram>> terms;
};

/// All (d-1)!! perfect matchings on d vertices, d even and at most 12.
std::vector<Matching> enumerate_matchings(int d);
/// Number of cycles (2-cycles included) in the union of two matchings.
int overlay_cycle_count(const Matching& a, const Matching& b);
/// Inner product of the two diagram tensors in (R^n)^{(x)d}: n^cycles.
double single_color_diagram_dot(const Matching& a, const Matching& b, int n);
/// p^{cycles(red)} q^{cycles(green)} r^{cycles(blue)}.
double colored_diagram_dot(const ColoredBrauerDiagram& a, const ColoredBrauerDiagram& b,
                           Dims dims);
bool is_connected(const ColoredBrauerDiagram& d);

/// Lexicographically smallest relabeling over all d! vertex permutations.
/// Colors are held fixed. Refuses d > 8.
ColoredBrauerDiagram canonical_form(const ColoredBrauerDiagram& d);
bool are_isomorphic(const ColoredBrauerDiagram& a, const ColoredBrauerDiagram& b);

/// Isomorphism classes (vertex relabeling, colors fixed) of connected colored
/// Brauer diagrams on d vertices. Supports d in {2, 4, 6, 8}.
std::size_t count_connected_classes(int d);

struct ContractionOptions {
  /// Largest intermediate tensor (in entries) the planner may create.
  std::size_t max_intermediate = 100'000'000;
};

/// P_D(T): one copy of T per vertex, contracted along the colored edges.
/// Pairwise contractions are ordered greedily by smallest result.
double evaluate(const ColoredBrauerDiagram& d, const Tensor3& t,
                const ContractionOptions& options = {});
double evaluate(const LinearDiagramCombination& d, const Tensor3& t,
                const ContractionOptions& options = {});

/// Explicit diagram tensor in (R^n)^{(x)d}, vertex 0 index fastest: entry is 1
/// when every pair of matched slots carries equal indices, else 0.
std::vector<double> build_diagram_tensor(const Matching& m, int n,
                                         std::size_t max_entries = std::size_t{1} << 24);

// Named diagrams used by the degree-4 invariants.
namespace named {
ColoredBrauerDiagram plankton();
/// Two disjoint planktons; evaluates to |T|^4.
ColoredBrauerDiagram double_plankton();
/// Frame for mode k: color k pairs (1 3)(2 4), the other two pair (1 2)(3 4).
ColoredBrauerDiagram frame(int mode);
/// Red (1 2)(3 4), green (1 4)(2 3), blue (1 3)(2 4).
ColoredBrauerDiagram tetrahedron();
/// (3 D_pp + 6 (F1 + F2 + F3) + 6 Tet) / 27.
LinearDiagramCombination sigma4_fourth_power();
/// (F1 + F2 + F3 + 2 Tet) / 5.
LinearDiagramCombination sharp_fourth_power();
}  // namespace named

/// Text form, one line per color with 1-based vertices:
///   red: (1 2)(3 4)
///   green: (1 4)(2 3)
///   blue: (1 3)(2 4)
std::string format_diagram(const ColoredBrauerDiagram& d);
ColoredBrauerDiagram parse_diagram(const std::string& text);
/// Blocks separated by blank lines; each block is an optional "weight: x" line
/// followed by the three color lines. A missing weight means 1.
LinearDiagramCombination parse_combination(std::istream& in);

}  // namespace brauer
