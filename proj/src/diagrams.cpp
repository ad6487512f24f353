#include "brauer/diagrams.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <sstream>

#include "contraction.hpp"

namespace brauer {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

void require_same_size(int a, int b) {
  if (a != b) throw std::invalid_argument("diagram sizes differ");
}

void enumerate_into(std::vector<int>& partner, std::vector<Matching>& out) {
  const auto first = std::find(partner.begin(), partner.end(), -1);
  if (first == partner.end()) {
    out.emplace_back(partner);
    return;
  }
  const int u = static_cast<int>(first - partner.begin());
  for (int v = u + 1; v < static_cast<int>(partner.size()); ++v) {
    if (partner[v] != -1) continue;
    partner[u] = v;
    partner[v] = u;
    enumerate_into(partner, out);
    partner[u] = -1;
    partner[v] = -1;
  }
}

double int_pow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

Matching::Matching(std::vector<int> partner) : partner_(std::move(partner)) {
  const int d = size();
  if (d % 2 != 0) throw std::invalid_argument("Matching: vertex count must be even");
  for (int v = 0; v < d; ++v) {
    const int w = partner_[v];
    if (w < 0 || w >= d || w == v || partner_[w] != v)
      throw std::invalid_argument("Matching: partner array is not a perfect matching");
  }
}

Matching Matching::from_pairs(int d, const std::vector<std::pair<int, int>>& pairs) {
  if (d < 0 || d % 2 != 0 || static_cast<int>(pairs.size()) * 2 != d)
    throw std::invalid_argument("Matching: need d/2 pairs for even d");
  std::vector<int> partner(d, -1);
  for (auto [u, v] : pairs) {
    if (u < 1 || v < 1 || u > d || v > d || u == v || partner[u - 1] != -1 ||
        partner[v - 1] != -1)
      throw std::invalid_argument("Matching: invalid or repeated vertex in pairs");
    partner[u - 1] = v - 1;
    partner[v - 1] = u - 1;
  }
  return Matching(std::move(partner));
}

std::vector<std::pair<int, int>> Matching::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int v = 0; v < size(); ++v)
    if (v < partner_[v]) out.emplace_back(v, partner_[v]);
  return out;
}

Matching Matching::relabeled(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != size())
    throw std::invalid_argument("Matching::relabeled: permutation size mismatch");
  std::vector<int> out(partner_.size());
  for (int v = 0; v < size(); ++v) out[perm[v]] = perm[partner_[v]];
  return Matching(std::move(out));
}

ColoredBrauerDiagram::ColoredBrauerDiagram(Matching r, Matching g, Matching b)
    : red(std::move(r)), green(std::move(g)), blue(std::move(b)) {
  if (red.size() != green.size() || red.size() != blue.size())
    throw std::invalid_argument("ColoredBrauerDiagram: color matchings differ in size");
}

const Matching& ColoredBrauerDiagram::color(int c) const {
  switch (c) {
    case 1: return red;
    case 2: return green;
    case 3: return blue;
    default: throw std::invalid_argument("color must be 1, 2 or 3");
  }
}

ColoredBrauerDiagram ColoredBrauerDiagram::relabeled(const std::vector<int>& perm) const {
  return {red.relabeled(perm), green.relabeled(perm), blue.relabeled(perm)};
}

std::vector<Matching> enumerate_matchings(int d) {
  if (d < 0 || d % 2 != 0) throw std::invalid_argument("enumerate_matchings: d must be even");
  if (d > 12) throw ResourceLimitError("enumerate_matchings: d > 12 is not supported");
  std::vector<Matching> out;
  std::vector<int> partner(d, -1);
  enumerate_into(partner, out);
  return out;
}

int overlay_cycle_count(const Matching& a, const Matching& b) {
  require_same_size(a.size(), b.size());
  std::vector<char> seen(a.size(), 0);
  int cycles = 0;
  for (int start = 0; start < a.size(); ++start) {
    if (seen[start]) continue;
    ++cycles;
    int v = start;
    do {
      seen[v] = 1;
      const int w = a.partner(v);
      seen[w] = 1;
      v = b.partner(w);
    } while (v != start);
  }
  return cycles;
}

double single_color_diagram_dot(const Matching& a, const Matching& b, int n) {
  if (n < 1) throw std::invalid_argument("single_color_diagram_dot: n must be positive");
  return int_pow(n, overlay_cycle_count(a, b));
}

double colored_diagram_dot(const ColoredBrauerDiagram& a, const ColoredBrauerDiagram& b,
                           Dims dims) {
  require_same_size(a.size(), b.size());
  return int_pow(static_cast<double>(dims.p), overlay_cycle_count(a.red, b.red)) *
         int_pow(static_cast<double>(dims.q), overlay_cycle_count(a.green, b.green)) *
         int_pow(static_cast<double>(dims.r), overlay_cycle_count(a.blue, b.blue));
}

bool is_connected(const ColoredBrauerDiagram& d) {
  if (d.size() == 0) return true;
  DisjointSets sets(d.size());
  for (int c = 1; c <= 3; ++c)
    for (auto [u, v] : d.color(c).pairs()) sets.unite(u, v);
  for (int v = 1; v < d.size(); ++v)
    if (sets.find(v) != sets.find(0)) return false;
  return true;
}

ColoredBrauerDiagram canonical_form(const ColoredBrauerDiagram& d) {
  if (d.size() > 8) throw ResourceLimitError("canonical_form: brute force limited to d <= 8");
  std::vector<int> perm(d.size());
  std::iota(perm.begin(), perm.end(), 0);
  ColoredBrauerDiagram best = d;
  do {
    auto candidate = d.relabeled(perm);
    if (candidate < best) best = std::move(candidate);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool are_isomorphic(const ColoredBrauerDiagram& a, const ColoredBrauerDiagram& b) {
  return a.size() == b.size() && canonical_form(a) == canonical_form(b);
}

std::size_t count_connected_classes(int d) {
  if (d < 2 || d % 2 != 0) throw std::invalid_argument("count_connected_classes: d must be even and >= 2");
  if (d > 8) throw ResourceLimitError("count_connected_classes: d > 8 is not supported");
  // Orbits of S_d on labeled diagrams, found as connected components of the
  // action graph of the adjacent transpositions.
  const auto matchings = enumerate_matchings(d);
  const std::size_t m = matchings.size();
  std::map<Matching, std::size_t> index;
  for (std::size_t i = 0; i < m; ++i) index.emplace(matchings[i], i);

  std::vector<std::vector<std::size_t>> image(d - 1, std::vector<std::size_t>(m));
  for (int g = 0; g + 1 < d; ++g) {
    std::vector<int> swap(d);
    std::iota(swap.begin(), swap.end(), 0);
    std::swap(swap[g], swap[g + 1]);
    for (std::size_t i = 0; i < m; ++i) image[g][i] = index.at(matchings[i].relabeled(swap));
  }

  DisjointSets orbits(m * m * m);
  for (std::size_t ri = 0; ri < m; ++ri)
    for (std::size_t gi = 0; gi < m; ++gi)
      for (std::size_t bi = 0; bi < m; ++bi) {
        const std::size_t id = (ri * m + gi) * m + bi;
        for (int g = 0; g + 1 < d; ++g)
          orbits.unite(id, (image[g][ri] * m + image[g][gi]) * m + image[g][bi]);
      }

  std::size_t classes = 0;
  for (std::size_t ri = 0; ri < m; ++ri)
    for (std::size_t gi = 0; gi < m; ++gi)
      for (std::size_t bi = 0; bi < m; ++bi) {
        const std::size_t id = (ri * m + gi) * m + bi;
        if (orbits.find(id) != id) continue;
        if (is_connected({matchings[ri], matchings[gi], matchings[bi]})) ++classes;
      }
  return classes;
}

double evaluate(const ColoredBrauerDiagram& d, const Tensor3& t,
                const ContractionOptions& options) {
  const int n = d.size();
  if (n == 0) return 1.0;
  const Dims dims = t.dims();
  std::vector<detail::LabeledTensor> nodes;
  nodes.reserve(n);
  const auto raw = t.data();
  for (int v = 0; v < n; ++v) {
    detail::LabeledTensor node;
    for (int c = 1; c <= 3; ++c) {
      const int w = d.color(c).partner(v);
      node.legs.push_back((c - 1) * n + std::min(v, w));
    }
    node.extents = {dims.p, dims.q, dims.r};
    node.data.assign(raw.begin(), raw.end());
    node.first_vertex = v;
    nodes.push_back(std::move(node));
  }
  return detail::contract_network(std::move(nodes), options.max_intermediate);
}

double evaluate(const LinearDiagramCombination& d, const Tensor3& t,
                const ContractionOptions& options) {
  double total = 0.0;
  for (const auto& [coef, diagram] : d.terms) total += coef * evaluate(diagram, t, options);
  return total;
}

std::vector<double> build_diagram_tensor(const Matching& m, int n, std::size_t max_entries) {
  if (n < 1) throw std::invalid_argument("build_diagram_tensor: n must be positive");
  const int d = m.size();
  double entries = std::pow(static_cast<double>(n), d);
  if (entries > static_cast<double>(max_entries))
    throw ResourceLimitError("build_diagram_tensor: n^d exceeds the size budget");
  const auto total = static_cast<std::size_t>(entries);
  std::vector<double> out(total, 0.0);
  std::vector<int> idx(d, 0);
  const auto pairs = m.pairs();
  for (std::size_t pos = 0; pos < total; ++pos) {
    bool match = true;
    for (auto [u, v] : pairs)
      if (idx[u] != idx[v]) {
        match = false;
        break;
      }
    out[pos] = match ? 1.0 : 0.0;
    for (int a = 0; a < d; ++a) {
      if (++idx[a] < n) break;
      idx[a] = 0;
    }
  }
  return out;
}

namespace named {

namespace {
Matching pairs4(std::pair<int, int> x, std::pair<int, int> y) {
  return Matching::from_pairs(4, {x, y});
}
}  // namespace

ColoredBrauerDiagram plankton() {
  const auto m = Matching::from_pairs(2, {{1, 2}});
  return {m, m, m};
}

ColoredBrauerDiagram double_plankton() {
  const auto m = pairs4({1, 2}, {3, 4});
  return {m, m, m};
}

ColoredBrauerDiagram frame(int mode) {
  const auto across = pairs4({1, 3}, {2, 4});
  const auto along = pairs4({1, 2}, {3, 4});
  switch (mode) {
    case 1: return {across, along, along};
    case 2: return {along, across, along};
    case 3: return {along, along, across};
    default: throw std::invalid_argument("frame: mode must be 1, 2 or 3");
  }
}

ColoredBrauerDiagram tetrahedron() {
  return {pairs4({1, 2}, {3, 4}), pairs4({1, 4}, {2, 3}), pairs4({1, 3}, {2, 4})};
}

LinearDiagramCombination sigma4_fourth_power() {
  return {{{3.0 / 27.0, double_plankton()},
           {6.0 / 27.0, frame(1)},
           {6.0 / 27.0, frame(2)},
           {6.0 / 27.0, frame(3)},
           {6.0 / 27.0, tetrahedron()}}};
}

LinearDiagramCombination sharp_fourth_power() {
  return {{{1.0 / 5.0, frame(1)},
           {1.0 / 5.0, frame(2)},
           {1.0 / 5.0, frame(3)},
           {2.0 / 5.0, tetrahedron()}}};
}

}  // namespace named

std::string format_diagram(const ColoredBrauerDiagram& d) {
  static constexpr const char* names[] = {"red", "green", "blue"};
  std::ostringstream out;
  for (int c = 1; c <= 3; ++c) {
    out << names[c - 1] << ':';
    bool first = true;
    for (auto [u, v] : d.color(c).pairs()) {
      out << (first ? " " : "") << '(' << u + 1 << ' ' << v + 1 << ')';
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

namespace {

Matching parse_pairs(const std::string& body) {
  std::vector<std::pair<int, int>> pairs;
  std::size_t pos = 0;
  while ((pos = body.find('(', pos)) != std::string::npos) {
    const auto close = body.find(')', pos);
    if (close == std::string::npos) throw std::invalid_argument("diagram text: unbalanced '('");
    std::istringstream pair_in(body.substr(pos + 1, close - pos - 1));
    int u = 0, v = 0;
    std::string rest;
    if (!(pair_in >> u >> v) || (pair_in >> rest))
      throw std::invalid_argument("diagram text: each pair must hold two vertices");
    pairs.emplace_back(u, v);
    pos = close + 1;
  }
  return Matching::from_pairs(static_cast<int>(pairs.size() * 2), pairs);
}

}  // namespace

ColoredBrauerDiagram parse_diagram(const std::string& text) {
  std::map<std::string, Matching> colors;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw std::invalid_argument("diagram text: expected \"color: (u v)...\"");
    }
    std::string name = line.substr(0, colon);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    if (name != "red" && name != "green" && name != "blue")
      throw std::invalid_argument("diagram text: unknown color '" + name + "'");
    if (colors.count(name)) throw std::invalid_argument("diagram text: color repeated");
    colors.emplace(name, parse_pairs(line.substr(colon + 1)));
  }
  if (colors.size() != 3) throw std::invalid_argument("diagram text: need red, green and blue lines");
  return {colors.at("red"), colors.at("green"), colors.at("blue")};
}

LinearDiagramCombination parse_combination(std::istream& in) {
  LinearDiagramCombination out;
  std::string line, block;
  double weight = 1.0;
  auto flush = [&] {
    if (block.find_first_not_of(" \t\r\n") == std::string::npos) return;
    out.terms.emplace_back(weight, parse_diagram(block));
    block.clear();
    weight = 1.0;
  };
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
      flush();
      continue;
    }
    if (line.compare(first, 7, "weight:") == 0) {
      flush();
      weight = std::stod(line.substr(first + 7));
      continue;
    }
    block += line + '\n';
  }
  flush();
  if (out.terms.empty()) throw std::invalid_argument("diagram file holds no diagrams");
  for (const auto& [w, diagram] : out.terms)
    require_same_size(diagram.size(), out.terms.front().second.size());
  return out;
}

}  // namespace brauer
