#include "contraction.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "brauer/diagrams.hpp"

namespace brauer::detail {

namespace {

bool has_leg(const LabeledTensor& t, int leg) {
  return std::find(t.legs.begin(), t.legs.end(), leg) != t.legs.end();
}

bool shares_leg(const LabeledTensor& a, const LabeledTensor& b) {
  return std::any_of(a.legs.begin(), a.legs.end(), [&](int l) { return has_leg(b, l); });
}

// Returns t with its axes reordered to `order` (positions into t.legs).
LabeledTensor permute(const LabeledTensor& t, const std::vector<std::size_t>& order) {
  const std::size_t rank = order.size();
  LabeledTensor out;
  out.first_vertex = t.first_vertex;
  out.legs.resize(rank);
  out.extents.resize(rank);
  for (std::size_t a = 0; a < rank; ++a) {
    out.legs[a] = t.legs[order[a]];
    out.extents[a] = t.extents[order[a]];
  }
  out.data.resize(t.data.size());
  if (rank == 0) {
    out.data = t.data;
    return out;
  }
  std::vector<std::size_t> in_stride(rank);
  std::size_t s = 1;
  for (std::size_t a = 0; a < rank; ++a) {
    in_stride[a] = s;
    s *= t.extents[a];
  }
  // Stride in the input of each output axis.
  std::vector<std::size_t> stride(rank);
  for (std::size_t a = 0; a < rank; ++a) stride[a] = in_stride[order[a]];
  std::vector<std::size_t> idx(rank, 0);
  std::size_t src = 0;
  for (std::size_t dst = 0; dst < out.data.size(); ++dst) {
    out.data[dst] = t.data[src];
    for (std::size_t a = 0; a < rank; ++a) {
      if (++idx[a] < out.extents[a]) {
        src += stride[a];
        break;
      }
      src -= stride[a] * (out.extents[a] - 1);
      idx[a] = 0;
    }
  }
  return out;
}

}  // namespace

std::size_t result_size(const LabeledTensor& a, const LabeledTensor& b) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < a.legs.size(); ++i)
    if (!has_leg(b, a.legs[i])) n *= a.extents[i];
  for (std::size_t i = 0; i < b.legs.size(); ++i)
    if (!has_leg(a, b.legs[i])) n *= b.extents[i];
  return n;
}

LabeledTensor contract(const LabeledTensor& a, const LabeledTensor& b) {
  std::vector<std::size_t> a_free, a_shared, b_free, b_shared;
  for (std::size_t i = 0; i < a.legs.size(); ++i) {
    if (has_leg(b, a.legs[i])) {
      a_shared.push_back(i);
      const auto pos = std::find(b.legs.begin(), b.legs.end(), a.legs[i]) - b.legs.begin();
      b_shared.push_back(static_cast<std::size_t>(pos));
    } else {
      a_free.push_back(i);
    }
  }
  for (std::size_t i = 0; i < b.legs.size(); ++i)
    if (!has_leg(a, b.legs[i])) b_free.push_back(i);

  std::vector<std::size_t> a_order = a_free;
  a_order.insert(a_order.end(), a_shared.begin(), a_shared.end());
  std::vector<std::size_t> b_order = b_shared;
  b_order.insert(b_order.end(), b_free.begin(), b_free.end());
  const LabeledTensor ap = permute(a, a_order);
  const LabeledTensor bp = permute(b, b_order);

  std::size_t m = 1, k = 1, n = 1;
  for (auto i : a_free) m *= a.extents[i];
  for (auto i : a_shared) k *= a.extents[i];
  for (auto i : b_free) n *= b.extents[i];

  LabeledTensor out;
  out.first_vertex = std::min(a.first_vertex, b.first_vertex);
  for (auto i : a_free) {
    out.legs.push_back(a.legs[i]);
    out.extents.push_back(a.extents[i]);
  }
  for (auto i : b_free) {
    out.legs.push_back(b.legs[i]);
    out.extents.push_back(b.extents[i]);
  }
  out.data.assign(m * n, 0.0);
  // Column-major (m x k) * (k x n).
  for (std::size_t j = 0; j < n; ++j) {
    double* cj = out.data.data() + m * j;
    for (std::size_t l = 0; l < k; ++l) {
      const double blj = bp.data[l + k * j];
      if (blj == 0.0) continue;
      const double* al = ap.data.data() + m * l;
      for (std::size_t i = 0; i < m; ++i) cj[i] += al[i] * blj;
    }
  }
  return out;
}

double contract_network(std::vector<LabeledTensor> nodes, std::size_t max_intermediate) {
  for (const auto& node : nodes)
    if (node.data.size() > max_intermediate)
      throw ResourceLimitError("contraction input exceeds the intermediate budget");
  std::sort(nodes.begin(), nodes.end(),
            [](const auto& x, const auto& y) { return x.first_vertex < y.first_vertex; });
  double scalar = 1.0;
  while (true) {
    // Fully contracted components become scalars.
    for (auto it = nodes.begin(); it != nodes.end();) {
      if (it->legs.empty()) {
        scalar *= it->data.at(0);
        it = nodes.erase(it);
      } else {
        ++it;
      }
    }
    if (nodes.empty()) return scalar;
    std::size_t best_i = 0, best_j = 0;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    bool found = false;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      for (std::size_t j = i + 1; j < nodes.size(); ++j) {
        if (!shares_leg(nodes[i], nodes[j])) continue;
        const std::size_t s = result_size(nodes[i], nodes[j]);
        if (!found || s < best) {
          best = s;
          best_i = i;
          best_j = j;
          found = true;
        }
      }
    if (!found) throw std::logic_error("contract_network: dangling legs in a closed network");
    if (best > max_intermediate)
      throw ResourceLimitError("contraction needs an intermediate of " + std::to_string(best) +
                               " entries, over the budget of " +
                               std::to_string(max_intermediate));
    LabeledTensor merged = contract(nodes[best_i], nodes[best_j]);
    nodes.erase(nodes.begin() + static_cast<std::ptrdiff_t>(best_j));
    nodes[best_i] = std::move(merged);
    std::stable_sort(nodes.begin(), nodes.end(), [](const auto& x, const auto& y) {
      return x.first_vertex < y.first_vertex;
    });
  }
}

}  // namespace brauer::detail
