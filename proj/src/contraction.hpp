#pragma once

#include <cstddef>
#include <vector>

namespace brauer::detail {

/// Dense tensor whose axes are labeled by edge ids; the first axis varies
/// fastest. Axes shared by two nodes are summed when the nodes are contracted.
struct LabeledTensor {
  std::vector<int> legs;
  std::vector<std::size_t> extents;
  std::vector<double> data;
  /// Smallest diagram vertex merged into this node; orders greedy ties.
  int first_vertex = 0;
};

std::size_t result_size(const LabeledTensor& a, const LabeledTensor& b);

/// Sums over every leg label present in both a and b. Result legs are a's
/// free legs followed by b's free legs.
LabeledTensor contract(const LabeledTensor& a, const LabeledTensor& b);

/// Contracts a whole network to a scalar, greedily choosing at each step the
/// connected pair with the smallest result (ties: lowest vertex ids first).
double contract_network(std::vector<LabeledTensor> nodes, std::size_t max_intermediate);

}  // namespace brauer::detail
