#include "gram_kernels.hpp"

#include <string>

#include "brauer/diagrams.hpp"

namespace brauer::detail {

TetraPlan plan_tetra(const Tensor3& t, std::size_t budget) {
  const Dims d = t.dims();
  int largest = 1;
  for (int m = 2; m <= 3; ++m)
    if (d[m] > d[largest]) largest = m;
  TetraPlan plan;
  if (largest == 2) plan.perm = {2, 1, 3};
  if (largest == 3) plan.perm = {3, 1, 2};
  const std::size_t cols = d.size() / d[largest];
  if (cols * cols > budget)
    throw ResourceLimitError("tetrahedron: Gram intermediate of " + std::to_string(cols * cols) +
                             " entries exceeds the budget");
  const Tensor3 view = largest == 1 ? t : permute_modes(t, plan.perm);
  plan.dims = view.dims();
  plan.flat = flatten(view, 1);
  plan.gram = gram(plan.flat);
  return plan;
}

double tetra_from_gram(const TetraPlan& plan) {
  const std::size_t q = plan.dims.q;
  const std::size_t r = plan.dims.r;
  const Matrix& u = plan.gram;
  double total = 0.0;
  for (std::size_t f = 0; f < r; ++f)
    for (std::size_t e = 0; e < r; ++e)
      for (std::size_t d = 0; d < q; ++d)
        for (std::size_t c = 0; c < q; ++c) total += u(c + q * e, d + q * f) * u(d + q * e, c + q * f);
  return total;
}

Tensor3 tetra_open_vertex(const TetraPlan& plan) {
  const std::size_t q = plan.dims.q;
  const std::size_t r = plan.dims.r;
  const Matrix& u = plan.gram;
  // W[(d,e),(g,h)] = U[(g,e),(d,h)], so that G'_(1) = M W.
  Matrix w(q * r, q * r);
  for (std::size_t h = 0; h < r; ++h)
    for (std::size_t g = 0; g < q; ++g)
      for (std::size_t e = 0; e < r; ++e)
        for (std::size_t d = 0; d < q; ++d) w(d + q * e, g + q * h) = u(g + q * e, d + q * h);
  Tensor3 g = fold(plan.flat * w, 1, plan.dims);
  if (plan.perm == std::array<int, 3>{1, 2, 3}) return g;
  std::array<int, 3> inverse{};
  for (int m = 0; m < 3; ++m) inverse[plan.perm[m] - 1] = m + 1;
  return permute_modes(g, inverse);
}

}  // namespace brauer::detail
