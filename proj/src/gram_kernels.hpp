#pragma once

#include <array>
#include <cstddef>

#include "brauer/matrix.hpp"
#include "brauer/tensor3.hpp"

namespace brauer::detail {

/// Shared first step of the tetrahedron value and its gradient.
///
/// The tensor is viewed with its largest mode first (T'); with M the mode-1
/// flattening of T' (p' x q'r'), the Gram matrix U = M^T M holds
/// U[(c,e),(d,f)] = sum_a t'_ace t'_adf, i.e. the tetrahedron with one
/// red-paired vertex couple fused.
struct TetraPlan {
  std::array<int, 3> perm{1, 2, 3};  // T' mode m is T mode perm[m]
  Dims dims;                         // extents of T'
  Matrix flat;                       // M
  Matrix gram;                       // U
};

TetraPlan plan_tetra(const Tensor3& t, std::size_t budget);

/// sum U[(c,e),(d,f)] U[(d,e),(c,f)].
double tetra_from_gram(const TetraPlan& plan);

/// G[b,c,f] = sum_{a,d,e} t_ace t_adf t_bde in the original mode order.
Tensor3 tetra_open_vertex(const TetraPlan& plan);

}  // namespace brauer::detail
