#pragma once

#include <cstddef>
#include <cstdint>

#include "brauer/tensor3.hpp"

namespace brauer {

/// The five connected-or-product degree-4 diagram values of a tensor.
struct DegreeFourInvariants {
  double frob4 = 0.0;   // |T|^4, two disjoint planktons
  double frame1 = 0.0;  // trace((M_k M_k^T)^2) for the mode-k flattening
  double frame2 = 0.0;
  double frame3 = 0.0;
  double tetra = 0.0;

  double frames() const { return frame1 + frame2 + frame3; }
  double sigma4_pow4() const;
  double sharp_pow4() const;
};

/// Largest intermediate the tetrahedron contraction may allocate (entries).
inline constexpr std::size_t kTetraBudget = 100'000'000;

double frame(const Tensor3& t, int mode);

/// Sum over a..f of t_ace t_adf t_bde t_bcf. Contracts the largest mode first
/// so the Gram intermediate has (product of the two smaller extents)^2
/// entries. Throws ResourceLimitError above kTetraBudget.
double tetrahedron(const Tensor3& t);

DegreeFourInvariants invariants(const Tensor3& t);

/// Degree-4 spectral surrogate: the L4 average of |T . x(x)y(x)z| over the
/// product of spheres, normalized to 1 on unit rank-one tensors.
double sigma4(const Tensor3& t);
/// The sharper degree-4 surrogate ((F1 + F2 + F3 + 2 Tet) / 5)^(1/4).
double sharp(const Tensor3& t);

/// E[sigma4(T)^4] for T uniform on the unit sphere of R^{p x q x r}.
double expected_sigma4_pow4(std::size_t p, std::size_t q, std::size_t r);
/// E[sharp(T)^4] for T uniform on the unit sphere of R^{p x q x r}.
double expected_sharp_pow4(std::size_t p, std::size_t q, std::size_t r);

/// Best |T . a(x)b(x)c| found by rank-one alternating updates from `starts`
/// random unit starts. A lower bound on the spectral norm.
double spectral_lower_bound(const Tensor3& t, int starts, Rng& rng);

/// Monte-Carlo moments of sigma4^4 and sharp^4 over uniform unit tensors.
struct SphereMoments {
  std::size_t samples = 0;
  double sigma4_mean = 0.0;
  double sigma4_stderr = 0.0;
  double sharp_mean = 0.0;
  double sharp_stderr = 0.0;
};
SphereMoments sample_sphere_moments(Dims dims, std::size_t samples, std::uint64_t seed);

}  // namespace brauer
