#pragma once

#include <string>
#include <string_view>

#include "brauer/matrix.hpp"
#include "brauer/tensor3.hpp"

namespace brauer {

/// Which amplification map feeds the rank-one initializer.
enum class AmplifierKind { identity = 0, sigma4 = 1, sharp = 2 };

std::string to_string(AmplifierKind kind);
AmplifierKind parse_amplifier_kind(std::string_view name);

/// fold(M M^T M) for the mode-k flattening M; a quarter of the gradient of
/// frame(., k).
Tensor3 frame_gradient(const Tensor3& t, int mode);

/// G[b,c,f] = sum_{a,d,e} t_ace t_adf t_bde; the gradient of the tetrahedron
/// invariant is 4 G.
Tensor3 tetra_gradient(const Tensor3& t);

/// Gradient of sharp(T)^4: (4/5)(sum_k frame_gradient(T,k) + 2 tetra_gradient(T)).
Tensor3 phi_sharp(const Tensor3& t);

/// Gradient of sigma4(T)^4:
/// (4/9)(|T|^2 T + 2 sum_k frame_gradient(T,k) + 2 tetra_gradient(T)).
Tensor3 phi_sigma4(const Tensor3& t);

/// A A^T A / |A A^T A|: cubes the singular values, keeps the singular vectors.
/// Throws std::invalid_argument for the zero matrix.
Matrix matrix_theta(const Matrix& a);

Tensor3 amplify(const Tensor3& t, AmplifierKind kind);

}  // namespace brauer
