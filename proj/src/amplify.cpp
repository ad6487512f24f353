#include "brauer/amplify.hpp"

#include <stdexcept>

#include "brauer/norms.hpp"
#include "gram_kernels.hpp"

namespace brauer {

std::string to_string(AmplifierKind kind) {
  switch (kind) {
    case AmplifierKind::identity: return "identity";
    case AmplifierKind::sigma4: return "sigma4";
    case AmplifierKind::sharp: return "sharp";
  }
  throw std::invalid_argument("unknown amplifier kind");
}

AmplifierKind parse_amplifier_kind(std::string_view name) {
  if (name == "identity" || name == "none") return AmplifierKind::identity;
  if (name == "sigma4") return AmplifierKind::sigma4;
  if (name == "sharp") return AmplifierKind::sharp;
  throw std::invalid_argument("unknown amplifier kind '" + std::string(name) + "'");
}

Tensor3 frame_gradient(const Tensor3& t, int mode) {
  const Matrix m = flatten(t, mode);
  return fold(outer_gram(m) * m, mode, t.dims());
}

Tensor3 tetra_gradient(const Tensor3& t) {
  return detail::tetra_open_vertex(detail::plan_tetra(t, kTetraBudget));
}

Tensor3 phi_sharp(const Tensor3& t) {
  Tensor3 g = frame_gradient(t, 1);
  g += frame_gradient(t, 2);
  g += frame_gradient(t, 3);
  g += 2.0 * tetra_gradient(t);
  g *= 4.0 / 5.0;
  return g;
}

Tensor3 phi_sigma4(const Tensor3& t) {
  Tensor3 g = inner(t, t) * t;
  Tensor3 rest = frame_gradient(t, 1);
  rest += frame_gradient(t, 2);
  rest += frame_gradient(t, 3);
  rest += tetra_gradient(t);
  g += 2.0 * rest;
  g *= 4.0 / 9.0;
  return g;
}

Matrix matrix_theta(const Matrix& a) {
  Matrix cubed = outer_gram(a) * a;
  const double n = frobenius(cubed);
  if (n == 0.0) throw std::invalid_argument("matrix_theta: zero matrix");
  return (1.0 / n) * std::move(cubed);
}

Tensor3 amplify(const Tensor3& t, AmplifierKind kind) {
  switch (kind) {
    case AmplifierKind::identity: return t;
    case AmplifierKind::sigma4: return phi_sigma4(t);
    case AmplifierKind::sharp: return phi_sharp(t);
  }
  throw std::invalid_argument("amplify: unknown kind");
}

}  // namespace brauer
