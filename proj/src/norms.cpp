#include "brauer/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "brauer/diagrams.hpp"
#include "gram_kernels.hpp"

namespace brauer {

namespace {

double fourth_root(double x) { return std::sqrt(std::sqrt(std::max(x, 0.0))); }

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

double DegreeFourInvariants::sigma4_pow4() const {
  return (3.0 * frob4 + 6.0 * frames() + 6.0 * tetra) / 27.0;
}

double DegreeFourInvariants::sharp_pow4() const { return (frames() + 2.0 * tetra) / 5.0; }

double frame(const Tensor3& t, int mode) {
  const Matrix a = outer_gram(flatten(t, mode));
  double s = 0.0;
  for (double x : a.data()) s += x * x;
  return s;
}

double tetrahedron(const Tensor3& t) {
  const detail::TetraPlan plan = detail::plan_tetra(t, kTetraBudget);
  return detail::tetra_from_gram(plan);
}

DegreeFourInvariants invariants(const Tensor3& t) {
  DegreeFourInvariants inv;
  const double sq = inner(t, t);
  inv.frob4 = sq * sq;
  inv.frame1 = frame(t, 1);
  inv.frame2 = frame(t, 2);
  inv.frame3 = frame(t, 3);
  inv.tetra = tetrahedron(t);
  return inv;
}

double sigma4(const Tensor3& t) { return fourth_root(invariants(t).sigma4_pow4()); }

double sharp(const Tensor3& t) { return fourth_root(invariants(t).sharp_pow4()); }

double expected_sigma4_pow4(std::size_t p, std::size_t q, std::size_t r) {
  if (p == 0 || q == 0 || r == 0) throw std::invalid_argument("extents must be positive");
  const double P = p, Q = q, R = r;
  return (P * Q * R + 2.0 * (P * Q + P * R + Q * R) + 4.0 * (P + Q + R) + 8.0) /
         (9.0 * (P * Q * R + 2.0));
}

double expected_sharp_pow4(std::size_t p, std::size_t q, std::size_t r) {
  if (p == 0 || q == 0 || r == 0) throw std::invalid_argument("extents must be positive");
  const double P = p, Q = q, R = r;
  return ((P * Q + P * R + Q * R) + 3.0 * (P + Q + R) + 3.0) / (5.0 * (P * Q * R + 2.0));
}

double spectral_lower_bound(const Tensor3& t, int starts, Rng& rng) {
  if (starts < 1) throw std::invalid_argument("spectral_lower_bound: starts must be >= 1");
  const Dims d = t.dims();
  double best = 0.0;
  for (int s = 0; s < starts; ++s) {
    auto b = random_unit_vector(d.q, rng);
    auto c = random_unit_vector(d.r, rng);
    std::vector<double> a(d.p, 0.0);
    double value = 0.0;
    for (int it = 0; it < 2000; ++it) {
      a = contract_except(t, 1, b, c);
      if (normalize(a) == 0.0) break;
      b = contract_except(t, 2, a, c);
      if (normalize(b) == 0.0) break;
      c = contract_except(t, 3, a, b);
      const double next = normalize(c);
      if (next == 0.0) break;
      const bool done = std::abs(next - value) <= 1e-15 * next;
      value = next;
      if (done) break;
    }
    best = std::max(best, std::abs(value));
  }
  return best;
}

SphereMoments sample_sphere_moments(Dims dims, std::size_t samples, std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("sample_sphere_moments: need at least 2 samples");
  // Fixed-size blocks with their own streams keep results independent of how
  // the loop is scheduled.
  constexpr std::size_t block = 4096;
  CompensatedSum s4, s4sq, sh, shsq;
  for (std::size_t start = 0, stream = 0; start < samples; start += block, ++stream) {
    Rng rng(derive_seed(seed, stream));
    const std::size_t end = std::min(samples, start + block);
    for (std::size_t i = start; i < end; ++i) {
      const auto inv = invariants(random_unit_tensor(dims, rng));
      const double a = inv.sigma4_pow4();
      const double b = inv.sharp_pow4();
      s4.add(a);
      s4sq.add(a * a);
      sh.add(b);
      shsq.add(b * b);
    }
  }
  const double n = static_cast<double>(samples);
  auto stderr_of = [n](double sum, double sumsq) {
    const double mean = sum / n;
    const double var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
    return std::sqrt(var / n);
  };
  SphereMoments m;
  m.samples = samples;
  m.sigma4_mean = s4.value() / n;
  m.sigma4_stderr = stderr_of(s4.value(), s4sq.value());
  m.sharp_mean = sh.value() / n;
  m.sharp_stderr = stderr_of(sh.value(), shsq.value());
  return m;
}

}  // namespace brauer
