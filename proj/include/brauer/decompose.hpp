#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "brauer/amplify.hpp"
#include "brauer/matrix.hpp"
#include "brauer/tensor3.hpp"

namespace brauer {

/// Dominant singular triple M ~ sigma u v^T.
struct SingularTriple {
  double sigma = 0.0;
  std::vector<double> u;
  std::vector<double> v;
  bool converged = false;
  int iterations = 0;
};

/// Power iteration on the smaller of M M^T and M^T M, started from the
/// normalized all-ones vector. Stops once |M v - sigma u| <= tol * sigma;
/// otherwise returns the last iterate with converged = false. The first
/// nonzero entry of u is made positive. Throws on the zero matrix.
SingularTriple top_singular_triple(const Matrix& m, double tol = 1e-10, int max_iter = 1000);

/// Rank-one estimate from the dominant singular pair of the mode-1
/// flattening, followed by the dominant pair of the right singular vector
/// reshaped to q x r (column-major, matching flatten's column order).
RankOneTriple quick_rank1(const Tensor3& t);

/// S = sum_i weights[i] * U1(:,i) (x) U2(:,i) (x) U3(:,i) with unit columns.
struct CPModel {
  std::vector<double> weights;
  std::array<Matrix, 3> factors;

  std::size_t rank() const { return weights.size(); }
  Dims dims() const { return {factors[0].rows(), factors[1].rows(), factors[2].rows()}; }
  RankOneTriple term(std::size_t i) const;
  Tensor3 reconstruct() const;

  static CPModel from_terms(const std::vector<RankOneTriple>& terms);
};

enum class RandomInit {
  uniform01,  // i.i.d. entries on [0, 1], the usual cp_als default
  gaussian,   // directions uniform on the sphere
};

/// Random factor columns normalized to unit length, unit weights.
CPModel random_cp_model(Dims dims, std::size_t rank, Rng& rng,
                        RandomInit kind = RandomInit::uniform01);

struct AlsReport {
  int iterations = 0;
  double final_fit = 0.0;
  std::vector<double> fit_history;
  double wall_time = 0.0;  // seconds
};

struct AlsOptions {
  double tol = 1e-4;
  int max_iter = 50;
};

/// CP alternating least squares. Each sweep solves modes 1, 2, 3 in turn from
/// the Khatri-Rao normal equations and moves column norms into the weights.
/// fit = 1 - |T - S| / |T|; stops after sweep t > 1 when
/// |fit_t - fit_{t-1}| < tol, or after max_iter sweeps. The first sweep
/// recomputes mode 1, so only the mode-2 and mode-3 factors of `init` matter.
std::pair<CPModel, AlsReport> cp_als(const Tensor3& t, const CPModel& init,
                                     const AlsOptions& options = {});

/// Greedy deflation with amplification. For s = 1..rank: amplify the current
/// residual, take its Quick Rank 1 direction v_s, then refit all weights
/// jointly by least squares against T and update the residual.
CPModel amplified_init(const Tensor3& t, std::size_t rank, AmplifierKind kind);

/// |(a.a')(b.b')(c.c')|.
double rank1_fit(const RankOneTriple& truth, const RankOneTriple& estimate);
/// (T . S) / |S|. Throws on a zero model.
double rankr_fit(const Tensor3& signal, const CPModel& model);

}  // namespace brauer
