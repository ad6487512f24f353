#include "brauer/decompose.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

namespace brauer {

namespace {

constexpr double kSignThreshold = 1e-12;

// Returns true when the first entry above the threshold is negative.
bool leading_negative(std::span<const double> x) {
  for (double v : x)
    if (std::abs(v) > kSignThreshold) return v < 0.0;
  return false;
}

void negate(std::span<double> x) {
  for (double& v : x) v = -v;
}

void fix_signs(CPModel& model) {
  for (std::size_t i = 0; i < model.rank(); ++i)
    for (auto& f : model.factors)
      if (leading_negative(f.col(i))) {
        negate(f.col(i));
        model.weights[i] = -model.weights[i];
      }
}

std::vector<double> matvec(const Matrix& g, std::span<const double> x) {
  std::vector<double> y(g.rows(), 0.0);
  for (std::size_t j = 0; j < g.cols(); ++j) {
    const double xj = x[j];
    auto gj = g.col(j);
    for (std::size_t i = 0; i < g.rows(); ++i) y[i] += gj[i] * xj;
  }
  return y;
}

// M^T x.
std::vector<double> matvec_t(const Matrix& m, std::span<const double> x) {
  std::vector<double> y(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) y[j] = dot(m.col(j), x);
  return y;
}

// Deterministic replacement start when the iterate lands in the null space.
std::vector<double> perturbed_start(std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.5 * std::sin(1.0 + 2.0 * static_cast<double>(i));
  normalize(x);
  return x;
}

// Mode-n matricized tensor times Khatri-Rao product of the other factors.
Matrix mttkrp(const Tensor3& t, const std::array<Matrix, 3>& f, int mode) {
  const auto [p, q, r] = t.dims();
  const std::size_t rank = f[0].cols();
  Matrix out(t.dims()[mode], rank);
  const double* x = t.data().data();
  for (std::size_t c = 0; c < rank; ++c) {
    auto a = f[0].col(c);
    auto b = f[1].col(c);
    auto cc = f[2].col(c);
    auto o = out.col(c);
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t j = 0; j < q; ++j) {
        const double* fiber = x + p * (j + q * k);
        switch (mode) {
          case 1: {
            const double w = b[j] * cc[k];
            for (std::size_t i = 0; i < p; ++i) o[i] += fiber[i] * w;
            break;
          }
          case 2: {
            double s = 0.0;
            for (std::size_t i = 0; i < p; ++i) s += fiber[i] * a[i];
            o[j] += s * cc[k];
            break;
          }
          default: {
            double s = 0.0;
            for (std::size_t i = 0; i < p; ++i) s += fiber[i] * a[i];
            o[k] += s * b[j];
            break;
          }
        }
      }
  }
  return out;
}

double residual_norm(const Tensor3& t, const CPModel& model) {
  Tensor3 diff = t;
  diff -= model.reconstruct();
  return frobenius(diff);
}

}  // namespace

SingularTriple top_singular_triple(const Matrix& m, double tol, int max_iter) {
  if (m.rows() == 0 || m.cols() == 0) throw std::invalid_argument("top_singular_triple: empty matrix");
  if (frobenius(m) == 0.0) throw std::invalid_argument("top_singular_triple: zero matrix");
  const bool left = m.rows() <= m.cols();
  const Matrix g = left ? outer_gram(m) : gram(m);
  const std::size_t n = g.rows();

  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  SingularTriple out;
  bool perturbed = false;
  double mu = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    out.iterations = it;
    auto y = matvec(g, x);
    mu = dot(x, y);
    const double ynorm = norm2(y);
    if (ynorm == 0.0 || mu <= 0.0) {
      if (perturbed) break;
      x = perturbed_start(n);
      perturbed = true;
      continue;
    }
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) res += (y[i] - mu * x[i]) * (y[i] - mu * x[i]);
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ynorm;
    if (std::sqrt(res) <= tol * mu) {
      out.converged = true;
      break;
    }
  }

  // Recover the other side from the final iterate.
  std::vector<double> other = left ? matvec_t(m, x) : matvec(m, x);
  out.sigma = normalize(other);
  if (out.sigma == 0.0) throw std::runtime_error("top_singular_triple: iterate collapsed to zero");
  out.u = left ? std::move(x) : std::move(other);
  out.v = left ? std::move(other) : std::move(x);
  if (leading_negative(out.u)) {
    negate(out.u);
    negate(out.v);
  }
  return out;
}

RankOneTriple quick_rank1(const Tensor3& t) {
  const auto [p, q, r] = t.dims();
  const SingularTriple outer = top_singular_triple(flatten(t, 1));
  const Matrix reshaped(q, r, outer.v);
  const SingularTriple inner_pair = top_singular_triple(reshaped);
  RankOneTriple est;
  est.weight = outer.sigma * inner_pair.sigma;
  est.a = outer.u;
  est.b = inner_pair.u;
  est.c = inner_pair.v;
  return est;
}

RankOneTriple CPModel::term(std::size_t i) const {
  RankOneTriple t;
  t.weight = weights.at(i);
  auto copy = [i](const Matrix& m) {
    auto c = m.col(i);
    return std::vector<double>(c.begin(), c.end());
  };
  t.a = copy(factors[0]);
  t.b = copy(factors[1]);
  t.c = copy(factors[2]);
  return t;
}

Tensor3 CPModel::reconstruct() const {
  const Dims d = dims();
  Tensor3 out(d);
  for (std::size_t i = 0; i < rank(); ++i) {
    auto a = factors[0].col(i);
    auto b = factors[1].col(i);
    auto c = factors[2].col(i);
    const double w = weights[i];
    for (std::size_t k = 0; k < d.r; ++k)
      for (std::size_t j = 0; j < d.q; ++j) {
        const double s = w * b[j] * c[k];
        if (s == 0.0) continue;
        for (std::size_t x = 0; x < d.p; ++x) out(x, j, k) += a[x] * s;
      }
  }
  return out;
}

CPModel CPModel::from_terms(const std::vector<RankOneTriple>& terms) {
  if (terms.empty()) throw std::invalid_argument("CPModel::from_terms: no terms");
  const Dims d = terms.front().dims();
  CPModel m;
  m.factors = {Matrix(d.p, terms.size()), Matrix(d.q, terms.size()), Matrix(d.r, terms.size())};
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].dims() != d) throw std::invalid_argument("CPModel::from_terms: dims differ");
    m.weights.push_back(terms[i].weight);
    std::copy(terms[i].a.begin(), terms[i].a.end(), m.factors[0].col(i).begin());
    std::copy(terms[i].b.begin(), terms[i].b.end(), m.factors[1].col(i).begin());
    std::copy(terms[i].c.begin(), terms[i].c.end(), m.factors[2].col(i).begin());
  }
  return m;
}

CPModel random_cp_model(Dims dims, std::size_t rank, Rng& rng, RandomInit kind) {
  if (rank == 0) throw std::invalid_argument("random_cp_model: rank must be positive");
  if (kind == RandomInit::gaussian) {
    std::vector<RankOneTriple> terms;
    for (std::size_t i = 0; i < rank; ++i) terms.push_back(random_unit_rank1(dims, rng));
    return CPModel::from_terms(terms);
  }
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  CPModel m;
  m.weights.assign(rank, 1.0);
  for (int n = 0; n < 3; ++n) {
    m.factors[n] = Matrix(dims[n + 1], rank);
    for (std::size_t c = 0; c < rank; ++c) {
      auto col = m.factors[n].col(c);
      for (double& v : col) v = unif(rng);
      if (normalize(col) == 0.0) col[0] = 1.0;
    }
  }
  return m;
}

std::pair<CPModel, AlsReport> cp_als(const Tensor3& t, const CPModel& init,
                                     const AlsOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (init.rank() == 0) throw std::invalid_argument("cp_als: rank must be positive");
  if (init.dims() != t.dims()) throw std::invalid_argument("cp_als: init dims do not match tensor");
  for (const auto& f : init.factors)
    if (f.cols() != init.rank()) throw std::invalid_argument("cp_als: factor column count != rank");
  const double norm_t = frobenius(t);
  if (norm_t == 0.0) throw std::invalid_argument("cp_als: zero tensor");

  CPModel model = init;
  const std::size_t rank = model.rank();
  std::array<Matrix, 3> grams{gram(model.factors[0]), gram(model.factors[1]),
                              gram(model.factors[2])};
  AlsReport report;
  double fit_old = 0.0;
  for (int iter = 1; iter <= options.max_iter; ++iter) {
    for (int mode = 1; mode <= 3; ++mode) {
      const int n = mode - 1;
      const Matrix& g1 = grams[(n + 1) % 3];
      const Matrix& g2 = grams[(n + 2) % 3];
      const Matrix v = hadamard(g1, g2);
      const Matrix rhs = mttkrp(t, model.factors, mode);
      Matrix updated = solve_spd(v, rhs.transpose()).transpose();
      for (std::size_t c = 0; c < rank; ++c) {
        auto col = updated.col(c);
        const double len = normalize(col);
        if (len == 0.0) {
          // Keep the previous direction so columns stay unit length.
          auto prev = model.factors[n].col(c);
          std::copy(prev.begin(), prev.end(), col.begin());
        }
        model.weights[c] = len;
      }
      model.factors[n] = std::move(updated);
      grams[n] = gram(model.factors[n]);
    }
    const double fit = 1.0 - residual_norm(t, model) / norm_t;
    report.fit_history.push_back(fit);
    report.iterations = iter;
    const double change = std::abs(fit - fit_old);
    fit_old = fit;
    if (iter > 1 && change < options.tol) break;
  }
  fix_signs(model);
  report.final_fit = report.fit_history.empty() ? 0.0 : report.fit_history.back();
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {std::move(model), std::move(report)};
}

CPModel amplified_init(const Tensor3& t, std::size_t rank, AmplifierKind kind) {
  if (rank == 0) throw std::invalid_argument("amplified_init: rank must be positive");
  if (frobenius(t) == 0.0) throw std::invalid_argument("amplified_init: zero tensor");
  std::vector<RankOneTriple> terms;
  Tensor3 residual = t;
  std::vector<double> h;
  for (std::size_t s = 0; s < rank; ++s) {
    Tensor3 u = amplify(residual, kind);
    // An exactly deflated residual has nothing left to amplify; fall back to
    // the residual itself, then to the original tensor.
    if (frobenius(u) == 0.0) u = frobenius(residual) > 0.0 ? residual : t;
    RankOneTriple v = quick_rank1(u);
    v.weight = 1.0;
    h.push_back(dot(v.a, contract_except(t, 1, v.b, v.c)));
    terms.push_back(std::move(v));

    const std::size_t n = terms.size();
    Matrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        g(i, j) = dot(terms[i].a, terms[j].a) * dot(terms[i].b, terms[j].b) *
                  dot(terms[i].c, terms[j].c);
    const auto lambda = solve_symmetric_pinv(g, h);
    residual = t;
    for (std::size_t i = 0; i < n; ++i) {
      terms[i].weight = lambda[i];
      residual -= terms[i].to_tensor();
    }
  }
  CPModel model = CPModel::from_terms(terms);
  fix_signs(model);
  return model;
}

double rank1_fit(const RankOneTriple& truth, const RankOneTriple& estimate) {
  if (truth.dims() != estimate.dims()) throw std::invalid_argument("rank1_fit: dims differ");
  return std::abs(dot(truth.a, estimate.a) * dot(truth.b, estimate.b) * dot(truth.c, estimate.c));
}

double rankr_fit(const Tensor3& signal, const CPModel& model) {
  const Tensor3 s = model.reconstruct();
  const double n = frobenius(s);
  if (n == 0.0) throw std::invalid_argument("rankr_fit: zero model");
  return inner(signal, s) / n;
}

}  // namespace brauer
