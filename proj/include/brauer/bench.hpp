#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "brauer/decompose.hpp"
#include "brauer/tensor3.hpp"

namespace brauer {

/// ALS initialization strategies compared by the harness.
enum class InitMethod { random, qr1, sigma4_qr1, sharp_qr1 };

std::string to_string(InitMethod method);
/// Accepts "random", "qr1", "sigma4" / "sigma4+qr1", "sharp" / "sharp+qr1".
InitMethod parse_init_method(std::string_view name);
/// The amplifier used by a Quick-Rank-1 based method (identity for qr1).
AmplifierKind amplifier_for(InitMethod method);

struct ExperimentConfig {
  Dims dims{30, 30, 30};
  std::size_t signal_rank = 1;
  double noise_norm = 10.0;
  std::size_t trials = 1000;
  int random_restarts = 10;
  RandomInit random_init = RandomInit::uniform01;
  double tol = 1e-4;
  int max_iter = 50;
  std::uint64_t seed = 0;
  std::vector<InitMethod> methods{InitMethod::random, InitMethod::qr1, InitMethod::sigma4_qr1,
                                  InitMethod::sharp_qr1};
  /// Scale the clean signal to unit Frobenius norm (a no-op up to rounding for
  /// rank 1, where the signal is already a unit rank-one tensor).
  bool unit_signal = true;
  /// Worker threads for independent trials; 0 means hardware concurrency.
  unsigned threads = 0;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct NoisyInstance {
  std::vector<RankOneTriple> truth;  // unit factors, weights carry the scaling
  Tensor3 signal;
  Tensor3 noisy;
};

/// Draws `signal_rank` independent unit rank-one terms and adds noise drawn
/// uniformly from the sphere of radius noise_norm.
NoisyInstance make_noisy_instance(const ExperimentConfig& cfg, Rng& rng);

struct TrialRecord {
  std::size_t trial = 0;
  InitMethod method = InitMethod::qr1;
  /// Rank 1: |(a.a')(b.b')(c.c')| against the true factors.
  /// Rank r: (T . S) / |S| against the clean signal.
  double fit = 0.0;
  /// ALS sweeps; summed over restarts for the random method.
  int iterations = 0;
  /// Seconds spent in initialization plus ALS; summed over restarts.
  double time_sec = 0.0;
  /// Sweeps of the restart that produced the reported fit.
  int best_run_iterations = 0;
  /// (T_noisy . S) / |S| for the reported model.
  double fit_noisy = 0.0;
};

/// Runs one method on one instance. `rng` only drives random initializations.
TrialRecord run_trial(const ExperimentConfig& cfg, const NoisyInstance& instance,
                      InitMethod method, std::size_t trial, Rng& rng);

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;  // unbiased (n - 1)
};
Summary summarize(std::span<const double> values);

struct MethodStats {
  InitMethod method = InitMethod::qr1;
  std::size_t count = 0;
  Summary fit;
  Summary iterations;
  Summary time_sec;
  Summary best_run_iterations;
};

struct AggregateStats {
  std::vector<MethodStats> methods;
  const MethodStats& at(InitMethod method) const;
};

AggregateStats aggregate(std::span<const TrialRecord> records);

struct ExperimentResult {
  std::vector<TrialRecord> records;  // ordered by trial, then method
  AggregateStats stats;
};

/// Deterministic for a given config: trial i uses streams derived from
/// (seed, i) whatever the thread count.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Header: trial,method,fit,iterations,time_sec,best_run_iterations,fit_noisy
void write_trials_csv(std::ostream& out, std::span<const TrialRecord> records);
/// JSON object keyed by method name.
std::string aggregate_json(const AggregateStats& stats, int indent = 2);

}  // namespace brauer
