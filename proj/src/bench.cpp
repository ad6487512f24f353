#include "brauer/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace brauer {

namespace {

double score(const ExperimentConfig& cfg, const NoisyInstance& instance, const CPModel& model) {
  if (cfg.signal_rank == 1) return rank1_fit(instance.truth.front(), model.term(0));
  return rankr_fit(instance.signal, model);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::string to_string(InitMethod method) {
  switch (method) {
    case InitMethod::random: return "random";
    case InitMethod::qr1: return "qr1";
    case InitMethod::sigma4_qr1: return "sigma4+qr1";
    case InitMethod::sharp_qr1: return "sharp+qr1";
  }
  throw std::invalid_argument("unknown init method");
}

InitMethod parse_init_method(std::string_view name) {
  if (name == "random") return InitMethod::random;
  if (name == "qr1") return InitMethod::qr1;
  if (name == "sigma4" || name == "sigma4+qr1") return InitMethod::sigma4_qr1;
  if (name == "sharp" || name == "sharp+qr1") return InitMethod::sharp_qr1;
  throw std::invalid_argument("unknown init method '" + std::string(name) + "'");
}

AmplifierKind amplifier_for(InitMethod method) {
  switch (method) {
    case InitMethod::sigma4_qr1: return AmplifierKind::sigma4;
    case InitMethod::sharp_qr1: return AmplifierKind::sharp;
    default: return AmplifierKind::identity;
  }
}

void ExperimentConfig::validate() const {
  if (dims.p == 0 || dims.q == 0 || dims.r == 0) throw std::invalid_argument("dims must be positive");
  if (signal_rank == 0) throw std::invalid_argument("signal rank must be positive");
  if (!(noise_norm >= 0.0)) throw std::invalid_argument("noise norm must be >= 0");
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (random_restarts < 1) throw std::invalid_argument("random restarts must be >= 1");
  if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be >= 0");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  if (methods.empty()) throw std::invalid_argument("at least one method is required");
}

NoisyInstance make_noisy_instance(const ExperimentConfig& cfg, Rng& rng) {
  NoisyInstance inst;
  inst.signal = Tensor3(cfg.dims);
  for (std::size_t s = 0; s < cfg.signal_rank; ++s) {
    inst.truth.push_back(random_unit_rank1(cfg.dims, rng));
    inst.signal += inst.truth.back().to_tensor();
  }
  if (cfg.unit_signal && cfg.signal_rank > 1) {
    const double scale = 1.0 / frobenius(inst.signal);
    inst.signal *= scale;
    for (auto& t : inst.truth) t.weight *= scale;
  }
  Tensor3 noise = random_unit_tensor(cfg.dims, rng);
  noise *= cfg.noise_norm;
  inst.noisy = inst.signal + noise;
  return inst;
}

TrialRecord run_trial(const ExperimentConfig& cfg, const NoisyInstance& instance,
                      InitMethod method, std::size_t trial, Rng& rng) {
  const AlsOptions als{cfg.tol, cfg.max_iter};
  TrialRecord rec;
  rec.trial = trial;
  rec.method = method;
  if (method == InitMethod::random) {
    bool first = true;
    for (int restart = 0; restart < cfg.random_restarts; ++restart) {
      const auto start = std::chrono::steady_clock::now();
      const CPModel init = random_cp_model(cfg.dims, cfg.signal_rank, rng, cfg.random_init);
      auto [model, report] = cp_als(instance.noisy, init, als);
      rec.time_sec += seconds_since(start);
      rec.iterations += report.iterations;
      const double fit = score(cfg, instance, model);
      if (first || fit > rec.fit) {
        rec.fit = fit;
        rec.best_run_iterations = report.iterations;
        rec.fit_noisy = rankr_fit(instance.noisy, model);
        first = false;
      }
    }
    return rec;
  }
  const auto start = std::chrono::steady_clock::now();
  const CPModel init = amplified_init(instance.noisy, cfg.signal_rank, amplifier_for(method));
  auto [model, report] = cp_als(instance.noisy, init, als);
  rec.time_sec = seconds_since(start);
  rec.iterations = report.iterations;
  rec.best_run_iterations = report.iterations;
  rec.fit = score(cfg, instance, model);
  rec.fit_noisy = rankr_fit(instance.noisy, model);
  return rec;
}

Summary summarize(std::span<const double> values) {
  Summary s;
  if (values.empty()) return s;
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

const MethodStats& AggregateStats::at(InitMethod method) const {
  for (const auto& m : methods)
    if (m.method == method) return m;
  throw std::out_of_range("no statistics for method " + to_string(method));
}

AggregateStats aggregate(std::span<const TrialRecord> records) {
  AggregateStats stats;
  std::vector<InitMethod> order;
  for (const auto& r : records)
    if (std::find(order.begin(), order.end(), r.method) == order.end()) order.push_back(r.method);
  for (InitMethod method : order) {
    std::vector<double> fit, iters, time, best;
    for (const auto& r : records) {
      if (r.method != method) continue;
      fit.push_back(r.fit);
      iters.push_back(r.iterations);
      time.push_back(r.time_sec);
      best.push_back(r.best_run_iterations);
    }
    stats.methods.push_back(
        {method, fit.size(), summarize(fit), summarize(iters), summarize(time), summarize(best)});
  }
  return stats;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::size_t n_methods = cfg.methods.size();
  std::vector<TrialRecord> records(cfg.trials * n_methods);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t trial = next++; trial < cfg.trials; trial = next++) {
      try {
        Rng instance_rng(derive_seed(cfg.seed, 2 * trial));
        const NoisyInstance inst = make_noisy_instance(cfg, instance_rng);
        for (std::size_t m = 0; m < n_methods; ++m) {
          Rng method_rng(derive_seed(derive_seed(cfg.seed, 2 * trial + 1), m));
          records[trial * n_methods + m] = run_trial(cfg, inst, cfg.methods[m], trial, method_rng);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = cfg.trials;
      }
    }
  };
  unsigned threads = cfg.threads == 0 ? std::thread::hardware_concurrency() : cfg.threads;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cfg.trials)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentResult result;
  result.stats = aggregate(records);
  result.records = std::move(records);
  return result;
}

void write_trials_csv(std::ostream& out, std::span<const TrialRecord> records) {
  out << "trial,method,fit,iterations,time_sec,best_run_iterations,fit_noisy\n";
  out << std::setprecision(17);
  for (const auto& r : records) {
    out << r.trial << ',' << to_string(r.method) << ',' << r.fit << ',' << r.iterations << ','
        << r.time_sec << ',' << r.best_run_iterations << ',' << r.fit_noisy << '\n';
  }
}

std::string aggregate_json(const AggregateStats& stats, int indent) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  auto summary = [](const Summary& s) {
    return nlohmann::ordered_json{{"mean", s.mean}, {"std", s.stddev}};
  };
  for (const auto& m : stats.methods) {
    j[to_string(m.method)] = {{"trials", m.count},
                              {"fit", summary(m.fit)},
                              {"iterations", summary(m.iterations)},
                              {"best_run_iterations", summary(m.best_run_iterations)},
                              {"time_sec", summary(m.time_sec)}};
  }
  return j.dump(indent);
}

}  // namespace brauer
