#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "brauer/amplify.hpp"
#include "brauer/bench.hpp"
#include "brauer/decompose.hpp"
#include "brauer/diagrams.hpp"
#include "brauer/io.hpp"
#include "brauer/norms.hpp"

using namespace brauer;
using nlohmann::ordered_json;

namespace {

ordered_json matrix_json(const Matrix& m) {
  ordered_json cols = ordered_json::array();
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::vector<double> col(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) col[i] = m(i, j);
    cols.push_back(col);
  }
  return cols;
}

Dims parse_dims(const std::string& text) {
  std::vector<std::size_t> v;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) v.push_back(std::stoul(cell));
  if (v.size() != 3) throw std::invalid_argument("--dims expects p,q,r");
  return {v[0], v[1], v[2]};
}

std::vector<InitMethod> parse_methods(const std::string& text) {
  std::vector<InitMethod> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ','))
    if (!cell.empty()) out.push_back(parse_init_method(cell));
  return out;
}

int run_census(int max_degree) {
  std::cout << "degree  matchings  connected_classes\n";
  for (int d = 2; d <= max_degree; d += 2)
    std::cout << d << "  " << enumerate_matchings(d).size() << "  " << count_connected_classes(d) << "\n";
  return 0;
}

int run_evaluate(const std::string& diagram_path, const std::string& tensor_path) {
  std::ifstream in(diagram_path);
  if (!in) throw std::runtime_error("cannot open " + diagram_path);
  const auto combo = parse_combination(in);
  const auto t = load_tensor(tensor_path);
  std::cout.precision(17);
  std::cout << evaluate(combo, t) << "\n";
  return 0;
}

int run_invariants(const std::string& tensor_path) {
  const auto t = load_tensor(tensor_path);
  const auto inv = invariants(t);
  ordered_json j;
  j["frob4"] = inv.frob4;
  j["frame1"] = inv.frame1;
  j["frame2"] = inv.frame2;
  j["frame3"] = inv.frame3;
  j["tetra"] = inv.tetra;
  j["sigma4"] = sigma4(t);
  j["sharp"] = sharp(t);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_amplify(const std::string& tensor_path, const std::string& kind, const std::string& out) {
  save_tensor(out, amplify(load_tensor(tensor_path), parse_amplifier_kind(kind)));
  return 0;
}

int run_decompose(const std::string& tensor_path, std::size_t rank, const std::string& init,
                  double tol, int max_iter, std::uint64_t seed) {
  const auto t = load_tensor(tensor_path);
  const auto method = parse_init_method(init);
  CPModel start;
  if (method == InitMethod::random) {
    Rng rng(seed);
    start = random_cp_model(t.dims(), rank, rng);
  } else {
    start = amplified_init(t, rank, amplifier_for(method));
  }
  const auto [model, report] = cp_als(t, start, {tol, max_iter});
  ordered_json j;
  j["model"]["weights"] = model.weights;
  j["model"]["factors"] = {matrix_json(model.factors[0]), matrix_json(model.factors[1]),
                           matrix_json(model.factors[2])};
  j["report"]["iterations"] = report.iterations;
  j["report"]["final_fit"] = report.final_fit;
  j["report"]["fit_history"] = report.fit_history;
  j["report"]["wall_time"] = report.wall_time;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_bench(ExperimentConfig cfg, const std::string& dims, const std::string& methods,
              const std::string& out, const std::string& json_out) {
  cfg.dims = parse_dims(dims);
  cfg.methods = parse_methods(methods);
  cfg.validate();
  const auto result = run_experiment(cfg);
  if (out.empty()) {
    write_trials_csv(std::cout, result.records);
  } else {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    write_trials_csv(f, result.records);
  }
  const auto summary = aggregate_json(result.stats);
  if (json_out.empty()) {
    std::cerr << summary << "\n";
  } else {
    std::ofstream f(json_out);
    if (!f) throw std::runtime_error("cannot write " + json_out);
    f << summary << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Colored Brauer diagram invariants and amplified CP decomposition"};
  app.require_subcommand(1);

  int census_degree = 6;
  auto* census = app.add_subcommand("census", "Count matchings and connected diagram classes");
  census->add_option("--max-degree", census_degree, "Largest even degree")->check(CLI::Range(2, 8));

  std::string diagram_path, tensor_path;
  auto* eval = app.add_subcommand("evaluate", "Evaluate a diagram file on a tensor file");
  eval->add_option("diagram", diagram_path)->required();
  eval->add_option("tensor", tensor_path)->required();

  auto* inv = app.add_subcommand("invariants", "Degree-4 invariants and norms as JSON");
  inv->add_option("tensor", tensor_path)->required();

  std::string kind = "sharp", out_path;
  auto* amp = app.add_subcommand("amplify", "Write the amplified tensor");
  amp->add_option("tensor", tensor_path)->required();
  amp->add_option("--kind", kind)->check(CLI::IsMember({"sigma4", "sharp"}));
  amp->add_option("--out", out_path)->required();

  std::size_t rank = 1;
  std::string init = "sharp";
  double tol = 1e-4;
  int max_iter = 50;
  std::uint64_t seed = 0;
  auto* dec = app.add_subcommand("decompose", "CP-ALS with the chosen initialization");
  dec->add_option("tensor", tensor_path)->required();
  dec->add_option("--rank", rank)->check(CLI::PositiveNumber);
  dec->add_option("--init", init)->check(CLI::IsMember({"random", "qr1", "sigma4", "sharp"}));
  dec->add_option("--tol", tol);
  dec->add_option("--max-iter", max_iter);
  dec->add_option("--seed", seed);

  ExperimentConfig cfg;
  std::string dims = "30,30,30", methods = "random,qr1,sigma4+qr1,sharp+qr1", json_path;
  auto* bench = app.add_subcommand("bench", "Noisy low-rank recovery experiment");
  bench->add_option("--dims", dims, "p,q,r");
  bench->add_option("--rank", cfg.signal_rank)->check(CLI::PositiveNumber);
  bench->add_option("--noise", cfg.noise_norm);
  bench->add_option("--trials", cfg.trials);
  bench->add_option("--restarts", cfg.random_restarts);
  bench->add_option("--tol", cfg.tol);
  bench->add_option("--max-iter", cfg.max_iter);
  bench->add_option("--seed", cfg.seed);
  bench->add_option("--methods", methods, "Comma list of random,qr1,sigma4,sharp");
  bench->add_option("--threads", cfg.threads, "0 uses every core");
  bench->add_option("--out", out_path, "Per-trial CSV (stdout if omitted)");
  bench->add_option("--json", json_path, "Aggregate JSON (stderr if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*census) return run_census(census_degree);
    if (*eval) return run_evaluate(diagram_path, tensor_path);
    if (*inv) return run_invariants(tensor_path);
    if (*amp) return run_amplify(tensor_path, kind, out_path);
    if (*dec) return run_decompose(tensor_path, rank, init, tol, max_iter, seed);
    if (*bench) return run_bench(cfg, dims, methods, out_path, json_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
