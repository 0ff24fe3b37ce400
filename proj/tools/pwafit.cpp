// Command-line surface for the exact PWA regression toolkit: fit, enumerate,
// reduce, oracle, gen, bench. Every command prints a machine-readable JSON
// report to stdout (unless --quiet) and a one-line summary to stderr.
// Exit codes: 0 success, 2 malformed input, 3 guard or precondition.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "pwa/data.hpp"
#include "pwa/enumeration.hpp"
#include "pwa/reduction.hpp"
#include "pwa/regression.hpp"
#include "pwa/solver.hpp"

namespace {

using nlohmann::json;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

bool g_quiet = false;

void emit(const json& report, const std::string& human) {
  if (!g_quiet) std::cout << report.dump(2) << std::endl;
  std::cerr << human << std::endl;
}

pwa::Loss parse_loss(const std::string& name) {
  if (name == "squared") return pwa::Loss::Squared;
  if (name == "abs") return pwa::Loss::Absolute;
  throw pwa::BadInput("unknown loss '" + name + "' (expected squared or abs)");
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::string field;
  std::stringstream ss(text);
  while (std::getline(ss, field, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stoll(field, &pos));
      if (pos != field.size()) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      throw pwa::BadInput("malformed integer list entry '" + field + "'");
    }
  }
  if (out.empty()) throw pwa::BadInput("empty integer list");
  return out;
}

std::string labeled_path_for(const std::string& model_path) {
  const auto dot = model_path.rfind('.');
  const std::string stem =
      dot == std::string::npos ? model_path : model_path.substr(0, dot);
  return stem + ".labeled.csv";
}

Eigen::VectorXd submodel_predictions(const pwa::PWAModel& model,
                                     const pwa::Dataset& data,
                                     const pwa::Labeling& labels) {
  Eigen::VectorXd yhat(data.size());
  const auto d = data.dim();
  for (Eigen::Index i = 0; i < data.size(); ++i)
    yhat(i) = model.submodels.row(labels(i) - 1).head(d).dot(data.X.row(i)) +
              model.submodels(labels(i) - 1, d);
  return yhat;
}

int cmd_fit(const std::string& data_path, int modes, const std::string& loss,
            int parallel, const std::string& out_path,
            std::string labeled_path) {
  Timer timer;
  const pwa::Dataset data = pwa::read_dataset_csv(data_path);
  const int N = static_cast<int>(data.size());
  const int d = static_cast<int>(data.dim());
  if (modes < 2 || modes > N / (d + 1))
    throw pwa::InstanceTooSmall("fit: modes must lie in [2, N/(d+1)]");

  pwa::SolveOptions opts;
  opts.loss = parse_loss(loss);
  opts.workers = parallel;
  const pwa::SolveResult res = pwa::solve_exact(data, modes, opts);

  pwa::write_model_json(res.model, out_path);
  if (labeled_path.empty()) labeled_path = labeled_path_for(out_path);
  pwa::write_labeled_csv(data, res.labeling,
                         submodel_predictions(res.model, data, res.labeling),
                         labeled_path);

  json report{{"command", "fit"},
              {"data", data_path},
              {"n", modes},
              {"d", d},
              {"N", N},
              {"loss", loss},
              {"best_cost", res.best_cost},
              {"unverified_best_cost", res.unverified_best_cost},
              {"iterations", res.iterations},
              {"skipped_degenerate", res.skipped_degenerate},
              {"boundary_pattern_mismatches", res.boundary_pattern_mismatches},
              {"certified", res.certified},
              {"wall_time_s", timer.seconds()},
              {"outputs", {{"model", out_path}, {"labeled", labeled_path}}}};
  char line[160];
  std::snprintf(line, sizeof(line), "fit: J* = %.6g over %llu candidates -> %s",
                res.best_cost,
                static_cast<unsigned long long>(res.iterations),
                out_path.c_str());
  emit(report, line);
  return 0;
}

int cmd_enumerate(const std::string& data_path, int modes, bool dedup,
                  const std::string& out_path) {
  Timer timer;
  const pwa::Dataset data = pwa::read_dataset_csv(data_path);
  const int N = static_cast<int>(data.size());
  const int d = static_cast<int>(data.dim());
  if (N <= d) throw pwa::BadInput("enumerate: need N > d");
  if (modes < 2) throw pwa::BadInput("enumerate: need modes >= 2");

  pwa::EnumOptions opts;
  opts.dedup = dedup;
  pwa::EnumStats stats;
  const std::vector<pwa::Labeling> labelings =
      pwa::enumerate_multiclass_labelings(data.X, modes, opts, &stats);

  std::ofstream out(out_path);
  if (!out) throw pwa::BadInput(out_path + ": cannot open for writing");
  for (const auto& q : labelings) {
    for (Eigen::Index i = 0; i < q.size(); ++i) {
      if (i) out << ",";
      // Binary labelings use the paper-style {-1,+1} convention.
      out << (modes == 2 ? (q(i) == 1 ? 1 : -1) : q(i));
    }
    out << "\n";
  }

  const double per_pair =
      std::ldexp(static_cast<double>(pwa::binomial(N, d)), d + 1);
  const double bound =
      modes == 2 ? per_pair : std::pow(per_pair, modes * (modes - 1) / 2);
  json report{{"command", "enumerate"},
              {"data", data_path},
              {"n", modes},
              {"d", d},
              {"N", N},
              {"dedup", dedup},
              {"distinct", labelings.size()},
              {"candidates", stats.candidates},
              {"tuples", stats.tuples},
              {"growth_bound", bound},
              {"within_bound", static_cast<double>(labelings.size()) <= bound},
              {"degenerate_subsets", stats.degenerate_subsets},
              {"wall_time_s", timer.seconds()},
              {"outputs", {{"labelings", out_path}}}};
  char line[160];
  std::snprintf(line, sizeof(line),
                "enumerate: %zu distinct labelings (bound %.0f) -> %s",
                labelings.size(), bound, out_path.c_str());
  emit(report, line);
  return 0;
}

int cmd_reduce(const std::string& partition, int parallel,
               const std::string& out_path) {
  Timer timer;
  pwa::PartitionInstance inst{parse_int_list(partition)};
  inst.validate();

  pwa::SolveOptions opts;
  opts.workers = parallel;
  const pwa::PartitionDecision dec = pwa::decide_partition_via_pwa(inst, opts);

  const pwa::GadgetDataset gadget = pwa::partition_to_dataset(inst);
  pwa::write_dataset_csv(gadget.data, out_path);

  json witness = json::array();
  json witness_values = json::array();
  for (const int i : dec.witness) {
    witness.push_back(i);
    witness_values.push_back(inst.s[i]);
  }
  json report{{"command", "reduce"},
              {"partition", partition},
              {"d", inst.size()},
              {"verdict", dec.yes ? "yes" : "no"},
              {"witness_indices", witness},
              {"witness_values", witness_values},
              {"best_cost", dec.solve.best_cost},
              {"iterations", dec.solve.iterations},
              {"skipped_degenerate", dec.solve.skipped_degenerate},
              {"zero_cost_unrecovered", dec.zero_cost_unrecovered},
              {"wall_time_s", timer.seconds()},
              {"outputs", {{"gadget", out_path}}}};
  std::string line = std::string("reduce: partition ") +
                     (dec.yes ? "yes, witness {" : "no");
  if (dec.yes) {
    for (std::size_t i = 0; i < dec.witness.size(); ++i)
      line += (i ? "," : "") + std::to_string(inst.s[dec.witness[i]]);
    line += "}";
  }
  emit(report, line);
  return 0;
}

int cmd_oracle(const std::string& data_path, int modes, bool realizable_only,
               const std::string& loss) {
  Timer timer;
  const pwa::Dataset data = pwa::read_dataset_csv(data_path);
  pwa::OracleOptions opts;
  opts.loss = parse_loss(loss);
  opts.realizable_only = realizable_only;
  const pwa::SolveResult res = pwa::brute_force_oracle(data, modes, opts);

  json report{{"command", "oracle"},
              {"data", data_path},
              {"n", modes},
              {"realizable_only", realizable_only},
              {"best_cost", res.best_cost},
              {"unfiltered_best_cost", res.unverified_best_cost},
              {"labelings_enumerated", res.iterations},
              {"wall_time_s", timer.seconds()}};
  char line[160];
  std::snprintf(line, sizeof(line), "oracle: J* = %.6g over %llu labelings",
                res.best_cost, static_cast<unsigned long long>(res.iterations));
  emit(report, line);
  return 0;
}

int cmd_gen(int num, int dim, int modes, double noise_std, std::uint64_t seed,
            const std::string& model_in, const std::string& model_out,
            const std::string& out_path, std::string labeled_path) {
  Timer timer;
  pwa::GeneratorConfig cfg;
  cfg.model = model_in.empty() ? pwa::random_pwa_model(modes, dim, seed)
                               : pwa::read_model_json(model_in);
  cfg.N = num;
  cfg.noise_std = noise_std;
  cfg.seed = seed;
  const pwa::GeneratedData gen = pwa::generate_pwa_dataset(cfg);

  pwa::write_dataset_csv(gen.data, out_path);
  if (labeled_path.empty()) labeled_path = labeled_path_for(out_path);
  pwa::write_labeled_csv(gen.data, gen.labels,
                         submodel_predictions(cfg.model, gen.data, gen.labels),
                         labeled_path);
  if (!model_out.empty()) pwa::write_model_json(cfg.model, model_out);

  json outputs{{"data", out_path}, {"labeled", labeled_path}};
  if (!model_out.empty()) outputs["model"] = model_out;
  json report{{"command", "gen"},
              {"N", num},
              {"d", static_cast<int>(cfg.model.dim())},
              {"n", cfg.model.n},
              {"noise_std", noise_std},
              {"seed", seed},
              {"wall_time_s", timer.seconds()},
              {"outputs", outputs}};
  char line[160];
  std::snprintf(line, sizeof(line), "gen: %d points in dimension %d -> %s", num,
                static_cast<int>(cfg.model.dim()), out_path.c_str());
  emit(report, line);
  return 0;
}

int cmd_bench(int dim, const std::string& sizes, int reps, int parallel,
              std::uint64_t seed) {
  Timer timer;
  const auto size_list = parse_int_list(sizes);
  if (reps < 1) throw pwa::BadInput("bench: need reps >= 1");

  json table = json::array();
  std::vector<double> log_n, log_t;
  for (const auto size : size_list) {
    const int N = static_cast<int>(size);
    pwa::GeneratorConfig cfg;
    cfg.model = pwa::random_pwa_model(2, dim, seed + static_cast<std::uint64_t>(N));
    cfg.N = N;
    cfg.seed = seed + static_cast<std::uint64_t>(N);
    const pwa::GeneratedData gen = pwa::generate_pwa_dataset(cfg);

    pwa::SolveOptions opts;
    opts.workers = parallel;
    double best = std::numeric_limits<double>::infinity();
    pwa::SolveResult res;
    for (int r = 0; r < reps; ++r) {
      Timer t;
      res = pwa::solve_binary_exact(gen.data, opts);
      best = std::min(best, t.seconds());
    }
    table.push_back({{"N", N},
                     {"seconds", best},
                     {"iterations", res.iterations},
                     {"best_cost", res.best_cost}});
    log_n.push_back(std::log(static_cast<double>(N)));
    log_t.push_back(std::log(std::max(best, 1e-9)));
  }

  // Least-squares slope of log time against log N: the empirical exponent.
  const auto k = static_cast<double>(log_n.size());
  double mean_n = 0, mean_t = 0;
  for (std::size_t i = 0; i < log_n.size(); ++i) {
    mean_n += log_n[i];
    mean_t += log_t[i];
  }
  mean_n /= k;
  mean_t /= k;
  double cov = 0, var = 0;
  for (std::size_t i = 0; i < log_n.size(); ++i) {
    cov += (log_n[i] - mean_n) * (log_t[i] - mean_t);
    var += (log_n[i] - mean_n) * (log_n[i] - mean_n);
  }
  const double slope = var > 0 ? cov / var : 0;

  json report{{"command", "bench"},
              {"d", dim},
              {"reps", reps},
              {"parallel", parallel},
              {"seed", seed},
              {"slope", slope},
              {"expected_exponent", dim + 1},
              {"timings", table},
              {"wall_time_s", timer.seconds()}};
  char line[160];
  std::snprintf(line, sizeof(line),
                "bench: empirical exponent %.2f (d+1 = %d) over %zu sizes",
                slope, dim + 1, size_list.size());
  emit(report, line);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified globally optimal piecewise affine regression"};
  app.require_subcommand(1);
  app.set_config("--config", "", "optional key=value config file");
  app.add_flag("--quiet", g_quiet, "suppress the JSON report on stdout");
  std::uint64_t seed = 12345;
  app.add_option("--seed", seed, "seed for randomized commands");

  // fit
  auto* fit = app.add_subcommand("fit", "exact global PWA fit of a CSV dataset");
  fit->fallthrough();
  std::string fit_data, fit_loss = "squared", fit_out = "model.json", fit_labeled;
  int fit_modes = 2, fit_parallel = 0;
  fit->add_option("--data", fit_data, "dataset CSV (header x1,...,xd,y)")->required();
  fit->add_option("--modes", fit_modes, "number of modes n");
  fit->add_option("--loss", fit_loss, "pointwise loss: squared or abs");
  fit->add_option("--parallel", fit_parallel, "worker threads (0 = all cores)");
  fit->add_option("--out", fit_out, "output model JSON path");
  fit->add_option("--labeled-out", fit_labeled, "labeled CSV path (default <out>.labeled.csv)");

  // enumerate
  auto* enu = app.add_subcommand("enumerate", "dump all realizable labelings of a dataset");
  enu->fallthrough();
  std::string enu_data, enu_out = "labelings.txt";
  int enu_modes = 2;
  bool enu_dedup = true;
  enu->add_option("--data", enu_data, "dataset CSV")->required();
  enu->add_option("--modes", enu_modes, "number of modes n");
  enu->add_flag("--dedup,!--no-dedup", enu_dedup, "deduplicate labelings (default on)");
  enu->add_option("--out", enu_out, "output file, one labeling per line");

  // reduce
  auto* red = app.add_subcommand("reduce", "decide a Partition instance through the PWA gadget");
  red->fallthrough();
  std::string red_partition, red_out = "gadget.csv";
  int red_parallel = 0;
  red->add_option("--partition", red_partition, "comma-separated positive integers")->required();
  red->add_option("--parallel", red_parallel, "worker threads (0 = all cores)");
  red->add_option("--out", red_out, "gadget dataset CSV path");

  // oracle
  auto* ora = app.add_subcommand("oracle", "exponential brute-force reference solver");
  ora->fallthrough();
  std::string ora_data, ora_loss = "squared";
  int ora_modes = 2;
  bool ora_realizable = true;
  ora->add_option("--data", ora_data, "dataset CSV")->required();
  ora->add_option("--modes", ora_modes, "number of modes n");
  ora->add_flag("--realizable-only,!--no-realizable-only", ora_realizable,
                "restrict to linearly realizable labelings (default on)");
  ora->add_option("--loss", ora_loss, "pointwise loss: squared or abs");

  // gen
  auto* gen = app.add_subcommand("gen", "sample a dataset from a planted PWA model");
  gen->fallthrough();
  std::string gen_model_in, gen_model_out, gen_out = "data.csv", gen_labeled;
  int gen_num = 100, gen_dim = 2, gen_modes = 2;
  double gen_noise = 0;
  gen->add_option("--num", gen_num, "number of points");
  gen->add_option("--dim", gen_dim, "regressor dimension (random model)");
  gen->add_option("--modes", gen_modes, "number of modes (random model)");
  gen->add_option("--noise-std", gen_noise, "Gaussian output noise");
  gen->add_option("--model", gen_model_in, "planted model JSON (otherwise random)");
  gen->add_option("--model-out", gen_model_out, "write the planted model JSON here");
  gen->add_option("--out", gen_out, "dataset CSV path");
  gen->add_option("--labeled-out", gen_labeled, "labeled CSV path (default <out>.labeled.csv)");

  // bench
  auto* ben = app.add_subcommand("bench", "timing sweep over N at fixed dimension");
  ben->fallthrough();
  std::string ben_sizes = "20,40,80,160";
  int ben_dim = 1, ben_reps = 3, ben_parallel = 1;
  ben->add_option("--dim", ben_dim, "regressor dimension");
  ben->add_option("--sizes", ben_sizes, "comma-separated values of N");
  ben->add_option("--reps", ben_reps, "repetitions per size (minimum is kept)");
  ben->add_option("--parallel", ben_parallel, "worker threads (default 1 for clean scaling)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fit->parsed())
      return cmd_fit(fit_data, fit_modes, fit_loss, fit_parallel, fit_out, fit_labeled);
    if (enu->parsed()) return cmd_enumerate(enu_data, enu_modes, enu_dedup, enu_out);
    if (red->parsed()) return cmd_reduce(red_partition, red_parallel, red_out);
    if (ora->parsed()) return cmd_oracle(ora_data, ora_modes, ora_realizable, ora_loss);
    if (gen->parsed())
      return cmd_gen(gen_num, gen_dim, gen_modes, gen_noise, seed, gen_model_in,
                     gen_model_out, gen_out, gen_labeled);
    if (ben->parsed()) return cmd_bench(ben_dim, ben_sizes, ben_reps, ben_parallel, seed);
  } catch (const pwa::InstanceTooSmall& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 3;
  } catch (const pwa::InstanceTooLarge& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 3;
  } catch (const pwa::BadInput& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const pwa::SequenceTooShort& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const pwa::NotAPartition& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
