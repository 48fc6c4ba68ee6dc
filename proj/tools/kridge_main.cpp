// Command-line front end: fit, predict, tune and simulate subcommands over
// the kridge core library. Every artifact embeds the fully-resolved,
// content-determining configuration so a run can be reproduced bitwise from
// the artifact alone (CSV outputs carry it in a .meta.json sidecar or the
// accompanying summary).

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "kridge/io.hpp"
#include "kridge/model.hpp"
#include "kridge/nuclear.hpp"
#include "kridge/reduced_rank.hpp"
#include "kridge/ridge.hpp"
#include "kridge/simulate.hpp"
#include "kridge/tuning.hpp"
#include "kridge/version.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using json = nlohmann::json;

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw kridge::io_error("cannot open config file " + path);
  json j = json::parse(in);
  // Pointing --config at a previous artifact reuses its embedded config.
  if (j.is_object() && j.contains("config") && j.at("config").is_object())
    return j.at("config");
  if (!j.is_object())
    throw kridge::parse_error(path + ": config must be a JSON object");
  return j;
}

template <typename T>
void apply_cfg(const json& cfg, const char* key, const CLI::Option* opt,
               T& var) {
  if (opt != nullptr && opt->count() > 0) return;  // flag overrides config
  if (cfg.contains(key)) var = cfg.at(key).get<T>();
}

json score_to_json(double score) {
  return std::isfinite(score) ? json(score) : json("inf");
}

// Splits a data table into inputs and responses. With d == 0 the input
// columns are the headers starting with "x".
kridge::Dataset split_dataset(const kridge::CsvTable& table, int d,
                              const std::string& what) {
  const auto cols = static_cast<int>(table.header.size());
  if (d == 0) {
    for (const std::string& name : table.header) {
      if (!name.empty() && name[0] == 'x')
        ++d;
      else
        break;
    }
    if (d == 0)
      throw std::invalid_argument(
          what + ": cannot infer input columns (no leading 'x*' headers); "
                 "pass --d");
  }
  if (d < 1 || d >= cols)
    throw std::invalid_argument(what + ": d = " + std::to_string(d) +
                                " leaves no response columns (file has " +
                                std::to_string(cols) + " columns)");
  return kridge::Dataset(table.values.leftCols(d), table.values.rightCols(cols - d));
}

std::vector<std::string> method_names(const std::vector<kridge::Method>& ms) {
  std::vector<std::string> out;
  for (kridge::Method m : ms) out.emplace_back(kridge::to_string(m));
  return out;
}

std::vector<kridge::Method> methods_from_names(
    const std::vector<std::string>& names) {
  std::vector<kridge::Method> out;
  for (const std::string& name : names)
    out.push_back(kridge::method_from_string(name));
  return out;
}

struct FitArgs {
  std::string config_path, data_path, out_path, method_name = "elementwise";
  double nu = 0.0, lambda = 0.0, lambda1 = 0.0, lambda2 = 0.0;
  int d = 0, r1 = 0;
  kridge::SolverOptions solver;
  CLI::Option *config_opt = nullptr, *data_opt = nullptr, *method_opt = nullptr,
              *nu_opt = nullptr, *lambda_opt = nullptr, *lambda1_opt = nullptr,
              *lambda2_opt = nullptr, *d_opt = nullptr, *r1_opt = nullptr,
              *tol_opt = nullptr, *iters_opt = nullptr, *starts_opt = nullptr,
              *seed_opt = nullptr;
};

int run_fit(FitArgs& a) {
  json cfg = a.config_path.empty() ? json::object()
                                   : load_config(a.config_path);
  apply_cfg(cfg, "data", a.data_opt, a.data_path);
  apply_cfg(cfg, "method", a.method_opt, a.method_name);
  apply_cfg(cfg, "nu", a.nu_opt, a.nu);
  apply_cfg(cfg, "lambda", a.lambda_opt, a.lambda);
  apply_cfg(cfg, "lambda2", a.lambda2_opt, a.lambda2);
  apply_cfg(cfg, "d", a.d_opt, a.d);
  apply_cfg(cfg, "r1", a.r1_opt, a.r1);
  apply_cfg(cfg, "tol", a.tol_opt, a.solver.tol);
  apply_cfg(cfg, "max_iters", a.iters_opt, a.solver.max_iters);
  apply_cfg(cfg, "starts", a.starts_opt, a.solver.starts);
  apply_cfg(cfg, "seed", a.seed_opt, a.solver.seed);

  if (a.data_path.empty())
    throw std::invalid_argument("fit: --data is required");
  if (a.out_path.empty()) throw std::invalid_argument("fit: --out is required");
  if (!(a.nu > 0.0)) throw std::invalid_argument("fit: --nu is required");

  const kridge::Method method = kridge::method_from_string(a.method_name);
  const kridge::CsvTable table = kridge::read_csv(a.data_path);
  const kridge::Dataset data = split_dataset(table, a.d, "fit");
  const int p = static_cast<int>(data.p());

  double lambda = a.lambda;
  if (a.lambda_opt->count() == 0 && !cfg.contains("lambda")) {
    if (a.lambda1_opt->count() > 0 || cfg.contains("lambda1")) {
      double lambda1 = a.lambda1;
      apply_cfg(cfg, "lambda1", a.lambda1_opt, lambda1);
      lambda = lambda1 * p;
    } else {
      throw std::invalid_argument("fit: pass --lambda or --lambda1");
    }
  }
  if (!(lambda > 0.0))
    throw std::invalid_argument("fit: lambda must be > 0");

  const kridge::KernelSpec spec(a.nu, static_cast<int>(data.d()));
  const kridge::KernelMatrix K = kridge::kernel_matrix(spec, data.X);

  kridge::FittedModel model{.coeff = {},
                            .Xtrain = {},
                            .kernel = spec};
  double objective = 0.0;
  switch (method) {
    case kridge::Method::elementwise:
      model = kridge::fit_elementwise(K, data, spec, lambda);
      objective = kridge::rank_objective(K, data.Y, model.coeff, lambda / p);
      break;
    case kridge::Method::hard_rank:
      model = kridge::fit_hard_rank(K, data, spec, lambda, a.r1);
      objective = kridge::rank_objective(K, data.Y, model.coeff, lambda / p);
      break;
    case kridge::Method::nuclear_relaxed: {
      kridge::RelaxedFit fit = kridge::fit_relaxed(K, data, spec, lambda / p,
                                                   a.lambda2, a.solver);
      model = std::move(fit.model);
      objective = kridge::relaxed_objective(K, data.Y, model.coeff, lambda / p,
                                            a.lambda2);
      std::cout << "solver: " << kridge::to_string(fit.report.stop_reason)
                << " after " << fit.report.iterations << " iterations\n";
      break;
    }
  }

  json echo{{"command", "fit"},
            {"data", a.data_path},
            {"d", static_cast<int>(data.d())},
            {"method", std::string(kridge::to_string(method))},
            {"nu", a.nu},
            {"lambda", lambda},
            {"seed", a.solver.seed}};
  if (method == kridge::Method::hard_rank) echo["r1"] = a.r1;
  if (method == kridge::Method::nuclear_relaxed) {
    echo["lambda2"] = a.lambda2;
    echo["tol"] = a.solver.tol;
    echo["max_iters"] = a.solver.max_iters;
    echo["starts"] = a.solver.starts;
  }

  json artifact = json::parse(kridge::model_to_json(model));
  artifact["config"] = echo;
  kridge::write_text_atomic(a.out_path, artifact.dump(2));

  std::cout << "training objective: " << kridge::format_double(objective)
            << "\neffective rank: " << model.effective_rank << "\nwrote "
            << a.out_path << "\n";
  return 0;
}

struct PredictArgs {
  std::string config_path, model_path, data_path, out_path;
  CLI::Option *model_opt = nullptr, *data_opt = nullptr;
};

int run_predict(PredictArgs& a) {
  json cfg = a.config_path.empty() ? json::object()
                                   : load_config(a.config_path);
  apply_cfg(cfg, "model", a.model_opt, a.model_path);
  apply_cfg(cfg, "data", a.data_opt, a.data_path);
  if (a.model_path.empty())
    throw std::invalid_argument("predict: --model is required");
  if (a.data_path.empty())
    throw std::invalid_argument("predict: --data is required");
  if (a.out_path.empty())
    throw std::invalid_argument("predict: --out is required");

  const kridge::FittedModel model = kridge::load_model(a.model_path);
  const kridge::CsvTable table = kridge::read_csv(a.data_path);
  if (static_cast<Eigen::Index>(table.header.size()) !=
      model.Xtrain.cols())
    throw std::invalid_argument(
        "predict: input file has " + std::to_string(table.header.size()) +
        " columns, model expects d = " + std::to_string(model.Xtrain.cols()));

  const kridge::Matrix pred = kridge::predict(model, table.values);
  std::vector<std::string> header;
  for (Eigen::Index k = 0; k < model.coeff.rows(); ++k)
    header.push_back("out_" + std::to_string(k + 1));
  kridge::write_csv(a.out_path, header, pred);

  json meta{{"schema", "kridge-predict-meta"},
            {"tool_version", kridge::version_string},
            {"config", json{{"command", "predict"},
                            {"model", a.model_path},
                            {"data", a.data_path}}}};
  kridge::write_text_atomic(a.out_path + ".meta.json", meta.dump(2));
  std::cout << "wrote " << a.out_path << " (" << pred.rows() << " rows)\n";
  return 0;
}

struct TuneArgs {
  std::string config_path, train_path, valid_path, out_path,
      method_name = "elementwise";
  double nu = 0.0;
  int d = 0;
  bool gcv = false;
  std::vector<double> lambdas, lambda2s;
  std::vector<int> r1_values;
  kridge::SolverOptions solver;
  CLI::Option *train_opt = nullptr, *valid_opt = nullptr,
              *method_opt = nullptr, *nu_opt = nullptr, *d_opt = nullptr,
              *gcv_opt = nullptr, *lambdas_opt = nullptr,
              *r1_opt = nullptr, *lambda2s_opt = nullptr, *tol_opt = nullptr,
              *iters_opt = nullptr, *starts_opt = nullptr,
              *seed_opt = nullptr;
};

int run_tune(TuneArgs& a) {
  json cfg = a.config_path.empty() ? json::object()
                                   : load_config(a.config_path);
  apply_cfg(cfg, "train", a.train_opt, a.train_path);
  apply_cfg(cfg, "valid", a.valid_opt, a.valid_path);
  apply_cfg(cfg, "method", a.method_opt, a.method_name);
  apply_cfg(cfg, "nu", a.nu_opt, a.nu);
  apply_cfg(cfg, "d", a.d_opt, a.d);
  apply_cfg(cfg, "gcv", a.gcv_opt, a.gcv);
  apply_cfg(cfg, "lambdas", a.lambdas_opt, a.lambdas);
  apply_cfg(cfg, "r1_values", a.r1_opt, a.r1_values);
  apply_cfg(cfg, "lambda2s", a.lambda2s_opt, a.lambda2s);
  apply_cfg(cfg, "tol", a.tol_opt, a.solver.tol);
  apply_cfg(cfg, "max_iters", a.iters_opt, a.solver.max_iters);
  apply_cfg(cfg, "starts", a.starts_opt, a.solver.starts);
  apply_cfg(cfg, "seed", a.seed_opt, a.solver.seed);

  if (a.train_path.empty())
    throw std::invalid_argument("tune: --train is required");
  if (a.out_path.empty())
    throw std::invalid_argument("tune: --out is required");
  if (!(a.nu > 0.0)) throw std::invalid_argument("tune: --nu is required");

  const kridge::Method method = kridge::method_from_string(a.method_name);
  const kridge::CsvTable train_table = kridge::read_csv(a.train_path);
  const kridge::Dataset train = split_dataset(train_table, a.d, "tune");
  const int p = static_cast<int>(train.p());
  const kridge::KernelSpec spec(a.nu, static_cast<int>(train.d()));

  kridge::TuneGrid grid = kridge::TuneGrid::defaults(method, p);
  if (!a.lambdas.empty()) {
    grid.lambdas = a.lambdas;
    std::sort(grid.lambdas.rbegin(), grid.lambdas.rend());
  }
  if (!a.r1_values.empty()) {
    grid.r1_values = a.r1_values;
    std::sort(grid.r1_values.begin(), grid.r1_values.end());
  }
  if (!a.lambda2s.empty()) {
    grid.lambda2s = a.lambda2s;
    std::sort(grid.lambda2s.begin(), grid.lambda2s.end());
  }

  kridge::TuneResult result;
  if (a.gcv) {
    if (method != kridge::Method::elementwise)
      throw std::invalid_argument("tune: --gcv only applies to elementwise");
    result = kridge::gcv_univariate(train, spec, grid.lambdas);
  } else {
    if (a.valid_path.empty())
      throw std::invalid_argument(
          "tune: --valid is required for validation-set tuning");
    const kridge::CsvTable valid_table = kridge::read_csv(a.valid_path);
    const kridge::Dataset valid =
        split_dataset(valid_table, static_cast<int>(train.d()), "tune");
    result = kridge::tune_validation(train, valid, spec, grid, method,
                                     a.solver);
  }

  json echo{{"command", "tune"},
            {"train", a.train_path},
            {"gcv", a.gcv},
            {"method", std::string(kridge::to_string(method))},
            {"nu", a.nu},
            {"d", static_cast<int>(train.d())},
            {"lambdas", grid.lambdas},
            {"tol", a.solver.tol},
            {"max_iters", a.solver.max_iters},
            {"starts", a.solver.starts},
            {"seed", a.solver.seed}};
  if (!a.gcv) echo["valid"] = a.valid_path;
  if (method == kridge::Method::hard_rank) echo["r1_values"] = grid.r1_values;
  if (method == kridge::Method::nuclear_relaxed)
    echo["lambda2s"] = grid.lambda2s;

  json scores = json::array();
  for (const kridge::TuneScore& ts : result.scores) {
    json row{{"lambda", ts.lambda}, {"score", score_to_json(ts.score)}};
    if (method == kridge::Method::hard_rank) row["r1"] = ts.r1;
    if (method == kridge::Method::nuclear_relaxed) row["lambda2"] = ts.lambda2;
    scores.push_back(row);
  }
  json best{{"lambda", result.best.lambda},
            {"score", score_to_json(result.best.score)}};
  if (method == kridge::Method::hard_rank) best["r1"] = result.best.r1;
  if (method == kridge::Method::nuclear_relaxed)
    best["lambda2"] = result.best.lambda2;

  json artifact{{"schema", "kridge-tune"},
                {"tool_version", kridge::version_string},
                {"method", std::string(kridge::to_string(method))},
                {"best", best},
                {"scores", scores},
                {"config", echo}};
  kridge::write_text_atomic(a.out_path, artifact.dump(2));
  std::cout << "best lambda: " << kridge::format_double(result.best.lambda);
  if (method == kridge::Method::hard_rank)
    std::cout << ", r1: " << result.best.r1;
  if (method == kridge::Method::nuclear_relaxed)
    std::cout << ", lambda2: " << kridge::format_double(result.best.lambda2);
  std::cout << "\nwrote " << a.out_path << "\n";
  return 0;
}

struct SimArgs {
  std::string config_path, out_prefix;
  kridge::SimConfig sim;
  std::vector<std::string> method_names_raw;
  CLI::Option *d_opt = nullptr, *r_opt = nullptr, *s_opt = nullptr,
              *p_opt = nullptr, *n_opt = nullptr, *noise_opt = nullptr,
              *seed_opt = nullptr, *ntest_opt = nullptr, *reps_opt = nullptr,
              *methods_opt = nullptr, *tol_opt = nullptr,
              *iters_opt = nullptr;
};

int run_simulate(SimArgs& a) {
  json cfg = a.config_path.empty() ? json::object()
                                   : load_config(a.config_path);
  apply_cfg(cfg, "d", a.d_opt, a.sim.d);
  apply_cfg(cfg, "r", a.r_opt, a.sim.r);
  apply_cfg(cfg, "s", a.s_opt, a.sim.s);
  apply_cfg(cfg, "p", a.p_opt, a.sim.p);
  apply_cfg(cfg, "n", a.n_opt, a.sim.n);
  apply_cfg(cfg, "noise_sd", a.noise_opt, a.sim.noise_sd);
  apply_cfg(cfg, "seed", a.seed_opt, a.sim.seed);
  apply_cfg(cfg, "n_test", a.ntest_opt, a.sim.n_test);
  apply_cfg(cfg, "replicates", a.reps_opt, a.sim.replicates);
  apply_cfg(cfg, "tol", a.tol_opt, a.sim.solver.tol);
  apply_cfg(cfg, "max_iters", a.iters_opt, a.sim.solver.max_iters);
  if (a.methods_opt->count() > 0)
    a.sim.methods = methods_from_names(a.method_names_raw);
  else if (cfg.contains("methods"))
    a.sim.methods =
        methods_from_names(cfg.at("methods").get<std::vector<std::string>>());

  if (a.out_prefix.empty())
    throw std::invalid_argument("simulate: --out is required");

  const kridge::SimResult result = kridge::run_experiment(a.sim);

  // Per-replicate table.
  std::string csv = "replicate,method,lambda,r1_or_lambda2,l2_error\n";
  for (const kridge::ReplicateRecord& rec : result.records) {
    csv += std::to_string(rec.replicate);
    csv += ',';
    csv += kridge::to_string(rec.method);
    csv += ',';
    csv += kridge::format_double(rec.lambda);
    csv += ',';
    csv += kridge::format_double(rec.r1_or_lambda2);
    csv += ',';
    csv += kridge::format_double(rec.l2);
    csv += '\n';
  }
  kridge::write_text_atomic(a.out_prefix + ".csv", csv);

  json echo{{"command", "simulate"},
            {"d", a.sim.d},
            {"r", a.sim.r},
            {"s", a.sim.sparsity()},
            {"p", a.sim.p},
            {"n", a.sim.n},
            {"noise_sd", a.sim.noise_sd},
            {"seed", a.sim.seed},
            {"n_test", a.sim.n_test},
            {"replicates", a.sim.replicates},
            {"methods", method_names(a.sim.methods)},
            {"tol", a.sim.solver.tol},
            {"max_iters", a.sim.solver.max_iters}};

  json per_method = json::object();
  for (const auto& [method, stats] : result.stats)
    per_method[std::string(kridge::to_string(method))] =
        json{{"median", stats.median},
             {"mean", stats.mean},
             {"count", stats.count}};

  json artifact{{"schema", "kridge-simulate"},
                {"tool_version", kridge::version_string},
                {"nu", a.sim.nu()},
                {"results", per_method},
                {"difference", std::isfinite(result.difference)
                                   ? json(result.difference)
                                   : json()},
                {"failed_replicates", result.failed_replicates},
                {"config", echo}};
  kridge::write_text_atomic(a.out_prefix + ".json", artifact.dump(2));

  std::cout << "wrote " << a.out_prefix << ".csv and " << a.out_prefix
            << ".json\n";
  for (const auto& [method, stats] : result.stats)
    std::cout << kridge::to_string(method)
              << " median l2 error: " << kridge::format_double(stats.median)
              << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reduced-rank multivariate kernel ridge regression"};
  app.require_subcommand(1);

  FitArgs fit;
  CLI::App* fit_cmd =
      app.add_subcommand("fit", "fit a model on a CSV training set");
  fit.config_opt = fit_cmd->add_option("--config", fit.config_path,
                                       "JSON config file (flags override)");
  fit.data_opt = fit_cmd->add_option("--data", fit.data_path,
                                     "training CSV (header row; inputs first)");
  fit_cmd->add_option("--out", fit.out_path, "output model JSON path");
  fit.method_opt = fit_cmd->add_option(
      "--method", fit.method_name, "elementwise | hard_rank | relaxed");
  fit.nu_opt = fit_cmd->add_option("--nu", fit.nu, "Matern smoothness");
  fit.d_opt = fit_cmd->add_option("--d", fit.d,
                                  "input column count (default: leading 'x*' "
                                  "headers)");
  fit.lambda_opt =
      fit_cmd->add_option("--lambda", fit.lambda, "system-level ridge value");
  fit.lambda1_opt = fit_cmd->add_option(
      "--lambda1", fit.lambda1, "per-output penalty; lambda = p * lambda1");
  fit.lambda2_opt = fit_cmd->add_option("--lambda2", fit.lambda2,
                                        "nuclear penalty (relaxed)");
  fit.r1_opt = fit_cmd->add_option("--r1", fit.r1, "rank bound (hard_rank)");
  fit.tol_opt = fit_cmd->add_option("--tol", fit.solver.tol,
                                    "relaxed solver tolerance");
  fit.iters_opt = fit_cmd->add_option("--max-iters", fit.solver.max_iters,
                                      "relaxed solver iteration cap");
  fit.starts_opt =
      fit_cmd->add_option("--starts", fit.solver.starts, "solver starts");
  fit.seed_opt = fit_cmd->add_option("--seed", fit.solver.seed,
                                     "seed for extra solver starts");

  PredictArgs pred;
  CLI::App* pred_cmd =
      app.add_subcommand("predict", "evaluate a saved model on new inputs");
  pred_cmd->add_option("--config", pred.config_path, "JSON config file");
  pred.model_opt =
      pred_cmd->add_option("--model", pred.model_path, "model JSON path");
  pred.data_opt = pred_cmd->add_option("--data", pred.data_path,
                                       "input CSV with exactly d columns");
  pred_cmd->add_option("--out", pred.out_path, "output predictions CSV");

  TuneArgs tune;
  CLI::App* tune_cmd = app.add_subcommand(
      "tune", "select hyperparameters by validation search or GCV");
  tune_cmd->add_option("--config", tune.config_path, "JSON config file");
  tune.train_opt =
      tune_cmd->add_option("--train", tune.train_path, "training CSV");
  tune.valid_opt =
      tune_cmd->add_option("--valid", tune.valid_path, "validation CSV");
  tune_cmd->add_option("--out", tune.out_path, "output JSON path");
  tune.method_opt = tune_cmd->add_option(
      "--method", tune.method_name, "elementwise | hard_rank | relaxed");
  tune.nu_opt = tune_cmd->add_option("--nu", tune.nu, "Matern smoothness");
  tune.d_opt = tune_cmd->add_option("--d", tune.d, "input column count");
  tune.gcv_opt = tune_cmd->add_flag("--gcv", tune.gcv,
                                    "generalized cross validation (p = 1)");
  tune.lambdas_opt = tune_cmd
                         ->add_option("--lambdas", tune.lambdas,
                                      "comma-separated lambda grid")
                         ->delimiter(',');
  tune.r1_opt = tune_cmd
                    ->add_option("--r1-values", tune.r1_values,
                                 "comma-separated r1 grid")
                    ->delimiter(',');
  tune.lambda2s_opt = tune_cmd
                          ->add_option("--lambda2s", tune.lambda2s,
                                       "comma-separated lambda2 grid")
                          ->delimiter(',');
  tune.tol_opt = tune_cmd->add_option("--tol", tune.solver.tol,
                                      "relaxed solver tolerance");
  tune.iters_opt = tune_cmd->add_option("--max-iters", tune.solver.max_iters,
                                        "relaxed solver iteration cap");
  tune.starts_opt =
      tune_cmd->add_option("--starts", tune.solver.starts, "solver starts");
  tune.seed_opt = tune_cmd->add_option("--seed", tune.solver.seed,
                                       "seed for extra solver starts");

  SimArgs sim;
  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "synthetic low-rank regression benchmark");
  sim_cmd->add_option("--config", sim.config_path, "JSON config file");
  sim_cmd->add_option("--out", sim.out_prefix,
                      "output prefix (<prefix>.csv and <prefix>.json)");
  sim.d_opt = sim_cmd->add_option("--d", sim.sim.d, "input dimension (1-6)");
  sim.r_opt = sim_cmd->add_option("--r", sim.sim.r, "true rank");
  sim.s_opt = sim_cmd->add_option("--s", sim.sim.s,
                                  "nonzero outputs (default: p)");
  sim.p_opt = sim_cmd->add_option("--p", sim.sim.p, "output dimension");
  sim.n_opt = sim_cmd->add_option("--n", sim.sim.n, "training sample size");
  sim.noise_opt =
      sim_cmd->add_option("--noise-sd", sim.sim.noise_sd, "noise stddev");
  sim.seed_opt = sim_cmd->add_option("--seed", sim.sim.seed, "master seed");
  sim.ntest_opt =
      sim_cmd->add_option("--n-test", sim.sim.n_test, "Halton test points");
  sim.reps_opt =
      sim_cmd->add_option("--replicates", sim.sim.replicates, "replicates");
  sim.methods_opt = sim_cmd
                        ->add_option("--methods", sim.method_names_raw,
                                     "comma-separated method list")
                        ->delimiter(',');
  sim.tol_opt = sim_cmd->add_option("--tol", sim.sim.solver.tol,
                                    "relaxed solver tolerance");
  sim.iters_opt = sim_cmd->add_option("--max-iters", sim.sim.solver.max_iters,
                                      "relaxed solver iteration cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fit_cmd->parsed()) return run_fit(fit);
    if (pred_cmd->parsed()) return run_predict(pred);
    if (tune_cmd->parsed()) return run_tune(tune);
    if (sim_cmd->parsed()) return run_simulate(sim);
    return 2;
  } catch (const kridge::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const kridge::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const kridge::numerical_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
