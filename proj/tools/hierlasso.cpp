// Command-line front end: relation listing, Hasse export, path fitting,
// validation-based selection, simulation studies, and timing benchmarks.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hierlasso/constraints.hpp"
#include "hierlasso/design.hpp"
#include "hierlasso/estimator.hpp"
#include "hierlasso/json_io.hpp"
#include "hierlasso/monomial.hpp"
#include "hierlasso/simulate.hpp"

namespace {

using namespace hierlasso;
using nlohmann::json;

constexpr int kExitInvalidInput = 2;
constexpr int kExitNumericalFailure = 3;

WeightScheme parse_weight(const std::string& s) {
  if (s == "unit") return WeightScheme::unit();
  if (s == "count") return WeightScheme::count();
  if (s.rfind("const:", 0) == 0) {
    double c;
    std::size_t pos = 0;
    try {
      c = std::stod(s.substr(6), &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad weight constant in '" + s + "'");
    }
    if (pos != s.size() - 6) throw std::invalid_argument("bad weight constant in '" + s + "'");
    return WeightScheme::constant(c);
  }
  throw std::invalid_argument("unknown weight scheme '" + s + "' (use unit, count, const:<c>)");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << text;
}

void emit(const std::optional<std::string>& out_path, const std::string& text) {
  if (out_path) {
    write_text(*out_path, text);
  } else {
    std::cout << text;
  }
}

// Shared flags for everything that fits a path.
struct FitArgs {
  std::string data_path;
  std::string model_path;
  std::string response;
  std::string constraint = "H";
  std::string weight = "unit";
  std::string method = "constrained";
  int n_lambda = 60;
  double delta = 0.0;
  std::string standardize = "on";
  bool refit = false;
};

void add_fit_flags(CLI::App* cmd, FitArgs* a) {
  cmd->add_option("--data", a->data_path, "training data CSV")->required();
  cmd->add_option("--model", a->model_path, "model JSON file")->required();
  cmd->add_option("--response", a->response, "response column name (default: last column)");
  cmd->add_option("--constraint", a->constraint, "constraint kind")
      ->check(CLI::IsMember({"H", "S", "W", "none"}));
  cmd->add_option("--weight", a->weight, "weight scheme: unit, count, const:<c>");
  cmd->add_option("--lambdas", a->n_lambda, "number of lambda grid points")
      ->check(CLI::Range(2, 100000));
  cmd->add_option("--method", a->method, "fitting method")
      ->check(CLI::IsMember({"constrained", "relaxed", "plain"}));
  cmd->add_option("--delta", a->delta, "relaxed-method ridge (0 = automatic)");
  cmd->add_option("--standardize", a->standardize, "standardize columns before fitting")
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_flag("--refit", a->refit, "attach least-squares refits to path points");
}

struct Fitted {
  Model model;
  ExpandedDesign design;
  ConstraintSystem constraint;
  LassoPath path;
  double lambda_max = 0.0;
};

Fitted fit_path(const FitArgs& a) {
  const RawTable raw = read_csv_file(a.data_path, a.response);
  Model m = model_from_json_file(a.model_path);
  ExpandedDesign design = expand_design(raw, m, a.standardize == "on");

  const HasseDiagram hasse = build_hasse(m);
  const ConstraintKind kind = constraint_kind_from_string(a.constraint);
  const ConstraintSystem cs =
      a.method == "plain" ? build_none(m.size())
                          : build_constraints(hasse, kind, parse_weight(a.weight));

  const Eigen::VectorXd grid = lambda_grid(design.dataset, a.n_lambda);
  PathOptions opts;
  opts.model = m;
  opts.compute_refit = a.refit;
  opts.delta = a.delta;

  Fitted f{std::move(m), std::move(design), cs, {}, grid(grid.size() - 1)};
  if (a.method == "relaxed") {
    f.path = relaxed_lasso_path(f.design.dataset, cs, grid, opts);
  } else {
    f.path = constrained_lasso_path(f.design.dataset, cs, grid, opts);
  }
  return f;
}

void print_path_summary(const Fitted& f) {
  int hierarchy_ok = 0;
  for (const PathPoint& pt : f.path.points) hierarchy_ok += pt.hierarchy_ok ? 1 : 0;
  std::cerr << "lambda_max = " << f.lambda_max << ", points = " << f.path.points.size()
            << ", hierarchy_ok at " << hierarchy_ok << "/" << f.path.points.size()
            << " points\n";
}

int cmd_relations(const std::string& model_path, const std::optional<std::string>& out_path) {
  const Model m = model_from_json_file(model_path);
  const RelationSet rels = generate_relations(m);
  std::ostringstream text;
  for (const Relation& r : rels.relations) {
    text << m.term(r.divisor).label() << " < " << m.term(r.multiple).label() << '\n';
  }
  emit(out_path, text.str());
  std::cerr << rels.size() << " relations over " << m.size() << " terms\n";
  return 0;
}

int cmd_hasse(const std::string& model_path, const std::optional<std::string>& out_path) {
  const Model m = model_from_json_file(model_path);
  const HasseDiagram h = build_hasse(m);
  emit(out_path, export_dot(h));
  std::cerr << h.node_count() << " nodes, " << h.edge_count() << " edges\n";
  return 0;
}

int cmd_path(const FitArgs& a, const std::optional<std::string>& out_prefix) {
  const Fitted f = fit_path(a);
  if (out_prefix) {
    write_text(*out_prefix + ".json", path_to_json(f.path, f.model));
    write_text(*out_prefix + ".csv", path_to_csv(f.path, f.model));
  } else {
    std::cout << path_to_json(f.path, f.model);
  }
  print_path_summary(f);
  return 0;
}

int cmd_select(const FitArgs& a, const std::string& valid_path,
               const std::optional<std::string>& out_path) {
  FitArgs fit_args = a;
  if (a.refit) fit_args.refit = true;
  const Fitted f = fit_path(fit_args);

  const RawTable raw_v = read_csv_file(valid_path, a.response);
  const int k = raw_v.cols() - 1;
  if (k != f.model.k()) {
    throw std::invalid_argument("validation table predictor count does not match the model");
  }
  Eigen::MatrixXd predictors(raw_v.rows(), k);
  int col = 0;
  for (int j = 0; j < raw_v.cols(); ++j) {
    if (j == raw_v.response_column) continue;
    predictors.col(col++) = raw_v.values.col(j);
  }
  Eigen::MatrixXd Xv = expand_columns(predictors, f.model);
  Eigen::VectorXd Yv = raw_v.response();
  if (f.design.standardizer) {
    const Standardizer& st = *f.design.standardizer;
    for (int j = 0; j < Xv.cols(); ++j) {
      Xv.col(j) = (Xv.col(j).array() - st.column_means(j)) / st.column_scales(j);
    }
    Yv.array() -= st.y_mean;
  }
  const Dataset valid = Dataset::for_validation(std::move(Xv), std::move(Yv));

  const PathPoint& sel = select_by_validation(f.path, valid, a.refit);
  const Eigen::VectorXd& theta = a.refit ? *sel.refit_theta : sel.theta;

  json j;
  j["lambda"] = sel.lambda;
  j["validation_mse"] = validation_mse(valid.X(), valid.Y(), theta);
  j["theta"] = std::vector<double>(theta.data(), theta.data() + theta.size());
  json active = json::array();
  for (int i : sel.active_terms) active.push_back(f.model.term(i).label());
  j["active_terms"] = active;
  j["hierarchy_ok"] = sel.hierarchy_ok;
  if (f.design.standardizer) {
    const auto raw = f.design.standardizer->unstandardize(theta);
    j["raw_theta"] = std::vector<double>(raw.theta.data(), raw.theta.data() + raw.theta.size());
    j["raw_intercept"] = raw.intercept;
  }
  emit(out_path, j.dump(2) + "\n");
  return 0;
}

json config_echo(const SimulationConfig& cfg) {
  json j;
  j["seed"] = cfg.seed;
  j["replications"] = cfg.replications;
  j["k"] = cfg.k;
  j["n_train"] = cfg.n_train;
  j["n_valid"] = cfg.n_valid;
  j["n_pred"] = cfg.n_pred;
  j["noise_variances"] = cfg.noise_variances;
  j["weights"] = cfg.weights;
  j["constraint"] = to_string(cfg.constraint);
  j["n_lambda"] = cfg.n_lambda;
  return j;
}

int cmd_simulate_prediction(SimulationConfig cfg, const std::optional<std::string>& out_path) {
  const PredictionReport rep = run_prediction_study(std::move(cfg));
  json j;
  j["study"] = "prediction";
  j["config"] = config_echo(rep.config);
  j["truth_size"] = rep.truth_size;
  j["candidate_size"] = rep.candidate_size;
  json cells = json::array();
  for (const PredictionCell& c : rep.cells) {
    cells.push_back({{"noise_variance", c.noise_variance},
                     {"weight", c.weight},
                     {"wins", c.wins},
                     {"replications", c.replications},
                     {"win_proportion", c.win_proportion},
                     {"ci_low", c.ci_low},
                     {"ci_high", c.ci_high}});
  }
  j["cells"] = cells;
  emit(out_path, j.dump(2) + "\n");
  return 0;
}

int cmd_simulate_coincidence(SimulationConfig cfg, const std::optional<std::string>& out_path) {
  const CoincidenceReport rep = run_coincidence_study(std::move(cfg));
  json j;
  j["study"] = "coincidence";
  j["config"] = config_echo(rep.config);
  j["candidate_size"] = rep.candidate_size;
  json cells = json::array();
  for (const CoincidenceCell& c : rep.cells) {
    cells.push_back({{"weight", c.weight},
                     {"replications", c.replications},
                     {"terms_only", c.terms_only},
                     {"terms_and_signs", c.terms_and_signs},
                     {"terms_only_proportion", c.terms_only_proportion},
                     {"terms_and_signs_proportion", c.terms_and_signs_proportion}});
  }
  j["cells"] = cells;
  emit(out_path, j.dump(2) + "\n");
  return 0;
}

int cmd_benchmark(const BenchmarkConfig& cfg, const std::optional<std::string>& out_path) {
  const std::vector<BenchmarkRow> rows = run_benchmark(cfg);
  emit(out_path, benchmark_to_csv(rows));
  std::cerr << rows.size() << " timings across " << cfg.scenarios << " scenarios\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical polynomial lasso: divisibility constraints and path fitting"};
  app.require_subcommand(1);

  std::string model_path;
  std::optional<std::string> out_path;
  FitArgs fit_args;
  std::string valid_path;

  CLI::App* relations = app.add_subcommand("relations", "list divisibility relations of a model");
  relations->add_option("--model", model_path, "model JSON file")->required();
  relations->add_option("--out", out_path, "output file (default: stdout)");

  CLI::App* hasse = app.add_subcommand("hasse", "export the Hasse diagram as DOT");
  hasse->add_option("--model", model_path, "model JSON file")->required();
  hasse->add_option("--out", out_path, "output file (default: stdout)");

  CLI::App* path = app.add_subcommand("path", "fit a lasso path");
  add_fit_flags(path, &fit_args);
  path->add_option("--out", out_path, "output prefix; writes <out>.json and <out>.csv");

  CLI::App* select = app.add_subcommand("select", "fit a path and pick by validation error");
  add_fit_flags(select, &fit_args);
  select->add_option("--valid", valid_path, "validation data CSV")->required();
  select->add_option("--out", out_path, "output file (default: stdout)");

  CLI::App* simulate = app.add_subcommand("simulate", "replication studies");
  simulate->require_subcommand(1);
  SimulationConfig sim_cfg;
  std::vector<double> sim_weights;
  std::vector<double> sim_noise;
  auto add_sim_flags = [&](CLI::App* cmd) {
    cmd->add_option("--seed", sim_cfg.seed, "master seed");
    cmd->add_option("--replications", sim_cfg.replications, "replications per cell")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--lambdas", sim_cfg.n_lambda, "lambda grid size")->check(CLI::Range(2, 100000));
    cmd->add_option("--weights", sim_weights, "constraint weight values");
    cmd->add_option("--out", out_path, "output file (default: stdout)");
  };
  CLI::App* sim_pred = simulate->add_subcommand(
      "prediction", "constrained-S versus plain lasso prediction error");
  add_sim_flags(sim_pred);
  sim_pred->add_option("--noise", sim_noise, "noise variance levels");
  CLI::App* sim_coin = simulate->add_subcommand(
      "coincidence", "relaxed versus constrained selected-model agreement");
  add_sim_flags(sim_coin);
  int coin_k = 3;
  sim_coin->add_option("--k", coin_k, "variable count (3 or 5 per the protocol)")
      ->check(CLI::IsMember({3, 5}));

  CLI::App* benchmark = app.add_subcommand("benchmark", "time path fits on random scenarios");
  BenchmarkConfig bench_cfg;
  benchmark->add_option("--seed", bench_cfg.seed, "master seed");
  benchmark->add_option("--scenarios", bench_cfg.scenarios, "scenario count")
      ->check(CLI::PositiveNumber);
  benchmark->add_option("--lambdas", bench_cfg.n_lambda, "lambda grid size")
      ->check(CLI::Range(2, 100000));
  benchmark->add_option("--out", out_path, "output CSV (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalidInput;
  }

  try {
    if (*relations) return cmd_relations(model_path, out_path);
    if (*hasse) return cmd_hasse(model_path, out_path);
    if (*path) return cmd_path(fit_args, out_path);
    if (*select) return cmd_select(fit_args, valid_path, out_path);
    if (*sim_pred) {
      if (!sim_weights.empty()) sim_cfg.weights = sim_weights;
      if (!sim_noise.empty()) sim_cfg.noise_variances = sim_noise;
      return cmd_simulate_prediction(sim_cfg, out_path);
    }
    if (*sim_coin) {
      if (!sim_weights.empty()) sim_cfg.weights = sim_weights;
      sim_cfg.k = coin_k;
      if (coin_k == 3) {
        sim_cfg.n_train = 40;
        sim_cfg.n_valid = 15;
      } else {
        sim_cfg.n_train = 100;
        sim_cfg.n_valid = 30;
      }
      sim_cfg.n_pred = 0;
      return cmd_simulate_coincidence(sim_cfg, out_path);
    }
    if (*benchmark) return cmd_benchmark(bench_cfg, out_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::runtime_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumericalFailure;
  }
  return 0;
}
