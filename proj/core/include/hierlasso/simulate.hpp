#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "hierlasso/constraints.hpp"
#include "hierlasso/monomial.hpp"

namespace hierlasso {

/// Random latin hypercube on [-1,1]^k: one random permutation per dimension,
/// uniform jitter within each cell.
Eigen::MatrixXd latin_hypercube(int n, int k, std::uint64_t seed);

/// Replication seeds derived from a master seed by counter.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter);

/// Parallelism cap: HIERLASSO_THREADS, defaulting to hardware concurrency.
int simulation_thread_count();

struct SimulationConfig {
  std::uint64_t seed = 1;
  int replications = 100;
  int k = 2;
  int n_train = 100;
  int n_valid = 40;
  int n_pred = 40;
  std::vector<double> noise_variances = {0.25, 1.0, 4.0};
  std::vector<Exponent> truth_directors;      // defaults filled by the studies
  int coefficient_min = -3;
  int coefficient_max = 3;
  std::vector<Exponent> candidate_directors;  // defaults filled by the studies
  ConstraintKind constraint = ConstraintKind::S;
  std::vector<double> weights = {1.0, 10.0, 100.0};
  int n_lambda = 60;

  void validate() const;
};

struct PredictionCell {
  double noise_variance = 0.0;
  double weight = 0.0;
  int wins = 0;  // constrained error <= plain error
  int replications = 0;
  double win_proportion = 0.0;
  double ci_low = 0.0;   // 95% normal-approximation interval
  double ci_high = 0.0;
};

struct PredictionReport {
  SimulationConfig config;
  int truth_size = 0;
  int candidate_size = 0;
  std::vector<PredictionCell> cells;
};

/// Constrained-S versus plain lasso prediction comparison on a uniform
/// random design; win counts ties as wins.
PredictionReport run_prediction_study(SimulationConfig cfg);

struct CoincidenceCell {
  double weight = 0.0;
  int replications = 0;
  int terms_only = 0;
  int terms_and_signs = 0;
  double terms_only_proportion = 0.0;
  double terms_and_signs_proportion = 0.0;
};

struct CoincidenceReport {
  SimulationConfig config;
  int candidate_size = 0;
  std::vector<CoincidenceCell> cells;
};

/// Relaxed-versus-constrained selected-model agreement on latin hypercube
/// designs with the smooth non-polynomial truth.
CoincidenceReport run_coincidence_study(SimulationConfig cfg);

struct BenchmarkRow {
  int scenario = 0;
  int k = 0;
  int n = 0;
  int model_size = 0;
  std::string method;      // constrained | relaxed | plain
  std::string constraint;  // S | H | W | none
  double seconds = 0.0;
};

struct BenchmarkConfig {
  std::uint64_t seed = 1;
  int scenarios = 12;
  int k_max = 5;
  int n_lambda = 60;
  double s_weight = 10.0;
  double w_weight = 0.1;
};

std::vector<BenchmarkRow> run_benchmark(const BenchmarkConfig& cfg);
std::string benchmark_to_csv(const std::vector<BenchmarkRow>& rows);

}  // namespace hierlasso
