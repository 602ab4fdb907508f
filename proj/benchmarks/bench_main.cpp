// Microbenchmarks for the hot paths: relation generation, QP solves, and
// full path fits at a few model sizes.

#include <benchmark/benchmark.h>

#include <random>

#include "hierlasso/constraints.hpp"
#include "hierlasso/design.hpp"
#include "hierlasso/estimator.hpp"
#include "hierlasso/monomial.hpp"
#include "hierlasso/qp.hpp"
#include "hierlasso/simulate.hpp"

namespace {

using namespace hierlasso;

Model directed_model(int k, int degree) {
  std::vector<int> e(static_cast<std::size_t>(k), 0);
  e[0] = degree;
  e[static_cast<std::size_t>(k - 1)] = degree;
  return model_from_directing_monomials(k, {Exponent(e)});
}

Dataset make_dataset(const Model& m, std::uint64_t seed) {
  const int n = 2 * m.size() + 10;
  Eigen::MatrixXd pts = latin_hypercube(n, m.k(), seed);
  Eigen::MatrixXd X = expand_columns(pts, m);
  std::mt19937_64 rng(seed + 1);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXd Y(n);
  for (int i = 0; i < n; ++i) Y(i) = g(rng);
  return Dataset(std::move(X), std::move(Y), {});
}

void BM_generate_relations(benchmark::State& state) {
  Model m = full_quadratic_model(static_cast<int>(state.range(0)), false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_relations(m));
  }
  state.SetLabel(std::to_string(m.size()) + " terms");
}
BENCHMARK(BM_generate_relations)->Arg(4)->Arg(8)->Arg(16);

void BM_qp_solve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) M(i, j) = g(rng);
  }
  QpProblem p;
  p.G = M.transpose() * M + 0.1 * Eigen::MatrixXd::Identity(n, n);
  p.d = Eigen::VectorXd::Ones(n);
  p.C = -Eigen::MatrixXd::Identity(n, n);  // x <= 0, forces n active-set steps
  p.c = Eigen::VectorXd::Zero(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_qp(p));
  }
}
BENCHMARK(BM_qp_solve)->Arg(5)->Arg(10)->Arg(20)->Arg(40);

void BM_constrained_path(benchmark::State& state) {
  Model m = directed_model(2, static_cast<int>(state.range(0)));
  Dataset ds = make_dataset(m, 17);
  ConstraintSystem cs = build_S(build_hasse(m), WeightScheme::constant(10.0));
  Eigen::VectorXd grid = lambda_grid(ds, 20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(constrained_lasso_path(ds, cs, grid));
  }
  state.SetLabel(std::to_string(m.size()) + " terms");
}
BENCHMARK(BM_constrained_path)->Arg(2)->Arg(3)->Arg(4);

void BM_relaxed_path(benchmark::State& state) {
  Model m = directed_model(2, static_cast<int>(state.range(0)));
  Dataset ds = make_dataset(m, 17);
  ConstraintSystem cs = build_S(build_hasse(m), WeightScheme::constant(10.0));
  Eigen::VectorXd grid = lambda_grid(ds, 20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(relaxed_lasso_path(ds, cs, grid));
  }
  state.SetLabel(std::to_string(m.size()) + " terms");
}
BENCHMARK(BM_relaxed_path)->Arg(2)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
