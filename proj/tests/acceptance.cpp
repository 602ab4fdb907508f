// Acceptance gate: one pass/fail line per criterion, exit code = number of
// failed criteria. Heavier replication studies run here rather than in the
// unit suites.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "hierlasso/constraints.hpp"
#include "hierlasso/design.hpp"
#include "hierlasso/estimator.hpp"
#include "hierlasso/monomial.hpp"
#include "hierlasso/qp.hpp"
#include "hierlasso/simulate.hpp"

using namespace hierlasso;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail) {
  std::printf("criterion %2d (%s): %s%s%s\n", criterion, name.c_str(),
              pass ? "PASS" : "FAIL", detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

Exponent E(std::vector<int> v) { return Exponent(std::move(v)); }

Model example_model() {
  return Model(3, {E({1, 0, 0}), E({0, 1, 0}), E({0, 0, 1}), E({1, 1, 0}), E({1, 0, 1})});
}

RawTable example_table() {
  RawTable t;
  t.column_names = {"X1", "X2", "X3", "Y"};
  t.values.resize(7, 4);
  t.values << 0, -1, -1, -2,
      -1, 0, 0, 0,
      -1, -1, -1, 1,
      -1, 0, 1, 1,
      -3, -1, 1, -1,
      -1, 0, 1, -1,
      7, 3, -1, 2;
  t.response_column = 3;
  return t;
}

std::multiset<std::vector<double>> row_set(const Eigen::MatrixXd& A) {
  std::multiset<std::vector<double>> rows;
  for (int r = 0; r < A.rows(); ++r) {
    std::vector<double> row(static_cast<std::size_t>(A.cols()));
    for (int c = 0; c < A.cols(); ++c) row[static_cast<std::size_t>(c)] = A(r, c);
    rows.insert(row);
  }
  return rows;
}

Eigen::MatrixXd from_rows(const std::vector<std::vector<double>>& rows) {
  Eigen::MatrixXd A(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int r = 0; r < A.rows(); ++r) {
    for (int c = 0; c < A.cols(); ++c) {
      A(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
  }
  return A;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- criterion 1 -----------------------------------------------------------

void criterion_1() {
  Model m(3, {E({0, 0, 0}), E({1, 0, 0}), E({0, 1, 0}), E({0, 0, 1}), E({1, 1, 0}),
              E({1, 0, 1})});
  generate_relations(m);  // warm-up
  const auto t0 = std::chrono::steady_clock::now();
  RelationSet r = generate_relations(m);
  const double elapsed = seconds_since(t0);

  std::set<std::pair<std::string, std::string>> got;
  for (const Relation& rel : r.relations) {
    got.insert({m.term(rel.divisor).label(), m.term(rel.multiple).label()});
  }
  const std::set<std::pair<std::string, std::string>> expected = {
      {"x1", "x1*x2"}, {"x1", "x1*x3"}, {"x2", "x1*x2"}, {"x3", "x1*x3"}};
  std::ostringstream d;
  d << r.size() << " relations in " << elapsed * 1e6 << " us";
  report(1, "relation generation", got == expected && elapsed < 1e-3, d.str());
}

// --- criterion 2 -----------------------------------------------------------

void criterion_2() {
  HasseDiagram h = build_hasse(example_model());
  bool ok = true;
  ok = ok && row_set(build_H(h).matrix) == row_set(from_rows({{1, 0, 0, -1, 0},
                                                              {1, 0, 0, 0, -1},
                                                              {0, 1, 0, -1, 0},
                                                              {0, 0, 1, 0, -1}}));
  ok = ok && row_set(build_S(h, WeightScheme::count()).matrix) ==
                 row_set(from_rows({{2, 0, 0, -1, -1}, {0, 1, 0, -1, 0}, {0, 0, 1, 0, -1}}));
  ok = ok && row_set(build_S(h, WeightScheme::unit()).matrix) ==
                 row_set(from_rows({{1, 0, 0, -1, -1}, {0, 1, 0, -1, 0}, {0, 0, 1, 0, -1}}));
  ok = ok && row_set(build_W(h, WeightScheme::count()).matrix) ==
                 row_set(from_rows({{1, 1, 0, -2, 0}, {1, 0, 1, 0, -2}}));
  ok = ok && row_set(build_W(h, WeightScheme::unit()).matrix) ==
                 row_set(from_rows({{1, 1, 0, -1, 0}, {1, 0, 1, 0, -1}}));
  report(2, "golden constraint matrices", ok, "");
}

// --- criterion 3 -----------------------------------------------------------

void criterion_3() {
  ConstraintSystem cs = build_H(build_hasse(example_model()));
  Eigen::MatrixXd B = build_relaxed_B(cs, 5);
  Eigen::VectorXd first(10);
  first << 1, 0, 0, -1, 0, 1, 0, 0, -1, 0;
  const bool ok = B.rows() == 14 && B.cols() == 10 && B.row(0).transpose() == first;
  std::ostringstream d;
  d << B.rows() << "x" << B.cols();
  report(3, "relaxed block matrix", ok, d.str());
}

// --- criterion 4 -----------------------------------------------------------

void criterion_4() {
  bool ok = true;
  for (bool square_free : {false, true}) {
    Model quad = full_quadratic_model(3, square_free);
    ConstraintSystem s = build_S(build_hasse(quad), WeightScheme::unit());
    std::vector<std::vector<double>> rows;
    for (int j = 0; j < 3; ++j) {
      std::vector<double> row(static_cast<std::size_t>(quad.size()), 0.0);
      std::vector<int> lin(3, 0);
      lin[static_cast<std::size_t>(j)] = 1;
      row[static_cast<std::size_t>(quad.index_of(E(lin)))] = 1.0;
      for (int i = 0; i < 3; ++i) {
        std::vector<int> inter(3, 0);
        inter[static_cast<std::size_t>(i)] += 1;
        inter[static_cast<std::size_t>(j)] += 1;
        const int idx = quad.index_of(E(inter));
        if (idx >= 0) row[static_cast<std::size_t>(idx)] = -1.0;
      }
      rows.push_back(row);
    }
    ok = ok && row_set(s.matrix) == row_set(from_rows(rows));
  }
  report(4, "symmetric-constraint equivalence", ok, "");
}

// --- criterion 5 -----------------------------------------------------------

WeightScheme per_node_neighbors(const HasseDiagram& h, bool descendants, double offset) {
  std::map<std::vector<int>, double> w;
  for (int i = 0; i < h.model.size(); ++i) {
    const auto& nbrs = descendants ? h.descendants[static_cast<std::size_t>(i)]
                                   : h.ascendants[static_cast<std::size_t>(i)];
    if (nbrs.empty()) continue;
    w[h.model.term(i).entries()] = static_cast<double>(nbrs.size()) + offset;
  }
  return WeightScheme::per_node(std::move(w));
}

Model random_hier_model(std::mt19937_64& rng, int k_max, int deg_max, int terms_max) {
  while (true) {
    std::uniform_int_distribution<int> kd(2, k_max);
    const int k = kd(rng);
    std::uniform_int_distribution<int> ed(0, deg_max);
    std::vector<Exponent> dirs;
    const int n_dir = 1 + static_cast<int>(rng() % 2);
    for (int d = 0; d < n_dir; ++d) {
      std::vector<int> e(static_cast<std::size_t>(k), 0);
      int deg = 0;
      while (deg == 0 || deg > deg_max) {
        deg = 0;
        for (int i = 0; i < k; ++i) {
          e[static_cast<std::size_t>(i)] = ed(rng);
          deg += e[static_cast<std::size_t>(i)];
        }
      }
      dirs.emplace_back(e);
    }
    Model m = model_from_directing_monomials(k, dirs);
    if (m.size() <= terms_max && build_hasse(m).edge_count() > 0) return m;
  }
}

void criterion_5() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(401);
  std::vector<long long> per_arrow(8, 0);
  int arrows_checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Model m = random_hier_model(rng, 4, 3, 15);
    HasseDiagram h = build_hasse(m);
    ConstraintSystem s_half = build_S(h, WeightScheme::constant(0.5));
    ConstraintSystem s_unit = build_S(h, WeightScheme::unit());
    ConstraintSystem s_count = build_S(h, WeightScheme::count());
    ConstraintSystem s_above = build_S(h, per_node_neighbors(h, true, 1.0));
    ConstraintSystem w_above = build_W(h, per_node_neighbors(h, false, 1.0));
    ConstraintSystem w_count = build_W(h, WeightScheme::count());
    ConstraintSystem w_unit = build_W(h, WeightScheme::unit());
    ConstraintSystem w_half = build_W(h, WeightScheme::constant(0.5));

    const std::vector<std::pair<const ConstraintSystem*, const ConstraintSystem*>> arrows = {
        {&s_half, &s_unit},   // restrictive S weights imply looser ones
        {&s_unit, &s_count},
        {&s_count, &s_above},
        {&w_above, &w_count},  // same ordering on the W side
        {&w_count, &w_unit},
        {&w_unit, &w_half},
        {&s_unit, &w_count},  // the two vertical strong-to-weak arrows
        {&s_count, &w_unit},
    };
    unsigned seed = static_cast<unsigned>(1000 + trial);
    for (std::size_t a = 0; a < arrows.size(); ++a) {
      ImplicationReport r =
          implication_samples(*arrows[a].first, *arrows[a].second, 10000, seed++);
      per_arrow[a] += r.n_violations;
      ++arrows_checked;
    }
  }
  long long violations = 0;
  for (long long v : per_arrow) violations += v;
  const double elapsed = seconds_since(t0);
  std::ostringstream d;
  d << arrows_checked << " arrows, " << violations << " violations (per arrow:";
  for (long long v : per_arrow) d << " " << v;
  d << "), " << elapsed << " s";
  report(5, "implication diagram sampling", violations == 0 && elapsed < 60.0, d.str());
}

// --- criterion 6 -----------------------------------------------------------

std::optional<Eigen::VectorXd> oracle_solve(const QpProblem& p) {
  const int n = p.n();
  const int m = p.m();
  const Eigen::MatrixXd Ginv = p.G.inverse();
  std::optional<Eigen::VectorXd> best;
  double best_obj = std::numeric_limits<double>::infinity();
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> act;
    for (int i = 0; i < m; ++i) {
      if (mask & (1u << i)) act.push_back(i);
    }
    if (static_cast<int>(act.size()) > n) continue;
    Eigen::VectorXd x;
    if (act.empty()) {
      x = Ginv * p.d;
    } else {
      const int q = static_cast<int>(act.size());
      Eigen::MatrixXd N(n, q);
      Eigen::VectorXd cq(q);
      for (int j = 0; j < q; ++j) {
        N.col(j) = p.C.row(act[static_cast<std::size_t>(j)]).transpose();
        cq(j) = p.c(act[static_cast<std::size_t>(j)]);
      }
      Eigen::MatrixXd M = N.transpose() * Ginv * N;
      Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
      if (!lu.isInvertible()) continue;
      Eigen::VectorXd xu = Ginv * p.d;
      Eigen::VectorXd lam = lu.solve(cq - N.transpose() * xu);
      x = xu + Ginv * N * lam;
    }
    if (m > 0 && ((p.C * x - p.c).array() < -1e-9).any()) continue;
    const double obj = 0.5 * x.dot(p.G * x) - p.d.dot(x);
    if (obj < best_obj) {
      best_obj = obj;
      best = x;
    }
  }
  return best;
}

void criterion_6() {
  std::mt19937_64 rng(601);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_int_distribution<int> nd(1, 6);
  std::uniform_int_distribution<int> md(0, 8);
  int solved = 0;
  double worst_x = 0.0, worst_obj = 0.0, worst_kkt = 0.0;
  bool ok = true;
  while (solved < 500) {
    const int n = nd(rng);
    const int m = md(rng);
    QpProblem p;
    Eigen::MatrixXd M(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) M(i, j) = g(rng);
    }
    p.G = M.transpose() * M + 0.1 * Eigen::MatrixXd::Identity(n, n);
    p.d.resize(n);
    for (int i = 0; i < n; ++i) p.d(i) = g(rng);
    p.C.resize(m, n);
    p.c.resize(m);
    Eigen::VectorXd x0(n);
    for (int i = 0; i < n; ++i) x0(i) = g(rng);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) p.C(i, j) = g(rng);
      p.c(i) = (p.C.row(i) * x0)(0) - std::abs(g(rng));  // x0 stays feasible
    }
    auto oracle = oracle_solve(p);
    if (!oracle) continue;
    QpSolution s = solve_qp(p);
    if (s.status != QpStatus::optimal) {
      ok = false;
      break;
    }
    const double dx = (s.x - *oracle).cwiseAbs().maxCoeff();
    const double oracle_obj = 0.5 * oracle->dot(p.G * *oracle) - p.d.dot(*oracle);
    const double dobj = std::abs(s.objective - oracle_obj);
    const double kkt = s.kkt_residual(p);
    worst_x = std::max(worst_x, dx);
    worst_obj = std::max(worst_obj, dobj);
    worst_kkt = std::max(worst_kkt, kkt);
    ++solved;
  }
  ok = ok && worst_x < 1e-6 && worst_obj < 1e-8 && worst_kkt < 1e-9;
  std::ostringstream d;
  d << "max |dx|=" << worst_x << ", |dobj|=" << worst_obj << ", kkt=" << worst_kkt;
  report(6, "qp oracle suite", ok, d.str());
}

// --- criterion 7 -----------------------------------------------------------

void criterion_7() {
  Dataset ds = expand_design(example_table(), example_model(), false).dataset;
  Eigen::VectorXd grid = lambda_grid(ds, 10);
  LassoPath path = plain_lasso_path(ds, grid);
  const double d_ols = (path.points.front().theta - least_squares(ds)).cwiseAbs().maxCoeff();
  const bool zero_at_max = path.points.back().theta.cwiseAbs().maxCoeff() == 0.0;
  std::ostringstream d;
  d << "|theta(0)-ols|=" << d_ols << ", zero at lambda_max=" << (zero_at_max ? "yes" : "no");
  report(7, "path endpoints", d_ols < 1e-6 && zero_at_max, d.str());
}

// --- criterion 8 -----------------------------------------------------------

void criterion_8() {
  const auto t0 = std::chrono::steady_clock::now();
  Model m = example_model();
  Dataset ds = expand_design(example_table(), m, true).dataset;
  HasseDiagram h = build_hasse(m);
  Eigen::VectorXd grid = lambda_grid(ds, 60);
  PathOptions opts;
  opts.model = m;

  LassoPath path_h = constrained_lasso_path(ds, build_H(h), grid, opts);
  const int i3 = m.index_of(E({0, 0, 1}));
  const int i13 = m.index_of(E({1, 0, 1}));
  const int i1 = m.index_of(E({1, 0, 0}));
  const int i2 = m.index_of(E({0, 1, 0}));

  double worst_zero = 0.0;
  std::vector<double> t1, t2;
  for (const PathPoint& pt : path_h.points) {
    worst_zero = std::max({worst_zero, std::abs(pt.theta(i3)), std::abs(pt.theta(i13))});
    if (pt.theta(i1) != 0.0 && pt.theta(i2) != 0.0) {
      t1.push_back(pt.theta(i1));
      t2.push_back(pt.theta(i2));
    }
  }
  const bool zeros_ok = worst_zero <= 1e-8;

  double corr = 0.0;
  if (t1.size() >= 2) {
    const int n = static_cast<int>(t1.size());
    Eigen::Map<Eigen::VectorXd> v1(t1.data(), n), v2(t2.data(), n);
    Eigen::VectorXd c1 = v1.array() - v1.mean();
    Eigen::VectorXd c2 = v2.array() - v2.mean();
    corr = c1.dot(c2) / std::sqrt(c1.squaredNorm() * c2.squaredNorm());
  }
  const bool corr_ok = std::abs(corr) > 0.99;

  LassoPath path_s = constrained_lasso_path(ds, build_S(h, WeightScheme::constant(8.0)), grid, opts);
  LassoPath path_plain = plain_lasso_path(ds, grid, opts);
  const double dist_s = (path_s.points.front().theta - path_plain.points.front().theta).norm();
  const double dist_h = (path_h.points.front().theta - path_plain.points.front().theta).norm();
  const bool order_ok = dist_s < dist_h;

  const double elapsed = seconds_since(t0);
  std::ostringstream d;
  d << "max|theta3,theta13|=" << worst_zero << (zeros_ok ? "" : " (exceeds 1e-8)")
    << ", corr=" << corr << ", |S-plain|=" << dist_s << " vs |H-plain|=" << dist_h << ", "
    << elapsed << " s";
  report(8, "worked-data path reproduction", zeros_ok && corr_ok && order_ok && elapsed < 5.0,
         d.str());
}

// --- criterion 9 -----------------------------------------------------------

void criterion_9() {
  std::mt19937_64 rng(901);
  std::normal_distribution<double> g(0.0, 1.0);
  double worst = 0.0;
  int hierarchy_false = 0, points = 0;
  for (int trial = 0; trial < 50; ++trial) {
    Model m = random_hier_model(rng, 3, 3, 12);
    const int p = m.size();
    const int n = p + 10;
    Eigen::MatrixXd pts(n, m.k());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m.k(); ++j) pts(i, j) = g(rng);
    }
    Eigen::MatrixXd X = expand_columns(pts, m);
    Eigen::VectorXd Y(n);
    for (int i = 0; i < n; ++i) Y(i) = g(rng);
    Dataset ds(std::move(X), std::move(Y), {});
    HasseDiagram h = build_hasse(m);
    ConstraintSystem cs = trial % 3 == 0   ? build_H(h)
                          : trial % 3 == 1 ? build_S(h, WeightScheme::unit())
                                           : build_W(h, WeightScheme::count());
    Eigen::VectorXd grid = lambda_grid(ds, 8);
    PathOptions opts;
    opts.model = m;
    LassoPath path = relaxed_lasso_path(ds, cs, grid, opts);
    for (const PathPoint& pt : path.points) {
      Eigen::VectorXd proxy = *pt.theta_plus + *pt.theta_minus;
      if (cs.rows() > 0) {
        worst = std::max(worst, -(cs.matrix * proxy).minCoeff());
      }
      if (!pt.hierarchy_ok) ++hierarchy_false;
      ++points;
    }
  }
  std::ostringstream d;
  d << "worst proxy violation " << worst << "; hierarchy_ok false at " << hierarchy_false << "/"
    << points << " points (reported only)";
  report(9, "relaxed proxy feasibility", worst < 1e-6, d.str());
}

// --- criterion 10 ----------------------------------------------------------

// P(Binomial(n, 0.5) <= w), exact.
double binom_cdf_half(int w, int n) {
  // Iterate pmf in log space for stability.
  double cdf = 0.0;
  double log_pmf = n * std::log(0.5);  // pmf(0)
  for (int i = 0; i <= w; ++i) {
    cdf += std::exp(log_pmf);
    log_pmf += std::log(static_cast<double>(n - i)) - std::log(static_cast<double>(i + 1));
  }
  return std::min(cdf, 1.0);
}

void criterion_10() {
  const auto t0 = std::chrono::steady_clock::now();
  SimulationConfig cfg;
  cfg.seed = 20260825;
  cfg.replications = 100;
  cfg.noise_variances = {0.25, 1.0, 4.0};
  cfg.weights = {1.0, 10.0, 100.0};
  cfg.n_lambda = 60;
  PredictionReport rep = run_prediction_study(cfg);
  const double elapsed = seconds_since(t0);

  // One-sided binomial test at alpha=0.05: the claim "win proportion >= 0.5"
  // is rejected only when the observed wins are significantly below half.
  bool wins_ok = true;
  std::ostringstream cells;
  for (const PredictionCell& c : rep.cells) {
    const bool cell_ok = binom_cdf_half(c.wins, c.replications) > 0.05;
    wins_ok = wins_ok && cell_ok;
    cells << " [s2=" << c.noise_variance << ",w=" << c.weight << ": " << c.wins << "/"
          << c.replications << (cell_ok ? "" : " REJECTED") << "]";
  }
  std::ostringstream d;
  d << elapsed << " s;" << cells.str();
  report(10, "prediction-study win rate", wins_ok && elapsed < 600.0, d.str());
}

// --- criterion 11 ----------------------------------------------------------

void criterion_11() {
  SimulationConfig cfg;
  cfg.seed = 44;
  cfg.replications = 100;
  cfg.k = 3;
  cfg.n_train = 40;
  cfg.n_valid = 15;
  cfg.n_pred = 1;
  cfg.weights = {10.0};
  cfg.n_lambda = 60;
  CoincidenceReport rep = run_coincidence_study(cfg);
  bool ok = rep.candidate_size == 19 && rep.cells.size() == 1;
  std::ostringstream d;
  if (ok) {
    const CoincidenceCell& c = rep.cells[0];
    ok = c.terms_and_signs <= c.terms_only && c.replications == 100;
    d << "terms-only " << c.terms_only_proportion << ", terms+signs "
      << c.terms_and_signs_proportion << " (reference figure from earlier studies: about 0.6)";
  }
  report(11, "coincidence-study completion", ok, d.str());
}

// --- criterion 12 ----------------------------------------------------------

void criterion_12() {
  std::mt19937_64 rng(1201);
  std::normal_distribution<double> g(0.0, 1.0);
  // Candidate models with at most four terms.
  const std::vector<std::pair<int, std::vector<Exponent>>> shapes = {
      {2, {E({1, 1})}},                 // x1, x2, x1*x2
      {2, {E({2, 0})}},                 // x1, x1^2
      {2, {E({2, 0}), E({1, 1})}},      // x1, x2, x1^2, x1*x2
      {3, {E({1, 1, 0})}},              // x1, x2, x1*x2 with a third inert variable
  };
  int gaps = 0, total = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto& shape = shapes[static_cast<std::size_t>(trial) % shapes.size()];
    Model m = model_from_directing_monomials(shape.first, shape.second);
    const int p = m.size();
    const int n = 14;
    Eigen::MatrixXd pts(n, m.k());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m.k(); ++j) pts(i, j) = g(rng);
    }
    Eigen::MatrixXd X = expand_columns(pts, m);
    Eigen::VectorXd Y(n);
    for (int i = 0; i < n; ++i) Y(i) = g(rng);
    Dataset ds(std::move(X), std::move(Y), {});
    HasseDiagram h = build_hasse(m);
    ConstraintSystem cs = trial % 2 == 0 ? build_H(h) : build_S(h, WeightScheme::unit());
    Eigen::VectorXd grid = lambda_grid(ds, 8);
    LassoPath path = constrained_lasso_path(ds, cs, grid);

    for (const PathPoint& pt : path.points) {
      // Exhaustive minimization over all 2^p orthants.
      double best = std::numeric_limits<double>::infinity();
      for (unsigned mask = 0; mask < (1u << p); ++mask) {
        Eigen::VectorXd signs(p);
        for (int j = 0; j < p; ++j) signs(j) = (mask & (1u << j)) ? -1.0 : 1.0;
        SignVector s;
        s.signs = signs.cast<int>();
        QpProblem qp = orthant_subproblem(ds, cs, s, pt.lambda);
        QpSolution sol = solve_qp(qp);
        if (sol.status != QpStatus::optimal) continue;
        const double obj = 0.5 * (ds.Y() - ds.X() * sol.x).squaredNorm() +
                           pt.lambda * sol.x.lpNorm<1>();
        best = std::min(best, obj);
      }
      ++total;
      if (pt.objective > best + 1e-6) ++gaps;
    }
  }
  const double incidence = static_cast<double>(gaps) / total;
  std::ostringstream d;
  d << gaps << "/" << total << " points with a strictly better orthant outside the search "
    << "neighborhood (known-limitation counter)";
  report(12, "orthant-search soundness", incidence <= 0.10, d.str());
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_12();
  criterion_11();
  criterion_10();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
  } else {
    std::printf("all criteria passed\n");
  }
  return g_failures;
}
