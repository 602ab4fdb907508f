#pragma once

#include <Eigen/Dense>
#include <vector>

namespace hierlasso {

/// Strictly convex QP: minimize 0.5 x'Gx - d'x subject to Cx >= c.
struct QpProblem {
  Eigen::MatrixXd G;
  Eigen::VectorXd d;
  Eigen::MatrixXd C;  // m x n, may have zero rows
  Eigen::VectorXd c;  // m
  double ridge = 0.0;  // added to diag(G) when Cholesky fails; 0 = automatic

  int n() const { return static_cast<int>(G.rows()); }
  int m() const { return static_cast<int>(C.rows()); }
};

enum class QpStatus { optimal, infeasible };

struct QpSolution {
  Eigen::VectorXd x;
  std::vector<int> active_set;
  Eigen::VectorXd multipliers;  // aligned with active_set
  double objective = 0.0;
  QpStatus status = QpStatus::optimal;
  int active_set_changes = 0;

  /// Largest KKT residual: stationarity, primal/dual feasibility,
  /// complementary slackness.
  double kkt_residual(const QpProblem& p) const;
};

struct QpSettings {
  double constraint_tol = 1e-9;
  double multiplier_tol = 1e-9;
  bool trace = false;  // log active-set changes to stderr
};

/// Dual active-set solver. Starts from the unconstrained minimum, adds the
/// most violated constraint, drops constraints whose multipliers turn
/// negative. Needs no feasible starting point. Deterministic: ties break
/// toward the lowest constraint index.
class QpSolver {
public:
  explicit QpSolver(QpSettings settings = {}) : settings_(settings) {}

  QpSolution solve(const QpProblem& p);

  /// Same contract as solve(); the hint is tried as the starting active set
  /// and only affects the iteration count.
  QpSolution solve_warm(const QpProblem& p, const std::vector<int>& initial_active);

private:
  QpSettings settings_;
};

QpSolution solve_qp(const QpProblem& p);
QpSolution solve_qp_warm(const QpProblem& p, const std::vector<int>& initial_active);

}  // namespace hierlasso
