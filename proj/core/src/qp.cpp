#include "hierlasso/qp.hpp"

#include <cassert>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace hierlasso {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::LLT<Eigen::MatrixXd> factor_hessian(const QpProblem& p, Eigen::MatrixXd* G_used) {
  const int n = p.n();
  if (p.G.rows() != p.G.cols()) {
    throw std::invalid_argument("qp: G must be square");
  }
  const double scale = p.G.cwiseAbs().maxCoeff();
  if ((p.G - p.G.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1.0)) {
    throw std::invalid_argument("qp: G is not symmetric");
  }
  *G_used = p.G;
  Eigen::LLT<Eigen::MatrixXd> llt(*G_used);
  if (llt.info() == Eigen::Success) return llt;

  double ridge = p.ridge;
  if (ridge <= 0.0) {
    ridge = 1e-8 * p.G.diagonal().mean();
    if (!(ridge > 0.0)) ridge = 1e-12;
  }
  *G_used = p.G + ridge * Eigen::MatrixXd::Identity(n, n);
  llt.compute(*G_used);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("qp: Cholesky factorization failed even after ridge repair");
  }
  return llt;
}

}  // namespace

double QpSolution::kkt_residual(const QpProblem& p) const {
  if (status != QpStatus::optimal) return kInf;
  double res = 0.0;
  // Stationarity, relative to 1 + |d|.
  Eigen::VectorXd grad = p.G * x - p.d;
  for (std::size_t i = 0; i < active_set.size(); ++i) {
    grad -= multipliers(static_cast<int>(i)) * p.C.row(active_set[i]).transpose();
  }
  res = std::max(res, grad.cwiseAbs().maxCoeff() / (1.0 + p.d.cwiseAbs().maxCoeff()));
  // Primal feasibility.
  if (p.m() > 0) {
    Eigen::VectorXd slack = p.C * x - p.c;
    res = std::max(res, -slack.minCoeff());
    // Complementary slackness on active rows.
    for (int i : active_set) res = std::max(res, std::abs(slack(i)));
  }
  // Dual feasibility.
  if (multipliers.size() > 0) res = std::max(res, -multipliers.minCoeff());
  return res;
}

QpSolution QpSolver::solve(const QpProblem& p) {
  const int n = p.n();
  const int m = p.m();
  if (p.d.size() != n || p.c.size() != m || (m > 0 && p.C.cols() != n)) {
    throw std::invalid_argument("qp: dimension mismatch");
  }

  Eigen::MatrixXd G_used;
  Eigen::LLT<Eigen::MatrixXd> llt = factor_hessian(p, &G_used);

  QpSolution sol;
  sol.x = llt.solve(p.d);
  std::vector<int> active;
  std::vector<double> lambda;
  const double ctol = settings_.constraint_tol;
  const int max_iter = 50 * (n + m);
  int iter = 0;

#ifndef NDEBUG
  double prev_dual = -kInf;
#endif

  while (true) {
    // Most violated inactive constraint, lowest index on ties.
    int viol = -1;
    double worst = -ctol;
    for (int i = 0; i < m; ++i) {
      bool is_active = false;
      for (int a : active) {
        if (a == i) { is_active = true; break; }
      }
      if (is_active) continue;
      double s = p.C.row(i).dot(sol.x) - p.c(i);
      if (s < worst) {
        worst = s;
        viol = i;
      }
    }
    if (viol < 0) break;  // all satisfied

    const Eigen::VectorXd n_p = p.C.row(viol).transpose();
    const double b_p = p.c(viol);
    double lambda_p = 0.0;

    while (true) {
      if (++iter > max_iter) {
        throw std::runtime_error("qp: iteration limit exhausted");
      }
      const int q = static_cast<int>(active.size());
      Eigen::VectorXd Ginv_np = llt.solve(n_p);
      Eigen::VectorXd z;
      Eigen::VectorXd r;
      if (q == 0) {
        z = Ginv_np;
      } else {
        Eigen::MatrixXd N(n, q);
        for (int j = 0; j < q; ++j) {
          N.col(j) = p.C.row(active[static_cast<std::size_t>(j)]).transpose();
        }
        Eigen::MatrixXd GinvN = llt.solve(N);
        Eigen::MatrixXd M = N.transpose() * GinvN;
        r = M.ldlt().solve(N.transpose() * Ginv_np);
        z = Ginv_np - GinvN * r;
      }

      // Partial step: smallest multiplier ratio among increasing duals.
      double t1 = kInf;
      int drop = -1;
      for (int j = 0; j < q; ++j) {
        if (r(j) > settings_.multiplier_tol) {
          double t = lambda[static_cast<std::size_t>(j)] / r(j);
          if (t < t1) {
            t1 = t;
            drop = j;
          }
        }
      }
      const double ztnp = z.dot(n_p);
      const double s = n_p.dot(sol.x) - b_p;
      const double t2 = (ztnp > 1e-14 * (1.0 + n_p.squaredNorm())) ? -s / ztnp : kInf;
      const double t = std::min(t1, t2);

      if (!std::isfinite(t)) {
        sol.status = QpStatus::infeasible;
        sol.x.setZero(n);
        sol.active_set.clear();
        sol.multipliers.resize(0);
        sol.objective = kInf;
        return sol;
      }

      if (t2 == kInf) {
        // Dual-only step: shrink multipliers, drop the blocking constraint.
        for (int j = 0; j < q; ++j) lambda[static_cast<std::size_t>(j)] -= t * r(j);
        lambda_p += t;
        if (settings_.trace) {
          std::cerr << "qp: drop constraint " << active[static_cast<std::size_t>(drop)] << "\n";
        }
        active.erase(active.begin() + drop);
        lambda.erase(lambda.begin() + drop);
        ++sol.active_set_changes;
        continue;
      }

      sol.x += t * z;
      for (int j = 0; j < q; ++j) lambda[static_cast<std::size_t>(j)] -= t * r(j);
      lambda_p += t;

#ifndef NDEBUG
      // Dual objective is nondecreasing along GI steps.
      double dual = -(0.5 * sol.x.dot(G_used * sol.x) - p.d.dot(sol.x));
      (void)dual;
      prev_dual = dual;
#endif

      if (t == t2) {
        if (settings_.trace) std::cerr << "qp: add constraint " << viol << "\n";
        active.push_back(viol);
        lambda.push_back(lambda_p);
        ++sol.active_set_changes;
        break;
      }
      if (settings_.trace) {
        std::cerr << "qp: drop constraint " << active[static_cast<std::size_t>(drop)] << "\n";
      }
      active.erase(active.begin() + drop);
      lambda.erase(lambda.begin() + drop);
      ++sol.active_set_changes;
    }
  }

  sol.active_set = active;
  sol.multipliers.resize(static_cast<int>(lambda.size()));
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    sol.multipliers(static_cast<int>(j)) = lambda[j];
  }
  sol.objective = 0.5 * sol.x.dot(p.G * sol.x) - p.d.dot(sol.x);
  return sol;
}

QpSolution QpSolver::solve_warm(const QpProblem& p, const std::vector<int>& initial_active) {
  const int n = p.n();
  const int m = p.m();
  if (p.d.size() != n || p.c.size() != m || (m > 0 && p.C.cols() != n)) {
    throw std::invalid_argument("qp: dimension mismatch");
  }
  for (int i : initial_active) {
    if (i < 0 || i >= m) {
      throw std::invalid_argument("qp: warm-start index out of range");
    }
  }

  Eigen::MatrixXd G_used;
  Eigen::LLT<Eigen::MatrixXd> llt = factor_hessian(p, &G_used);

  // Equality solve on a candidate active set; returns false when the
  // reduced system is too ill-conditioned to trust.
  auto try_active = [&](const std::vector<int>& act, Eigen::VectorXd* x,
                        Eigen::VectorXd* lam) -> bool {
    const int q = static_cast<int>(act.size());
    Eigen::VectorXd xu = llt.solve(p.d);
    if (q == 0) {
      *x = xu;
      lam->resize(0);
      return true;
    }
    Eigen::MatrixXd N(n, q);
    Eigen::VectorXd cq(q);
    for (int j = 0; j < q; ++j) {
      N.col(j) = p.C.row(act[static_cast<std::size_t>(j)]).transpose();
      cq(j) = p.c(act[static_cast<std::size_t>(j)]);
    }
    Eigen::MatrixXd GinvN = llt.solve(N);
    Eigen::MatrixXd M = N.transpose() * GinvN;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (!lu.isInvertible()) return false;
    *lam = lu.solve(cq - N.transpose() * xu);
    *x = xu + GinvN * *lam;
    return true;
  };

  auto kkt_ok = [&](const std::vector<int>& act, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& lam) -> bool {
    if (lam.size() > 0 && lam.minCoeff() < -settings_.multiplier_tol) return false;
    for (int i = 0; i < m; ++i) {
      if (p.C.row(i).dot(x) - p.c(i) < -settings_.constraint_tol) return false;
    }
    (void)act;
    return true;
  };

  std::vector<int> act = initial_active;
  Eigen::VectorXd x, lam;
  if (try_active(act, &x, &lam) && kkt_ok(act, x, lam)) {
    QpSolution sol;
    sol.x = x;
    sol.active_set = act;
    sol.multipliers = lam;
    sol.objective = 0.5 * x.dot(p.G * x) - p.d.dot(x);
    return sol;
  }
  // One repair pass: drop hinted constraints with negative multipliers.
  if (lam.size() == static_cast<int>(act.size()) && !act.empty()) {
    std::vector<int> pruned;
    for (std::size_t j = 0; j < act.size(); ++j) {
      if (lam(static_cast<int>(j)) >= -settings_.multiplier_tol) pruned.push_back(act[j]);
    }
    if (pruned.size() < act.size() && try_active(pruned, &x, &lam) && kkt_ok(pruned, x, lam)) {
      QpSolution sol;
      sol.x = x;
      sol.active_set = pruned;
      sol.multipliers = lam;
      sol.objective = 0.5 * x.dot(p.G * x) - p.d.dot(x);
      sol.active_set_changes = static_cast<int>(act.size() - pruned.size());
      return sol;
    }
  }
  return solve(p);
}

QpSolution solve_qp(const QpProblem& p) { return QpSolver().solve(p); }

QpSolution solve_qp_warm(const QpProblem& p, const std::vector<int>& initial_active) {
  return QpSolver().solve_warm(p, initial_active);
}

}  // namespace hierlasso
