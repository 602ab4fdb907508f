#include "hierlasso/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hierlasso {

namespace {

void check_finite(const Eigen::MatrixXd& X, const Eigen::VectorXd& Y) {
  if (!X.allFinite() || !Y.allFinite()) {
    throw std::invalid_argument("dataset contains non-finite entries");
  }
}

std::vector<std::string> default_labels(int p) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) labels.push_back("c" + std::to_string(i));
  return labels;
}

}  // namespace

Dataset::Dataset(Eigen::MatrixXd X, Eigen::VectorXd Y, std::vector<std::string> column_labels,
                 bool standardized)
    : X_(std::move(X)), Y_(std::move(Y)), labels_(std::move(column_labels)),
      standardized_(standardized) {
  if (X_.rows() != Y_.size()) {
    throw std::invalid_argument("dataset: X row count does not match Y length");
  }
  check_finite(X_, Y_);
  if (X_.rows() <= X_.cols()) {
    throw std::invalid_argument("dataset: requires n > p");
  }
  if (labels_.empty()) labels_ = default_labels(p());
  if (static_cast<int>(labels_.size()) != p()) {
    throw std::invalid_argument("dataset: column label count does not match p");
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X_);
  if (qr.rank() < p()) {
    std::ostringstream msg;
    msg << "dataset: design matrix is rank deficient; dependent columns:";
    const auto perm = qr.colsPermutation().indices();
    for (int i = qr.rank(); i < p(); ++i) {
      msg << ' ' << labels_[static_cast<std::size_t>(perm(i))];
    }
    throw std::invalid_argument(msg.str());
  }
}

Dataset Dataset::for_validation(Eigen::MatrixXd X, Eigen::VectorXd Y,
                                std::vector<std::string> column_labels, bool standardized) {
  Dataset ds;
  ds.X_ = std::move(X);
  ds.Y_ = std::move(Y);
  ds.labels_ = std::move(column_labels);
  ds.standardized_ = standardized;
  if (ds.X_.rows() != ds.Y_.size()) {
    throw std::invalid_argument("dataset: X row count does not match Y length");
  }
  check_finite(ds.X_, ds.Y_);
  if (ds.labels_.empty()) ds.labels_ = default_labels(ds.p());
  return ds;
}

SignVector SignVector::from_estimate(const Eigen::VectorXd& theta) {
  SignVector s;
  s.signs.resize(theta.size());
  for (int i = 0; i < theta.size(); ++i) {
    s.signs(i) = theta(i) < 0.0 ? -1 : 1;  // exact zeros map to +1
  }
  return s;
}

SignVector SignVector::flipped(int j) const {
  SignVector s = *this;
  s.signs(j) = -s.signs(j);
  return s;
}

Eigen::VectorXd SignVector::as_reals() const { return signs.cast<double>(); }

std::string to_string(PathMethod m) {
  switch (m) {
    case PathMethod::constrained: return "constrained";
    case PathMethod::relaxed: return "relaxed";
    case PathMethod::plain: return "plain";
  }
  return "plain";
}

Eigen::VectorXd least_squares(const Dataset& ds) {
  // Dataset construction already guarantees full column rank.
  return ds.X().colPivHouseholderQr().solve(ds.Y());
}

Eigen::VectorXd lambda_grid(const Dataset& ds, int n_lambda) {
  if (n_lambda < 2) throw std::invalid_argument("lambda_grid: need at least 2 points");
  const double lam_max = (ds.X().transpose() * ds.Y()).cwiseAbs().maxCoeff();
  return Eigen::VectorXd::LinSpaced(n_lambda, 0.0, lam_max);
}

QpProblem orthant_subproblem(const Dataset& ds, const ConstraintSystem& cs,
                             const SignVector& s, double lambda) {
  const int p = ds.p();
  if (cs.cols() != p || s.signs.size() != p) {
    throw std::invalid_argument("orthant_subproblem: dimension mismatch");
  }
  QpProblem qp;
  qp.G = ds.X().transpose() * ds.X();
  qp.d = ds.X().transpose() * ds.Y() - lambda * s.as_reals();
  const int r = cs.rows();
  qp.C.resize(r + p, p);
  const Eigen::VectorXd sr = s.as_reals();
  if (r > 0) qp.C.topRows(r) = cs.matrix * sr.asDiagonal();
  qp.C.bottomRows(p) = Eigen::MatrixXd(sr.asDiagonal());
  qp.c = Eigen::VectorXd::Zero(r + p);
  return qp;
}

namespace {

struct PointEval {
  Eigen::VectorXd theta;
  double objective;  // L = 0.5|Y-Xtheta|^2 + lambda|theta|_1
  SignVector orthant;
  std::vector<int> active_set;  // QP active constraints, for warm starts
  bool feasible = false;
};

double lasso_objective(const Dataset& ds, const Eigen::VectorXd& theta, double lambda) {
  return 0.5 * (ds.Y() - ds.X() * theta).squaredNorm() + lambda * theta.lpNorm<1>();
}

void snap_small(Eigen::VectorXd* theta, double zero_tol_scale) {
  const double tol = zero_tol_scale * (1.0 + theta->cwiseAbs().maxCoeff());
  for (int i = 0; i < theta->size(); ++i) {
    if (std::abs((*theta)(i)) <= tol) (*theta)(i) = 0.0;
  }
}

std::vector<int> active_indices(const Eigen::VectorXd& theta) {
  std::vector<int> idx;
  for (int i = 0; i < theta.size(); ++i) {
    if (theta(i) != 0.0) idx.push_back(i);
  }
  return idx;
}

// Row-scaled feasibility: a QP solve and the subsequent snap-to-zero step
// each perturb a tight row by up to its L1 norm times the coefficient scale,
// so an absolute tolerance would spuriously reject well-solved points when
// constraint weights or coefficients are large.
bool feasible_row_scaled(const ConstraintSystem& cs, const Eigen::VectorXd& theta,
                         double tol) {
  if (cs.rows() == 0) return true;
  const Eigen::VectorXd abs_theta = theta.cwiseAbs();
  const Eigen::VectorXd resid = cs.matrix * abs_theta;
  const Eigen::VectorXd row_norm = cs.matrix.cwiseAbs().rowwise().sum();
  const double scale = 1.0 + abs_theta.maxCoeff();
  for (int i = 0; i < resid.size(); ++i) {
    if (resid(i) < -tol * (1.0 + row_norm(i) * scale)) return false;
  }
  return true;
}

bool hierarchy_flag(const PathOptions& opts, const ConstraintSystem& cs,
                    const std::vector<int>& active) {
  if (!opts.model) return active.empty();
  std::vector<Exponent> terms;
  terms.reserve(active.size());
  for (int i : active) terms.push_back(opts.model->term(i));
  Model sub(opts.model->k(), std::move(terms));
  return cs.kind == ConstraintKind::W ? is_weak_hierarchical(sub) : is_strong_hierarchical(sub);
}

}  // namespace

LassoPath constrained_lasso_path(const Dataset& ds, const ConstraintSystem& cs,
                                 const Eigen::VectorXd& grid, const PathOptions& opts) {
  const int p = ds.p();
  if (cs.cols() != p) {
    throw std::invalid_argument("constrained_lasso_path: constraint columns do not match p");
  }
  LassoPath path;
  path.method = cs.kind == ConstraintKind::none ? PathMethod::plain : PathMethod::constrained;
  path.constraint = cs;

  const Eigen::VectorXd ols = least_squares(ds);
  SignVector current = SignVector::from_estimate(ols);
  std::vector<int> warm_active;
  QpSolver solver;

  // X'X and X'Y are shared by every subproblem; assemble once.
  const Eigen::MatrixXd G = ds.X().transpose() * ds.X();
  const Eigen::VectorXd XtY = ds.X().transpose() * ds.Y();

  auto eval_orthant = [&](const SignVector& s, double lambda,
                          const std::vector<int>* hint) -> PointEval {
    QpProblem qp;
    qp.G = G;
    qp.d = XtY - lambda * s.as_reals();
    const int r = cs.rows();
    const Eigen::VectorXd sr = s.as_reals();
    qp.C.resize(r + p, p);
    if (r > 0) qp.C.topRows(r) = cs.matrix * sr.asDiagonal();
    qp.C.bottomRows(p) = Eigen::MatrixXd(sr.asDiagonal());
    qp.c = Eigen::VectorXd::Zero(r + p);
    QpSolution sol = hint ? solver.solve_warm(qp, *hint) : solver.solve(qp);
    PointEval ev;
    ev.orthant = s;
    if (sol.status != QpStatus::optimal) return ev;  // theta=0 is always feasible here
    ev.theta = sol.x;
    ev.objective = lasso_objective(ds, sol.x, lambda);
    ev.active_set = sol.active_set;
    ev.feasible = true;
    return ev;
  };

  for (int gi = 0; gi < grid.size(); ++gi) {
    const double lambda = grid(gi);
    PointEval best = eval_orthant(current, lambda, gi > 0 ? &warm_active : nullptr);
    // Flipped orthants usually share most of the incumbent's active set, so
    // its solution seeds them too; the solver verifies optimality and falls
    // back to a cold start, which keeps the result independent of the hint.
    const std::vector<int> base_active = best.feasible ? best.active_set : std::vector<int>{};
    for (int j = 0; j < p; ++j) {
      PointEval cand = eval_orthant(current.flipped(j), lambda,
                                    best.feasible ? &base_active : nullptr);
      if (!cand.feasible) continue;
      // Strict improvement required: ties keep the incumbent orthant.
      if (!best.feasible || cand.objective < best.objective) best = cand;
    }
    if (!best.feasible) {
      throw std::runtime_error("constrained_lasso_path: all explored orthants infeasible");
    }
    current = best.orthant;
    warm_active = best.active_set;

    PathPoint pt;
    pt.lambda = lambda;
    pt.theta = best.theta;
    snap_small(&pt.theta, opts.zero_tol_scale);
    pt.orthant = best.orthant;
    pt.objective = lasso_objective(ds, pt.theta, lambda);
    pt.active_terms = active_indices(pt.theta);
    pt.hierarchy_ok = hierarchy_flag(opts, cs, pt.active_terms);
    if (!feasible_row_scaled(cs, pt.theta, opts.feasibility_tol)) {
      throw std::runtime_error("constrained_lasso_path: point violates its constraints");
    }
    if (opts.compute_refit) {
      pt.refit_theta = pt.active_terms.empty() ? Eigen::VectorXd::Zero(p).eval()
                                               : refit_least_squares(ds, pt.active_terms);
    }
    path.points.push_back(std::move(pt));
  }
  return path;
}

LassoPath relaxed_lasso_path(const Dataset& ds, const ConstraintSystem& cs,
                             const Eigen::VectorXd& grid, const PathOptions& opts) {
  const int p = ds.p();
  if (cs.cols() != p) {
    throw std::invalid_argument("relaxed_lasso_path: constraint columns do not match p");
  }
  LassoPath path;
  path.method = PathMethod::relaxed;
  path.constraint = cs;

  const Eigen::MatrixXd K = ds.X().transpose() * ds.X();
  double delta = opts.delta;
  if (delta <= 0.0) delta = 1e-6 * K.diagonal().mean();

  QpProblem qp;
  qp.G.resize(2 * p, 2 * p);
  qp.G.topLeftCorner(p, p) = K;
  qp.G.topRightCorner(p, p) = -K;
  qp.G.bottomLeftCorner(p, p) = -K;
  qp.G.bottomRightCorner(p, p) = K + delta * Eigen::MatrixXd::Identity(p, p);
  qp.C = build_relaxed_B(cs, p);
  qp.c = Eigen::VectorXd::Zero(qp.C.rows());

  const Eigen::VectorXd XtY = ds.X().transpose() * ds.Y();
  Eigen::VectorXd base(2 * p);
  base.head(p) = XtY;
  base.tail(p) = -XtY;

  QpSolver solver;
  std::vector<int> warm_active;
  for (int gi = 0; gi < grid.size(); ++gi) {
    const double lambda = grid(gi);
    qp.d = base - lambda * Eigen::VectorXd::Ones(2 * p);
    QpSolution sol;
    try {
      sol = gi > 0 ? solver.solve_warm(qp, warm_active) : solver.solve(qp);
    } catch (const std::runtime_error& e) {
      throw std::runtime_error(std::string(e.what()) +
                               " (relaxed path: try a larger delta)");
    }
    warm_active = sol.active_set;

    Eigen::VectorXd theta_plus = sol.x.head(p);
    Eigen::VectorXd theta_minus = sol.x.tail(p);
    PathPoint pt;
    pt.lambda = lambda;
    pt.theta = theta_plus - theta_minus;
    snap_small(&pt.theta, opts.zero_tol_scale);
    pt.orthant = SignVector::from_estimate(pt.theta);
    pt.objective = lasso_objective(ds, pt.theta, lambda);
    pt.active_terms = active_indices(pt.theta);
    pt.hierarchy_ok = hierarchy_flag(opts, cs, pt.active_terms);
    pt.theta_plus = theta_plus;
    pt.theta_minus = theta_minus;
    // The proxy absolute values theta+ + theta- carry the hierarchy guarantee.
    Eigen::VectorXd proxy = theta_plus + theta_minus;
    pt.proxy_hierarchy_ok =
        cs.rows() == 0 || (cs.matrix * proxy).minCoeff() >= -opts.feasibility_tol;
    if (opts.compute_refit) {
      pt.refit_theta = pt.active_terms.empty() ? Eigen::VectorXd::Zero(p).eval()
                                               : refit_least_squares(ds, pt.active_terms);
    }
    path.points.push_back(std::move(pt));
  }
  return path;
}

LassoPath plain_lasso_path(const Dataset& ds, const Eigen::VectorXd& grid,
                           const PathOptions& opts) {
  return constrained_lasso_path(ds, build_none(ds.p()), grid, opts);
}

Eigen::VectorXd refit_least_squares(const Dataset& ds, const std::vector<int>& active) {
  if (active.empty()) {
    throw std::invalid_argument("refit_least_squares: active set is empty");
  }
  Eigen::MatrixXd Xa(ds.n(), static_cast<int>(active.size()));
  for (std::size_t j = 0; j < active.size(); ++j) {
    Xa.col(static_cast<int>(j)) = ds.X().col(active[j]);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Xa);
  if (qr.rank() < static_cast<int>(active.size())) {
    throw std::invalid_argument("refit_least_squares: active submatrix is rank deficient");
  }
  Eigen::VectorXd sub = qr.solve(ds.Y());
  Eigen::VectorXd full = Eigen::VectorXd::Zero(ds.p());
  for (std::size_t j = 0; j < active.size(); ++j) {
    full(active[j]) = sub(static_cast<int>(j));
  }
  return full;
}

double validation_mse(const Eigen::MatrixXd& X, const Eigen::VectorXd& Y,
                      const Eigen::VectorXd& theta) {
  return (Y - X * theta).squaredNorm() / static_cast<double>(Y.size());
}

const PathPoint& select_by_validation(const LassoPath& path, const Dataset& ds_valid,
                                      bool use_refit) {
  if (path.points.empty()) {
    throw std::invalid_argument("select_by_validation: empty path");
  }
  const PathPoint* best = nullptr;
  double best_mse = 0.0;
  for (const PathPoint& pt : path.points) {
    const Eigen::VectorXd* theta = &pt.theta;
    if (use_refit) {
      if (!pt.refit_theta) {
        throw std::invalid_argument(
            "select_by_validation: refit requested but path has no refit coefficients");
      }
      theta = &*pt.refit_theta;
    }
    const double mse = validation_mse(ds_valid.X(), ds_valid.Y(), *theta);
    // <= so that later (larger lambda) points win ties.
    if (!best || mse <= best_mse) {
      best = &pt;
      best_mse = mse;
    }
  }
  return *best;
}

}  // namespace hierlasso
