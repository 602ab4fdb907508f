#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "hierlasso/constraints.hpp"
#include "hierlasso/monomial.hpp"
#include "hierlasso/qp.hpp"

namespace hierlasso {

/// Design matrix and response, columns in the owning model's term order.
class Dataset {
public:
  /// Full validation: n > p, finite entries, full column rank.
  Dataset(Eigen::MatrixXd X, Eigen::VectorXd Y, std::vector<std::string> column_labels,
          bool standardized = false);

  /// Validation-only datasets are used to score fitted paths; they may have
  /// fewer rows than columns and skip the rank check.
  static Dataset for_validation(Eigen::MatrixXd X, Eigen::VectorXd Y,
                                std::vector<std::string> column_labels = {},
                                bool standardized = false);

  const Eigen::MatrixXd& X() const { return X_; }
  const Eigen::VectorXd& Y() const { return Y_; }
  int n() const { return static_cast<int>(X_.rows()); }
  int p() const { return static_cast<int>(X_.cols()); }
  const std::vector<std::string>& column_labels() const { return labels_; }
  bool standardized() const { return standardized_; }

private:
  Dataset() = default;
  Eigen::MatrixXd X_;
  Eigen::VectorXd Y_;
  std::vector<std::string> labels_;
  bool standardized_ = false;
};

/// Orthant of parameter space: entries are +-1.
struct SignVector {
  Eigen::VectorXi signs;

  static SignVector from_estimate(const Eigen::VectorXd& theta);
  SignVector flipped(int j) const;
  Eigen::VectorXd as_reals() const;
};

enum class PathMethod { constrained, relaxed, plain };

std::string to_string(PathMethod m);

struct PathPoint {
  double lambda = 0.0;
  Eigen::VectorXd theta;
  SignVector orthant;
  double objective = 0.0;  // L at theta
  std::vector<int> active_terms;  // column indices with |theta| > zero_tol
  bool hierarchy_ok = false;
  std::optional<Eigen::VectorXd> refit_theta;
  // Relaxed-only extras.
  std::optional<Eigen::VectorXd> theta_plus;
  std::optional<Eigen::VectorXd> theta_minus;
  std::optional<bool> proxy_hierarchy_ok;
};

struct LassoPath {
  PathMethod method = PathMethod::plain;
  ConstraintSystem constraint;
  std::vector<PathPoint> points;
};

struct PathOptions {
  double zero_tol_scale = 1e-8;        // zero_tol = scale * (1 + |theta|_inf)
  double feasibility_tol = 1e-8;
  bool compute_refit = false;
  double delta = 0.0;                  // relaxed ridge; 0 = 1e-6 * mean diag(X'X)
  // When set, hierarchy_ok is evaluated on the submodel of active terms
  // (weak check for W constraints, strong otherwise). Without a model the
  // flag is true only for the empty active set.
  std::optional<Model> model;
};

/// OLS via column-pivoted QR; errors name dependent columns on rank loss.
Eigen::VectorXd least_squares(const Dataset& ds);

/// Linearly spaced grid from 0 to max_i |(X'Y)_i|, n_lambda points.
Eigen::VectorXd lambda_grid(const Dataset& ds, int n_lambda = 60);

/// QP for one orthant: hierarchy rows transformed by diag(s) plus
/// orthant-membership rows.
QpProblem orthant_subproblem(const Dataset& ds, const ConstraintSystem& cs,
                             const SignVector& s, double lambda);

LassoPath constrained_lasso_path(const Dataset& ds, const ConstraintSystem& cs,
                                 const Eigen::VectorXd& grid, const PathOptions& opts = {});

LassoPath relaxed_lasso_path(const Dataset& ds, const ConstraintSystem& cs,
                             const Eigen::VectorXd& grid, const PathOptions& opts = {});

/// Plain lasso: constrained path with an empty constraint system.
LassoPath plain_lasso_path(const Dataset& ds, const Eigen::VectorXd& grid,
                           const PathOptions& opts = {});

/// OLS on the active-column submatrix, zeros elsewhere.
Eigen::VectorXd refit_least_squares(const Dataset& ds, const std::vector<int>& active);

/// Point of lowest validation MSE; ties break toward larger lambda.
const PathPoint& select_by_validation(const LassoPath& path, const Dataset& ds_valid,
                                      bool use_refit);

double validation_mse(const Eigen::MatrixXd& X, const Eigen::VectorXd& Y,
                      const Eigen::VectorXd& theta);

}  // namespace hierlasso
