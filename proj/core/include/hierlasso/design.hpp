#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hierlasso/estimator.hpp"
#include "hierlasso/monomial.hpp"

namespace hierlasso {

/// Parsed numeric table with a designated response column.
struct RawTable {
  std::vector<std::string> column_names;
  Eigen::MatrixXd values;  // rows x columns
  int response_column = -1;

  int rows() const { return static_cast<int>(values.rows()); }
  int cols() const { return static_cast<int>(values.cols()); }
  Eigen::VectorXd response() const { return values.col(response_column); }
};

/// Comma-separated, header row required. response_name empty = last column.
RawTable read_csv(std::istream& in, const std::string& response_name = "");
RawTable read_csv_file(const std::string& path, const std::string& response_name = "");

/// Column centering/scaling applied before fitting and inverted on output.
struct Standardizer {
  Eigen::VectorXd column_means;
  Eigen::VectorXd column_scales;  // population standard deviations
  double y_mean = 0.0;

  /// Coefficients mapped back to the raw-column scale, plus the implied
  /// intercept.
  struct RawCoefficients {
    Eigen::VectorXd theta;
    double intercept;
  };
  RawCoefficients unstandardize(const Eigen::VectorXd& theta_std) const;
};

struct ExpandedDesign {
  Dataset dataset;
  std::optional<Standardizer> standardizer;
};

/// Raw design expansion: one column per model term, computed rowwise as the
/// power product of predictor columns.
Eigen::MatrixXd expand_columns(const Eigen::MatrixXd& predictors, const Model& m);

/// Builds the fitting dataset from a raw table. Predictor columns are all
/// non-response columns, in table order; their count must equal m.k().
ExpandedDesign expand_design(const RawTable& raw, const Model& m, bool standardize);

}  // namespace hierlasso
