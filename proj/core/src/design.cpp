#include "hierlasso/design.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hierlasso {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    // Trim surrounding whitespace.
    const auto a = cell.find_first_not_of(" \t\r");
    const auto b = cell.find_last_not_of(" \t\r");
    cells.push_back(a == std::string::npos ? "" : cell.substr(a, b - a + 1));
  }
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

}  // namespace

RawTable read_csv(std::istream& in, const std::string& response_name) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("csv: empty input, header row required");
  }
  RawTable t;
  t.column_names = split_csv_line(line);
  const int ncol = static_cast<int>(t.column_names.size());
  if (ncol == 0) throw std::invalid_argument("csv: header row has no columns");

  std::vector<double> data;
  int nrow = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (static_cast<int>(cells.size()) != ncol) {
      throw std::invalid_argument("csv: row " + std::to_string(nrow + 2) +
                                  " has wrong cell count");
    }
    for (const auto& c : cells) {
      std::size_t pos = 0;
      double v;
      try {
        v = std::stod(c, &pos);
      } catch (const std::exception&) {
        throw std::invalid_argument("csv: cell '" + c + "' is not numeric");
      }
      if (pos != c.size() || !std::isfinite(v)) {
        throw std::invalid_argument("csv: cell '" + c + "' is not a finite number");
      }
      data.push_back(v);
    }
    ++nrow;
  }
  if (nrow == 0) throw std::invalid_argument("csv: no data rows");
  t.values.resize(nrow, ncol);
  for (int i = 0; i < nrow; ++i) {
    for (int j = 0; j < ncol; ++j) {
      t.values(i, j) = data[static_cast<std::size_t>(i * ncol + j)];
    }
  }

  if (response_name.empty()) {
    t.response_column = ncol - 1;
  } else {
    t.response_column = -1;
    for (int j = 0; j < ncol; ++j) {
      if (t.column_names[static_cast<std::size_t>(j)] == response_name) {
        t.response_column = j;
        break;
      }
    }
    if (t.response_column < 0) {
      throw std::invalid_argument("csv: response column '" + response_name + "' not found");
    }
  }
  return t;
}

RawTable read_csv_file(const std::string& path, const std::string& response_name) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  return read_csv(in, response_name);
}

Standardizer::RawCoefficients Standardizer::unstandardize(
    const Eigen::VectorXd& theta_std) const {
  RawCoefficients out;
  out.theta = theta_std.cwiseQuotient(column_scales);
  out.intercept = y_mean - out.theta.dot(column_means);
  return out;
}

Eigen::MatrixXd expand_columns(const Eigen::MatrixXd& predictors, const Model& m) {
  const int n = static_cast<int>(predictors.rows());
  Eigen::MatrixXd X = Eigen::MatrixXd::Ones(n, m.size());
  for (int j = 0; j < m.size(); ++j) {
    const Exponent& e = m.term(j);
    for (int v = 0; v < m.k(); ++v) {
      for (int rep = 0; rep < e[v]; ++rep) {
        X.col(j) = X.col(j).cwiseProduct(predictors.col(v));
      }
    }
  }
  if (!X.allFinite()) {
    throw std::invalid_argument("expand_design: non-finite products in design matrix");
  }
  return X;
}

ExpandedDesign expand_design(const RawTable& raw, const Model& m, bool standardize) {
  const int k = raw.cols() - 1;
  if (k != m.k()) {
    throw std::invalid_argument("expand_design: table has " + std::to_string(k) +
                                " predictor columns but model has k=" + std::to_string(m.k()));
  }
  if (m.size() == 0) {
    throw std::invalid_argument("expand_design: model has no non-intercept terms");
  }
  Eigen::MatrixXd predictors(raw.rows(), k);
  int col = 0;
  for (int j = 0; j < raw.cols(); ++j) {
    if (j == raw.response_column) continue;
    predictors.col(col++) = raw.values.col(j);
  }
  Eigen::MatrixXd X = expand_columns(predictors, m);
  Eigen::VectorXd Y = raw.response();

  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(m.size()));
  for (const Exponent& e : m.terms()) labels.push_back(e.label());

  if (!standardize) {
    return ExpandedDesign{Dataset(std::move(X), std::move(Y), std::move(labels)), std::nullopt};
  }

  Standardizer st;
  st.column_means = X.colwise().mean();
  st.column_scales.resize(X.cols());
  for (int j = 0; j < X.cols(); ++j) {
    X.col(j).array() -= st.column_means(j);
    const double sd = std::sqrt(X.col(j).squaredNorm() / static_cast<double>(X.rows()));
    if (sd <= 0.0) {
      throw std::invalid_argument("expand_design: column '" + labels[static_cast<std::size_t>(j)] +
                                  "' is constant, cannot standardize");
    }
    st.column_scales(j) = sd;
    X.col(j) /= sd;
  }
  st.y_mean = Y.mean();
  Y.array() -= st.y_mean;
  return ExpandedDesign{Dataset(std::move(X), std::move(Y), std::move(labels), true), st};
}

}  // namespace hierlasso
