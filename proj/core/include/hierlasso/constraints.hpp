#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hierlasso/monomial.hpp"

namespace hierlasso {

enum class ConstraintKind { H, S, W, none };

std::string to_string(ConstraintKind k);
ConstraintKind constraint_kind_from_string(const std::string& s);

/// Weight attached to the governing node of an S or W row.
/// `count` resolves to |B(alpha)| for S rows and |A(beta)| for W rows.
class WeightScheme {
public:
  enum class Kind { unit, count, constant, per_node };

  static WeightScheme unit();
  static WeightScheme count();
  static WeightScheme constant(double c);
  static WeightScheme per_node(std::map<std::vector<int>, double> weights);

  Kind kind() const { return kind_; }
  double constant_value() const { return c_; }

  /// Weight for the given node; neighbor_count is |B(alpha)| or |A(beta)|.
  double resolve(const Exponent& node, int neighbor_count) const;

  std::string describe() const;

private:
  WeightScheme(Kind k, double c) : kind_(k), c_(c) {}
  Kind kind_;
  double c_;
  std::map<std::vector<int>, double> per_node_;
};

/// Inequality system A|theta| >= 0, columns in the model's term order.
struct ConstraintSystem {
  ConstraintKind kind = ConstraintKind::none;
  WeightScheme weights = WeightScheme::unit();
  Eigen::MatrixXd matrix;  // rows x p
  std::vector<std::string> row_labels;

  int rows() const { return static_cast<int>(matrix.rows()); }
  int cols() const { return static_cast<int>(matrix.cols()); }
};

ConstraintSystem build_H(const HasseDiagram& h);
ConstraintSystem build_S(const HasseDiagram& h, const WeightScheme& w);
ConstraintSystem build_W(const HasseDiagram& h, const WeightScheme& w);
ConstraintSystem build_none(int p);

/// Dispatch on kind; w is ignored for H and none.
ConstraintSystem build_constraints(const HasseDiagram& h, ConstraintKind kind,
                                   const WeightScheme& w);

/// Block matrix [A A; I 0; 0 I] of size (rows(A)+2p) x 2p used by the
/// relaxed reformulation in the split parameterisation u = (theta+, theta-).
Eigen::MatrixXd build_relaxed_B(const ConstraintSystem& cs, int p);

/// true iff A|theta| >= -tol componentwise.
bool satisfies(const ConstraintSystem& cs, const Eigen::VectorXd& theta, double tol = 1e-8);

/// First violated row of A|theta| >= -tol, or nullopt.
std::optional<int> first_violation(const ConstraintSystem& cs, const Eigen::VectorXd& theta,
                                   double tol = 1e-8);

struct ImplicationReport {
  int n_requested = 0;
  int n_antecedent_satisfying = 0;
  int n_violations = 0;
  bool low_acceptance = false;  // fewer than n/100 antecedent-satisfying samples
  std::optional<Eigen::VectorXd> witness;
};

/// Samples theta entries i.i.d. uniform on [-2,2], keeps those satisfying the
/// antecedent, counts violations of the consequent. Deterministic given seed.
ImplicationReport implication_samples(const ConstraintSystem& antecedent,
                                      const ConstraintSystem& consequent, int n,
                                      unsigned seed);

}  // namespace hierlasso
