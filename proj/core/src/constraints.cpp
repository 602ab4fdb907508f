#include "hierlasso/constraints.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

namespace hierlasso {

std::string to_string(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::H: return "H";
    case ConstraintKind::S: return "S";
    case ConstraintKind::W: return "W";
    case ConstraintKind::none: return "none";
  }
  return "none";
}

ConstraintKind constraint_kind_from_string(const std::string& s) {
  if (s == "H") return ConstraintKind::H;
  if (s == "S") return ConstraintKind::S;
  if (s == "W") return ConstraintKind::W;
  if (s == "none") return ConstraintKind::none;
  throw std::invalid_argument("unknown constraint kind: " + s);
}

WeightScheme WeightScheme::unit() { return WeightScheme(Kind::unit, 1.0); }
WeightScheme WeightScheme::count() { return WeightScheme(Kind::count, 0.0); }

WeightScheme WeightScheme::constant(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("constraint weight must be positive");
  return WeightScheme(Kind::constant, c);
}

WeightScheme WeightScheme::per_node(std::map<std::vector<int>, double> weights) {
  for (const auto& [node, w] : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("constraint weight must be positive");
  }
  WeightScheme s(Kind::per_node, 0.0);
  s.per_node_ = std::move(weights);
  return s;
}

double WeightScheme::resolve(const Exponent& node, int neighbor_count) const {
  switch (kind_) {
    case Kind::unit:
      return 1.0;
    case Kind::count:
      return static_cast<double>(neighbor_count);
    case Kind::constant:
      return c_;
    case Kind::per_node: {
      auto it = per_node_.find(node.entries());
      if (it == per_node_.end()) {
        throw std::invalid_argument("no per-node weight for " + node.label());
      }
      return it->second;
    }
  }
  throw std::logic_error("unreachable weight kind");
}

std::string WeightScheme::describe() const {
  switch (kind_) {
    case Kind::unit: return "unit";
    case Kind::count: return "count";
    case Kind::constant: {
      std::ostringstream out;
      out << "const:" << c_;
      return out.str();
    }
    case Kind::per_node: return "per_node";
  }
  return "unit";
}

ConstraintSystem build_H(const HasseDiagram& h) {
  ConstraintSystem cs;
  cs.kind = ConstraintKind::H;
  const int p = h.model.size();
  cs.matrix.setZero(h.edge_count(), p);
  for (int r = 0; r < h.edge_count(); ++r) {
    const Relation& rel = h.relations.relations[static_cast<std::size_t>(r)];
    cs.matrix(r, rel.divisor) = 1.0;
    cs.matrix(r, rel.multiple) = -1.0;
    cs.row_labels.push_back(h.model.term(rel.divisor).label() + " >= " +
                            h.model.term(rel.multiple).label());
  }
  return cs;
}

ConstraintSystem build_S(const HasseDiagram& h, const WeightScheme& w) {
  ConstraintSystem cs;
  cs.kind = ConstraintKind::S;
  cs.weights = w;
  const int p = h.model.size();
  std::vector<int> rows;
  for (int i = 0; i < p; ++i) {
    if (!h.descendants[static_cast<std::size_t>(i)].empty()) rows.push_back(i);
  }
  cs.matrix.setZero(static_cast<int>(rows.size()), p);
  for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
    const int i = rows[static_cast<std::size_t>(r)];
    const auto& below = h.descendants[static_cast<std::size_t>(i)];
    cs.matrix(r, i) = w.resolve(h.model.term(i), static_cast<int>(below.size()));
    for (int j : below) cs.matrix(r, j) = -1.0;
    cs.row_labels.push_back("S:" + h.model.term(i).label());
  }
  return cs;
}

ConstraintSystem build_W(const HasseDiagram& h, const WeightScheme& w) {
  ConstraintSystem cs;
  cs.kind = ConstraintKind::W;
  cs.weights = w;
  const int p = h.model.size();
  std::vector<int> rows;
  for (int i = 0; i < p; ++i) {
    if (!h.ascendants[static_cast<std::size_t>(i)].empty()) rows.push_back(i);
  }
  cs.matrix.setZero(static_cast<int>(rows.size()), p);
  for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
    const int i = rows[static_cast<std::size_t>(r)];
    const auto& above = h.ascendants[static_cast<std::size_t>(i)];
    for (int j : above) cs.matrix(r, j) = 1.0;
    cs.matrix(r, i) = -w.resolve(h.model.term(i), static_cast<int>(above.size()));
    cs.row_labels.push_back("W:" + h.model.term(i).label());
  }
  return cs;
}

ConstraintSystem build_none(int p) {
  ConstraintSystem cs;
  cs.kind = ConstraintKind::none;
  cs.matrix.setZero(0, p);
  return cs;
}

ConstraintSystem build_constraints(const HasseDiagram& h, ConstraintKind kind,
                                   const WeightScheme& w) {
  switch (kind) {
    case ConstraintKind::H: return build_H(h);
    case ConstraintKind::S: return build_S(h, w);
    case ConstraintKind::W: return build_W(h, w);
    case ConstraintKind::none: return build_none(h.model.size());
  }
  throw std::logic_error("unreachable constraint kind");
}

Eigen::MatrixXd build_relaxed_B(const ConstraintSystem& cs, int p) {
  if (cs.cols() != p) {
    throw std::invalid_argument("build_relaxed_B: constraint matrix has wrong column count");
  }
  const int r = cs.rows();
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(r + 2 * p, 2 * p);
  B.block(0, 0, r, p) = cs.matrix;
  B.block(0, p, r, p) = cs.matrix;
  B.block(r, 0, 2 * p, 2 * p) = Eigen::MatrixXd::Identity(2 * p, 2 * p);
  return B;
}

bool satisfies(const ConstraintSystem& cs, const Eigen::VectorXd& theta, double tol) {
  return !first_violation(cs, theta, tol).has_value();
}

std::optional<int> first_violation(const ConstraintSystem& cs, const Eigen::VectorXd& theta,
                                   double tol) {
  if (theta.size() != cs.cols()) {
    throw std::invalid_argument("satisfies: theta length does not match constraint columns");
  }
  if (cs.rows() == 0) return std::nullopt;
  Eigen::VectorXd vals = cs.matrix * theta.cwiseAbs();
  for (int i = 0; i < vals.size(); ++i) {
    if (vals(i) < -tol) return i;
  }
  return std::nullopt;
}

ImplicationReport implication_samples(const ConstraintSystem& antecedent,
                                      const ConstraintSystem& consequent, int n,
                                      unsigned seed) {
  if (antecedent.cols() != consequent.cols()) {
    throw std::invalid_argument("implication_samples: systems have different column counts");
  }
  const int p = antecedent.cols();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);

  ImplicationReport rep;
  rep.n_requested = n;
  Eigen::VectorXd theta(p);
  for (int s = 0; s < n; ++s) {
    for (int i = 0; i < p; ++i) theta(i) = dist(rng);
    if (!satisfies(antecedent, theta)) continue;
    ++rep.n_antecedent_satisfying;
    if (!satisfies(consequent, theta)) {
      ++rep.n_violations;
      if (!rep.witness) rep.witness = theta;
    }
  }
  rep.low_acceptance = rep.n_antecedent_satisfying < n / 100;
  return rep;
}

}  // namespace hierlasso
