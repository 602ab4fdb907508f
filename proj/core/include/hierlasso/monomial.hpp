#pragma once

#include <string>
#include <vector>

namespace hierlasso {

/// Exponent vector of a monomial in k variables. Immutable after construction.
class Exponent {
public:
  explicit Exponent(std::vector<int> entries);

  int size() const { return static_cast<int>(entries_.size()); }
  int degree() const { return degree_; }
  int operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& entries() const { return entries_; }
  bool is_zero() const { return degree_ == 0; }

  /// Monomial notation, e.g. "x1*x2^3"; the zero exponent renders as "1".
  std::string label() const;

  bool operator==(const Exponent& o) const { return entries_ == o.entries_; }
  bool operator!=(const Exponent& o) const { return entries_ != o.entries_; }

private:
  std::vector<int> entries_;
  int degree_;
};

/// true iff x^a divides x^b and a != b.
bool divides(const Exponent& a, const Exponent& b);

/// Graded order: lower degree first, ties by reverse-lexicographic
/// entry comparison. Fixes column order in every matrix built downstream.
bool graded_less(const Exponent& a, const Exponent& b);

/// Candidate model M: a set of distinct exponents in k variables.
/// The zero exponent is stripped on construction and the fact recorded.
class Model {
public:
  Model(int k, std::vector<Exponent> terms);

  int k() const { return k_; }
  int size() const { return static_cast<int>(terms_.size()); }
  const std::vector<Exponent>& terms() const { return terms_; }
  const Exponent& term(int i) const { return terms_[static_cast<std::size_t>(i)]; }
  bool intercept_present() const { return intercept_present_; }

  /// Column index of the given exponent, or -1 when absent.
  int index_of(const Exponent& e) const;
  bool contains(const Exponent& e) const { return index_of(e) >= 0; }

private:
  int k_;
  std::vector<Exponent> terms_;
  bool intercept_present_;
};

/// One divisibility relation x^divisor < x^multiple with degree gap one.
/// Fields index into the owning model's term list.
struct Relation {
  int divisor;
  int multiple;
};

struct RelationSet {
  std::vector<Relation> relations;

  int size() const { return static_cast<int>(relations.size()); }
};

/// Hasse diagram of a model: nodes are terms, edges the RelationSet.
/// ascendants[i] lists divisors of term i, descendants[i] its multiples,
/// both restricted to degree gap one.
struct HasseDiagram {
  Model model;
  RelationSet relations;
  std::vector<std::vector<int>> ascendants;
  std::vector<std::vector<int>> descendants;

  int node_count() const { return model.size(); }
  int edge_count() const { return relations.size(); }
};

RelationSet generate_relations(const Model& m);
HasseDiagram build_hasse(const Model& m);

bool is_strong_hierarchical(const Model& m);
bool is_weak_hierarchical(const Model& m);

/// Maximal terms under divisibility: no other model term is a multiple.
std::vector<Exponent> directing_monomials(const Model& m);

/// Smallest strongly hierarchical model containing the directors:
/// the union of all divisors of each director, intercept stripped.
Model model_from_directing_monomials(int k, const std::vector<Exponent>& directors);

/// All terms of degree <= 2 excluding intercept; k(k+3)/2 terms,
/// or k(k+1)/2 when pure quadratic terms are omitted.
Model full_quadratic_model(int k, bool square_free);

/// All terms of degree in [1, max_degree]; C(k+d, d) - 1 terms.
Model full_model_up_to_degree(int k, int max_degree);

/// DOT digraph, ranked by degree so divisors render above multiples.
std::string export_dot(const HasseDiagram& h);

}  // namespace hierlasso
