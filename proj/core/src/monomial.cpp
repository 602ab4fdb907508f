#include "hierlasso/monomial.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hierlasso {

Exponent::Exponent(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw std::invalid_argument("exponent vector must not be empty");
  }
  degree_ = 0;
  for (int e : entries_) {
    if (e < 0) {
      throw std::invalid_argument("exponent entries must be non-negative");
    }
    if (e > 0xFFFF) {
      throw std::invalid_argument("exponent entry exceeds 16-bit range");
    }
    degree_ += e;
  }
}

std::string Exponent::label() const {
  if (is_zero()) return "1";
  std::ostringstream out;
  bool first = true;
  for (int i = 0; i < size(); ++i) {
    int e = entries_[static_cast<std::size_t>(i)];
    if (e == 0) continue;
    if (!first) out << '*';
    out << 'x' << (i + 1);
    if (e > 1) out << '^' << e;
    first = false;
  }
  return out.str();
}

bool divides(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("divides: exponent lengths differ");
  }
  if (a == b) return false;
  for (int i = 0; i < a.size(); ++i) {
    if (b[i] - a[i] < 0) return false;
  }
  return true;
}

bool graded_less(const Exponent& a, const Exponent& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  // Reverse-lex tie break: last nonzero entry of a-b decides.
  for (int i = a.size() - 1; i >= 0; --i) {
    int d = a[i] - b[i];
    if (d != 0) return d < 0;
  }
  return false;
}

Model::Model(int k, std::vector<Exponent> terms) : k_(k), intercept_present_(false) {
  if (k < 1) throw std::invalid_argument("model requires k >= 1");
  for (const Exponent& e : terms) {
    if (e.size() != k) {
      throw std::invalid_argument("model term length does not match k");
    }
  }
  // Strip the intercept, keep a record of it.
  std::vector<Exponent> kept;
  kept.reserve(terms.size());
  for (Exponent& e : terms) {
    if (e.is_zero()) {
      intercept_present_ = true;
    } else {
      kept.push_back(std::move(e));
    }
  }
  std::sort(kept.begin(), kept.end(), graded_less);
  for (std::size_t i = 1; i < kept.size(); ++i) {
    if (kept[i] == kept[i - 1]) {
      throw std::invalid_argument("duplicate model term: " + kept[i].label());
    }
  }
  terms_ = std::move(kept);
}

int Model::index_of(const Exponent& e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e, graded_less);
  if (it != terms_.end() && *it == e) {
    return static_cast<int>(it - terms_.begin());
  }
  return -1;
}

RelationSet generate_relations(const Model& m) {
  RelationSet r;
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j) {
      if (i == j) continue;
      const Exponent& a = m.term(i);
      const Exponent& b = m.term(j);
      if (b.degree() - a.degree() != 1) continue;
      if (divides(a, b)) {
        r.relations.push_back({i, j});
      }
    }
  }
  // Deterministic order: by divisor column, then multiple column.
  std::sort(r.relations.begin(), r.relations.end(), [](const Relation& x, const Relation& y) {
    if (x.divisor != y.divisor) return x.divisor < y.divisor;
    return x.multiple < y.multiple;
  });
  return r;
}

HasseDiagram build_hasse(const Model& m) {
  HasseDiagram h{m, generate_relations(m), {}, {}};
  h.ascendants.resize(static_cast<std::size_t>(m.size()));
  h.descendants.resize(static_cast<std::size_t>(m.size()));
  for (const Relation& r : h.relations.relations) {
    h.descendants[static_cast<std::size_t>(r.divisor)].push_back(r.multiple);
    h.ascendants[static_cast<std::size_t>(r.multiple)].push_back(r.divisor);
  }
  return h;
}

namespace {

// Visit every divisor of e (including e itself and the zero exponent).
template <typename F>
void for_each_divisor(const Exponent& e, F&& visit) {
  std::vector<int> cur(static_cast<std::size_t>(e.size()), 0);
  while (true) {
    visit(cur);
    int i = 0;
    while (i < e.size() && cur[static_cast<std::size_t>(i)] == e[i]) {
      cur[static_cast<std::size_t>(i)] = 0;
      ++i;
    }
    if (i == e.size()) break;
    ++cur[static_cast<std::size_t>(i)];
  }
}

}  // namespace

bool is_strong_hierarchical(const Model& m) {
  for (const Exponent& t : m.terms()) {
    bool ok = true;
    for_each_divisor(t, [&](const std::vector<int>& g) {
      if (!ok) return;
      Exponent ge(g);
      if (ge.is_zero() || ge == t) return;
      if (!m.contains(ge)) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

bool is_weak_hierarchical(const Model& m) {
  for (const Exponent& t : m.terms()) {
    if (t.degree() < 2) continue;
    bool found = false;
    for (int i = 0; i < t.size() && !found; ++i) {
      if (t[i] == 0) continue;
      std::vector<int> g = t.entries();
      --g[static_cast<std::size_t>(i)];
      if (m.contains(Exponent(g))) found = true;
    }
    if (!found) return false;
  }
  return true;
}

std::vector<Exponent> directing_monomials(const Model& m) {
  std::vector<Exponent> out;
  for (int i = 0; i < m.size(); ++i) {
    bool maximal = true;
    for (int j = 0; j < m.size() && maximal; ++j) {
      if (i != j && divides(m.term(i), m.term(j))) maximal = false;
    }
    if (maximal) out.push_back(m.term(i));
  }
  return out;
}

Model model_from_directing_monomials(int k, const std::vector<Exponent>& directors) {
  if (directors.empty()) {
    throw std::invalid_argument("model_from_directing_monomials: no directors given");
  }
  std::set<std::vector<int>> seen;
  for (const Exponent& d : directors) {
    if (d.size() != k) {
      throw std::invalid_argument("director length does not match k");
    }
    for_each_divisor(d, [&](const std::vector<int>& g) { seen.insert(g); });
  }
  std::vector<Exponent> terms;
  terms.reserve(seen.size());
  for (const auto& g : seen) terms.emplace_back(g);
  return Model(k, std::move(terms));
}

Model full_quadratic_model(int k, bool square_free) {
  std::vector<Exponent> terms;
  for (int i = 0; i < k; ++i) {
    std::vector<int> e(static_cast<std::size_t>(k), 0);
    e[static_cast<std::size_t>(i)] = 1;
    terms.emplace_back(e);
    if (!square_free) {
      e[static_cast<std::size_t>(i)] = 2;
      terms.emplace_back(e);
    }
  }
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      std::vector<int> e(static_cast<std::size_t>(k), 0);
      e[static_cast<std::size_t>(i)] = 1;
      e[static_cast<std::size_t>(j)] = 1;
      terms.emplace_back(e);
    }
  }
  return Model(k, std::move(terms));
}

Model full_model_up_to_degree(int k, int max_degree) {
  if (max_degree < 1) throw std::invalid_argument("full_model_up_to_degree: degree >= 1 required");
  std::vector<Exponent> terms;
  std::vector<int> cur(static_cast<std::size_t>(k), 0);
  // Odometer over {0..max_degree}^k filtered by total degree.
  while (true) {
    int deg = std::accumulate(cur.begin(), cur.end(), 0);
    if (deg >= 1 && deg <= max_degree) terms.emplace_back(cur);
    int i = 0;
    while (i < k && cur[static_cast<std::size_t>(i)] == max_degree) {
      cur[static_cast<std::size_t>(i)] = 0;
      ++i;
    }
    if (i == k) break;
    ++cur[static_cast<std::size_t>(i)];
  }
  return Model(k, std::move(terms));
}

std::string export_dot(const HasseDiagram& h) {
  std::ostringstream out;
  out << "digraph hasse {\n";
  out << "  rankdir=TB;\n";
  out << "  node [shape=plaintext];\n";
  // Group nodes of equal degree on one rank so divisors sit above multiples.
  std::set<int> degrees;
  for (const Exponent& t : h.model.terms()) degrees.insert(t.degree());
  for (int d : degrees) {
    out << "  { rank=same;";
    for (int i = 0; i < h.model.size(); ++i) {
      if (h.model.term(i).degree() == d) {
        out << " n" << i << " [label=\"" << h.model.term(i).label() << "\"];";
      }
    }
    out << " }\n";
  }
  for (const Relation& r : h.relations.relations) {
    out << "  n" << r.divisor << " -> n" << r.multiple << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace hierlasso
