#include "hierlasso/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hierlasso {

using nlohmann::json;

Model model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("model json: ") + e.what());
  }
  if (!j.contains("k") || !j.contains("terms")) {
    throw std::invalid_argument("model json: requires fields 'k' and 'terms'");
  }
  const int k = j.at("k").get<int>();
  std::vector<Exponent> terms;
  for (const auto& t : j.at("terms")) {
    terms.emplace_back(t.get<std::vector<int>>());
  }
  return Model(k, std::move(terms));
}

Model model_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

std::string model_to_json(const Model& m) {
  json j;
  j["k"] = m.k();
  json terms = json::array();
  for (const Exponent& e : m.terms()) terms.push_back(e.entries());
  j["terms"] = terms;
  return j.dump(2);
}

std::string constraint_system_to_json(const ConstraintSystem& cs) {
  json j;
  j["kind"] = to_string(cs.kind);
  j["weights"] = cs.weights.describe();
  json rows = json::array();
  for (int r = 0; r < cs.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < cs.cols(); ++c) row.push_back(cs.matrix(r, c));
    rows.push_back(row);
  }
  j["matrix"] = rows;
  j["row_labels"] = cs.row_labels;
  return j.dump(2);
}

namespace {

json point_to_json(const PathPoint& pt, const Model& m) {
  json j;
  j["lambda"] = pt.lambda;
  j["theta"] = std::vector<double>(pt.theta.data(), pt.theta.data() + pt.theta.size());
  j["objective"] = pt.objective;
  json active = json::array();
  for (int i : pt.active_terms) active.push_back(m.term(i).label());
  j["active_terms"] = active;
  j["hierarchy_ok"] = pt.hierarchy_ok;
  if (pt.refit_theta) {
    j["refit_theta"] = std::vector<double>(pt.refit_theta->data(),
                                           pt.refit_theta->data() + pt.refit_theta->size());
  }
  if (pt.proxy_hierarchy_ok) j["proxy_hierarchy_ok"] = *pt.proxy_hierarchy_ok;
  return j;
}

}  // namespace

std::string path_to_json(const LassoPath& path, const Model& m) {
  json j;
  j["method"] = to_string(path.method);
  j["constraint"] = {{"kind", to_string(path.constraint.kind)},
                     {"weights", path.constraint.weights.describe()},
                     {"rows", path.constraint.rows()}};
  json pts = json::array();
  for (const PathPoint& pt : path.points) pts.push_back(point_to_json(pt, m));
  j["points"] = pts;
  return j.dump(2);
}

std::string path_to_csv(const LassoPath& path, const Model& m) {
  std::ostringstream out;
  out.precision(17);
  out << "lambda";
  for (const Exponent& e : m.terms()) out << ',' << e.label();
  out << '\n';
  for (const PathPoint& pt : path.points) {
    out << pt.lambda;
    for (int i = 0; i < pt.theta.size(); ++i) out << ',' << pt.theta(i);
    out << '\n';
  }
  return out.str();
}

}  // namespace hierlasso
