#pragma once

#include <string>

#include "hierlasso/constraints.hpp"
#include "hierlasso/estimator.hpp"
#include "hierlasso/monomial.hpp"

namespace hierlasso {

/// Model file format: {"k": 3, "terms": [[1,0,0],[0,1,0],...]}
Model model_from_json(const std::string& text);
Model model_from_json_file(const std::string& path);
std::string model_to_json(const Model& m);

std::string constraint_system_to_json(const ConstraintSystem& cs);

std::string path_to_json(const LassoPath& path, const Model& m);

/// Wide CSV: one row per lambda, one column per term.
std::string path_to_csv(const LassoPath& path, const Model& m);

}  // namespace hierlasso
