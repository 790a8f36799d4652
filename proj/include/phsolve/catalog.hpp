#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "phsolve/model.hpp"

namespace phsolve {

struct CatalogEntry {
  std::string name;
  int dimension;
  Representation representation;
  std::string params_doc;  // parameter names with defaults
  bool has_analytic_spectrum;
};

/// The built-in models, in listing order.
const std::vector<CatalogEntry>& catalog_entries();

using json = nlohmann::json;

/// Builds a model by catalog name; `params` overrides the defaults.
/// The name "custom" accepts explicit one-dimensional V/f specs, see
/// function_spec_from_json. Unknown names or parameter keys throw ConfigError.
ModelDefinition make_catalog_model(const std::string& name, const nlohmann::json& params);

/// Parses {"kind": ..., "params": {...}} into a FunctionSpec.
FunctionSpec function_spec_from_json(const nlohmann::json& j);

/// Default parameter set of a catalog model, used to materialize resolved
/// configurations. "custom" has no defaults.
nlohmann::json catalog_default_params(const std::string& name);

}  // namespace phsolve
