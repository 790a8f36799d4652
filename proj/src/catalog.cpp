#include "phsolve/catalog.hpp"

#include <set>

#include "phsolve/errors.hpp"

namespace phsolve {

namespace {

void reject_unknown_keys(const json& params, const std::set<std::string>& allowed,
                         const std::string& model) {
  if (params.is_null()) return;
  if (!params.is_object()) throw ConfigError("model.params must be an object");
  for (const auto& [key, _] : params.items()) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown parameter '" + key + "' for model '" + model + "'");
    }
  }
}

double num(const json& params, const std::string& key, double dflt) {
  if (params.is_object() && params.contains(key)) {
    if (!params.at(key).is_number()) throw ConfigError("parameter '" + key + "' must be a number");
    return params.at(key).get<double>();
  }
  return dflt;
}

int integer(const json& params, const std::string& key, int dflt) {
  if (params.is_object() && params.contains(key)) {
    if (!params.at(key).is_number_integer()) {
      throw ConfigError("parameter '" + key + "' must be an integer");
    }
    return params.at(key).get<int>();
  }
  return dflt;
}

std::vector<double> vec(const json& params, const std::string& key, std::vector<double> dflt) {
  if (params.is_object() && params.contains(key)) {
    if (!params.at(key).is_array()) throw ConfigError("parameter '" + key + "' must be an array");
    return params.at(key).get<std::vector<double>>();
  }
  return dflt;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"free", 1, Representation::coordinate, "(none)", false},
      {"harmonic_gauge", 1, Representation::coordinate, "a = 0.5", true},
      {"miao_xu", 1, Representation::coordinate, "n = 2, c = [1.0]", false},
      {"morse", 1, Representation::coordinate, "D = 36, alpha = 1", true},
      {"harmonic_dual_p", 1, Representation::momentum, "a = 0.5", true},
      {"harmonic_2d", 2, Representation::coordinate, "a = 0.5", true},
  };
  return entries;
}

FunctionSpec function_spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw ConfigError("function spec must be an object with a 'kind' key");
  }
  const std::string kind = j.at("kind").get<std::string>();
  const json params = j.contains("params") ? j.at("params") : json::object();
  if (kind == "zero") return FunctionSpec::zero();
  if (kind == "polynomial") {
    reject_unknown_keys(params, {"coeffs"}, "polynomial spec");
    return FunctionSpec::polynomial(vec(params, "coeffs", {}));
  }
  if (kind == "morse_V") {
    reject_unknown_keys(params, {"D", "alpha"}, "morse_V spec");
    return FunctionSpec::morse_V(num(params, "D", 36.0), num(params, "alpha", 1.0));
  }
  if (kind == "morse_f") {
    reject_unknown_keys(params, {"D", "alpha"}, "morse_f spec");
    return FunctionSpec::morse_f(num(params, "D", 36.0), num(params, "alpha", 1.0));
  }
  if (kind == "gaussian_gauge") {
    reject_unknown_keys(params, {"a"}, "gaussian_gauge spec");
    return FunctionSpec::gaussian_gauge(num(params, "a", 0.5));
  }
  if (kind == "miao_xu_series") {
    reject_unknown_keys(params, {"n", "coeffs"}, "miao_xu_series spec");
    return FunctionSpec::miao_xu_series(integer(params, "n", 0), vec(params, "coeffs", {}));
  }
  if (kind == "custom_table") {
    reject_unknown_keys(params, {"t", "f", "fp"}, "custom_table spec");
    return FunctionSpec::custom_table(vec(params, "t", {}), vec(params, "f", {}),
                                      vec(params, "fp", {}));
  }
  throw ConfigError("unknown function kind '" + kind + "'");
}

json catalog_default_params(const std::string& name) {
  if (name == "free") return json::object();
  if (name == "harmonic_gauge" || name == "harmonic_dual_p" || name == "harmonic_2d") {
    return json{{"a", 0.5}};
  }
  if (name == "miao_xu") return json{{"n", 2}, {"coeffs", json::array({1.0})}};
  if (name == "morse") return json{{"D", 36.0}, {"alpha", 1.0}};
  if (name == "custom") return json::object();
  throw ConfigError("unknown model '" + name + "'");
}

ModelDefinition make_catalog_model(const std::string& name, const json& params) {
  ModelDefinition m;
  m.name = name;

  if (name == "free") {
    reject_unknown_keys(params, {}, name);
    m.V = {FunctionSpec::zero()};
    m.f = {FunctionSpec::zero()};
  } else if (name == "harmonic_gauge") {
    reject_unknown_keys(params, {"a"}, name);
    const double a = num(params, "a", 0.5);
    m.V = {FunctionSpec::zero()};
    m.f = {FunctionSpec::gaussian_gauge(a)};
    m.analytic_spectrum = "harmonic";
    m.oscillator_scale = 2.0 * a;  // H_H = p^2 + (2a x)^2, levels (2k+1) * 2a
  } else if (name == "miao_xu") {
    reject_unknown_keys(params, {"n", "coeffs"}, name);
    m.V = {FunctionSpec::zero()};
    m.f = {FunctionSpec::miao_xu_series(integer(params, "n", 2), vec(params, "coeffs", {1.0}))};
  } else if (name == "morse") {
    reject_unknown_keys(params, {"D", "alpha"}, name);
    const double D = num(params, "D", 36.0);
    const double alpha = num(params, "alpha", 1.0);
    m.V = {FunctionSpec::morse_V(D, alpha)};
    m.f = {FunctionSpec::morse_f(D, alpha)};
    m.analytic_spectrum = "morse";
    m.numerov_tail = true;
  } else if (name == "harmonic_dual_p") {
    reject_unknown_keys(params, {"a"}, name);
    const double a = num(params, "a", 0.5);
    m.representation = Representation::momentum;
    m.V = {FunctionSpec::zero()};
    m.f = {FunctionSpec::gaussian_gauge(a)};
    m.analytic_spectrum = "harmonic";
    m.oscillator_scale = 2.0 * a;  // partner = x^2 + (2a p)^2 on the momentum grid
  } else if (name == "harmonic_2d") {
    reject_unknown_keys(params, {"a"}, name);
    const double a = num(params, "a", 0.5);
    m.dimension = 2;
    m.V = {FunctionSpec::zero(), FunctionSpec::zero()};
    m.f = {FunctionSpec::gaussian_gauge(a), FunctionSpec::gaussian_gauge(a)};
    m.analytic_spectrum = "harmonic_2d";
    m.oscillator_scale = 2.0 * a;
  } else if (name == "custom") {
    reject_unknown_keys(params, {"V", "f", "representation"}, name);
    if (!params.is_object() || !params.contains("V") || !params.contains("f")) {
      throw ConfigError("custom model requires 'V' and 'f' function specs");
    }
    m.V = {function_spec_from_json(params.at("V"))};
    m.f = {function_spec_from_json(params.at("f"))};
    if (params.contains("representation")) {
      const std::string rep = params.at("representation").get<std::string>();
      if (rep == "coordinate") {
        m.representation = Representation::coordinate;
      } else if (rep == "momentum") {
        m.representation = Representation::momentum;
      } else {
        throw ConfigError("representation must be 'coordinate' or 'momentum', got '" + rep + "'");
      }
    }
  } else {
    throw ConfigError("unknown model '" + name + "'");
  }

  m.validate();
  return m;
}

}  // namespace phsolve
