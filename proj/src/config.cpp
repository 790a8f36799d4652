#include "phsolve/config.hpp"

#include <fstream>
#include <set>

#include "phsolve/catalog.hpp"
#include "phsolve/errors.hpp"

namespace phsolve {

using nlohmann::json;

namespace {

const std::set<std::string> kCheckFamilies = {
    "all",
    "operator_identity",
    "isospectral",
    "isospectral_continuum",
    "isospectral_similarity",
    "pseudo_hermiticity",
    "pseudo_hermiticity_continuum",
    "pseudo_hermiticity_similarity",
    "normalizability",
};

bool known_check_name(const std::string& name) {
  if (kCheckFamilies.count(name)) return true;
  return name.rfind("normalizability_level_", 0) == 0;
}

GridConfig parse_grid(const json& j, const std::string& key) {
  if (!j.is_object()) throw ConfigError("config key '" + key + "' must be an object");
  for (const auto& [k, _] : j.items()) {
    if (k != "x_min" && k != "x_max" && k != "n") {
      throw ConfigError("unknown key '" + key + "." + k + "' in config");
    }
  }
  GridConfig g;
  for (const char* k : {"x_min", "x_max"}) {
    if (!j.contains(k) || !j.at(k).is_number()) {
      throw ConfigError("config key '" + key + "." + k + "' must be a number");
    }
  }
  if (!j.contains("n") || !j.at("n").is_number_integer()) {
    throw ConfigError("config key '" + key + ".n' must be an integer");
  }
  g.x_min = j.at("x_min").get<double>();
  g.x_max = j.at("x_max").get<double>();
  g.n = j.at("n").get<int>();
  if (!(g.x_min < g.x_max)) {
    throw ConfigError("config key '" + key + "': x_min must be < x_max");
  }
  if (g.n < 8) throw ConfigError("config key '" + key + ".n' must be >= 8");
  return g;
}

double tol_number(const json& block, const std::string& check, const std::string& key,
                  double dflt) {
  if (!block.is_object() || !block.contains(check)) return dflt;
  const json& c = block.at(check);
  if (!c.is_object()) throw ConfigError("config key 'tolerances." + check + "' must be an object");
  if (!c.contains(key)) return dflt;
  if (!c.at(key).is_number()) {
    throw ConfigError("config key 'tolerances." + check + "." + key + "' must be a number");
  }
  const double v = c.at(key).get<double>();
  if (v < 0.0) {
    throw ConfigError("config key 'tolerances." + check + "." + key + "' must be >= 0");
  }
  return v;
}

std::optional<int> tol_int(const json& block, const std::string& check, const std::string& key) {
  if (!block.is_object() || !block.contains(check)) return std::nullopt;
  const json& c = block.at(check);
  if (!c.is_object() || !c.contains(key)) return std::nullopt;
  if (!c.at(key).is_number_integer()) {
    throw ConfigError("config key 'tolerances." + check + "." + key + "' must be an integer");
  }
  return c.at(key).get<int>();
}

}  // namespace

Grid make_grid_from(const GridConfig& g) { return make_grid(g.x_min, g.x_max, g.n); }

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");

  static const std::set<std::string> kTopKeys = {
      "model", "grid", "grid_x", "grid_y",        "scheme", "mode",
      "checks", "k_levels", "tolerances", "output", "normalizability"};
  for (const auto& [k, _] : j.items()) {
    if (!kTopKeys.count(k)) throw ConfigError("unknown config key '" + k + "'");
  }

  RunConfig cfg;

  if (!j.contains("model") || !j.at("model").is_object() || !j.at("model").contains("name")) {
    throw ConfigError("config key 'model' must be an object with a 'name'");
  }
  for (const auto& [k, _] : j.at("model").items()) {
    if (k != "name" && k != "params") throw ConfigError("unknown key 'model." + k + "' in config");
  }
  cfg.model_name = j.at("model").at("name").get<std::string>();
  if (j.at("model").contains("params")) cfg.model_params = j.at("model").at("params");

  const bool has_grid = j.contains("grid");
  const bool has_xy = j.contains("grid_x") || j.contains("grid_y");
  if (has_grid == has_xy) {
    throw ConfigError("config requires either 'grid' or the pair 'grid_x'/'grid_y'");
  }
  if (has_grid) {
    cfg.grid = parse_grid(j.at("grid"), "grid");
  } else {
    if (!j.contains("grid_x") || !j.contains("grid_y")) {
      throw ConfigError("2D configs need both 'grid_x' and 'grid_y'");
    }
    cfg.grid = parse_grid(j.at("grid_x"), "grid_x");
    cfg.grid_y = parse_grid(j.at("grid_y"), "grid_y");
  }

  if (j.contains("scheme")) {
    const std::string s = j.at("scheme").get<std::string>();
    if (s == "central2") {
      cfg.scheme = Scheme::central2;
    } else if (s == "central4") {
      cfg.scheme = Scheme::central4;
    } else {
      throw ConfigError("config key 'scheme' must be 'central2' or 'central4', got '" + s + "'");
    }
  }

  if (j.contains("mode")) {
    cfg.mode = j.at("mode").get<std::string>();
    if (cfg.mode != "continuum" && cfg.mode != "similarity" && cfg.mode != "both") {
      throw ConfigError("config key 'mode' must be continuum, similarity or both, got '" +
                        cfg.mode + "'");
    }
  }

  if (j.contains("checks")) {
    const json& c = j.at("checks");
    if (c.is_string()) {
      if (c.get<std::string>() != "all") {
        throw ConfigError("config key 'checks' must be \"all\" or an array of check ids");
      }
    } else if (c.is_array()) {
      for (const auto& e : c) {
        const std::string name = e.get<std::string>();
        if (!known_check_name(name)) {
          throw ConfigError("config key 'checks' references unknown check id '" + name + "'");
        }
        cfg.checks.push_back(name);
      }
    } else {
      throw ConfigError("config key 'checks' must be \"all\" or an array");
    }
  }

  if (j.contains("k_levels")) {
    if (!j.at("k_levels").is_number_integer()) {
      throw ConfigError("config key 'k_levels' must be an integer");
    }
    cfg.k_levels = j.at("k_levels").get<int>();
    if (cfg.k_levels < 1) throw ConfigError("config key 'k_levels' must be >= 1");
  }

  if (j.contains("tolerances")) {
    cfg.tolerances = j.at("tolerances");
    if (!cfg.tolerances.is_object()) throw ConfigError("config key 'tolerances' must be an object");
    for (const auto& [k, block] : cfg.tolerances.items()) {
      if (!known_check_name(k)) {
        throw ConfigError("config key 'tolerances' references unknown check id '" + k + "'");
      }
      if (!block.is_object()) {
        throw ConfigError("config key 'tolerances." + k + "' must be an object");
      }
      for (const auto& [field, value] : block.items()) {
        if (value.is_number() && value.get<double>() < 0.0) {
          throw ConfigError("config key 'tolerances." + k + "." + field + "' must be >= 0");
        }
      }
    }
  }

  if (j.contains("output")) {
    const json& o = j.at("output");
    if (!o.is_object()) throw ConfigError("config key 'output' must be an object");
    for (const auto& [k, _] : o.items()) {
      if (k != "report" && k != "spectra") {
        throw ConfigError("unknown key 'output." + k + "' in config");
      }
    }
    if (o.contains("report")) cfg.report_path = o.at("report").get<std::string>();
    if (o.contains("spectra")) cfg.spectra_path = o.at("spectra").get<std::string>();
  }

  if (j.contains("normalizability")) {
    const json& nb = j.at("normalizability");
    if (!nb.is_object()) throw ConfigError("config key 'normalizability' must be an object");
    for (const auto& [k, _] : nb.items()) {
      if (k != "levels" && k != "method" && k != "grid") {
        throw ConfigError("unknown key 'normalizability." + k + "' in config");
      }
    }
    if (nb.contains("levels")) {
      for (const auto& e : nb.at("levels")) {
        if (!e.is_number_integer()) {
          throw ConfigError("config key 'normalizability.levels' must hold integers");
        }
        cfg.normalizability_levels.push_back(e.get<int>());
      }
    }
    if (nb.contains("method")) {
      cfg.tail_method = nb.at("method").get<std::string>();
      if (cfg.tail_method != "auto" && cfg.tail_method != "eigenvector" &&
          cfg.tail_method != "numerov") {
        throw ConfigError("config key 'normalizability.method' must be auto, eigenvector or "
                          "numerov");
      }
    }
    if (nb.contains("grid")) {
      cfg.normalizability_grid = parse_grid(nb.at("grid"), "normalizability.grid");
    }
  }

  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error in '" + path + "': " + e.what());
  }
  return parse_config(j);
}

ModelDefinition RunConfig::build_model() const {
  return make_catalog_model(model_name, model_params);
}

VerifySettings RunConfig::verify_settings() const {
  VerifySettings s;
  s.scheme = scheme;
  if (mode == "continuum") {
    s.modes = {BuildMode::continuum};
  } else if (mode == "similarity") {
    s.modes = {BuildMode::similarity};
  } else {
    s.modes = {BuildMode::continuum, BuildMode::similarity};
  }
  s.k_levels = k_levels;
  s.check_filter = checks;

  const json& t = tolerances;
  s.tol_operator_identity = tol_number(t, "operator_identity", "tol", 1e-13);
  s.tol_pseudo_similarity = tol_number(t, "pseudo_hermiticity_similarity", "tol", 1e-10);
  s.min_order_pseudo_continuum =
      tol_number(t, "pseudo_hermiticity_continuum", "min_order", 1.9);
  s.probes = tol_int(t, "pseudo_hermiticity_continuum", "probes").value_or(5);
  s.order_base_n = tol_int(t, "pseudo_hermiticity_continuum", "base_n").value_or(300);

  s.iso_similarity.tol_re = tol_number(t, "isospectral_similarity", "tol_re", 1e-8);
  s.iso_similarity.tol_im = tol_number(t, "isospectral_similarity", "tol_im", 1e-8);
  s.iso_similarity.relative_to_partner_norm = true;
  s.k_similarity = tol_int(t, "isospectral_similarity", "k");

  s.iso_continuum.tol_re = tol_number(t, "isospectral_continuum", "tol_re", 1e-2);
  s.iso_continuum.tol_im = tol_number(t, "isospectral_continuum", "tol_im", 1e-6);
  s.iso_continuum.relative_to_partner_norm = false;
  s.k_continuum = tol_int(t, "isospectral_continuum", "k");

  s.tail_tol = tol_number(t, "normalizability", "tail_tol", 1e-3);
  s.normalizability_levels = normalizability_levels;
  if (tail_method == "eigenvector") {
    s.tail_method = TailMethod::eigenvector;
  } else if (tail_method == "numerov") {
    s.tail_method = TailMethod::numerov;
  } else {
    s.tail_method = TailMethod::automatic;
  }
  if (normalizability_grid) s.normalizability_grid = make_grid_from(*normalizability_grid);
  return s;
}

json RunConfig::resolved() const {
  json params = catalog_default_params(model_name);
  for (const auto& [k, v] : model_params.items()) params[k] = v;

  json grid_json{{"x_min", grid.x_min}, {"x_max", grid.x_max}, {"n", grid.n}};

  json tol = json::object();
  const VerifySettings s = verify_settings();
  tol["operator_identity"] = {{"tol", s.tol_operator_identity}};
  tol["pseudo_hermiticity_similarity"] = {{"tol", s.tol_pseudo_similarity}};
  tol["pseudo_hermiticity_continuum"] = {{"min_order", s.min_order_pseudo_continuum},
                                         {"probes", s.probes},
                                         {"base_n", s.order_base_n}};
  json iso_sim{{"tol_re", s.iso_similarity.tol_re}, {"tol_im", s.iso_similarity.tol_im}};
  if (s.k_similarity) iso_sim["k"] = *s.k_similarity;
  tol["isospectral_similarity"] = iso_sim;
  json iso_cont{{"tol_re", s.iso_continuum.tol_re}, {"tol_im", s.iso_continuum.tol_im}};
  if (s.k_continuum) iso_cont["k"] = *s.k_continuum;
  tol["isospectral_continuum"] = iso_cont;
  tol["normalizability"] = {{"tail_tol", s.tail_tol}};

  json r{
      {"model", {{"name", model_name}, {"params", params}}},
      {"scheme", scheme == Scheme::central2 ? "central2" : "central4"},
      {"mode", mode},
      {"checks", checks.empty() ? json("all") : json(checks)},
      {"k_levels", k_levels},
      {"tolerances", tol},
      {"output", {{"report", report_path}, {"spectra", spectra_path}}},
  };
  if (grid_y) {
    r["grid_x"] = grid_json;
    r["grid_y"] = json{{"x_min", grid_y->x_min}, {"x_max", grid_y->x_max}, {"n", grid_y->n}};
  } else {
    r["grid"] = grid_json;
  }
  if (!normalizability_levels.empty()) {
    json nb{{"levels", normalizability_levels}, {"method", tail_method}};
    if (normalizability_grid) {
      nb["grid"] = json{{"x_min", normalizability_grid->x_min},
                        {"x_max", normalizability_grid->x_max},
                        {"n", normalizability_grid->n}};
    }
    r["normalizability"] = nb;
  }
  return r;
}

}  // namespace phsolve
