#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "phsolve/model.hpp"
#include "phsolve/verify.hpp"

namespace phsolve {

struct GridConfig {
  double x_min = 0.0;
  double x_max = 0.0;
  int n = 0;
};

/// Parsed and validated run configuration. Grids require n >= 8 here (the
/// structural minimum in make_grid is lower, for stencil-level tests).
struct RunConfig {
  std::string model_name;
  nlohmann::json model_params = nlohmann::json::object();

  GridConfig grid;                     // the grid ("grid_x" for 2D configs)
  std::optional<GridConfig> grid_y;

  Scheme scheme = Scheme::central2;
  std::string mode = "both";  // continuum | similarity | both
  std::vector<std::string> checks;  // empty: all
  int k_levels = 8;
  nlohmann::json tolerances = nlohmann::json::object();

  std::string report_path;   // empty: stdout summary only
  std::string spectra_path;  // empty: default "spectra.csv" for the spectrum command

  std::vector<int> normalizability_levels;
  std::string tail_method = "auto";  // auto | eigenvector | numerov
  std::optional<GridConfig> normalizability_grid;

  ModelDefinition build_model() const;
  VerifySettings verify_settings() const;
  /// Configuration with every default materialized, embedded in reports.
  nlohmann::json resolved() const;
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config_file(const std::string& path);

Grid make_grid_from(const GridConfig& g);

}  // namespace phsolve
