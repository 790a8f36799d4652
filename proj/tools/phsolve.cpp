#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>

#include "phsolve/catalog.hpp"
#include "phsolve/config.hpp"
#include "phsolve/errors.hpp"
#include "phsolve/report.hpp"

namespace {

using namespace phsolve;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitSolverError = 3;

int cmd_list_models() {
  std::printf("%-16s %-4s %-11s %-9s %s\n", "name", "dim", "rep", "analytic", "params");
  for (const auto& e : catalog_entries()) {
    std::printf("%-16s %-4d %-11s %-9s %s\n", e.name.c_str(), e.dimension,
                e.representation == Representation::coordinate ? "coordinate" : "momentum",
                e.has_analytic_spectrum ? "yes" : "no", e.params_doc.c_str());
  }
  std::printf("%-16s %-4s %-11s %-9s %s\n", "custom", "1", "either", "no",
              "V = {kind, params}, f = {kind, params}");
  return kExitPass;
}

int cmd_spectrum(const std::string& config_path, const std::string& out_override) {
  const RunConfig cfg = load_config_file(config_path);
  const ModelDefinition model = cfg.build_model();
  const Grid gx = make_grid_from(cfg.grid);

  // The CSV tabulates the configured mode; "both" reports the continuum
  // operator (the direct discretization of the physics).
  const BuildMode mode = cfg.mode == "similarity" ? BuildMode::similarity : BuildMode::continuum;

  OperatorMatrix hermitian, pseudo;
  if (model.dimension == 2) {
    if (!cfg.grid_y) throw ConfigError("2D model requires grid_x/grid_y");
    auto pair = build_2d(gx, make_grid_from(*cfg.grid_y), model, cfg.scheme, mode);
    hermitian = std::move(pair.first);
    pseudo = std::move(pair.second);
  } else {
    hermitian = build_hermitian(gx, model, cfg.scheme);
    pseudo = build_pseudo(gx, model, cfg.scheme, mode);
  }

  const SpectrumResult sh = eigen_hermitian(hermitian, false);
  const SpectrumResult sp = eigen_general(pseudo, false);
  const MatchReport match = match_spectra(sp, sh, cfg.k_levels, 0.0, 0.0);

  std::string path = !out_override.empty() ? out_override
                     : !cfg.spectra_path.empty() ? cfg.spectra_path
                                                 : "spectra.csv";
  write_text_file(path, spectra_csv(match, sp, sh));
  std::printf("wrote %d levels to %s\n", match.k_matched, path.c_str());
  return kExitPass;
}

int cmd_verify(const std::string& config_path, const std::string& report_override) {
  const RunConfig cfg = load_config_file(config_path);
  const ModelDefinition model = cfg.build_model();
  const Grid gx = make_grid_from(cfg.grid);
  std::optional<Grid> gy;
  if (cfg.grid_y) gy = make_grid_from(*cfg.grid_y);

  const VerificationReport report = run_all(model, gx, gy, cfg.verify_settings());

  for (const auto& c : report.checks) {
    if (c.skipped) {
      std::printf("[skip] %-34s %s\n", c.check_id.c_str(), c.skip_reason.c_str());
    } else {
      std::printf("[%s] %-34s residual %.3e  tolerance %.3e\n", c.passed ? "pass" : "FAIL",
                  c.check_id.c_str(), c.residual, c.tolerance);
    }
  }
  std::printf("overall: %s\n", report.overall ? "pass" : "FAIL");

  const std::string path = !report_override.empty() ? report_override : cfg.report_path;
  if (!path.empty()) {
    write_text_file(path, report_to_json(report, cfg.resolved()).dump(2) + "\n");
    std::printf("report written to %s\n", path.c_str());
  }
  return report.overall ? kExitPass : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-Hermitian Hamiltonian construction and verification"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list-models", "list the model catalog");

  std::string spectrum_config, spectrum_out;
  auto* spectrum = app.add_subcommand("spectrum", "diagonalize and write a spectra CSV");
  spectrum->add_option("--config", spectrum_config, "config file (JSON)")->required();
  spectrum->add_option("--out", spectrum_out, "output CSV path (overrides config)");

  std::string verify_config, verify_report;
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--config", verify_config, "config file (JSON)")->required();
  verify->add_option("--report", verify_report, "report JSON path (overrides config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitConfigError;
  }

  try {
    if (list->parsed()) return cmd_list_models();
    if (spectrum->parsed()) return cmd_spectrum(spectrum_config, spectrum_out);
    if (verify->parsed()) return cmd_verify(verify_config, verify_report);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const Error& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return kExitSolverError;
  }
  return kExitConfigError;
}
