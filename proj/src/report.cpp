#include "phsolve/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "phsolve/errors.hpp"

namespace phsolve {

using nlohmann::json;

namespace {

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fixed_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

}  // namespace

json report_to_json(const VerificationReport& report, const json& resolved_config) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    json jc{
        {"check_id", c.check_id},
        {"residual", c.residual},
        {"tolerance", c.tolerance},
        {"passed", c.passed},
        {"details", c.details},
    };
    if (c.skipped) {
      jc["skipped"] = true;
      jc["skip_reason"] = c.skip_reason;
    }
    checks.push_back(std::move(jc));
  }
  return json{
      {"model", report.model},
      {"grid", report.grid_summary},
      {"mode", report.mode},
      {"checks", checks},
      {"overall", report.overall},
      {"resolved_config", resolved_config},
      {"meta", {{"version", kVersion}, {"timestamp", iso_timestamp()}}},
  };
}

std::string spectra_csv(const MatchReport& match, const SpectrumResult& pseudo,
                        const SpectrumResult& hermitian) {
  std::vector<MatchedPair> rows = match.pairs;
  std::sort(rows.begin(), rows.end(),
            [](const MatchedPair& a, const MatchedPair& b) { return a.index_b < b.index_b; });

  std::string out = "level,re_hermitian,re_pseudo,im_pseudo,abs_diff\n";
  for (const auto& p : rows) {
    out += std::to_string(p.index_b);
    out += ',';
    out += fixed_double(hermitian.eigenvalues[p.index_b].real());
    out += ',';
    out += fixed_double(pseudo.eigenvalues[p.index_a].real());
    out += ',';
    out += fixed_double(pseudo.eigenvalues[p.index_a].imag());
    out += ',';
    out += fixed_double(p.abs_re_diff);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out.good()) throw ConfigError("cannot open output file '" + path + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out.good()) throw ConfigError("failed writing output file '" + path + "'");
}

}  // namespace phsolve
