#pragma once

#include <string>

#include <json.hpp>

#include "phsolve/spectra.hpp"
#include "phsolve/verify.hpp"

namespace phsolve {

inline constexpr const char* kVersion = "0.1.0";

/// Serializes a verification report together with the resolved configuration.
/// The timestamp is confined to meta.timestamp; everything else is a pure
/// function of the inputs.
nlohmann::json report_to_json(const VerificationReport& report,
                              const nlohmann::json& resolved_config);

/// Spectra CSV with the fixed header
///   level,re_hermitian,re_pseudo,im_pseudo,abs_diff
/// one row per matched level, ordered by the Hermitian level index.
/// Formatting is locale-independent and deterministic.
std::string spectra_csv(const MatchReport& match, const SpectrumResult& pseudo,
                        const SpectrumResult& hermitian);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace phsolve
