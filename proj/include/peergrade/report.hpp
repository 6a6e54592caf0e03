// Copyright 2026 The peergrade Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "peergrade/analysis.hpp"
#include "peergrade/simulator.hpp"

namespace peergrade::io {

inline constexpr int kReportFormatVersion = 1;

/// Sorted keys, shortest round-trip numbers, NaN as null. Identical input
/// gives identical bytes.
std::string report_to_json(const AnalysisReport& report);
/// Inverse of report_to_json for every field it writes. Throws ParseError
/// on malformed JSON and SchemaMismatch on a wrong shape.
AnalysisReport report_from_json(std::string_view text);

/// Fixed-width tables, three decimals.
std::string report_to_text(const AnalysisReport& report);
/// Long format: section,row,column,value.
std::string report_to_csv(const AnalysisReport& report);
/// One row per post: post_id,professor_grade,mean_peer_grade,final_peer_grade,assessment_count.
std::string series_to_csv(const AnalysisReport& report);

enum class ReportFormat { Text, Json, Csv };
ReportFormat parse_report_format(std::string_view text);
std::string render_report(const AnalysisReport& report, ReportFormat format);

std::string_view tool_version() noexcept;

std::string sha256_hex(std::string_view bytes);

struct FileDigest {
  std::string name;
  std::uint64_t bytes = 0;
  std::string sha256;
};

FileDigest digest_file(const std::filesystem::path& path, std::string name);

struct RunManifest {
  std::string command;
  std::string tool_version;
  /// Canonical JSON text of the run's configuration.
  std::string config_json;
  std::optional<std::uint64_t> seed;
  std::vector<FileDigest> inputs;
  std::vector<FileDigest> outputs;
  std::int64_t created_at = 0;
};

/// SOURCE_DATE_EPOCH when set, otherwise the current UTC time.
std::int64_t manifest_timestamp();
std::string manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(std::string_view text);

/// Bundle layout written by analyze.
inline constexpr const char* kReportJson = "report.json";
inline constexpr const char* kReportText = "report.txt";
inline constexpr const char* kReportCsv = "report.csv";
inline constexpr const char* kSeriesCsv = "series.csv";
inline constexpr const char* kManifest = "manifest.json";

/// Writes the dataset files plus manifest.json (config echo, seed, digests).
/// `config_file`, when given, is digested as the run's input.
void write_simulation_output(const SimulationConfig& cfg, const Dataset& ds, const std::filesystem::path& out,
                             const std::optional<std::filesystem::path>& config_file = std::nullopt);

/// Writes report.json, report.txt, report.csv, series.csv and manifest.json.
/// Input digests cover every dataset file in `data_dir` (and the item file).
void write_analysis_bundle(const AnalysisReport& report, const AnalysisOptions& options,
                           const std::filesystem::path& data_dir, const std::filesystem::path& out,
                           const std::optional<std::filesystem::path>& items_file = std::nullopt);

/// Reads report.json from a bundle after checking its digest against the
/// manifest (SchemaMismatch on a mismatch).
AnalysisReport load_bundle_report(const std::filesystem::path& bundle);

}  // namespace peergrade::io
