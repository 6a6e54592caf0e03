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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "peergrade/dataset.hpp"
#include "peergrade/simulator.hpp"

namespace peergrade::io {

/// RFC 4180 table: comma separated, CRLF or LF records, double-quoted fields
/// with "" as the escaped quote.
struct CsvTable {
  std::string source;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  /// 1-based physical line where each row starts.
  std::vector<std::size_t> lines;
};

/// Throws ParseError "source:line:column: ..." where column is the 1-based
/// field index. Every row must have as many fields as the header.
CsvTable parse_csv(std::string_view text, std::string source);

std::string format_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows);

/// Shortest text that reads back to the same double.
std::string format_number(double value);

std::string read_file(const std::filesystem::path& path);
/// Writes bytes exactly (no newline translation); creates parent directories.
void write_file(const std::filesystem::path& path, std::string_view bytes);

inline constexpr int kDatasetFormatVersion = 1;

/// Files making up a dataset directory, in the order they are written.
/// dataset.json holds the format version, rounding and rating buckets;
/// records.csv is a derived convenience copy and is not read back.
const std::vector<std::string>& dataset_files();

struct TableCount {
  std::string file;
  std::size_t rows = 0;
};

struct CleaningReport {
  std::vector<TableCount> tables;
  std::size_t assessments_read = 0;
  std::size_t dropped_empty_feedback = 0;
  /// Students left without a single assessment with feedback. Their rows are
  /// gone with the blank ones; they stay on the roster as authors.
  std::vector<StudentId> never_assessed;
  std::size_t assessments_kept = 0;
};

struct LoadResult {
  Dataset dataset;
  CleaningReport cleaning;
};

/// Returns the file names written.
std::vector<std::string> write_dataset(const Dataset& ds, const std::filesystem::path& dir);

/// Loads, checks and cleans a dataset directory, then derives the records.
/// Errors: Io (directory missing), SchemaMismatch (missing file, header or
/// format version), ParseError (with file:line:column), ReferentialIntegrity.
LoadResult load_dataset(const std::filesystem::path& dir);

/// Plain-text summary of a load: per-file row counts and the cleaning steps.
std::string cleaning_summary(const LoadResult& result);

/// Respondents x items matrix for Cronbach's alpha: a CSV with one header row
/// of item names and numeric cells.
std::vector<std::vector<double>> load_item_matrix(const std::filesystem::path& path);

/// JSON configuration. Unknown keys and wrong types are InvalidConfig;
/// missing keys keep their defaults. The result is validated.
SimulationConfig parse_simulation_config(std::string_view json_text);
/// Canonical JSON (sorted keys, every field) for the manifest echo.
std::string simulation_config_to_json(const SimulationConfig& cfg);

/// Config path resolution: PEERGRADE_CONFIG, when set and non-empty, wins
/// over the flag.
inline constexpr const char* kConfigEnvVar = "PEERGRADE_CONFIG";
std::filesystem::path resolve_config_path(const std::filesystem::path& flag_value);

}  // namespace peergrade::io
