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

#include <charconv>

#include "json.hpp"

#include "peergrade/error.hpp"
#include "peergrade/io.hpp"
#include "peergrade/report.hpp"

namespace peergrade::io {
namespace fs = std::filesystem;

std::string cleaning_summary(const LoadResult& r) {
  const CleaningReport& c = r.cleaning;
  std::string out = "dataset ok\n";
  for (const TableCount& t : c.tables) out += "  " + t.file + ": " + std::to_string(t.rows) + " rows\n";
  out += "assessments read " + std::to_string(c.assessments_read) + ", dropped for empty feedback " +
         std::to_string(c.dropped_empty_feedback) + ", kept " + std::to_string(c.assessments_kept) + "\n";
  out += "students without any assessment: " + std::to_string(c.never_assessed.size());
  for (std::size_t i = 0; i < c.never_assessed.size() && i < 20; ++i) {
    out += (i ? "," : " (") + std::to_string(c.never_assessed[i].value);
  }
  if (!c.never_assessed.empty()) out += c.never_assessed.size() > 20 ? ",...)" : ")";
  out += "\nrecords " + std::to_string(r.dataset.records.size()) + "\n";
  return out;
}

std::vector<std::vector<double>> load_item_matrix(const fs::path& path) {
  if (!fs::exists(path)) fail(ErrorCode::Io, "item file " + path.string() + " does not exist");
  const CsvTable t = parse_csv(read_file(path), path.filename().string());
  std::vector<std::vector<double>> items;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    std::vector<double> row;
    for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
      const std::string& s = t.rows[r][c];
      double v = 0.0;
      const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        fail(ErrorCode::ParseError, t.source + ":" + std::to_string(t.lines[r]) + ":" + std::to_string(c + 1) +
                                        ": expected a number, got '" + s + "'");
      }
      row.push_back(v);
    }
    items.push_back(std::move(row));
  }
  return items;
}

void write_simulation_output(const SimulationConfig& cfg, const Dataset& ds, const fs::path& out,
                             const std::optional<fs::path>& config_file) {
  RunManifest m;
  m.command = "simulate";
  m.tool_version = std::string(tool_version());
  m.config_json = simulation_config_to_json(cfg);
  m.seed = cfg.seed;
  if (config_file) m.inputs.push_back(digest_file(*config_file, config_file->filename().string()));
  for (const std::string& name : write_dataset(ds, out)) m.outputs.push_back(digest_file(out / name, name));
  m.created_at = manifest_timestamp();
  write_file(out / kManifest, manifest_to_json(m));
}

void write_analysis_bundle(const AnalysisReport& report, const AnalysisOptions& options, const fs::path& data_dir,
                           const fs::path& out, const std::optional<fs::path>& items_file) {
  RunManifest m;
  m.command = "analyze";
  m.tool_version = std::string(tool_version());
  nlohmann::json cfg{{"sections", sections_to_string(options.sections)},
                     {"alpha", options.alpha_level},
                     {"items", items_file ? nlohmann::json(items_file->filename().string()) : nlohmann::json(nullptr)}};
  m.config_json = cfg.dump(2) + "\n";
  for (const std::string& name : dataset_files()) {
    if (fs::exists(data_dir / name)) m.inputs.push_back(digest_file(data_dir / name, name));
  }
  if (items_file) m.inputs.push_back(digest_file(*items_file, items_file->filename().string()));

  const std::pair<const char*, std::string> files[] = {
      {kReportJson, report_to_json(report)},
      {kReportText, report_to_text(report)},
      {kReportCsv, report_to_csv(report)},
      {kSeriesCsv, series_to_csv(report)},
  };
  for (const auto& [name, bytes] : files) {
    write_file(out / name, bytes);
    m.outputs.push_back({name, bytes.size(), sha256_hex(bytes)});
  }
  m.created_at = manifest_timestamp();
  write_file(out / kManifest, manifest_to_json(m));
}

}  // namespace peergrade::io
