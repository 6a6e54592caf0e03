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

#include "peergrade/peergrade.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "peergrade/analysis.hpp"
#include "peergrade/error.hpp"
#include "peergrade/io.hpp"
#include "peergrade/report.hpp"
#include "peergrade/simulator.hpp"

struct pg_config {
  peergrade::SimulationConfig cfg;
};

struct pg_dataset {
  peergrade::io::LoadResult loaded;
  bool from_files = false;
};

struct pg_report {
  peergrade::AnalysisReport report;
  peergrade::AnalysisOptions options;
  std::optional<std::string> items_file;
};

namespace {

using namespace peergrade;

static_assert(static_cast<int>(ErrorCode::WriteFailed) == PG_WRITE_FAILED, "pg_status out of step with ErrorCode");
static_assert(static_cast<int>(ErrorCode::CohortTooSmall) == PG_COHORT_TOO_SMALL);

thread_local std::string g_last_error;

pg_status set_error(pg_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Every entry point funnels through here so no exception crosses the C boundary.
template <typename Fn>
pg_status guarded(Fn&& fn) {
  try {
    fn();
    return PG_OK;
  } catch (const Error& e) {
    return set_error(static_cast<pg_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(PG_OUT_OF_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return set_error(PG_INTERNAL, std::string("internal error: ") + e.what());
  } catch (...) {
    return set_error(PG_INTERNAL, "internal error");
  }
}

void require(const void* p, const char* what) {
  if (!p) fail(ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* pg_version(void) { return io::tool_version().data(); }

const char* pg_last_error(void) { return g_last_error.c_str(); }

const char* pg_status_name(pg_status status) {
  if (status == PG_OK) return "Ok";
  if (status == PG_INTERNAL) return "Internal";
  if (status == PG_OUT_OF_MEMORY) return "OutOfMemory";
  return to_string(static_cast<ErrorCode>(status)).data();
}

int pg_status_is_validation(pg_status status) {
  if (status == PG_OK || status >= PG_INTERNAL) return 0;
  return is_validation_error(static_cast<ErrorCode>(status)) ? 1 : 0;
}

void pg_string_free(char* s) { std::free(s); }

pg_status pg_config_default(pg_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new pg_config{};
  });
}

pg_status pg_config_from_json(const char* json, pg_config** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new pg_config{io::parse_simulation_config(json)};
  });
}

pg_status pg_config_load(const char* path, pg_config** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new pg_config{io::parse_simulation_config(io::read_file(path))};
  });
}

pg_status pg_config_resolve_path(const char* flag_value, char** out) {
  return guarded([&] {
    require(out, "out");
    *out = dup(io::resolve_config_path(flag_value ? flag_value : "").string());
  });
}

pg_status pg_config_to_json(const pg_config* config, char** out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    *out = dup(io::simulation_config_to_json(config->cfg));
  });
}

void pg_config_free(pg_config* config) { delete config; }

pg_status pg_simulate(const pg_config* config, pg_dataset** out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    auto* ds = new pg_dataset{};
    try {
      ds->loaded.dataset = simulate_semester(config->cfg);
    } catch (...) {
      delete ds;
      throw;
    }
    *out = ds;
  });
}

pg_status pg_simulation_write(const pg_config* config, const pg_dataset* dataset, const char* out_dir,
                              const char* config_path) {
  return guarded([&] {
    require(config, "config");
    require(dataset, "dataset");
    require(out_dir, "out_dir");
    std::optional<std::filesystem::path> cfg_file;
    if (config_path && *config_path) cfg_file = config_path;
    io::write_simulation_output(config->cfg, dataset->loaded.dataset, out_dir, cfg_file);
  });
}

pg_status pg_dataset_load(const char* dir, pg_dataset** out) {
  return guarded([&] {
    require(dir, "dir");
    require(out, "out");
    *out = new pg_dataset{io::load_dataset(dir), true};
  });
}

pg_status pg_dataset_write(const pg_dataset* dataset, const char* dir) {
  return guarded([&] {
    require(dataset, "dataset");
    require(dir, "dir");
    io::write_dataset(dataset->loaded.dataset, dir);
  });
}

pg_status pg_dataset_summary(const pg_dataset* dataset, char** out) {
  return guarded([&] {
    require(dataset, "dataset");
    require(out, "out");
    *out = dup(dataset->from_files ? io::cleaning_summary(dataset->loaded)
                                   : "records " + std::to_string(dataset->loaded.dataset.records.size()) + "\n");
  });
}

size_t pg_dataset_post_count(const pg_dataset* dataset) { return dataset ? dataset->loaded.dataset.posts.size() : 0; }

size_t pg_dataset_record_count(const pg_dataset* dataset) {
  return dataset ? dataset->loaded.dataset.records.size() : 0;
}

void pg_dataset_free(pg_dataset* dataset) { delete dataset; }

pg_status pg_analyze(const pg_dataset* dataset, const char* sections, double alpha, const char* items_csv,
                     pg_report** out) {
  return guarded([&] {
    require(dataset, "dataset");
    require(out, "out");
    auto rep = std::make_unique<pg_report>();
    rep->options.sections = parse_sections(sections ? sections : "all");
    rep->options.alpha_level = alpha;
    if (items_csv && *items_csv) {
      rep->options.items = io::load_item_matrix(items_csv);
      rep->items_file = items_csv;
      rep->options.sections |= static_cast<std::uint8_t>(Section::Cronbach);
    }
    rep->report = run_analysis(dataset->loaded.dataset, rep->options);
    *out = rep.release();
  });
}

pg_status pg_report_render(const pg_report* report, const char* format, char** out) {
  return guarded([&] {
    require(report, "report");
    require(format, "format");
    require(out, "out");
    *out = dup(io::render_report(report->report, io::parse_report_format(format)));
  });
}

pg_status pg_report_write_bundle(const pg_report* report, const char* data_dir, const char* out_dir) {
  return guarded([&] {
    require(report, "report");
    require(data_dir, "data_dir");
    require(out_dir, "out_dir");
    std::optional<std::filesystem::path> items;
    if (report->items_file) items = *report->items_file;
    io::write_analysis_bundle(report->report, report->options, data_dir, out_dir, items);
  });
}

pg_status pg_report_load_bundle(const char* bundle_dir, pg_report** out) {
  return guarded([&] {
    require(bundle_dir, "bundle_dir");
    require(out, "out");
    auto rep = std::make_unique<pg_report>();
    rep->report = io::load_bundle_report(bundle_dir);
    rep->options.sections = rep->report.sections;
    rep->options.alpha_level = rep->report.alpha_level;
    *out = rep.release();
  });
}

void pg_report_free(pg_report* report) { delete report; }

pg_status pg_sha256_hex(const void* data, size_t size, char** out) {
  return guarded([&] {
    require(out, "out");
    if (size) require(data, "data");
    *out = dup(io::sha256_hex(std::string_view(static_cast<const char*>(data), size)));
  });
}

}  // extern "C"
