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

// peergrade command-line tool. Talks to the library through the C API only.

#include <cstdio>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "peergrade/peergrade.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;

// Thrown by check() and turned into an exit code in main.
struct Failure {
  pg_status status;
};

void check(pg_status status) {
  if (status != PG_OK) throw Failure{status};
}

struct StringDeleter {
  void operator()(char* s) const { pg_string_free(s); }
};
using owned_string = std::unique_ptr<char, StringDeleter>;

template <typename T, void (*Free)(T*)>
struct HandleDeleter {
  void operator()(T* p) const { Free(p); }
};
using config_ptr = std::unique_ptr<pg_config, HandleDeleter<pg_config, pg_config_free>>;
using dataset_ptr = std::unique_ptr<pg_dataset, HandleDeleter<pg_dataset, pg_dataset_free>>;
using report_ptr = std::unique_ptr<pg_report, HandleDeleter<pg_report, pg_report_free>>;

void put(const char* text) { std::fputs(text, stdout); }

int cmd_simulate(const std::string& config_flag, const std::string& out) {
  char* raw = nullptr;
  check(pg_config_resolve_path(config_flag.c_str(), &raw));
  owned_string path(raw);

  pg_config* c = nullptr;
  if (path && *path)
    check(pg_config_load(path.get(), &c));
  else
    check(pg_config_default(&c));
  config_ptr cfg(c);

  pg_dataset* d = nullptr;
  check(pg_simulate(cfg.get(), &d));
  dataset_ptr ds(d);
  check(pg_simulation_write(cfg.get(), ds.get(), out.c_str(), path.get()));
  std::printf("simulated %zu posts, %zu graded records -> %s\n", pg_dataset_post_count(ds.get()),
              pg_dataset_record_count(ds.get()), out.c_str());
  return kExitOk;
}

int cmd_analyze(const std::string& data, const std::string& which, double alpha, const std::string& items,
                const std::string& out) {
  pg_dataset* d = nullptr;
  check(pg_dataset_load(data.c_str(), &d));
  dataset_ptr ds(d);
  pg_report* r = nullptr;
  check(pg_analyze(ds.get(), which.c_str(), alpha, items.empty() ? nullptr : items.c_str(), &r));
  report_ptr rep(r);
  check(pg_report_write_bundle(rep.get(), data.c_str(), out.c_str()));
  std::printf("report bundle -> %s\n", out.c_str());
  return kExitOk;
}

int cmd_validate(const std::string& data) {
  pg_dataset* d = nullptr;
  check(pg_dataset_load(data.c_str(), &d));
  dataset_ptr ds(d);
  char* raw = nullptr;
  check(pg_dataset_summary(ds.get(), &raw));
  owned_string summary(raw);
  put(summary.get());
  put("ok\n");
  return kExitOk;
}

int cmd_report(const std::string& bundle, const std::string& format) {
  pg_report* r = nullptr;
  check(pg_report_load_bundle(bundle.c_str(), &r));
  report_ptr rep(r);
  char* raw = nullptr;
  check(pg_report_render(rep.get(), format.c_str(), &raw));
  owned_string text(raw);
  put(text.get());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Peer assessment bias toolkit"};
  app.set_version_flag("--version", std::string(pg_version()));
  app.require_subcommand(1);

  std::string config, out, data, which = "all", items, bundle, format = "text";
  double alpha = 0.05;

  auto* sim = app.add_subcommand("simulate", "Simulate a semester and write the dataset");
  sim->add_option("--config", config, "JSON config file (PEERGRADE_CONFIG overrides)");
  sim->add_option("--out", out, "Output directory")->required();

  auto* ana = app.add_subcommand("analyze", "Run analyses and write a report bundle");
  ana->add_option("--data", data, "Dataset directory")->required();
  ana->add_option("--which", which,
                  "all, or a comma list of fairness,accuracy,descriptives,difference,relationships,cronbach")
      ->capture_default_str();
  ana->add_option("--alpha", alpha, "Significance level")->capture_default_str();
  ana->add_option("--items", items, "Item matrix CSV for cronbach");
  ana->add_option("--out", out, "Bundle directory")->required();

  auto* val = app.add_subcommand("validate", "Load and check a dataset directory");
  val->add_option("--data", data, "Dataset directory")->required();

  auto* rep = app.add_subcommand("report", "Print a report bundle");
  rep->add_option("--bundle", bundle, "Bundle directory")->required();
  rep->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*sim) return cmd_simulate(config, out);
    if (*ana) return cmd_analyze(data, which, alpha, items, out);
    if (*val) return cmd_validate(data);
    if (*rep) return cmd_report(bundle, format);
  } catch (const Failure& f) {
    std::fprintf(stderr, "peergrade: %s\n", pg_last_error());
    return pg_status_is_validation(f.status) ? kExitValidation : kExitInternal;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "peergrade: internal error: %s\n", e.what());
    return kExitInternal;
  }
  return kExitInternal;
}
