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

#include "peergrade/io.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

#include "peergrade/error.hpp"
#include "peergrade/report.hpp"
#include "peergrade/simulator.hpp"

namespace {

using namespace peergrade;
using namespace peergrade::io;
namespace fs = std::filesystem;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

std::string message_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() /
            ("peergrade_io_" + std::string(info->test_suite_name()) + "_" + info->name() + "_" +
             std::to_string(std::random_device{}()));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

SimulationConfig small_config() {
  SimulationConfig cfg;
  cfg.students = 16;
  cfg.skills = 4;
  cfg.posts_per_student_rate = 1.0;
  cfg.seed = 7;
  return cfg;
}

void replace_in_file(const fs::path& p, const std::string& from, const std::string& to) {
  std::string s = read_file(p);
  const auto pos = s.find(from);
  ASSERT_NE(pos, std::string::npos) << from;
  s.replace(pos, from.size(), to);
  write_file(p, s);
}

TEST(Csv, QuotingRoundTrip) {
  const std::vector<std::string> header{"a", "b"};
  const std::vector<std::vector<std::string>> rows{{"plain", "with,comma"}, {"say \"hi\"", "two\nlines"}, {"", " "}};
  const std::string text = format_csv(header, rows);
  const CsvTable t = parse_csv(text, "t.csv");
  EXPECT_EQ(t.header, header);
  EXPECT_EQ(t.rows, rows);
  // The second row spans lines 3-4, so the third starts on line 5.
  EXPECT_EQ(t.lines, (std::vector<std::size_t>{2, 3, 5}));
}

TEST(Csv, CrlfBomAndMissingFinalNewline) {
  const CsvTable t = parse_csv("\xEF\xBB\xBFx,y\r\n1,2\r\n3,4", "t.csv");
  EXPECT_EQ(t.header, (std::vector<std::string>{"x", "y"}));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[1], (std::vector<std::string>{"3", "4"}));
}

TEST(Csv, ErrorsCarryLineAndColumn) {
  EXPECT_EQ(message_of([] { parse_csv("a,b\n1,2\n3\n", "t.csv"); }),
            "ParseError: t.csv:3:2: expected 2 fields, found 1");
  EXPECT_EQ(message_of([] { parse_csv("a,b\n1,\"open\n", "t.csv"); }).substr(0, 22), "ParseError: t.csv:3:2:");
  EXPECT_EQ(code_of([] { parse_csv("a,b\n1,x\"y\n", "t.csv"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_csv("a,b\n\"1\"x,2\n", "t.csv"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_csv("", "t.csv"); }), ErrorCode::ParseError);
}

TEST(FormatNumber, ShortestRoundTrip) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) / (1 + i);
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
  EXPECT_EQ(format_number(0.25), "0.25");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(3.0), "3");
}

TEST(DatasetIo, RoundTripIdentity) {
  TempDir dir;
  const Dataset ds = simulate_semester(small_config());
  ASSERT_FALSE(ds.records.empty());
  write_dataset(ds, dir.path());
  const LoadResult r = load_dataset(dir.path());
  EXPECT_EQ(r.dataset, ds);
  EXPECT_EQ(r.cleaning.dropped_empty_feedback, 0u);
  EXPECT_EQ(r.cleaning.assessments_read, ds.assessments.size());
  EXPECT_EQ(r.cleaning.tables.size(), 8u);

  // Writing the loaded dataset again gives the same bytes.
  TempDir again;
  write_dataset(r.dataset, again.path());
  for (const std::string& f : dataset_files()) {
    EXPECT_EQ(read_file(dir.path() / f), read_file(again.path() / f)) << f;
  }
}

TEST(DatasetIo, EmptyFeedbackRowIsDroppedAndCounted) {
  TempDir dir;
  Dataset ds = simulate_semester(small_config());
  ds.assessments[0].feedback = "  ";
  write_dataset(ds, dir.path());
  const LoadResult r = load_dataset(dir.path());
  EXPECT_EQ(r.cleaning.assessments_read, ds.assessments.size());
  EXPECT_EQ(r.cleaning.dropped_empty_feedback, 1u);
  EXPECT_EQ(r.cleaning.assessments_kept, ds.assessments.size() - 1);
  EXPECT_EQ(r.dataset.assessments.size(), ds.assessments.size() - 1);
  EXPECT_EQ(r.dataset.records.size(), ds.records.size() - 1);
}

TEST(DatasetIo, StudentWithoutAssessmentsIsReported) {
  TempDir dir;
  Dataset ds = simulate_semester(small_config());
  ds.students.push_back(StudentId{999});
  derive_records(ds);
  write_dataset(ds, dir.path());
  const LoadResult r = load_dataset(dir.path());
  ASSERT_EQ(r.cleaning.never_assessed.size(), 1u);
  EXPECT_EQ(r.cleaning.never_assessed[0], StudentId{999});
}

TEST(DatasetIo, ValidationErrors) {
  TempDir dir;
  write_dataset(simulate_semester(small_config()), dir.path());
  const std::string good = read_file(dir.path() / "assessments.csv");

  // Unknown post.
  write_file(dir.path() / "assessments.csv", good + "9999,1,3,ok,5\n");
  EXPECT_EQ(code_of([&] { load_dataset(dir.path()); }), ErrorCode::ReferentialIntegrity);

  // Grade out of range points at the cell.
  const std::size_t rows = std::count(good.begin(), good.end(), '\n');
  write_file(dir.path() / "assessments.csv", good + "1,1,7,ok,5\n");
  const std::string where = "ParseError: assessments.csv:" + std::to_string(rows + 1) + ":3: grade: ";
  EXPECT_EQ(message_of([&] { load_dataset(dir.path()); }).substr(0, where.size()), where);

  write_file(dir.path() / "assessments.csv", "post,grader,grade,feedback,submitted_at\n");
  EXPECT_EQ(code_of([&] { load_dataset(dir.path()); }), ErrorCode::SchemaMismatch);
  write_file(dir.path() / "assessments.csv", good);

  replace_in_file(dir.path() / "dataset.json", "\"version\": 1", "\"version\": 9");
  EXPECT_EQ(code_of([&] { load_dataset(dir.path()); }), ErrorCode::SchemaMismatch);
  replace_in_file(dir.path() / "dataset.json", "\"version\": 9", "\"version\": 1");

  fs::remove(dir.path() / "ratings.csv");
  EXPECT_EQ(code_of([&] { load_dataset(dir.path()); }), ErrorCode::SchemaMismatch);
  EXPECT_EQ(code_of([&] { load_dataset(dir.path() / "nope"); }), ErrorCode::Io);
}

TEST(Config, ParseEchoAndErrors) {
  SimulationConfig cfg = parse_simulation_config(R"({"students": 20, "like_bias": 0.5,
      "quality": {"sd": 0.8}, "rounding": "half_to_even", "seed": 18446744073709551615})");
  EXPECT_EQ(cfg.students, 20u);
  EXPECT_DOUBLE_EQ(cfg.like_bias, 0.5);
  EXPECT_DOUBLE_EQ(cfg.quality.sd, 0.8);
  EXPECT_DOUBLE_EQ(cfg.quality.mean, SimulationConfig{}.quality.mean);
  EXPECT_EQ(cfg.rounding, RoundingMode::HalfToEven);
  EXPECT_EQ(cfg.seed, UINT64_MAX);
  const std::string echo = simulation_config_to_json(cfg);
  EXPECT_EQ(simulation_config_to_json(parse_simulation_config(echo)), echo);

  EXPECT_EQ(code_of([] { parse_simulation_config(R"({"studnets": 3})"); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { parse_simulation_config(R"({"students": "many"})"); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { parse_simulation_config(R"({"students": -4})"); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { parse_simulation_config(R"({"participation_prob": 2})"); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { parse_simulation_config(R"({"quality": {"mu": 1}})"); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { parse_simulation_config("{"); }), ErrorCode::ParseError);
}

TEST(Config, EnvironmentOverridesPath) {
  ::unsetenv(kConfigEnvVar);
  EXPECT_EQ(resolve_config_path("a.json"), fs::path("a.json"));
  ::setenv(kConfigEnvVar, "b.json", 1);
  EXPECT_EQ(resolve_config_path("a.json"), fs::path("b.json"));
  ::setenv(kConfigEnvVar, "", 1);
  EXPECT_EQ(resolve_config_path("a.json"), fs::path("a.json"));
  ::unsetenv(kConfigEnvVar);
}

AnalysisReport sample_report() {
  SimulationConfig cfg;
  cfg.like_bias = cfg.dislike_bias = 0.5;
  cfg.redraw_expired = false;
  const Dataset ds = simulate_semester(cfg);
  AnalysisOptions opt;
  opt.sections = kAllSections;
  opt.items = std::vector<std::vector<double>>{{1, 2, 2}, {2, 3, 3}, {4, 4, 5}, {3, 3, 2}};
  return run_analysis(ds, opt);
}

TEST(Report, JsonRoundTripPreservesEveryRendering) {
  const AnalysisReport r = sample_report();
  const std::string json = report_to_json(r);
  const AnalysisReport back = report_from_json(json);
  EXPECT_EQ(report_to_json(back), json);
  EXPECT_EQ(report_to_text(back), report_to_text(r));
  EXPECT_EQ(report_to_csv(back), report_to_csv(r));

  const std::string text = report_to_text(r);
  for (const char* heading : {"Fairness", "Accuracy", "Descriptives", "minus professor", "Relationship bias",
                              "Cronbach"}) {
    EXPECT_NE(text.find(heading), std::string::npos) << heading;
  }
  const CsvTable csv = parse_csv(report_to_csv(r), "report.csv");
  EXPECT_EQ(csv.header, (std::vector<std::string>{"section", "row", "column", "value"}));
  const CsvTable series = parse_csv(series_to_csv(r), "series.csv");
  EXPECT_EQ(series.rows.size(), r.posts);
}

TEST(Report, SelectedSectionOnly) {
  SimulationConfig cfg;
  cfg.students = 20;
  cfg.skills = 6;
  AnalysisOptions opt;
  opt.sections = parse_sections("fairness");
  const AnalysisReport r = run_analysis(simulate_semester(cfg), opt);
  const std::string json = report_to_json(r);
  EXPECT_NE(json.find("\"fairness\""), std::string::npos);
  EXPECT_EQ(json.find("\"accuracy\""), std::string::npos);
  EXPECT_EQ(json.find("\"relationships\""), std::string::npos);
  EXPECT_EQ(report_from_json(json).sections, r.sections);
  EXPECT_EQ(code_of([] { report_from_json("{\"format\": \"other\"}"); }), ErrorCode::SchemaMismatch);
  EXPECT_EQ(code_of([] { parse_report_format("xml"); }), ErrorCode::InvalidArgument);
}

TEST(Digest, KnownVectorAndManifestRoundTrip) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");

  ::setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
  EXPECT_EQ(manifest_timestamp(), 1700000000);
  ::unsetenv("SOURCE_DATE_EPOCH");

  RunManifest m;
  m.command = "simulate";
  m.tool_version = std::string(tool_version());
  m.config_json = simulation_config_to_json(SimulationConfig{});
  m.seed = 42;
  m.outputs.push_back({"posts.csv", 3, sha256_hex("abc")});
  m.created_at = 1;
  const std::string text = manifest_to_json(m);
  EXPECT_EQ(manifest_to_json(manifest_from_json(text)), text);
}

TEST(Bundle, DigestMismatchIsRejected) {
  TempDir dir;
  const AnalysisReport r = sample_report();
  const std::string json = report_to_json(r);
  write_file(dir.path() / kReportJson, json);
  RunManifest m;
  m.command = "analyze";
  m.outputs.push_back({kReportJson, json.size(), sha256_hex(json)});
  write_file(dir.path() / kManifest, manifest_to_json(m));
  EXPECT_EQ(report_to_json(load_bundle_report(dir.path())), json);

  write_file(dir.path() / kReportJson, json + " ");
  EXPECT_EQ(code_of([&] { load_bundle_report(dir.path()); }), ErrorCode::SchemaMismatch);
}

}  // namespace
