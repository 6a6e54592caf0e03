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

// Exercises the shared library through its C header only.

#include "peergrade/peergrade.h"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() /
            ("peergrade_capi_" + std::string(info->name()) + "_" + std::to_string(std::random_device{}()));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string take(char* s) {
  std::string out = s ? s : "";
  pg_string_free(s);
  return out;
}

const char* kSmall = R"({"students": 16, "skills": 4, "posts_per_student_rate": 1.0, "seed": 7})";

TEST(CApi, VersionAndNames) {
  EXPECT_STREQ(pg_version(), "0.1.0");
  EXPECT_STREQ(pg_status_name(PG_OK), "Ok");
  EXPECT_STREQ(pg_status_name(PG_PARSE_ERROR), "ParseError");
  EXPECT_STREQ(pg_status_name(PG_WRITE_FAILED), "WriteFailed");
  EXPECT_STREQ(pg_status_name(PG_INTERNAL), "Internal");
}

TEST(CApi, ValidationClassification) {
  EXPECT_EQ(pg_status_is_validation(PG_OK), 0);
  EXPECT_EQ(pg_status_is_validation(PG_PARSE_ERROR), 1);
  EXPECT_EQ(pg_status_is_validation(PG_SCHEMA_MISMATCH), 1);
  EXPECT_EQ(pg_status_is_validation(PG_INVALID_CONFIG), 1);
  EXPECT_EQ(pg_status_is_validation(PG_INVALID_ALPHA), 1);
  EXPECT_EQ(pg_status_is_validation(PG_WRITE_FAILED), 0);
  EXPECT_EQ(pg_status_is_validation(PG_NON_CONVERGENCE), 0);
  EXPECT_EQ(pg_status_is_validation(PG_INTERNAL), 0);
  EXPECT_EQ(pg_status_is_validation(PG_OUT_OF_MEMORY), 0);
}

TEST(CApi, NullArgumentsAreRejected) {
  EXPECT_EQ(pg_config_from_json(nullptr, nullptr), PG_INVALID_ARGUMENT);
  EXPECT_NE(std::string(pg_last_error()).find("NULL"), std::string::npos);
  EXPECT_EQ(pg_dataset_post_count(nullptr), 0u);
  pg_config_free(nullptr);
  pg_dataset_free(nullptr);
  pg_report_free(nullptr);
  pg_string_free(nullptr);
}

TEST(CApi, ConfigErrorsCarryMessage) {
  pg_config* cfg = nullptr;
  EXPECT_EQ(pg_config_from_json("{\"seed\": ", &cfg), PG_PARSE_ERROR);
  EXPECT_EQ(cfg, nullptr);
  EXPECT_EQ(pg_config_from_json(R"({"bogus": 1})", &cfg), PG_INVALID_CONFIG);
  EXPECT_EQ(std::string(pg_last_error()), "InvalidConfig: unknown key 'bogus'");
}

TEST(CApi, SimulateWriteLoadAnalyze) {
  TempDir dir;
  pg_config* cfg = nullptr;
  ASSERT_EQ(pg_config_from_json(kSmall, &cfg), PG_OK);
  char* json = nullptr;
  ASSERT_EQ(pg_config_to_json(cfg, &json), PG_OK);
  EXPECT_NE(take(json).find("\"seed\": 7"), std::string::npos);

  pg_dataset* sim = nullptr;
  ASSERT_EQ(pg_simulate(cfg, &sim), PG_OK) << pg_last_error();
  const fs::path data = dir.path() / "data";
  ASSERT_EQ(pg_simulation_write(cfg, sim, data.c_str(), nullptr), PG_OK) << pg_last_error();

  pg_dataset* loaded = nullptr;
  ASSERT_EQ(pg_dataset_load(data.c_str(), &loaded), PG_OK) << pg_last_error();
  EXPECT_EQ(pg_dataset_post_count(loaded), pg_dataset_post_count(sim));
  EXPECT_EQ(pg_dataset_record_count(loaded), pg_dataset_record_count(sim));
  char* summary = nullptr;
  ASSERT_EQ(pg_dataset_summary(loaded, &summary), PG_OK);
  EXPECT_NE(take(summary).find("dropped for empty feedback 0"), std::string::npos);

  pg_report* rep = nullptr;
  ASSERT_EQ(pg_analyze(loaded, "fairness,accuracy", 0.05, nullptr, &rep), PG_OK) << pg_last_error();
  char* text = nullptr;
  ASSERT_EQ(pg_report_render(rep, "text", &text), PG_OK);
  const std::string t = take(text);
  EXPECT_NE(t.find("Fairness"), std::string::npos);
  EXPECT_EQ(t.find("Relationship bias"), std::string::npos);
  char* bad = nullptr;
  EXPECT_EQ(pg_report_render(rep, "xml", &bad), PG_INVALID_ARGUMENT);

  const fs::path bundle = dir.path() / "bundle";
  ASSERT_EQ(pg_report_write_bundle(rep, data.c_str(), bundle.c_str()), PG_OK) << pg_last_error();
  pg_report* back = nullptr;
  ASSERT_EQ(pg_report_load_bundle(bundle.c_str(), &back), PG_OK) << pg_last_error();
  char* j1 = nullptr;
  char* j2 = nullptr;
  ASSERT_EQ(pg_report_render(rep, "json", &j1), PG_OK);
  ASSERT_EQ(pg_report_render(back, "json", &j2), PG_OK);
  EXPECT_EQ(take(j1), take(j2));

  pg_report_free(back);
  pg_report_free(rep);
  pg_dataset_free(loaded);
  pg_dataset_free(sim);
  pg_config_free(cfg);
}

TEST(CApi, AnalysisErrors) {
  pg_config* cfg = nullptr;
  ASSERT_EQ(pg_config_from_json(kSmall, &cfg), PG_OK);
  pg_dataset* ds = nullptr;
  ASSERT_EQ(pg_simulate(cfg, &ds), PG_OK);
  pg_report* rep = nullptr;
  EXPECT_EQ(pg_analyze(ds, "all", 1.5, nullptr, &rep), PG_INVALID_ALPHA);
  EXPECT_EQ(pg_analyze(ds, "tables", 0.05, nullptr, &rep), PG_INVALID_ARGUMENT);
  EXPECT_EQ(pg_analyze(ds, "cronbach", 0.05, nullptr, &rep), PG_INVALID_ARGUMENT);
  EXPECT_EQ(rep, nullptr);
  pg_dataset_free(ds);
  pg_config_free(cfg);
}

TEST(CApi, MissingDatasetIsValidationError) {
  pg_dataset* ds = nullptr;
  const pg_status st = pg_dataset_load("/nonexistent/peergrade", &ds);
  EXPECT_EQ(st, PG_IO);
  EXPECT_EQ(pg_status_is_validation(st), 1);
}

TEST(CApi, ConfigPathOverride) {
  ::unsetenv("PEERGRADE_CONFIG");
  char* p = nullptr;
  ASSERT_EQ(pg_config_resolve_path("flag.json", &p), PG_OK);
  EXPECT_EQ(take(p), "flag.json");
  ::setenv("PEERGRADE_CONFIG", "env.json", 1);
  ASSERT_EQ(pg_config_resolve_path("flag.json", &p), PG_OK);
  EXPECT_EQ(take(p), "env.json");
  ::unsetenv("PEERGRADE_CONFIG");
}

TEST(CApi, Sha256) {
  char* h = nullptr;
  ASSERT_EQ(pg_sha256_hex("abc", 3, &h), PG_OK);
  EXPECT_EQ(take(h), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  ASSERT_EQ(pg_sha256_hex(nullptr, 0, &h), PG_OK);
  EXPECT_EQ(take(h), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

}  // namespace
