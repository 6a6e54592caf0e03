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

#include <cstdlib>
#include <set>

#include "json.hpp"

#include "peergrade/error.hpp"
#include "peergrade/io.hpp"

namespace peergrade::io {
namespace {

using nlohmann::json;

[[noreturn]] void bad_config(const std::string& what) { fail(ErrorCode::InvalidConfig, what); }

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) bad_config("unknown key '" + where + key + "'");
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where = "") {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  const json& v = *it;
  bool ok;
  if constexpr (std::is_same_v<T, bool>) {
    ok = v.is_boolean();
  } else if constexpr (std::is_integral_v<T>) {
    ok = v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
  } else if constexpr (std::is_floating_point_v<T>) {
    ok = v.is_number();
  } else {
    ok = v.is_string();
  }
  if (!ok) bad_config("'" + where + key + "' has the wrong type");
  out = v.get<T>();
}

}  // namespace

SimulationConfig parse_simulation_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, std::string("config: ") + e.what());
  }
  if (!doc.is_object()) bad_config("config must be a JSON object");
  reject_unknown(doc,
                 {"students", "skills", "posts_per_student_rate", "min_nominations", "extra_nominations",
                  "like_bias", "dislike_bias", "grader_noise", "professor_noise", "participation_prob",
                  "quality", "acquaintance_prob", "rating_center", "rating_scale", "reviewers_per_post",
                  "window_hours", "redraw_expired", "skill_spacing_days", "skill_open_days", "rounding",
                  "rating_buckets", "seed"},
                 "");
  SimulationConfig cfg;
  read(doc, "students", cfg.students);
  read(doc, "skills", cfg.skills);
  read(doc, "posts_per_student_rate", cfg.posts_per_student_rate);
  read(doc, "min_nominations", cfg.min_nominations);
  read(doc, "extra_nominations", cfg.extra_nominations);
  read(doc, "like_bias", cfg.like_bias);
  read(doc, "dislike_bias", cfg.dislike_bias);
  read(doc, "grader_noise", cfg.grader_noise);
  read(doc, "professor_noise", cfg.professor_noise);
  read(doc, "participation_prob", cfg.participation_prob);
  read(doc, "acquaintance_prob", cfg.acquaintance_prob);
  read(doc, "rating_center", cfg.rating_center);
  read(doc, "rating_scale", cfg.rating_scale);
  read(doc, "reviewers_per_post", cfg.reviewers_per_post);
  read(doc, "window_hours", cfg.window_hours);
  read(doc, "redraw_expired", cfg.redraw_expired);
  read(doc, "skill_spacing_days", cfg.skill_spacing_days);
  read(doc, "skill_open_days", cfg.skill_open_days);
  read(doc, "seed", cfg.seed);
  if (auto it = doc.find("quality"); it != doc.end()) {
    if (!it->is_object()) bad_config("'quality' must be an object");
    reject_unknown(*it, {"mean", "sd"}, "quality.");
    read(*it, "mean", cfg.quality.mean, "quality.");
    read(*it, "sd", cfg.quality.sd, "quality.");
  }
  if (auto it = doc.find("rating_buckets"); it != doc.end()) {
    if (!it->is_object()) bad_config("'rating_buckets' must be an object");
    reject_unknown(*it, {"dislike_max", "neutral_max"}, "rating_buckets.");
    read(*it, "dislike_max", cfg.buckets.dislike_max, "rating_buckets.");
    read(*it, "neutral_max", cfg.buckets.neutral_max, "rating_buckets.");
  }
  if (auto it = doc.find("rounding"); it != doc.end()) {
    if (!it->is_string()) bad_config("'rounding' has the wrong type");
    cfg.rounding = parse_rounding(it->get<std::string>());
  }
  cfg.validate();
  return cfg;
}

std::string simulation_config_to_json(const SimulationConfig& cfg) {
  const json doc{
      {"students", cfg.students},
      {"skills", cfg.skills},
      {"posts_per_student_rate", cfg.posts_per_student_rate},
      {"min_nominations", cfg.min_nominations},
      {"extra_nominations", cfg.extra_nominations},
      {"like_bias", cfg.like_bias},
      {"dislike_bias", cfg.dislike_bias},
      {"grader_noise", cfg.grader_noise},
      {"professor_noise", cfg.professor_noise},
      {"participation_prob", cfg.participation_prob},
      {"quality", {{"mean", cfg.quality.mean}, {"sd", cfg.quality.sd}}},
      {"acquaintance_prob", cfg.acquaintance_prob},
      {"rating_center", cfg.rating_center},
      {"rating_scale", cfg.rating_scale},
      {"reviewers_per_post", cfg.reviewers_per_post},
      {"window_hours", cfg.window_hours},
      {"redraw_expired", cfg.redraw_expired},
      {"skill_spacing_days", cfg.skill_spacing_days},
      {"skill_open_days", cfg.skill_open_days},
      {"rounding", std::string(to_string(cfg.rounding))},
      {"rating_buckets", {{"dislike_max", cfg.buckets.dislike_max}, {"neutral_max", cfg.buckets.neutral_max}}},
      {"seed", cfg.seed},
  };
  return doc.dump(2) + "\n";
}

std::filesystem::path resolve_config_path(const std::filesystem::path& flag_value) {
  const char* env = std::getenv(kConfigEnvVar);
  if (env && *env) return env;
  return flag_value;
}

}  // namespace peergrade::io
