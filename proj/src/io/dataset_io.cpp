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

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "json.hpp"

#include "peergrade/error.hpp"
#include "peergrade/io.hpp"

namespace peergrade::io {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<std::string> kStudentsHeader{"student_id"};
const std::vector<std::string> kPostsHeader{"post_id", "author_id", "skill_id", "parent_id", "created_at",
                                            "content_ref"};
const std::vector<std::string> kAssessmentsHeader{"post_id", "grader_id", "grade", "feedback", "submitted_at"};
const std::vector<std::string> kProfessorHeader{"post_id", "grade"};
const std::vector<std::string> kNominationsHeader{"owner_id", "liked", "disliked"};
const std::vector<std::string> kRatingsHeader{"rater_id", "ratee_id", "score", "timestamp"};
const std::vector<std::string> kTrainingHeader{"student_id", "skill_id", "completed", "attempts"};
const std::vector<std::string> kAssignmentsHeader{"post_id",  "grader_id", "issued_at",
                                                  "deadline", "status",    "relationship_at_issue"};
const std::vector<std::string> kRecordsHeader{
    "post_id",          "skill_id", "author_id",        "grader_id",       "relationship",
    "peer_grade",       "professor_grade", "order",     "assessment_count", "final_peer_grade",
    "mean_peer_grade",  "submitted_at"};

std::string str(std::uint32_t v) { return std::to_string(v); }
std::string str(Instant v) { return std::to_string(v); }

std::string join_ids(const std::set<StudentId>& ids) {
  std::string out;
  for (StudentId id : ids) {
    if (!out.empty()) out += ';';
    out += str(id.value);
  }
  return out;
}

// Typed access to one cell, with errors pointing at file:line:column.
class Cursor {
 public:
  Cursor(const CsvTable& t, std::size_t row) : t_(t), row_(row) {}

  [[noreturn]] void bad(std::size_t col, const std::string& what) const {
    fail(ErrorCode::ParseError, t_.source + ":" + std::to_string(t_.lines[row_]) + ":" +
                                    std::to_string(col + 1) + ": " + t_.header[col] + ": " + what);
  }

  const std::string& text(std::size_t col) const { return t_.rows[row_][col]; }

  template <typename T>
  T integer(std::size_t col, T lo, T hi) const {
    const std::string& s = text(col);
    T v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
      bad(col, "expected an integer, got '" + s + "'");
    }
    if (v < lo || v > hi) bad(col, "value " + s + " out of range");
    return v;
  }

  std::uint32_t id(std::size_t col) const { return integer<std::uint32_t>(col, 1, UINT32_MAX); }
  Instant instant(std::size_t col) const { return integer<Instant>(col, INT64_MIN, INT64_MAX); }
  Grade grade(std::size_t col) const { return Grade(integer<int>(col, Grade::kMin, Grade::kMax)); }

  bool boolean(std::size_t col) const {
    const std::string& s = text(col);
    if (s == "1" || s == "true") return true;
    if (s == "0" || s == "false") return false;
    bad(col, "expected 0 or 1, got '" + s + "'");
  }

  std::set<StudentId> id_list(std::size_t col) const {
    std::set<StudentId> out;
    const std::string& s = text(col);
    std::size_t start = 0;
    while (start < s.size()) {
      std::size_t end = s.find(';', start);
      if (end == std::string::npos) end = s.size();
      const std::string part = s.substr(start, end - start);
      std::uint32_t v = 0;
      const auto res = std::from_chars(part.data(), part.data() + part.size(), v);
      if (part.empty() || res.ec != std::errc{} || res.ptr != part.data() + part.size() || v == 0) {
        bad(col, "expected ';'-separated student ids, got '" + s + "'");
      }
      if (!out.insert(StudentId{v}).second) bad(col, "student " + part + " listed twice");
      start = end + 1;
    }
    return out;
  }

  template <typename Fn>
  auto parsed(std::size_t col, Fn&& parse) const {
    try {
      return parse(text(col));
    } catch (const Error& e) {
      bad(col, e.what());
    }
  }

 private:
  const CsvTable& t_;
  std::size_t row_;
};

[[noreturn]] void integrity(const CsvTable& t, std::size_t row, const std::string& what) {
  fail(ErrorCode::ReferentialIntegrity, t.source + ":" + std::to_string(t.lines[row]) + ": " + what);
}

CsvTable load_table(const fs::path& dir, const std::string& name, const std::vector<std::string>& header) {
  const fs::path path = dir / name;
  if (!fs::exists(path)) fail(ErrorCode::SchemaMismatch, "dataset is missing " + name);
  CsvTable t = parse_csv(read_file(path), name);
  if (t.header != header) {
    std::string expected;
    for (const auto& h : header) expected += (expected.empty() ? "" : ",") + h;
    fail(ErrorCode::SchemaMismatch, name + ": header must be '" + expected + "'");
  }
  return t;
}

json meta_json(const Dataset& ds) {
  return json{{"format", "peergrade-dataset"},
              {"version", kDatasetFormatVersion},
              {"rounding", std::string(to_string(ds.rounding))},
              {"rating_buckets", {{"dislike_max", ds.buckets.dislike_max}, {"neutral_max", ds.buckets.neutral_max}}}};
}

void read_meta(const fs::path& dir, Dataset& ds) {
  const fs::path path = dir / "dataset.json";
  if (!fs::exists(path)) fail(ErrorCode::SchemaMismatch, "dataset is missing dataset.json");
  json meta;
  try {
    meta = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, "dataset.json: " + std::string(e.what()));
  }
  try {
    if (meta.at("format") != "peergrade-dataset") fail(ErrorCode::SchemaMismatch, "dataset.json: not a peergrade dataset");
    if (meta.at("version") != kDatasetFormatVersion) {
      fail(ErrorCode::SchemaMismatch, "dataset.json: unsupported format version " + meta.at("version").dump());
    }
    try {
      ds.rounding = parse_rounding(meta.at("rounding").get<std::string>());
    } catch (const Error& e) {
      fail(ErrorCode::SchemaMismatch, std::string("dataset.json: ") + e.what());
    }
    const json& b = meta.at("rating_buckets");
    ds.buckets.dislike_max = b.at("dislike_max").get<int>();
    ds.buckets.neutral_max = b.at("neutral_max").get<int>();
  } catch (const json::exception& e) {
    fail(ErrorCode::SchemaMismatch, "dataset.json: " + std::string(e.what()));
  }
  const RatingBuckets& b = ds.buckets;
  if (!(b.dislike_max >= 0 && b.dislike_max <= b.neutral_max && b.neutral_max <= 5)) {
    fail(ErrorCode::SchemaMismatch, "dataset.json: rating buckets must satisfy 0 <= dislike_max <= neutral_max <= 5");
  }
}

}  // namespace

const std::vector<std::string>& dataset_files() {
  static const std::vector<std::string> files{
      "dataset.json",  "students.csv", "posts.csv",       "assessments.csv", "professor.csv",
      "nominations.csv", "ratings.csv", "training.csv",   "assignments.csv", "records.csv"};
  return files;
}

std::vector<std::string> write_dataset(const Dataset& ds, const fs::path& dir) {
  std::map<std::string, std::string> out;
  out["dataset.json"] = meta_json(ds).dump(2) + "\n";

  std::vector<std::vector<std::string>> rows;
  for (StudentId s : ds.students) rows.push_back({str(s.value)});
  out["students.csv"] = format_csv(kStudentsHeader, rows);

  rows.clear();
  for (const Post& p : ds.posts) {
    rows.push_back({str(p.id.value), str(p.author.value), str(p.skill.value),
                    p.parent ? str(p.parent->value) : "", str(p.created_at), p.content_ref});
  }
  out["posts.csv"] = format_csv(kPostsHeader, rows);

  rows.clear();
  for (const AssessmentRow& a : ds.assessments) {
    rows.push_back({str(a.post.value), str(a.grader.value), std::to_string(a.grade.value()), a.feedback,
                    str(a.submitted_at)});
  }
  out["assessments.csv"] = format_csv(kAssessmentsHeader, rows);

  rows.clear();
  for (const ProfessorRow& r : ds.professor) rows.push_back({str(r.post.value), std::to_string(r.grade.value())});
  out["professor.csv"] = format_csv(kProfessorHeader, rows);

  rows.clear();
  for (const NominationSet& n : ds.nominations) rows.push_back({str(n.owner.value), join_ids(n.liked), join_ids(n.disliked)});
  out["nominations.csv"] = format_csv(kNominationsHeader, rows);

  rows.clear();
  for (const PeerRating& r : ds.ratings) {
    rows.push_back({str(r.rater.value), str(r.ratee.value), std::to_string(r.score), str(r.timestamp)});
  }
  out["ratings.csv"] = format_csv(kRatingsHeader, rows);

  rows.clear();
  for (const TrainingRow& t : ds.training) {
    rows.push_back({str(t.student.value), str(t.skill.value), t.completed ? "1" : "0", str(t.attempts)});
  }
  out["training.csv"] = format_csv(kTrainingHeader, rows);

  rows.clear();
  for (const AssignmentRow& a : ds.assignments) {
    rows.push_back({str(a.post.value), str(a.grader.value), str(a.issued_at), str(a.deadline),
                    std::string(to_string(a.status)), std::string(to_string(a.relationship_at_issue))});
  }
  out["assignments.csv"] = format_csv(kAssignmentsHeader, rows);

  rows.clear();
  for (const AssessmentRecord& r : ds.records) {
    rows.push_back({str(r.post.value), str(r.skill.value), str(r.author.value), str(r.grader.value),
                    std::string(to_string(r.relationship)), std::to_string(r.peer_grade.value()),
                    r.professor_grade ? std::to_string(r.professor_grade->value()) : "", str(r.order),
                    str(r.assessment_count), std::to_string(r.final_peer_grade.value()),
                    format_number(r.mean_peer_grade), str(r.submitted_at)});
  }
  out["records.csv"] = format_csv(kRecordsHeader, rows);

  for (const std::string& name : dataset_files()) write_file(dir / name, out.at(name));
  return dataset_files();
}

LoadResult load_dataset(const fs::path& dir) {
  if (!fs::is_directory(dir)) fail(ErrorCode::Io, "dataset directory " + dir.string() + " does not exist");
  LoadResult result;
  Dataset& ds = result.dataset;
  read_meta(dir, ds);

  std::set<StudentId> students;
  {
    const CsvTable t = load_table(dir, "students.csv", kStudentsHeader);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const StudentId s{Cursor(t, i).id(0)};
      if (!students.insert(s).second) integrity(t, i, "duplicate student " + str(s.value));
      ds.students.push_back(s);
    }
    result.cleaning.tables.push_back({t.source, t.rows.size()});
  }
  auto need_student = [&](const CsvTable& t, std::size_t row, StudentId s) {
    if (!students.count(s)) integrity(t, row, "unknown student " + str(s.value));
  };

  std::set<PostId> posts;
  {
    const CsvTable t = load_table(dir, "posts.csv", kPostsHeader);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const Cursor c(t, i);
      Post p;
      p.id = PostId{c.id(0)};
      p.author = StudentId{c.id(1)};
      p.skill = SkillId{c.id(2)};
      if (!c.text(3).empty()) p.parent = PostId{c.id(3)};
      p.created_at = c.instant(4);
      p.content_ref = c.text(5);
      if (!posts.insert(p.id).second) integrity(t, i, "duplicate post " + str(p.id.value));
      need_student(t, i, p.author);
      ds.posts.push_back(std::move(p));
    }
    for (std::size_t i = 0; i < ds.posts.size(); ++i) {
      const auto& parent = ds.posts[i].parent;
      if (parent && !posts.count(*parent)) integrity(t, i, "unknown parent post " + str(parent->value));
    }
    result.cleaning.tables.push_back({t.source, t.rows.size()});
  }
  auto need_post = [&](const CsvTable& t, std::size_t row, PostId p) {
    if (!posts.count(p)) integrity(t, row, "unknown post " + str(p.value));
  };

  {
    const CsvTable t = load_table(dir, "assessments.csv", kAssessmentsHeader);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const Cursor c(t, i);
      AssessmentRow a{PostId{c.id(0)}, StudentId{c.id(1)}, c.grade(2), c.text(3), c.instant(4)};
      need_post(t, i, a.post);
      need_student(t, i, a.grader);
      ds.assessments.push_back(std::move(a));
    }
    result.cleaning.tables.push_back({t.source, t.rows.size()});
  }
  {
    const CsvTable t = load_table(dir, "professor.csv", kProfessorHeader);
    std::set<PostId> seen;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const Cursor c(t, i);
      ProfessorRow r{PostId{c.id(0)}, c.grade(1)};
      need_post(t, i, r.post);
      if (!seen.insert(r.post).second) integrity(t, i, "second professor rating for post " + str(r.post.value));
      ds.professor.push_back(r);
    }
    result.cleaning.tables.push_back({t.source, t.rows.size()});
  }
  {
    const CsvTable t = load_table(dir, "nominations.csv", kNominationsHeader);
    std::set<StudentId> owners;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const Cursor c(t, i);
      NominationSet n{StudentId{c.id(0)}, c.id_list(1), c.id_list(2)};
      need_student(t, i, n.owner);
      if (!owners.insert(n.owner).second) integrity(t, i, "second nomination row for student " + str(n.owner.value));
      for (const auto* list : {&n.liked, &n.disliked}) {
        for (StudentId s : *list) {
          need_student(t, i, s);
          if (s == n.owner) integrity(t, i, "student " + str(s.value) + " nominates themself");
        }
      }
      for (StudentId s : n.liked) {
        if (n.disliked.count(s)) integrity(t, i, "student " + str(s.value) + " is both liked and disliked");
      }
      ds.nominations.push_back(std::move(n));
    }
    result.cleaning.tables.push_back({t.source, t.rows.size()});
  }
  {
    const CsvTable t = load_table(dir, "ratings.csv", kRatingsHeader);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const Cursor c(t, i);
      PeerRating r{StudentId{c.id(0)}, StudentId{c.id(1)}, c.integer<int>(2, 0, 5), c.instant(3)};
      need_student(t, i, r.rater);
      need_student(t, i, r.ratee);
      if (r.rater == r.ratee) integrity(t, i, "student " + str(r.rater.value) + " rates themself");
      ds.ratings.push_back(r);
    }
    result.cleaning.tables.push_back({t.source, t.rows.size()});
  }
  {
    const CsvTable t = load_table(dir, "training.csv", kTrainingHeader);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const Cursor c(t, i);
      TrainingRow r{StudentId{c.id(0)}, SkillId{c.id(1)}, c.boolean(2), c.integer<std::uint32_t>(3, 0, UINT32_MAX)};
      need_student(t, i, r.student);
      ds.training.push_back(r);
    }
    result.cleaning.tables.push_back({t.source, t.rows.size()});
  }
  {
    const CsvTable t = load_table(dir, "assignments.csv", kAssignmentsHeader);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const Cursor c(t, i);
      AssignmentRow a;
      a.post = PostId{c.id(0)};
      a.grader = StudentId{c.id(1)};
      a.issued_at = c.instant(2);
      a.deadline = c.instant(3);
      a.status = c.parsed(4, [](const std::string& s) { return parse_assignment_status(s); });
      a.relationship_at_issue = c.parsed(5, [](const std::string& s) { return parse_relationship(s); });
      need_post(t, i, a.post);
      need_student(t, i, a.grader);
      ds.assignments.push_back(a);
    }
    result.cleaning.tables.push_back({t.source, t.rows.size()});
  }

  // Cleaning: blank-feedback assessments go, then anyone left without an
  // assessment is reported.
  CleaningReport& cr = result.cleaning;
  cr.assessments_read = ds.assessments.size();
  std::erase_if(ds.assessments, [](const AssessmentRow& a) { return !has_feedback(a.feedback); });
  cr.assessments_kept = ds.assessments.size();
  cr.dropped_empty_feedback = cr.assessments_read - cr.assessments_kept;
  std::set<StudentId> assessed;
  for (const AssessmentRow& a : ds.assessments) assessed.insert(a.grader);
  for (StudentId s : ds.students)
    if (!assessed.count(s)) cr.never_assessed.push_back(s);

  derive_records(ds);
  return result;
}

}  // namespace peergrade::io
