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

#include "peergrade/report.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>

#include "json.hpp"

#include "peergrade/error.hpp"
#include "peergrade/io.hpp"

#ifndef PEERGRADE_VERSION
#define PEERGRADE_VERSION "0.0.0"
#endif

namespace peergrade::io {
namespace {

using nlohmann::json;
using stats::GamesHowellPair;
using stats::GroupStats;
using stats::Interval;

// ---- JSON encoding -------------------------------------------------------

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double num_of(const json& j) {
  if (j.is_null()) return std::nan("");
  return j.get<double>();
}

json interval(const Interval& i) { return json::array({num(i.lower), num(i.upper)}); }
Interval interval_of(const json& j) { return {num_of(j.at(0)), num_of(j.at(1))}; }

json group(const GroupStats& g) {
  return {{"n", g.n}, {"mean", num(g.mean)}, {"sd", num(g.sd)}, {"variance", num(g.variance)}};
}
GroupStats group_of(const json& j) {
  return {j.at("n").get<std::size_t>(), num_of(j.at("mean")), num_of(j.at("variance")), num_of(j.at("sd"))};
}

json spear(const stats::SpearmanResult& s) { return {{"rs", num(s.rs)}, {"n", s.n}, {"p", num(s.p_two_tailed)}}; }
stats::SpearmanResult spear_of(const json& j) {
  return {num_of(j.at("rs")), j.at("n").get<std::size_t>(), num_of(j.at("p"))};
}

json opt_spear(const std::optional<stats::SpearmanResult>& s) { return s ? spear(*s) : json(nullptr); }
std::optional<stats::SpearmanResult> opt_spear_of(const json& j) {
  if (j.is_null()) return std::nullopt;
  return spear_of(j);
}

stats::Reliability band_of(const std::string& s) {
  for (auto r : {stats::Reliability::Poor, stats::Reliability::Moderate, stats::Reliability::Good,
                 stats::Reliability::Excellent}) {
    if (stats::to_string(r) == s) return r;
  }
  fail(ErrorCode::SchemaMismatch, "report: unknown reliability band '" + s + "'");
}

json tests_json(const std::optional<MetricTests>& t) {
  if (!t) return nullptr;
  json gh = json::array();
  for (const GamesHowellPair& p : t->games_howell) {
    gh.push_back({{"group_a", p.group_a},
                  {"group_b", p.group_b},
                  {"mean_diff", num(p.mean_diff)},
                  {"se", num(p.se)},
                  {"df", num(p.df)},
                  {"q", num(p.q)},
                  {"p", num(p.p)},
                  {"ci", interval(p.ci)},
                  {"alpha_level", p.alpha_level}});
  }
  return {{"welch", {{"f", num(t->welch.f)}, {"df1", num(t->welch.df1)}, {"df2", num(t->welch.df2)}, {"p", num(t->welch.p)}}},
          {"games_howell", gh}};
}

std::optional<MetricTests> tests_of(const json& j) {
  if (j.is_null()) return std::nullopt;
  MetricTests t;
  const json& w = j.at("welch");
  t.welch = {num_of(w.at("f")), num_of(w.at("df1")), num_of(w.at("df2")), num_of(w.at("p"))};
  for (const json& p : j.at("games_howell")) {
    GamesHowellPair g;
    g.group_a = p.at("group_a").get<std::string>();
    g.group_b = p.at("group_b").get<std::string>();
    g.mean_diff = num_of(p.at("mean_diff"));
    g.se = num_of(p.at("se"));
    g.df = num_of(p.at("df"));
    g.q = num_of(p.at("q"));
    g.p = num_of(p.at("p"));
    g.ci = interval_of(p.at("ci"));
    g.alpha_level = p.at("alpha_level").get<double>();
    t.games_howell.push_back(std::move(g));
  }
  return t;
}

// ---- text helpers ---------------------------------------------------------

std::string printf_str(const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

std::string fixed(double v, int digits = 3) {
  if (std::isnan(v)) return "n/a";
  std::string s = printf_str("%.*f", digits, v);
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);  // no "-0.000"
  return s;
}

std::string pval(double p) {
  if (std::isnan(p)) return "n/a";
  return p < 0.001 ? "<.001" : fixed(p);
}

std::string ci_label(double alpha) { return printf_str("%g%% CI", 100.0 * (1.0 - alpha)); }

std::string ci_text(const Interval& i) { return "[" + fixed(i.lower) + ", " + fixed(i.upper) + "]"; }

std::string pad(const std::string& s, std::size_t width, bool left = false) {
  if (s.size() >= width) return s;
  return left ? s + std::string(width - s.size(), ' ') : std::string(width - s.size(), ' ') + s;
}

std::string signed_diff(int d) { return d > 0 ? "+" + std::to_string(d) : std::to_string(d); }

void metric_tests_text(std::string& out, const char* name, const std::optional<MetricTests>& t) {
  if (!t) {
    out += "  " + std::string(name) + ": not enough variable groups to test\n";
    return;
  }
  out += "  " + std::string(name) + ": Welch F(" + fixed(t->welch.df1, 0) + ", " + fixed(t->welch.df2, 2) +
         ") = " + fixed(t->welch.f) + ", p " + (t->welch.p < 0.001 ? "< .001" : "= " + fixed(t->welch.p)) + "\n";
  if (t->games_howell.empty()) return;
  out += "    " + pad("pair", 22, true) + pad("diff", 8) + pad("se", 8) + pad("q", 8) + pad("p", 8) + "  " +
         ci_label(t->games_howell.front().alpha_level) + "\n";
  for (const GamesHowellPair& p : t->games_howell) {
    out += "    " + pad(p.group_b + " - " + p.group_a, 22, true) + pad(fixed(p.mean_diff), 8) + pad(fixed(p.se), 8) +
           pad(fixed(p.q), 8) + pad(pval(p.p), 8) + "  " + ci_text(p.ci) + "\n";
  }
}

// ---- CSV helpers ----------------------------------------------------------

struct LongRows {
  std::vector<std::vector<std::string>> rows;
  void add(const std::string& section, const std::string& row, const std::string& col, const std::string& v) {
    rows.push_back({section, row, col, v});
  }
  void add(const std::string& section, const std::string& row, const std::string& col, double v) {
    add(section, row, col, format_number(v));
  }
  void add_count(const std::string& section, const std::string& row, const std::string& col, std::size_t v) {
    add(section, row, col, std::to_string(v));
  }
  void group(const std::string& section, const std::string& row, const std::string& prefix, const GroupStats& g) {
    add_count(section, row, prefix + "n", g.n);
    add(section, row, prefix + "mean", g.mean);
    add(section, row, prefix + "sd", g.sd);
  }
  void spearman(const std::string& section, const std::string& row, const stats::SpearmanResult& s) {
    add(section, row, "rs", s.rs);
    add_count(section, row, "n", s.n);
    add(section, row, "p", s.p_two_tailed);
  }
  void tests(const std::string& section, const std::string& metric, const std::optional<MetricTests>& t) {
    if (!t) return;
    add(section, "welch_" + metric, "f", t->welch.f);
    add(section, "welch_" + metric, "df1", t->welch.df1);
    add(section, "welch_" + metric, "df2", t->welch.df2);
    add(section, "welch_" + metric, "p", t->welch.p);
    for (const GamesHowellPair& p : t->games_howell) {
      const std::string row = "games_howell_" + metric + ":" + p.group_b + "-" + p.group_a;
      add(section, row, "mean_diff", p.mean_diff);
      add(section, row, "se", p.se);
      add(section, row, "df", p.df);
      add(section, row, "q", p.q);
      add(section, row, "p", p.p);
      add(section, row, "ci_lower", p.ci.lower);
      add(section, row, "ci_upper", p.ci.upper);
    }
  }
};

}  // namespace

std::string_view tool_version() noexcept { return PEERGRADE_VERSION; }

std::string report_to_json(const AnalysisReport& r) {
  json doc{{"format", "peergrade-report"},
           {"version", kReportFormatVersion},
           {"sections", sections_to_string(r.sections)},
           {"alpha_level", r.alpha_level},
           {"records", r.records},
           {"posts", r.posts}};
  if (has(r.sections, Section::Fairness)) {
    json rows = json::array();
    for (const FairnessRow& f : r.fairness) {
      const auto& i = f.icc;
      rows.push_back({{"count", f.count},
                      {"posts", f.posts},
                      {"single", num(i.single)},
                      {"average", num(i.average)},
                      {"ci_single", interval(i.ci_single)},
                      {"ci_average", interval(i.ci_average)},
                      {"single_band", stats::to_string(f.single_band)},
                      {"average_band", stats::to_string(f.average_band)},
                      {"msb", num(i.msb)},
                      {"msw", num(i.msw)},
                      {"f", num(i.f_value)},
                      {"df_between", num(i.df_between)},
                      {"df_within", num(i.df_within)},
                      {"subjects", i.subjects},
                      {"raters", i.raters},
                      {"alpha_level", i.alpha_level}});
    }
    doc["fairness"] = rows;
  }
  if (has(r.sections, Section::Accuracy)) {
    json rows = json::array();
    for (const AccuracyRow& a : r.accuracy) {
      json row = spear(a.spearman);
      row["min_count"] = a.min_count;
      rows.push_back(row);
    }
    doc["accuracy"] = rows;
  }
  if (r.descriptives) {
    const Descriptives& d = *r.descriptives;
    doc["descriptives"] = {{"min_count", d.min_count},
                           {"posts", d.posts},
                           {"professor", group(d.professor)},
                           {"final_peer", group(d.final_peer)},
                           {"mean_peer", group(d.mean_peer)},
                           {"final_vs_professor", opt_spear(d.final_vs_professor)},
                           {"mean_vs_professor", opt_spear(d.mean_vs_professor)}};
  }
  if (r.difference_table) {
    const DifferenceTable& t = *r.difference_table;
    json rows = json::array();
    for (int rating = 0; rating <= 5; ++rating) {
      json counts = json::array(), pct = json::array();
      for (int d = DifferenceTable::kMinDiff; d <= DifferenceTable::kMaxDiff; ++d) {
        counts.push_back(t.at(rating, d));
        pct.push_back(t.row_percent(rating, d));
      }
      rows.push_back({{"rating", rating}, {"total", t.row_totals[rating]}, {"counts", counts}, {"row_percent", pct}});
    }
    json cols = json::array();
    for (int d = DifferenceTable::kMinDiff; d <= DifferenceTable::kMaxDiff; ++d) cols.push_back(d);
    doc["difference_table"] = {{"min_count", t.min_count},
                               {"total", t.total},
                               {"differences", cols},
                               {"column_totals", t.column_totals},
                               {"rows", rows}};
  }
  if (r.relationships) {
    const RelationshipReport& rel = *r.relationships;
    json groups = json::array();
    for (const RelationshipGroup& g : rel.groups) {
      groups.push_back({{"class", std::string(to_string(g.cls))},
                        {"vs_final", group(g.vs_final)},
                        {"vs_professor", group(g.vs_professor)}});
    }
    doc["relationships"] = {{"min_count", rel.min_count},
                            {"records_total", rel.records_total},
                            {"records_known", rel.records_known},
                            {"records_in_scope", rel.records_in_scope},
                            {"groups", groups},
                            {"vs_final", tests_json(rel.vs_final)},
                            {"vs_professor", tests_json(rel.vs_professor)}};
  }
  if (r.cronbach) {
    doc["cronbach"] = {{"alpha", num(r.cronbach->alpha)},
                       {"respondents", r.cronbach->respondents},
                       {"items", r.cronbach->items}};
  }
  return doc.dump(2) + "\n";
}

AnalysisReport report_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, std::string("report: ") + e.what());
  }
  AnalysisReport r;
  try {
    if (doc.at("format") != "peergrade-report" || doc.at("version") != kReportFormatVersion) {
      fail(ErrorCode::SchemaMismatch, "report: not a version " + std::to_string(kReportFormatVersion) + " peergrade report");
    }
    try {
      r.sections = parse_sections(doc.at("sections").get<std::string>());
    } catch (const Error& e) {
      fail(ErrorCode::SchemaMismatch, std::string("report: ") + e.what());
    }
    r.alpha_level = doc.at("alpha_level").get<double>();
    r.records = doc.at("records").get<std::size_t>();
    r.posts = doc.at("posts").get<std::size_t>();
    if (has(r.sections, Section::Fairness)) {
      for (const json& j : doc.at("fairness")) {
        FairnessRow f;
        f.count = j.at("count").get<std::uint32_t>();
        f.posts = j.at("posts").get<std::size_t>();
        f.icc.single = num_of(j.at("single"));
        f.icc.average = num_of(j.at("average"));
        f.icc.ci_single = interval_of(j.at("ci_single"));
        f.icc.ci_average = interval_of(j.at("ci_average"));
        f.icc.msb = num_of(j.at("msb"));
        f.icc.msw = num_of(j.at("msw"));
        f.icc.f_value = num_of(j.at("f"));
        f.icc.df_between = num_of(j.at("df_between"));
        f.icc.df_within = num_of(j.at("df_within"));
        f.icc.subjects = j.at("subjects").get<std::size_t>();
        f.icc.raters = j.at("raters").get<std::size_t>();
        f.icc.alpha_level = j.at("alpha_level").get<double>();
        f.single_band = band_of(j.at("single_band").get<std::string>());
        f.average_band = band_of(j.at("average_band").get<std::string>());
        r.fairness.push_back(f);
      }
    }
    if (has(r.sections, Section::Accuracy)) {
      for (const json& j : doc.at("accuracy")) r.accuracy.push_back({j.at("min_count").get<std::uint32_t>(), spear_of(j)});
    }
    if (has(r.sections, Section::Descriptives)) {
      const json& j = doc.at("descriptives");
      Descriptives d;
      d.min_count = j.at("min_count").get<std::uint32_t>();
      d.posts = j.at("posts").get<std::size_t>();
      d.professor = group_of(j.at("professor"));
      d.final_peer = group_of(j.at("final_peer"));
      d.mean_peer = group_of(j.at("mean_peer"));
      d.final_vs_professor = opt_spear_of(j.at("final_vs_professor"));
      d.mean_vs_professor = opt_spear_of(j.at("mean_vs_professor"));
      r.descriptives = d;
    }
    if (has(r.sections, Section::DifferenceTable)) {
      const json& j = doc.at("difference_table");
      DifferenceTable t;
      t.min_count = j.at("min_count").get<std::uint32_t>();
      t.total = j.at("total").get<std::size_t>();
      const json& cols = j.at("column_totals");
      if (cols.size() != DifferenceTable::kColumns) fail(ErrorCode::SchemaMismatch, "report: difference table width");
      for (std::size_t c = 0; c < DifferenceTable::kColumns; ++c) t.column_totals[c] = cols.at(c).get<std::size_t>();
      for (const json& row : j.at("rows")) {
        const int rating = row.at("rating").get<int>();
        if (rating < 0 || rating > 5) fail(ErrorCode::SchemaMismatch, "report: difference table rating");
        t.row_totals[rating] = row.at("total").get<std::size_t>();
        const json& counts = row.at("counts");
        if (counts.size() != DifferenceTable::kColumns) fail(ErrorCode::SchemaMismatch, "report: difference table width");
        for (std::size_t c = 0; c < DifferenceTable::kColumns; ++c) t.cells[rating][c] = counts.at(c).get<std::size_t>();
      }
      r.difference_table = t;
    }
    if (has(r.sections, Section::Relationships)) {
      const json& j = doc.at("relationships");
      RelationshipReport rel;
      rel.min_count = j.at("min_count").get<std::uint32_t>();
      rel.records_total = j.at("records_total").get<std::size_t>();
      rel.records_known = j.at("records_known").get<std::size_t>();
      rel.records_in_scope = j.at("records_in_scope").get<std::size_t>();
      for (const json& g : j.at("groups")) {
        RelationshipGroup rg;
        try {
          rg.cls = parse_relationship(g.at("class").get<std::string>());
        } catch (const Error& e) {
          fail(ErrorCode::SchemaMismatch, std::string("report: ") + e.what());
        }
        rg.vs_final = group_of(g.at("vs_final"));
        rg.vs_professor = group_of(g.at("vs_professor"));
        rel.groups.push_back(rg);
      }
      rel.vs_final = tests_of(j.at("vs_final"));
      rel.vs_professor = tests_of(j.at("vs_professor"));
      r.relationships = rel;
    }
    if (has(r.sections, Section::Cronbach)) {
      const json& j = doc.at("cronbach");
      r.cronbach = CronbachSummary{num_of(j.at("alpha")), j.at("respondents").get<std::size_t>(),
                                   j.at("items").get<std::size_t>()};
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::SchemaMismatch, std::string("report: ") + e.what());
  }
  return r;
}

std::string report_to_text(const AnalysisReport& r) {
  std::string out = "Peer assessment analysis\n";
  out += "records " + std::to_string(r.records) + ", posts " + std::to_string(r.posts) + ", alpha " +
         printf_str("%g", r.alpha_level) + ", sections " + sections_to_string(r.sections) + "\n";

  if (has(r.sections, Section::Fairness)) {
    out += "\nFairness: ICC(1) by number of assessments per post\n";
    if (r.fairness.empty()) {
      out += "  no count has two or more posts\n";
    } else {
      const std::string ci = ci_label(r.alpha_level);
      out += pad("count", 6) + pad("posts", 7) + pad("single", 9) + "  " + pad(ci, 18, true) + pad("band", 10, true) +
             pad("average", 9) + "  " + pad(ci, 18, true) + "band\n";
      for (const FairnessRow& f : r.fairness) {
        out += pad(std::to_string(f.count), 6) + pad(std::to_string(f.posts), 7) + pad(fixed(f.icc.single), 9) +
               "  " + pad(ci_text(f.icc.ci_single), 18, true) + pad(std::string(stats::to_string(f.single_band)), 10, true) +
               pad(fixed(f.icc.average), 9) + "  " + pad(ci_text(f.icc.ci_average), 18, true) +
               std::string(stats::to_string(f.average_band)) + "\n";
      }
    }
  }

  if (has(r.sections, Section::Accuracy)) {
    out += "\nAccuracy: Spearman between professor rating and mean peer grade\n";
    out += pad("min count", 10) + pad("posts", 7) + pad("rs", 8) + pad("p", 8) + "\n";
    for (const AccuracyRow& a : r.accuracy) {
      out += pad(">= " + std::to_string(a.min_count), 10) + pad(std::to_string(a.spearman.n), 7) +
             pad(fixed(a.spearman.rs), 8) + pad(pval(a.spearman.p_two_tailed), 8) + "\n";
    }
  }

  if (r.descriptives) {
    const Descriptives& d = *r.descriptives;
    out += "\nDescriptives: posts with >= " + std::to_string(d.min_count) + " assessments and a professor rating (" +
           std::to_string(d.posts) + ")\n";
    out += pad("measure", 12, true) + pad("mean", 8) + pad("sd", 8) + "\n";
    const std::pair<const char*, const GroupStats*> rows[] = {
        {"professor", &d.professor}, {"final peer", &d.final_peer}, {"mean peer", &d.mean_peer}};
    for (const auto& [name, g] : rows) out += pad(name, 12, true) + pad(fixed(g->mean), 8) + pad(fixed(g->sd), 8) + "\n";
    auto line = [&](const char* name, const std::optional<stats::SpearmanResult>& s) {
      out += std::string("  Spearman professor vs ") + name + ": ";
      out += s ? "rs = " + fixed(s->rs) + ", p " + (s->p_two_tailed < 0.001 ? "< .001" : "= " + fixed(s->p_two_tailed))
               : std::string("not computable");
      out += "\n";
    };
    line("final peer grade", d.final_vs_professor);
    line("mean peer grade", d.mean_vs_professor);
  }

  if (r.difference_table) {
    const DifferenceTable& t = *r.difference_table;
    out += "\nFinal peer grade minus professor rating: posts with >= " + std::to_string(t.min_count) +
           " assessments (" + std::to_string(t.total) + ")\n";
    std::vector<int> shown;
    for (int d = DifferenceTable::kMinDiff; d <= DifferenceTable::kMaxDiff; ++d)
      if (t.column_totals[d - DifferenceTable::kMinDiff] > 0) shown.push_back(d);
    out += pad("rating", 6);
    for (int d : shown) out += pad(signed_diff(d), 14);
    out += pad("total", 7) + "\n";
    for (int rating = 0; rating <= 5; ++rating) {
      out += pad(std::to_string(rating), 6);
      for (int d : shown) {
        out += pad(std::to_string(t.at(rating, d)) + " (" + fixed(t.row_percent(rating, d), 1) + "%)", 14);
      }
      out += pad(std::to_string(t.row_totals[rating]), 7) + "\n";
    }
    out += pad("all", 6);
    for (int d : shown) {
      out += pad(std::to_string(t.column_totals[d - DifferenceTable::kMinDiff]) + " (" + fixed(t.column_percent(d), 1) + "%)", 14);
    }
    out += pad(std::to_string(t.total), 7) + "\n";
  }

  if (r.relationships) {
    const RelationshipReport& rel = *r.relationships;
    out += "\nRelationship bias: posts with >= " + std::to_string(rel.min_count) + " assessments (" +
           std::to_string(rel.records_in_scope) + " of " + std::to_string(rel.records_known) +
           " records with a known relationship, " + std::to_string(rel.records_total) + " in total)\n";
    out += pad("group", 10, true) + pad("n", 6) + pad("peer-final", 12) + pad("sd", 8) + pad("n", 6) +
           pad("peer-prof", 12) + pad("sd", 8) + "\n";
    for (const RelationshipGroup& g : rel.groups) {
      out += pad(std::string(to_string(g.cls)), 10, true) + pad(std::to_string(g.vs_final.n), 6) +
             pad(fixed(g.vs_final.mean), 12) + pad(fixed(g.vs_final.sd), 8) + pad(std::to_string(g.vs_professor.n), 6) +
             pad(fixed(g.vs_professor.mean), 12) + pad(fixed(g.vs_professor.sd), 8) + "\n";
    }
    metric_tests_text(out, "peer - final", rel.vs_final);
    metric_tests_text(out, "peer - professor", rel.vs_professor);
  }

  if (r.cronbach) {
    out += "\nCronbach's alpha = " + fixed(r.cronbach->alpha) + " (" + std::to_string(r.cronbach->respondents) +
           " respondents, " + std::to_string(r.cronbach->items) + " items)\n";
  }
  return out;
}

std::string report_to_csv(const AnalysisReport& r) {
  LongRows L;
  L.add_count("summary", "report", "records", r.records);
  L.add_count("summary", "report", "posts", r.posts);
  L.add("summary", "report", "alpha_level", r.alpha_level);
  for (const FairnessRow& f : r.fairness) {
    const std::string row = "count=" + std::to_string(f.count);
    L.add_count("fairness", row, "posts", f.posts);
    L.add("fairness", row, "single", f.icc.single);
    L.add("fairness", row, "single_ci_lower", f.icc.ci_single.lower);
    L.add("fairness", row, "single_ci_upper", f.icc.ci_single.upper);
    L.add("fairness", row, "single_band", std::string(stats::to_string(f.single_band)));
    L.add("fairness", row, "average", f.icc.average);
    L.add("fairness", row, "average_ci_lower", f.icc.ci_average.lower);
    L.add("fairness", row, "average_ci_upper", f.icc.ci_average.upper);
    L.add("fairness", row, "average_band", std::string(stats::to_string(f.average_band)));
  }
  for (const AccuracyRow& a : r.accuracy) L.spearman("accuracy", "min_count=" + std::to_string(a.min_count), a.spearman);
  if (r.descriptives) {
    const Descriptives& d = *r.descriptives;
    L.group("descriptives", "professor", "", d.professor);
    L.group("descriptives", "final_peer", "", d.final_peer);
    L.group("descriptives", "mean_peer", "", d.mean_peer);
    if (d.final_vs_professor) L.spearman("descriptives", "spearman_final_vs_professor", *d.final_vs_professor);
    if (d.mean_vs_professor) L.spearman("descriptives", "spearman_mean_vs_professor", *d.mean_vs_professor);
  }
  if (r.difference_table) {
    const DifferenceTable& t = *r.difference_table;
    for (int rating = 0; rating <= 5; ++rating) {
      const std::string row = "rating=" + std::to_string(rating);
      for (int d = DifferenceTable::kMinDiff; d <= DifferenceTable::kMaxDiff; ++d) {
        L.add_count("difference", row, "diff=" + signed_diff(d), t.at(rating, d));
      }
      L.add_count("difference", row, "total", t.row_totals[rating]);
    }
  }
  if (r.relationships) {
    const RelationshipReport& rel = *r.relationships;
    for (const RelationshipGroup& g : rel.groups) {
      const std::string row = std::string(to_string(g.cls));
      L.group("relationships", row, "vs_final_", g.vs_final);
      L.group("relationships", row, "vs_professor_", g.vs_professor);
    }
    L.tests("relationships", "vs_final", rel.vs_final);
    L.tests("relationships", "vs_professor", rel.vs_professor);
  }
  if (r.cronbach) {
    L.add("cronbach", "items", "alpha", r.cronbach->alpha);
    L.add_count("cronbach", "items", "respondents", r.cronbach->respondents);
    L.add_count("cronbach", "items", "items", r.cronbach->items);
  }
  return format_csv({"section", "row", "column", "value"}, L.rows);
}

std::string series_to_csv(const AnalysisReport& r) {
  std::vector<std::vector<std::string>> rows;
  for (const PostSummary& p : r.series) {
    rows.push_back({std::to_string(p.post.value),
                    p.professor_grade ? std::to_string(p.professor_grade->value()) : "",
                    format_number(p.mean_peer_grade), std::to_string(p.final_peer_grade.value()),
                    std::to_string(p.assessment_count)});
  }
  return format_csv({"post_id", "professor_grade", "mean_peer_grade", "final_peer_grade", "assessment_count"}, rows);
}

ReportFormat parse_report_format(std::string_view text) {
  if (text == "text") return ReportFormat::Text;
  if (text == "json") return ReportFormat::Json;
  if (text == "csv") return ReportFormat::Csv;
  fail(ErrorCode::InvalidArgument, "unknown report format '" + std::string(text) + "' (text, json, csv)");
}

std::string render_report(const AnalysisReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Text: return report_to_text(report);
    case ReportFormat::Json: return report_to_json(report);
    case ReportFormat::Csv: return report_to_csv(report);
  }
  return {};
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("EVP_Digest sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 15];
  }
  return out;
}

FileDigest digest_file(const std::filesystem::path& path, std::string name) {
  const std::string bytes = read_file(path);
  return {std::move(name), bytes.size(), sha256_hex(bytes)};
}

std::int64_t manifest_timestamp() {
  if (const char* s = std::getenv("SOURCE_DATE_EPOCH"); s && *s) {
    char* end = nullptr;
    const long long v = std::strtoll(s, &end, 10);
    if (end && *end == '\0') return v;
  }
  return static_cast<std::int64_t>(std::time(nullptr));
}

std::string manifest_to_json(const RunManifest& m) {
  auto files = [](const std::vector<FileDigest>& list) {
    json arr = json::array();
    for (const FileDigest& f : list) arr.push_back({{"name", f.name}, {"bytes", f.bytes}, {"sha256", f.sha256}});
    return arr;
  };
  json config = m.config_json.empty() ? json::object() : json::parse(m.config_json);
  const json doc{{"format", "peergrade-manifest"},
                 {"version", 1},
                 {"command", m.command},
                 {"tool_version", m.tool_version},
                 {"config", config},
                 {"seed", m.seed ? json(*m.seed) : json(nullptr)},
                 {"inputs", files(m.inputs)},
                 {"outputs", files(m.outputs)},
                 {"created_at", m.created_at}};
  return doc.dump(2) + "\n";
}

RunManifest manifest_from_json(std::string_view text) {
  RunManifest m;
  try {
    const json doc = json::parse(text);
    if (doc.at("format") != "peergrade-manifest") fail(ErrorCode::SchemaMismatch, "manifest: wrong format tag");
    m.command = doc.at("command").get<std::string>();
    m.tool_version = doc.at("tool_version").get<std::string>();
    m.config_json = doc.at("config").dump(2) + "\n";
    if (!doc.at("seed").is_null()) m.seed = doc.at("seed").get<std::uint64_t>();
    for (const char* key : {"inputs", "outputs"}) {
      auto& list = std::string(key) == "inputs" ? m.inputs : m.outputs;
      for (const json& f : doc.at(key)) {
        list.push_back({f.at("name").get<std::string>(), f.at("bytes").get<std::uint64_t>(),
                        f.at("sha256").get<std::string>()});
      }
    }
    m.created_at = doc.at("created_at").get<std::int64_t>();
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, std::string("manifest: ") + e.what());
  } catch (const json::exception& e) {
    fail(ErrorCode::SchemaMismatch, std::string("manifest: ") + e.what());
  }
  return m;
}

AnalysisReport load_bundle_report(const std::filesystem::path& bundle) {
  if (!std::filesystem::is_directory(bundle)) fail(ErrorCode::Io, "bundle " + bundle.string() + " does not exist");
  const std::filesystem::path report_path = bundle / kReportJson;
  if (!std::filesystem::exists(report_path)) fail(ErrorCode::SchemaMismatch, "bundle has no " + std::string(kReportJson));
  const std::string bytes = read_file(report_path);
  const std::filesystem::path manifest_path = bundle / kManifest;
  if (std::filesystem::exists(manifest_path)) {
    const RunManifest m = manifest_from_json(read_file(manifest_path));
    for (const FileDigest& f : m.outputs) {
      if (f.name == kReportJson && f.sha256 != sha256_hex(bytes)) {
        fail(ErrorCode::SchemaMismatch, "report.json does not match the digest in manifest.json");
      }
    }
  }
  return report_from_json(bytes);
}

}  // namespace peergrade::io
