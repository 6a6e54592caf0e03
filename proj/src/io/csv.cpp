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
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "peergrade/error.hpp"
#include "peergrade/io.hpp"

namespace peergrade::io {
namespace {

[[noreturn]] void parse_fail(const std::string& source, std::size_t line, std::size_t column,
                             const std::string& what) {
  fail(ErrorCode::ParseError,
       source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what);
}

bool needs_quotes(std::string_view field) {
  return field.find_first_of(",\"\r\n") != std::string_view::npos;
}

}  // namespace

CsvTable parse_csv(std::string_view text, std::string source) {
  CsvTable table;
  table.source = std::move(source);
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::vector<std::vector<std::string>> records;
  std::vector<std::size_t> starts;
  std::vector<std::string> row;
  std::string field;
  std::size_t line = 1;
  std::size_t row_line = 1;
  bool in_quotes = false;
  bool quoted = false;       // current field started with a quote
  bool after_quote = false;  // closing quote seen, only a separator may follow
  bool row_open = false;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    quoted = after_quote = false;
  };
  auto end_row = [&] {
    end_field();
    records.push_back(std::move(row));
    starts.push_back(row_line);
    row.clear();
    row_open = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (!row_open) {
      row_open = true;
      row_line = line;
    }
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
          after_quote = true;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == ',') {
      end_field();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      end_row();
      ++line;
    } else if (after_quote) {
      parse_fail(table.source, line, row.size() + 1, "text after closing quote");
    } else if (c == '"') {
      if (!field.empty() || quoted) parse_fail(table.source, line, row.size() + 1, "stray quote in unquoted field");
      in_quotes = quoted = true;
    } else {
      field += c;
    }
  }
  if (in_quotes) parse_fail(table.source, line, row.size() + 1, "unterminated quoted field");
  if (row_open) end_row();

  if (records.empty()) parse_fail(table.source, 1, 1, "missing header row");
  table.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.header.size()) {
      parse_fail(table.source, starts[r], std::min(records[r].size(), table.header.size()) + 1,
                 "expected " + std::to_string(table.header.size()) + " fields, found " +
                     std::to_string(records[r].size()));
    }
    table.rows.push_back(std::move(records[r]));
    table.lines.push_back(starts[r]);
  }
  return table;
}

std::string format_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  auto put_row = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (needs_quotes(row[i])) {
        out += '"';
        for (char c : row[i]) {
          if (c == '"') out += '"';
          out += c;
        }
        out += '"';
      } else {
        out += row[i];
      }
    }
    out += '\n';
  };
  put_row(header);
  for (const auto& r : rows) put_row(r);
  return out;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(ErrorCode::Io, "cannot read " + path.string());
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) fail(ErrorCode::WriteFailed, "cannot create " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::WriteFailed, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCode::WriteFailed, "short write to " + path.string());
}

}  // namespace peergrade::io
