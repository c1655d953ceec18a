// Copyright 2026 The nbscreen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nbscreen/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nbscreen/keyvalue.hpp"

namespace nbscreen {
namespace {

struct Line {
  std::vector<std::string> fields;
  std::size_t number = 0;
};

// Splits text into records, honouring quotes that span delimiters or newlines.
std::vector<Line> split_records(std::string_view text, char delimiter) {
  std::vector<Line> records;
  Line current;
  std::string field;
  bool quoted = false;
  bool any = false;
  std::size_t line_no = 1;
  current.number = 1;

  auto end_record = [&] {
    if (any || !field.empty() || !current.fields.empty()) {
      current.fields.push_back(field);
      records.push_back(std::move(current));
    }
    current = Line{};
    field.clear();
    any = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (ch == '\n') ++line_no;
        field.push_back(ch);
      }
      continue;
    }
    if (ch == '"') {
      quoted = true;
      any = true;
    } else if (ch == delimiter) {
      current.fields.push_back(field);
      field.clear();
      any = true;
    } else if (ch == '\n') {
      end_record();
      current.number = ++line_no;
    } else if (ch != '\r') {
      field.push_back(ch);
    }
  }
  end_record();
  return records;
}

}  // namespace

char detect_delimiter(std::string_view header_line) {
  std::size_t comma = 0, semicolon = 0, tab = 0;
  bool quoted = false;
  for (const char ch : header_line) {
    if (ch == '"') quoted = !quoted;
    if (quoted) continue;
    comma += ch == ',';
    semicolon += ch == ';';
    tab += ch == '\t';
  }
  if (semicolon > comma && semicolon >= tab) return ';';
  if (tab > comma && tab > semicolon) return '\t';
  return ',';
}

Table parse_table(std::string_view text, std::optional<char> delimiter) {
  if (trim(text).empty()) throw std::invalid_argument("input is empty");
  Table table;
  table.delimiter = delimiter.value_or(detect_delimiter(text.substr(0, text.find('\n'))));
  auto records = split_records(text, table.delimiter);
  // Blank lines carry a single empty field; drop them.
  std::erase_if(records, [](const Line& l) {
    return l.fields.size() == 1 && trim(l.fields[0]).empty();
  });
  if (records.empty()) throw std::invalid_argument("input is empty");
  for (auto& h : records.front().fields) h = std::string(trim(h));
  table.header = std::move(records.front().fields);
  for (std::size_t r = 1; r < records.size(); ++r) {
    table.row_lines.push_back(records[r].number);
    table.rows.push_back(std::move(records[r].fields));
  }
  return table;
}

Table read_table(const std::filesystem::path& path, std::optional<char> delimiter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_table(buf.str(), delimiter);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

std::size_t resolve_column(const Table& table, std::string_view selector) {
  const auto it = std::find(table.header.begin(), table.header.end(), selector);
  if (it != table.header.end()) return static_cast<std::size_t>(it - table.header.begin());

  std::size_t index = 0;
  const auto [ptr, ec] = std::from_chars(selector.data(), selector.data() + selector.size(), index);
  if (ec == std::errc() && ptr == selector.data() + selector.size() && index >= 1 &&
      index <= table.header.size()) {
    return index - 1;
  }
  std::string names;
  for (const auto& h : table.header) names += (names.empty() ? "" : ", ") + h;
  throw std::invalid_argument("column '" + std::string(selector) +
                              "' not found; available columns: " + names);
}

DatasetColumn extract_column(const Table& table, std::string_view selector,
                             std::vector<RowDiagnostic>* diagnostics) {
  const std::size_t col = resolve_column(table, selector);
  DatasetColumn out{table.header[col], {}, 0};
  out.values.reserve(table.rows.size());

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t line = table.row_lines[r];
    auto reject = [&](std::string cell, std::string reason) {
      ++out.excluded_count;
      if (diagnostics) diagnostics->push_back({out.name, line, std::move(cell), std::move(reason)});
    };
    if (col >= row.size()) {
      reject("", "missing cell");
      continue;
    }
    const std::string_view cell = trim(row[col]);
    if (cell.empty()) {
      reject("", "empty cell");
      continue;
    }
    if (cell.front() == '-') {
      reject(std::string(cell), "negative count");
      continue;
    }
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec == std::errc::result_out_of_range) {
      reject(std::string(cell), "count out of range");
      continue;
    }
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
      reject(std::string(cell), "not an integer");
      continue;
    }
    if (value == 0) {
      ++out.excluded_count;  // zero counts have no significant digits
      continue;
    }
    out.values.push_back(value);
  }
  return out;
}

std::vector<DatasetColumn> ingest(const std::filesystem::path& path,
                                  const std::vector<std::string>& selectors,
                                  std::vector<RowDiagnostic>* diagnostics,
                                  std::optional<char> delimiter) {
  const Table table = read_table(path, delimiter);
  std::vector<DatasetColumn> columns;
  for (const auto& s : selectors) columns.push_back(extract_column(table, s, diagnostics));
  return columns;
}

}  // namespace nbscreen
