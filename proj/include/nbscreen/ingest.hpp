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

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nbscreen/digits.hpp"

namespace nbscreen {

/// A delimited text table with a header row.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> row_lines;  // 1-based source line of each row
  char delimiter = ',';
};

/// A per-row note about a cell that was not ingested.
struct RowDiagnostic {
  std::string column;
  std::size_t line = 0;  // 1-based file line
  std::string cell;
  std::string reason;
};

/// Picks ',', ';' or '\t', whichever occurs most often (outside quotes) in
/// the header line; ',' on a tie or when none occurs.
char detect_delimiter(std::string_view header_line);

/// Parses delimited text. Double-quoted fields may contain delimiters and
/// doubled quotes. Throws on empty input.
Table parse_table(std::string_view text, std::optional<char> delimiter = std::nullopt);
Table read_table(const std::filesystem::path& path, std::optional<char> delimiter = std::nullopt);

/// Column index for a selector: a header name, or failing that a 1-based
/// column number. Throws std::invalid_argument naming the available headers.
std::size_t resolve_column(const Table& table, std::string_view selector);

/// Extracts one column as counts. Cells that are empty, non-integer, negative
/// or zero are excluded and counted in excluded_count; all but zeros also get
/// a diagnostic.
DatasetColumn extract_column(const Table& table, std::string_view selector,
                             std::vector<RowDiagnostic>* diagnostics = nullptr);

/// Reads `path` and extracts every selected column.
std::vector<DatasetColumn> ingest(const std::filesystem::path& path,
                                  const std::vector<std::string>& selectors,
                                  std::vector<RowDiagnostic>* diagnostics = nullptr,
                                  std::optional<char> delimiter = std::nullopt);

}  // namespace nbscreen
