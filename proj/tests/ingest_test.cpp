// Copyright 2026 The nbscreen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nbscreen/ingest.hpp"

#include <gtest/gtest.h>

#include <filesystem>

namespace nbscreen {
namespace {

const std::filesystem::path kTestData = NBSCREEN_TEST_DATA_DIR;

TEST(Delimiter, Detection) {
  EXPECT_EQ(detect_delimiter("a,b,c"), ',');
  EXPECT_EQ(detect_delimiter("a;b;c"), ';');
  EXPECT_EQ(detect_delimiter("a\tb\tc"), '\t');
  EXPECT_EQ(detect_delimiter("single"), ',');
}

TEST(ParseTable, QuotesAndLineNumbers) {
  const auto table = parse_table("name,count\n\"Smith, J\",12\n\n\"say \"\"hi\"\"\",7\n");
  ASSERT_EQ(table.header, (std::vector<std::string>{"name", "count"}));
  ASSERT_EQ(table.rows.size(), 2u);
  EXPECT_EQ(table.rows[0][0], "Smith, J");
  EXPECT_EQ(table.rows[1][0], "say \"hi\"");
  EXPECT_EQ(table.row_lines, (std::vector<std::size_t>{2, 4}));
  EXPECT_THROW(parse_table(""), std::invalid_argument);
  EXPECT_THROW(parse_table("  \n"), std::invalid_argument);
}

TEST(ParseTable, CarriageReturns) {
  const auto table = parse_table("a,b\r\n1,2\r\n");
  EXPECT_EQ(table.header, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(table.rows[0][1], "2");
}

TEST(ResolveColumn, ByNameOrIndex) {
  const auto table = parse_table("unit,votes_a,votes_b\nU1,1,2\n");
  EXPECT_EQ(resolve_column(table, "votes_b"), 2u);
  EXPECT_EQ(resolve_column(table, "2"), 1u);
  try {
    resolve_column(table, "votes_c");
    FAIL() << "expected an error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("available columns: unit, votes_a, votes_b"),
              std::string::npos);
  }
  EXPECT_THROW(resolve_column(table, "0"), std::invalid_argument);
  EXPECT_THROW(resolve_column(table, "4"), std::invalid_argument);
}

TEST(ExtractColumn, BadCellsAreReported) {
  std::vector<RowDiagnostic> diagnostics;
  const auto columns = ingest(kTestData / "messy.csv", {"candidate_a"}, &diagnostics);
  ASSERT_EQ(columns.size(), 1u);
  const auto& a = columns[0];
  EXPECT_EQ(a.name, "candidate_a");
  EXPECT_EQ(a.values, (std::vector<std::uint64_t>{154, 1203}));
  EXPECT_EQ(a.excluded_count, 7u);
  EXPECT_EQ(a.row_count(), 9u);
  ASSERT_EQ(diagnostics.size(), 6u);
  EXPECT_EQ(diagnostics[0].line, 3u);
  EXPECT_EQ(diagnostics[0].cell, "N/A");
  EXPECT_EQ(diagnostics[0].reason, "not an integer");
  EXPECT_EQ(diagnostics[1].reason, "negative count");
  EXPECT_EQ(diagnostics[2].reason, "empty cell");
  EXPECT_EQ(diagnostics[3].cell, "2.5");
  EXPECT_EQ(diagnostics[4].reason, "count out of range");
  EXPECT_EQ(diagnostics[5].cell, "1,204");
}

TEST(Ingest, SeveralColumnsAndDelimiters) {
  const auto columns = ingest(kTestData / "three_rows.csv", {"votes_a", "3"});
  ASSERT_EQ(columns.size(), 2u);
  EXPECT_EQ(columns[0].values, (std::vector<std::uint64_t>{154, 1280, 47}));
  EXPECT_EQ(columns[1].name, "votes_b");
  EXPECT_EQ(ingest(kTestData / "semicolon.csv", {"b"})[0].values,
            (std::vector<std::uint64_t>{23, 45}));
  EXPECT_EQ(ingest(kTestData / "tabs.tsv", {"a"})[0].values,
            (std::vector<std::uint64_t>{154, 980}));
  EXPECT_THROW(ingest(kTestData / "semicolon.csv", {"b"}, nullptr, ','), std::invalid_argument);
}

TEST(Ingest, MissingFile) {
  EXPECT_THROW(ingest(kTestData / "does_not_exist.csv", {"a"}), std::runtime_error);
}

TEST(Ingest, ShortRows) {
  std::vector<RowDiagnostic> diagnostics;
  const auto table = parse_table("a,b\n1,2\n3\n");
  const auto b = extract_column(table, "b", &diagnostics);
  EXPECT_EQ(b.values, (std::vector<std::uint64_t>{2}));
  ASSERT_EQ(diagnostics.size(), 1u);
  EXPECT_EQ(diagnostics[0].reason, "missing cell");
  EXPECT_EQ(diagnostics[0].line, 3u);
}

}  // namespace
}  // namespace nbscreen
