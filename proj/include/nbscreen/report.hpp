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

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nbscreen/inference.hpp"
#include "nbscreen/ingest.hpp"
#include "nbscreen/laws.hpp"
#include "nbscreen/simulate.hpp"

namespace nbscreen {

enum class OutputFormat { kText, kCsv, kJson };

OutputFormat parse_output_format(std::string_view text);
std::string_view file_extension(OutputFormat format);

/// Bumped whenever a JSON field is renamed or removed.
inline constexpr int kReportSchemaVersion = 1;

/// Statistic columns of a report row, in order. Text and CSV output put a
/// "Test" label column in front.
inline constexpr std::array<std::string_view, 5> kReportColumns = {
    "m", "Median", "P(H0|data)", "p-values", "P_low(H0|data)"};

/// A (column, test) pair that could not be screened.
struct ScreenFailure {
  std::string column;
  std::string test;
  std::string message;
};

/// "NB2 bush", "RNB2[N<=2250] bush".
std::string test_label(const TestReport& report);

/// Fixed 3 decimals, as in published screening tables.
std::string format_fixed3(double value);
/// "> 0.5" when the bound is not informative, else fixed 3 decimals.
std::string format_lower_bound(const LowerBound& bound);

std::string render_report(std::span<const TestReport> reports,
                          std::span<const ScreenFailure> failures, OutputFormat format,
                          std::span<const RowDiagnostic> diagnostics = {});

/// One plot-data row: a digit (or "d1d2" prefix) with its observed proportion
/// and reference probability.
struct ProportionRow {
  std::string digit;
  double observed = 0.0;
  double law = 0.0;
};

std::vector<ProportionRow> emit_proportions(const TestReport& report);

/// CSV (for text or csv) or JSON plot data for every report.
std::string render_proportions(std::span<const TestReport> reports, OutputFormat format);

std::string render_experiment(const ExperimentReport& report, const VotingModelConfig& config,
                              OutputFormat format);

/// Rows in the style of published digit-law tables: one column per digit,
/// `precision` decimals.
std::string render_law_table(std::span<const DigitDistribution> laws, int precision = 3);

}  // namespace nbscreen
