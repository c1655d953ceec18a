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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nbscreen/digits.hpp"
#include "nbscreen/inference.hpp"
#include "nbscreen/ingest.hpp"
#include "nbscreen/laws.hpp"
#include "nbscreen/report.hpp"

namespace nbscreen {

inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitReject = 2;

struct ScreenConfig {
  std::filesystem::path input;
  std::vector<std::string> columns;
  /// Law codes (nb1, nb2, joint2, rnb1, rnb2, ...). Empty selects nb2, plus
  /// rnb2 when a restriction is given.
  std::vector<std::string> tests;
  std::optional<RestrictionSpec> restriction;
  HypothesisPrior prior;
  ExclusionPolicy policy = ExclusionPolicy::kExcludeShort;
  OutputFormat format = OutputFormat::kText;
  /// Rows with P(H0|data) below this count as rejections.
  double threshold = 0.5;
  std::optional<char> delimiter;
  /// Worker threads; 0 means one per hardware thread.
  unsigned threads = 0;

  void validate() const;
  std::vector<std::string> effective_tests() const;
};

struct ScreeningResult {
  std::vector<TestReport> reports;  // tests outer, columns inner, in config order
  std::vector<ScreenFailure> failures;
  std::vector<RowDiagnostic> diagnostics;
  double threshold = 0.5;

  /// 1 if anything failed, else 2 if any posterior is below the threshold,
  /// else 0.
  int exit_code() const;
  /// The report for a column and law code or name; throws std::out_of_range.
  const TestReport& find(std::string_view column, std::string_view test) const;
};

/// Reads config.input and screens every (test, column) pair. Per-pair
/// failures are collected, not thrown.
ScreeningResult run_screening(const ScreenConfig& config);

/// Same, for columns already in memory. Column-level failures (e.g. a
/// missing selector) can be passed in `failures`.
ScreeningResult screen_columns(const std::vector<DatasetColumn>& columns,
                               const ScreenConfig& config,
                               std::vector<ScreenFailure> failures = {});

}  // namespace nbscreen
