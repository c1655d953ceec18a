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

#include "nbscreen/screening.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>
#include <variant>

namespace nbscreen {

void ScreenConfig::validate() const {
  if (columns.empty()) throw std::invalid_argument("select at least one column");
  prior.validate();
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("threshold must lie strictly between 0 and 1");
  }
  if (restriction) restriction->validate();
  for (const auto& code : effective_tests()) (void)law_from_code(code, restriction);
}

std::vector<std::string> ScreenConfig::effective_tests() const {
  if (!tests.empty()) return tests;
  if (restriction) return {"nb2", "rnb2"};
  return {"nb2"};
}

int ScreeningResult::exit_code() const {
  if (!failures.empty()) return kExitError;
  const bool rejected = std::any_of(reports.begin(), reports.end(), [&](const TestReport& r) {
    return r.posterior_h0 < threshold;
  });
  return rejected ? kExitReject : kExitPass;
}

const TestReport& ScreeningResult::find(std::string_view column, std::string_view test) const {
  for (const auto& r : reports) {
    if (r.column != column) continue;
    const std::string name = r.law.name();
    if (name == test || name.substr(0, name.find('[')) == test) return r;
  }
  throw std::out_of_range("no screening for column '" + std::string(column) + "' and test '" +
                          std::string(test) + "'");
}

ScreeningResult screen_columns(const std::vector<DatasetColumn>& columns,
                               const ScreenConfig& config, std::vector<ScreenFailure> failures) {
  const auto codes = config.effective_tests();
  std::vector<DigitDistribution> laws;
  for (const auto& code : codes) laws.push_back(law_from_code(code, config.restriction));

  // One job per (test, column); results land in fixed slots so the output
  // order never depends on scheduling.
  const std::size_t jobs = laws.size() * columns.size();
  std::vector<std::variant<std::monostate, TestReport, ScreenFailure>> slots(jobs);
  auto run = [&](std::size_t job) {
    const std::size_t t = job / columns.size();
    const std::size_t c = job % columns.size();
    try {
      slots[job] = screen(columns[c], laws[t], config.prior, config.policy);
    } catch (const std::exception& e) {
      slots[job] = ScreenFailure{columns[c].name, codes[t], e.what()};
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(jobs, config.threads ? config.threads : hw);
  if (workers <= 1) {
    for (std::size_t j = 0; j < jobs; ++j) run(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t j = next++; j < jobs; j = next++) run(j);
      });
    }
    for (auto& th : pool) th.join();
  }

  ScreeningResult result;
  result.threshold = config.threshold;
  result.failures = std::move(failures);
  for (auto& slot : slots) {
    if (auto* r = std::get_if<TestReport>(&slot)) {
      result.reports.push_back(std::move(*r));
    } else if (auto* f = std::get_if<ScreenFailure>(&slot)) {
      result.failures.push_back(std::move(*f));
    }
  }
  return result;
}

ScreeningResult run_screening(const ScreenConfig& config) {
  config.validate();
  const Table table = read_table(config.input, config.delimiter);
  std::vector<DatasetColumn> columns;
  std::vector<ScreenFailure> failures;
  std::vector<RowDiagnostic> diagnostics;
  for (const auto& selector : config.columns) {
    try {
      columns.push_back(extract_column(table, selector, &diagnostics));
    } catch (const std::exception& e) {
      failures.push_back({selector, "", e.what()});
    }
  }
  ScreeningResult result = screen_columns(columns, config, std::move(failures));
  result.diagnostics = std::move(diagnostics);
  return result;
}

}  // namespace nbscreen
