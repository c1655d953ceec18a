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

#include "nbscreen/report.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace nbscreen {
namespace {

using nlohmann::ordered_json;

std::string shortest(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string csv_escape(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> report_cells(const TestReport& r) {
  return {std::to_string(r.m), std::to_string(r.median), format_fixed3(r.posterior_h0),
          format_fixed3(r.p_value), format_lower_bound(r.lower_bound)};
}

ordered_json json_number(double v) {
  if (std::isfinite(v)) return v;
  return shortest(v);
}

ordered_json report_json(const TestReport& r) {
  ordered_json j;
  j["test"] = test_label(r);
  j["column"] = r.column;
  j["law"] = r.law.name();
  j["m"] = r.m;
  j["median"] = r.median;
  j["posterior_h0"] = r.posterior_h0;
  j["p_value"] = r.p_value;
  j["lower_bound"] = {{"value", r.lower_bound.value}, {"above_half", r.lower_bound.above_half}};
  j["chi2"] = json_number(r.chi2.statistic);
  j["df"] = r.chi2.df;
  j["log_b01"] = json_number(r.log_b01);
  j["n"] = r.counts.n();
  j["excluded_short"] = r.counts.excluded();
  j["warnings"] = r.warnings;
  return j;
}

std::string render_text_table(const std::vector<std::string>& labels,
                              const std::vector<std::vector<std::string>>& cells) {
  std::size_t label_width = 4;  // "Test"
  for (const auto& l : labels) label_width = std::max(label_width, l.size());
  std::array<std::size_t, kReportColumns.size()> widths{};
  for (std::size_t c = 0; c < widths.size(); ++c) {
    widths[c] = kReportColumns[c].size();
    for (const auto& row : cells) widths[c] = std::max(widths[c], row[c].size());
  }
  std::ostringstream out;
  auto pad_right = [](std::string_view s, std::size_t w) {
    return std::string(s) + std::string(w - s.size(), ' ');
  };
  auto pad_left = [](std::string_view s, std::size_t w) {
    return std::string(w - s.size(), ' ') + std::string(s);
  };
  out << pad_right("Test", label_width);
  for (std::size_t c = 0; c < widths.size(); ++c) out << "  " << pad_left(kReportColumns[c], widths[c]);
  out << '\n';
  for (std::size_t r = 0; r < labels.size(); ++r) {
    out << pad_right(labels[r], label_width);
    for (std::size_t c = 0; c < widths.size(); ++c) out << "  " << pad_left(cells[r][c], widths[c]);
    out << '\n';
  }
  return out.str();
}

}  // namespace

OutputFormat parse_output_format(std::string_view text) {
  if (text == "text") return OutputFormat::kText;
  if (text == "csv") return OutputFormat::kCsv;
  if (text == "json") return OutputFormat::kJson;
  throw std::invalid_argument("unknown format '" + std::string(text) + "' (text, csv, json)");
}

std::string_view file_extension(OutputFormat format) {
  switch (format) {
    case OutputFormat::kText: return "txt";
    case OutputFormat::kCsv: return "csv";
    case OutputFormat::kJson: return "json";
  }
  return "txt";
}

std::string test_label(const TestReport& report) {
  std::string code = report.law.name();
  for (char& c : code) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return code + " " + report.column;
}

std::string format_fixed3(double value) {
  std::array<char, 64> buf{};
  const int len = std::snprintf(buf.data(), buf.size(), "%.3f", value);
  return std::string(buf.data(), static_cast<std::size_t>(len));
}

std::string format_lower_bound(const LowerBound& bound) {
  return bound.above_half ? "> 0.5" : format_fixed3(bound.value);
}

std::string render_report(std::span<const TestReport> reports,
                          std::span<const ScreenFailure> failures, OutputFormat format,
                          std::span<const RowDiagnostic> diagnostics) {
  if (format == OutputFormat::kJson) {
    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["kind"] = "screen";
    j["columns"] = ordered_json::array();
    for (const auto c : kReportColumns) j["columns"].push_back(c);
    j["reports"] = ordered_json::array();
    for (const auto& r : reports) j["reports"].push_back(report_json(r));
    j["errors"] = ordered_json::array();
    for (const auto& f : failures) {
      j["errors"].push_back({{"column", f.column}, {"test", f.test}, {"message", f.message}});
    }
    j["diagnostics"] = ordered_json::array();
    for (const auto& d : diagnostics) {
      j["diagnostics"].push_back(
          {{"column", d.column}, {"line", d.line}, {"cell", d.cell}, {"reason", d.reason}});
    }
    return j.dump(2) + "\n";
  }

  std::vector<std::string> labels;
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : reports) {
    labels.push_back(test_label(r));
    cells.push_back(report_cells(r));
  }

  std::ostringstream out;
  if (format == OutputFormat::kCsv) {
    out << "Test";
    for (const auto c : kReportColumns) out << ',' << c;
    out << '\n';
    for (std::size_t r = 0; r < labels.size(); ++r) {
      out << csv_escape(labels[r]);
      for (const auto& cell : cells[r]) out << ',' << csv_escape(cell);
      out << '\n';
    }
    // Errors go to stderr for CSV so the table stays machine-readable.
    return out.str();
  }

  out << render_text_table(labels, cells);
  for (const auto& r : reports) {
    for (const auto& w : r.warnings) out << "note: " << test_label(r) << ": " << w << '\n';
  }
  for (const auto& f : failures) {
    out << "error: " << f.column << (f.test.empty() ? "" : " " + f.test) << ": " << f.message
        << '\n';
  }
  return out.str();
}

std::vector<ProportionRow> emit_proportions(const TestReport& report) {
  const auto& domain = report.counts.domain();
  const auto observed = report.counts.proportions();
  const auto law = report.law.probs();
  std::vector<ProportionRow> rows;
  rows.reserve(domain.size());
  for (std::size_t c = 0; c < domain.size(); ++c) {
    rows.push_back({domain.label_text(c), observed[c], law[c]});
  }
  return rows;
}

std::string render_proportions(std::span<const TestReport> reports, OutputFormat format) {
  if (format == OutputFormat::kJson) {
    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["kind"] = "proportions";
    j["series"] = ordered_json::array();
    for (const auto& r : reports) {
      ordered_json s;
      s["test"] = test_label(r);
      s["column"] = r.column;
      s["law"] = r.law.name();
      s["rows"] = ordered_json::array();
      for (const auto& row : emit_proportions(r)) {
        s["rows"].push_back({{"digit", row.digit},
                             {"observed_proportion", row.observed},
                             {"law_probability", row.law}});
      }
      j["series"].push_back(std::move(s));
    }
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "test,column,digit,observed_proportion,law_probability\n";
  for (const auto& r : reports) {
    const std::string label = csv_escape(r.law.name());
    const std::string column = csv_escape(r.column);
    for (const auto& row : emit_proportions(r)) {
      out << label << ',' << column << ',' << row.digit << ',' << shortest(row.observed) << ','
          << shortest(row.law) << '\n';
    }
  }
  return out.str();
}

std::string render_experiment(const ExperimentReport& report, const VotingModelConfig& config,
                              OutputFormat format) {
  if (format == OutputFormat::kJson) {
    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["kind"] = "experiment";
    j["config"] = {{"n_units", config.n_units},
                   {"max_voters", config.max_voters},
                   {"turnout", config.turnout.describe()},
                   {"partisan_fraction", config.partisan_fraction.describe()},
                   {"partisan_loyalty", config.partisan_loyalty},
                   {"swing_prob", config.swing_prob.describe()},
                   {"seed", config.seed},
                   {"replicates", config.replicates}};
    j["columns"] = ordered_json::array();
    for (const auto c : kReportColumns) j["columns"].push_back(c);
    j["reports"] = ordered_json::array();
    for (const auto& r : report.pooled) j["reports"].push_back(report_json(r));
    j["replicates"] = ordered_json::array();
    for (const auto& s : report.replicates) {
      j["replicates"].push_back({{"law", s.law},
                                 {"p_values", s.p_values},
                                 {"posteriors", s.posteriors},
                                 {"failures", s.failures}});
    }
    return j.dump(2) + "\n";
  }

  std::string out = render_report(report.pooled, {}, format);
  if (format == OutputFormat::kText && config.replicates > 1) {
    std::ostringstream extra;
    extra << "\nper-replicate (" << config.replicates << " replicates)\n";
    for (const auto& s : report.replicates) {
      auto p = s.p_values;
      auto post = s.posteriors;
      std::sort(p.begin(), p.end());
      std::sort(post.begin(), post.end());
      auto med = [](const std::vector<double>& v) { return v.empty() ? 0.0 : v[(v.size() - 1) / 2]; };
      extra << "  " << s.law << ": median p-value " << format_fixed3(med(p))
            << ", median P(H0|data) " << format_fixed3(med(post));
      if (s.failures > 0) extra << ", " << s.failures << " without analyzable values";
      extra << '\n';
    }
    out += extra.str();
  }
  return out;
}

std::string render_law_table(std::span<const DigitDistribution> laws, int precision) {
  if (precision < 0 || precision > 17) throw std::invalid_argument("precision must be in [0, 17]");
  bool has_zero = false;
  std::size_t name_width = std::string_view("Digit unit").size();
  for (const auto& law : laws) {
    if (law.domain().kind() != DigitDomain::Kind::kMarginal) {
      throw std::invalid_argument("law tables cover single-digit laws only");
    }
    has_zero = has_zero || law.domain().digits() > 1;
    name_width = std::max(name_width, law.name().size());
  }
  const std::size_t cell_width = static_cast<std::size_t>(precision) + 3;
  const int first = has_zero ? 0 : 1;

  std::ostringstream out;
  auto pad_left = [](std::string s, std::size_t w) {
    return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
  };
  out << std::string("Digit unit") + std::string(name_width - 10, ' ');
  for (int d = first; d <= 9; ++d) out << ' ' << pad_left(std::to_string(d), cell_width);
  out << '\n';
  for (const auto& law : laws) {
    const std::string name = law.name();
    out << name << std::string(name_width - name.size(), ' ');
    for (int d = first; d <= 9; ++d) {
      std::string cell;
      if (d >= 1 || law.domain().digits() > 1) {
        std::array<char, 64> buf{};
        const int len = std::snprintf(buf.data(), buf.size(), "%.*f", precision,
                                      law.prob_of(static_cast<std::uint32_t>(d)));
        cell.assign(buf.data(), static_cast<std::size_t>(len));
      }
      out << ' ' << pad_left(cell, cell_width);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace nbscreen
