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

// nbscreen: digit-law screening of per-unit count data.

#include <array>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nbscreen/keyvalue.hpp"
#include "nbscreen/kernels.hpp"
#include "nbscreen/laws.hpp"
#include "nbscreen/report.hpp"
#include "nbscreen/screening.hpp"
#include "nbscreen/simulate.hpp"

namespace fs = std::filesystem;
using namespace nbscreen;

namespace {

constexpr const char* kOutputDirEnv = "NBSCREEN_OUTPUT_DIR";
constexpr std::size_t kMaxPrintedDiagnostics = 20;

// Explicit path wins; otherwise $NBSCREEN_OUTPUT_DIR/<stem>.<suffix>; otherwise stdout.
std::optional<fs::path> output_path(const std::string& explicit_path, const fs::path& source,
                                    const std::string& suffix) {
  if (!explicit_path.empty()) return fs::path(explicit_path);
  if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) {
    return fs::path(dir) / (source.stem().string() + suffix);
  }
  return std::nullopt;
}

void write_output(const std::optional<fs::path>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    return;
  }
  if (path->has_parent_path()) fs::create_directories(path->parent_path());
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path->string());
  out << text;
}

struct ScreenArgs {
  std::string input;
  std::vector<std::string> columns;
  std::vector<std::string> tests;
  std::optional<std::uint64_t> bound;
  std::optional<std::uint64_t> lower;
  double prior = 0.5;
  std::string policy = "exclude-short";
  std::string format = "text";
  std::string out;
  std::string proportions;
  double threshold = 0.5;
  std::string delimiter;
  unsigned threads = 0;
};

int run_screen(const ScreenArgs& args) {
  ScreenConfig config;
  config.input = args.input;
  config.columns = args.columns;
  config.tests = args.tests;
  if (args.bound || args.lower) config.restriction = RestrictionSpec{args.lower, args.bound};
  config.prior.prior_h0 = args.prior;
  config.policy = parse_exclusion_policy(args.policy);
  config.format = parse_output_format(args.format);
  config.threshold = args.threshold;
  config.threads = args.threads;
  if (!args.delimiter.empty()) {
    if (args.delimiter == "tab" || args.delimiter == "\\t") {
      config.delimiter = '\t';
    } else if (args.delimiter.size() == 1) {
      config.delimiter = args.delimiter.front();
    } else {
      throw std::invalid_argument("delimiter must be a single character or 'tab'");
    }
  }

  const ScreeningResult result = run_screening(config);

  const std::size_t shown = std::min(result.diagnostics.size(), kMaxPrintedDiagnostics);
  for (std::size_t i = 0; i < shown; ++i) {
    const auto& d = result.diagnostics[i];
    std::cerr << "nbscreen: " << args.input << ":" << d.line << ": column " << d.column << ": "
              << d.reason << (d.cell.empty() ? "" : " '" + d.cell + "'") << ", row excluded\n";
  }
  if (result.diagnostics.size() > shown) {
    std::cerr << "nbscreen: " << result.diagnostics.size() - shown << " more excluded rows\n";
  }
  if (config.format == OutputFormat::kCsv) {
    for (const auto& f : result.failures) {
      std::cerr << "nbscreen: error: " << f.column << (f.test.empty() ? "" : " " + f.test) << ": "
                << f.message << '\n';
    }
  }

  const std::string suffix = ".report." + std::string(file_extension(config.format));
  write_output(output_path(args.out, config.input, suffix),
               render_report(result.reports, result.failures, config.format, result.diagnostics));
  if (!args.proportions.empty()) {
    const auto fmt = config.format == OutputFormat::kJson ? OutputFormat::kJson : OutputFormat::kCsv;
    write_output(fs::path(args.proportions), render_proportions(result.reports, fmt));
  }
  return result.exit_code();
}

int run_simulate(const std::string& config_path, const std::string& out, const std::string& report,
                 const std::string& format) {
  const auto file = KeyValueFile::load(config_path);
  const std::string model = file.get("model").value_or("hmpm");
  const auto destination = output_path(out, config_path, ".csv");

  if (model == "mixture") {
    const auto config = MixtureConfig::from_keyvalue(file);
    std::string text = "value\n";
    for (const double v : sample_mixture(config)) {
      std::array<char, 64> buf{};
      const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
      text.append(buf.data(), res.ptr);
      text += '\n';
    }
    write_output(destination, text);
    return kExitPass;
  }
  if (model != "hmpm") throw std::invalid_argument("unknown model '" + model + "' (hmpm, mixture)");

  const auto config = VotingModelConfig::from_keyvalue(file);
  std::string text = "replicate,unit,turnout,candidate_a,candidate_b\n";
  for (std::size_t r = 0; r < config.replicates; ++r) {
    const HmpmSample s = sample_hmpm(config, r);
    for (std::size_t u = 0; u < config.n_units; ++u) {
      text += std::to_string(r) + ',' + std::to_string(u + 1) + ',' + std::to_string(s.turnout[u]) +
              ',' + std::to_string(s.votes_a[u]) + ',' + std::to_string(s.votes_b[u]) + '\n';
    }
  }
  write_output(destination, text);

  if (!config.laws.empty()) {
    const auto bound = RestrictionSpec::at_most(config.max_voters);
    std::vector<DigitDistribution> laws;
    for (const auto& code : config.laws) laws.push_back(law_from_code(code, bound));
    const auto experiment = conformance_experiment(config, laws);
    const auto fmt = parse_output_format(format);
    const std::string rendered = render_experiment(experiment, config, fmt);
    if (report.empty()) {
      // Keep stdout a clean CSV when the data went there.
      (destination ? std::cout : std::cerr) << rendered;
    } else {
      write_output(fs::path(report), rendered);
    }
  }
  return kExitPass;
}

int run_laws(const std::vector<std::string>& tables, int precision) {
  std::vector<DigitDistribution> laws;
  for (const auto& code : tables) laws.push_back(law_from_code(code));
  std::cout << render_law_table(laws, precision);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Screen per-unit count data against Newcomb-Benford digit laws"};
  app.require_subcommand(1);
  bool show_kernels = false;
  app.add_flag("--kernels", show_kernels, "Print the selected kernel set to stderr");

  ScreenArgs screen_args;
  auto* screen_cmd = app.add_subcommand("screen", "Screen columns of a delimited count table");
  screen_cmd->add_option("input", screen_args.input, "Delimited text file with a header row")
      ->required();
  screen_cmd->add_option("--columns", screen_args.columns, "Column names or 1-based indices")
      ->delimiter(',')
      ->required();
  screen_cmd->add_option("--tests", screen_args.tests,
                         "Laws: nb1, nb2, joint2, rnb1, rnb2 (default nb2, plus rnb2 with --bound)")
      ->delimiter(',');
  screen_cmd->add_option("--bound", screen_args.bound, "Upper bound K for restricted laws");
  screen_cmd->add_option("--lower", screen_args.lower, "Lower bound for restricted laws");
  screen_cmd->add_option("--prior", screen_args.prior, "Prior probability of H0")
      ->capture_default_str();
  screen_cmd->add_option("--policy", screen_args.policy, "exclude-short or trailing-zero")
      ->capture_default_str();
  screen_cmd->add_option("--format", screen_args.format, "text, csv or json")->capture_default_str();
  screen_cmd->add_option("--out", screen_args.out, "Report path (default: stdout or $" +
                                                       std::string(kOutputDirEnv) + ")");
  screen_cmd->add_option("--proportions", screen_args.proportions,
                         "Also write digit-proportion plot data to this path");
  screen_cmd->add_option("--threshold", screen_args.threshold,
                         "Posterior below which a row counts as a rejection")
      ->capture_default_str();
  screen_cmd->add_option("--delimiter", screen_args.delimiter,
                         "Field delimiter (default: detect , ; or tab)");
  screen_cmd->add_option("--threads", screen_args.threads, "Worker threads (0 = all cores)");

  std::string sim_config, sim_out, sim_report, sim_format = "text";
  auto* sim_cmd = app.add_subcommand("simulate", "Generate synthetic counts from a config file");
  sim_cmd->add_option("--config", sim_config, "Key-value model config")->required();
  sim_cmd->add_option("--out", sim_out, "Data output path (default: stdout or $" +
                                            std::string(kOutputDirEnv) + ")");
  sim_cmd->add_option("--report", sim_report,
                     "Experiment report path (default: stdout, or stderr when data is on stdout)");
  sim_cmd->add_option("--format", sim_format, "Experiment report format: text, csv or json")
      ->capture_default_str();

  std::vector<std::string> law_tables;
  int precision = 3;
  auto* laws_cmd = app.add_subcommand("laws", "Print digit-law tables");
  laws_cmd->add_option("--table", law_tables, "nb1, nb2, cnb1:K, cnb2:K (repeatable)")
      ->required();
  laws_cmd->add_option("--precision", precision, "Decimals")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  if (show_kernels) std::cerr << "nbscreen: kernels " << kernels::active().name << '\n';
  try {
    if (*screen_cmd) return run_screen(screen_args);
    if (*sim_cmd) return run_simulate(sim_config, sim_out, sim_report, sim_format);
    if (*laws_cmd) return run_laws(law_tables, precision);
  } catch (const std::exception& e) {
    std::cerr << "nbscreen: error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
