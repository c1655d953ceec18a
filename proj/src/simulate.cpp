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

#include "nbscreen/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "nbscreen/random.hpp"

namespace nbscreen {
namespace {

constexpr int kMaxRedraws = 1000;

std::size_t expected_params(MixtureFamily family) {
  switch (family) {
    case MixtureFamily::kLognormal: return 2;
    case MixtureFamily::kHalfCauchy: return 1;
    case MixtureFamily::kScaledExponential: return 1;
    case MixtureFamily::kUniformRange: return 2;
  }
  return 0;
}

MixtureFamily parse_family(std::string_view name) {
  if (name == "lognormal") return MixtureFamily::kLognormal;
  if (name == "half-cauchy") return MixtureFamily::kHalfCauchy;
  if (name == "scaled-exponential") return MixtureFamily::kScaledExponential;
  if (name == "uniform-range") return MixtureFamily::kUniformRange;
  throw std::invalid_argument("unknown mixture family '" + std::string(name) + "'");
}

double draw(const MixtureComponent& c, Rng& rng) {
  const auto& p = c.params;
  switch (c.family) {
    case MixtureFamily::kLognormal: return std::exp(p[0] + p[1] * rng.normal());
    case MixtureFamily::kHalfCauchy:
      return p[0] * std::abs(std::tan(std::numbers::pi * (rng.uniform() - 0.5)));
    case MixtureFamily::kScaledExponential: return -p[0] * std::log(rng.uniform());
    case MixtureFamily::kUniformRange: return p[0] + (p[1] - p[0]) * rng.uniform();
  }
  return 0.0;
}

void check_probability(double v, std::string_view what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

void check_beta(const BetaSpec& spec, std::string_view what) {
  if (spec.fixed) {
    check_probability(*spec.fixed, what);
  } else if (!(spec.a > 0.0 && spec.b > 0.0)) {
    throw std::invalid_argument(std::string(what) + ": beta parameters must be > 0");
  }
}

double draw(const BetaSpec& spec, Rng& rng) { return spec.fixed ? *spec.fixed : rng.beta(spec.a, spec.b); }

DatasetColumn nonzero_column(std::string name, const std::vector<std::uint64_t>& counts) {
  DatasetColumn col{std::move(name), {}, 0};
  col.values.reserve(counts.size());
  for (const auto v : counts) {
    if (v == 0) {
      ++col.excluded_count;
    } else {
      col.values.push_back(v);
    }
  }
  return col;
}

// Runs fn(i) for i in [0, count) on up to hardware_concurrency threads.
template <typename Fn>
void parallel_for(std::size_t count, Fn fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < count; i = next++) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

void MixtureConfig::validate() const {
  if (components.empty()) throw std::invalid_argument("mixture needs at least one component");
  if (n_samples < 1) throw std::invalid_argument("mixture n_samples must be >= 1");
  double total = 0.0;
  for (const auto& c : components) {
    if (c.params.size() != expected_params(c.family)) {
      throw std::invalid_argument("mixture component has the wrong number of parameters");
    }
    if (!(c.weight >= 0.0)) throw std::invalid_argument("mixture weights must be >= 0");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("mixture weights must sum to 1");
}

MixtureConfig MixtureConfig::from_keyvalue(const KeyValueFile& file) {
  MixtureConfig config;
  config.seed = file.get_u64("seed", 0);
  config.n_samples = file.get_u64("n_samples", 0);
  for (const auto& line : file.all("component")) {
    const auto words = split_words(line);
    if (words.empty()) throw std::invalid_argument("empty mixture component");
    MixtureComponent c;
    c.family = parse_family(words[0]);
    for (std::size_t w = 1; w < words.size(); ++w) {
      if (words[w] == "weight") {
        if (w + 1 >= words.size()) throw std::invalid_argument("'weight' needs a value");
        c.weight = parse_double(words[++w], "component weight");
      } else {
        c.params.push_back(parse_double(words[w], "component parameter"));
      }
    }
    config.components.push_back(std::move(c));
  }
  config.validate();
  return config;
}

std::vector<double> sample_mixture(const MixtureConfig& config) {
  config.validate();
  std::vector<double> cumulative;
  double acc = 0.0;
  for (const auto& c : config.components) cumulative.push_back(acc += c.weight);

  Rng rng(config.seed);
  std::vector<double> out;
  out.reserve(config.n_samples);
  while (out.size() < config.n_samples) {
    const double u = rng.uniform() * acc;
    const auto pick = static_cast<std::size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
    const auto& component = config.components[std::min(pick, cumulative.size() - 1)];
    double x = 0.0;
    int attempts = 0;
    do {
      if (++attempts > kMaxRedraws) {
        throw std::runtime_error("mixture component produced no positive draws");
      }
      x = draw(component, rng);
    } while (!(x > 0.0) || !std::isfinite(x));
    out.push_back(x);
  }
  return out;
}

BetaSpec BetaSpec::parse(std::string_view text) {
  const auto words = split_words(text);
  if (words.size() == 2 && words[0] == "fixed") {
    return constant(parse_double(words[1], "fixed value"));
  }
  if (words.size() == 3 && words[0] == "beta") {
    return {parse_double(words[1], "beta a"), parse_double(words[2], "beta b"), std::nullopt};
  }
  throw std::invalid_argument("expected 'beta <a> <b>' or 'fixed <value>', got '" +
                              std::string(text) + "'");
}

std::string BetaSpec::describe() const {
  if (fixed) return "fixed " + std::to_string(*fixed);
  return "beta " + std::to_string(a) + " " + std::to_string(b);
}

void VotingModelConfig::validate() const {
  if (n_units < 1) throw std::invalid_argument("n_units must be >= 1");
  if (max_voters < 10) throw std::invalid_argument("max_voters must be >= 10");
  if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
  if (replicates > (std::size_t{1} << 31) || n_units > (std::size_t{1} << 32)) {
    throw std::invalid_argument("too many replicates or units for the stream rule");
  }
  check_beta(turnout, "turnout");
  check_beta(partisan_fraction, "partisan_fraction");
  check_probability(partisan_loyalty, "partisan_loyalty");
  check_beta(swing_prob, "swing_prob");
}

VotingModelConfig VotingModelConfig::from_keyvalue(const KeyValueFile& file) {
  VotingModelConfig c;
  c.n_units = file.get_u64("n_units", c.n_units);
  c.max_voters = file.get_u64("max_voters", c.max_voters);
  if (auto v = file.get("turnout")) c.turnout = BetaSpec::parse(*v);
  if (auto v = file.get("partisan_fraction")) c.partisan_fraction = BetaSpec::parse(*v);
  c.partisan_loyalty = file.get_double("partisan_loyalty", c.partisan_loyalty);
  if (auto v = file.get("swing_prob")) c.swing_prob = BetaSpec::parse(*v);
  c.seed = file.get_u64("seed", c.seed);
  c.replicates = file.get_u64("replicates", c.replicates);
  if (auto v = file.get("screen_column")) {
    if (*v == "a") {
      c.screened = ScreenedCandidate::kA;
    } else if (*v == "b") {
      c.screened = ScreenedCandidate::kB;
    } else if (*v == "both") {
      c.screened = ScreenedCandidate::kBoth;
    } else {
      throw std::invalid_argument("screen_column must be a, b or both");
    }
  }
  if (auto v = file.get("laws")) c.laws = split_list(*v);
  c.validate();
  return c;
}

DatasetColumn HmpmSample::column_a() const { return nonzero_column("candidate_a", votes_a); }
DatasetColumn HmpmSample::column_b() const { return nonzero_column("candidate_b", votes_b); }

HmpmSample sample_hmpm(const VotingModelConfig& config, std::size_t replicate) {
  config.validate();
  HmpmSample s;
  s.turnout.resize(config.n_units);
  s.votes_a.resize(config.n_units);
  s.votes_b.resize(config.n_units);
  for (std::size_t u = 0; u < config.n_units; ++u) {
    Rng rng(config.seed, (static_cast<std::uint64_t>(replicate) << 32) | u);
    const std::uint64_t voters = rng.binomial(config.max_voters, draw(config.turnout, rng));
    const std::uint64_t partisans = rng.binomial(voters, draw(config.partisan_fraction, rng));
    const std::uint64_t loyal = rng.binomial(partisans, config.partisan_loyalty);
    const std::uint64_t swung = rng.binomial(voters - partisans, draw(config.swing_prob, rng));
    s.turnout[u] = voters;
    s.votes_a[u] = loyal + swung;
    s.votes_b[u] = voters - s.votes_a[u];
  }
  return s;
}

DatasetColumn screened_column(const HmpmSample& sample, ScreenedCandidate which) {
  switch (which) {
    case ScreenedCandidate::kA: return sample.column_a();
    case ScreenedCandidate::kB: return sample.column_b();
    case ScreenedCandidate::kBoth: {
      DatasetColumn a = sample.column_a();
      const DatasetColumn b = sample.column_b();
      a.name = "candidates_a_b";
      a.values.insert(a.values.end(), b.values.begin(), b.values.end());
      a.excluded_count += b.excluded_count;
      return a;
    }
  }
  throw std::logic_error("unhandled candidate selector");
}

ExperimentReport conformance_experiment(const VotingModelConfig& config,
                                        const std::vector<DigitDistribution>& laws,
                                        const HypothesisPrior& prior) {
  config.validate();
  if (laws.empty()) throw std::invalid_argument("conformance experiment needs at least one law");

  std::vector<DatasetColumn> columns(config.replicates);
  parallel_for(config.replicates, [&](std::size_t r) {
    columns[r] = screened_column(sample_hmpm(config, r), config.screened);
  });

  ExperimentReport report;
  DatasetColumn pooled = columns.front();
  for (std::size_t r = 1; r < columns.size(); ++r) {
    pooled.values.insert(pooled.values.end(), columns[r].values.begin(), columns[r].values.end());
    pooled.excluded_count += columns[r].excluded_count;
  }
  for (const auto& law : laws) {
    report.pooled.push_back(screen(pooled, law, prior));
    ReplicateSeries series{law.name(), {}, {}, 0};
    for (const auto& column : columns) {
      try {
        const TestReport one = screen(column, law, prior);
        series.p_values.push_back(one.p_value);
        series.posteriors.push_back(one.posterior_h0);
      } catch (const NoAnalyzableValues&) {
        ++series.failures;
      }
    }
    report.replicates.push_back(std::move(series));
  }
  return report;
}

}  // namespace nbscreen
