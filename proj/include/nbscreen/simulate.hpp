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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nbscreen/digits.hpp"
#include "nbscreen/inference.hpp"
#include "nbscreen/keyvalue.hpp"
#include "nbscreen/laws.hpp"

namespace nbscreen {

// ---------------------------------------------------------------------------
// Distribution mixtures
// ---------------------------------------------------------------------------

enum class MixtureFamily { kLognormal, kHalfCauchy, kScaledExponential, kUniformRange };

/// One mixture component. Parameters by family:
///   lognormal           {mu, sigma}    exp(mu + sigma Z)
///   half-cauchy         {scale}        scale |tan(pi (U - 1/2))|
///   scaled-exponential  {scale}        -scale ln U
///   uniform-range       {lo, hi}       lo + (hi - lo) U
struct MixtureComponent {
  MixtureFamily family = MixtureFamily::kLognormal;
  std::vector<double> params;
  double weight = 1.0;
};

struct MixtureConfig {
  std::vector<MixtureComponent> components;
  std::uint64_t seed = 0;
  std::size_t n_samples = 0;

  void validate() const;
  /// Keys: seed, n_samples, and repeated
  /// `component = <family> <params...> [weight <w>]`.
  static MixtureConfig from_keyvalue(const KeyValueFile& file);
};

/// n_samples positive draws. Non-positive draws are redrawn; a component that
/// keeps producing them is an error.
std::vector<double> sample_mixture(const MixtureConfig& config);

// ---------------------------------------------------------------------------
// Two-population voting model
// ---------------------------------------------------------------------------

/// Beta(a, b) draw, or a fixed value when `fixed` is set.
struct BetaSpec {
  double a = 1.0;
  double b = 1.0;
  std::optional<double> fixed;

  static BetaSpec constant(double v) { return {1.0, 1.0, v}; }
  /// "beta <a> <b>" or "fixed <v>".
  static BetaSpec parse(std::string_view text);
  std::string describe() const;
};

enum class ScreenedCandidate { kA, kB, kBoth };

/// Per unit: turnout T ~ Binomial(max_voters, t), t ~ turnout; partisan
/// voters P ~ Binomial(T, pi), pi ~ partisan_fraction; candidate A receives
/// Binomial(P, partisan_loyalty) partisan votes plus Binomial(T - P, s) swing
/// votes, s ~ swing_prob; candidate B receives the rest.
///
/// Unit u of replicate r draws from Rng(seed, (r << 32) | u).
struct VotingModelConfig {
  std::size_t n_units = 999;
  std::uint64_t max_voters = 2250;
  BetaSpec turnout{5.0, 1.0, std::nullopt};
  BetaSpec partisan_fraction{3.0, 3.0, std::nullopt};
  double partisan_loyalty = 0.7;
  BetaSpec swing_prob{0.5, 3.0, std::nullopt};
  std::uint64_t seed = 0;
  std::size_t replicates = 1;
  ScreenedCandidate screened = ScreenedCandidate::kA;
  std::vector<std::string> laws;  // law codes for conformance experiments

  void validate() const;
  static VotingModelConfig from_keyvalue(const KeyValueFile& file);
};

/// Raw per-unit counts of one model run.
struct HmpmSample {
  std::vector<std::uint64_t> turnout;
  std::vector<std::uint64_t> votes_a;
  std::vector<std::uint64_t> votes_b;

  /// Column of nonzero counts; zero-vote units go to excluded_count.
  DatasetColumn column_a() const;
  DatasetColumn column_b() const;
};

HmpmSample sample_hmpm(const VotingModelConfig& config, std::size_t replicate = 0);

/// Per-replicate screening outcomes for one law.
struct ReplicateSeries {
  std::string law;
  std::vector<double> p_values;
  std::vector<double> posteriors;
  std::size_t failures = 0;  // replicates with nothing to analyze
};

struct ExperimentReport {
  std::vector<TestReport> pooled;          // one per law, over all replicates' counts
  std::vector<ReplicateSeries> replicates; // one per law
};

/// Run `config.replicates` model runs, screen the pooled counts of the
/// screened candidate(s) against each law, and keep per-replicate results.
ExperimentReport conformance_experiment(const VotingModelConfig& config,
                                        const std::vector<DigitDistribution>& laws,
                                        const HypothesisPrior& prior = {});

/// The screened column(s) of a sample, merged into one column.
DatasetColumn screened_column(const HmpmSample& sample, ScreenedCandidate which);

}  // namespace nbscreen
