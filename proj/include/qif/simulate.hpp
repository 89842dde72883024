//
// Copyright 2026 The topics-qif Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Monte-Carlo simulation of the top-k interest mechanism over synthetic
// populations. Every random draw in this module flows through SplitMix64
// streams derived from a single user-supplied seed, so runs reproduce
// bit-for-bit across platforms and across thread schedules.

#ifndef QIF_SIMULATE_HPP_
#define QIF_SIMULATE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "qif/models.hpp"
#include "qif/numeric.hpp"
#include "qif/types.hpp"

namespace qif::sim {

// Algorithm identifier recorded in logs and reports. Bump the suffix if the
// generator or the stream-derivation chain ever changes.
inline constexpr char kRngAlgorithm[] = "splitmix64-v1";

// Stafford/Steele 64-bit finalizer used both as the SplitMix64 output mix and
// as the stream-derivation hash.
std::uint64_t mix64(std::uint64_t x);

// Derives an independent stream seed from (seed, tag, a, b). Each simulation
// stage owns a tag; a and b carry per-user / per-epoch / per-trial indices so
// units of work can run in any order without changing results.
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t a,
                            std::uint64_t b);

inline constexpr std::uint64_t kStreamDomainMap = 1;
inline constexpr std::uint64_t kStreamVisits = 2;
inline constexpr std::uint64_t kStreamEmpirical = 3;
inline constexpr std::uint64_t kStreamReid = 4;
inline constexpr std::uint64_t kStreamObserve = 5;

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  // Unbiased draw from {0, .., bound-1} by rejection.
  std::uint64_t next_below(std::uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit();

 private:
  std::uint64_t state_;
};

struct Taxonomy {
  std::size_t size = 0;  // topics are t1 .. t{size}
};

// domain_topics[d-1] is the topic id assigned to domain d.
using DomainTopicMap = std::vector<int>;

using models::TopKProfile;
using models::TopKProfileSet;

struct UserProfile {
  std::size_t user_id = 0;  // 1-based
  // One entry per epoch: domain id -> visit count.
  std::vector<std::map<int, std::uint64_t>> visits;
  // One entry per epoch: the k highest-interest topics.
  std::vector<TopKProfile> top_topics;
};

struct Population {
  DomainTopicMap domain_topics;
  std::vector<UserProfile> users;
};

struct Observation {
  std::size_t user_id = 0;
  std::size_t epoch = 0;  // 1-based in logs
  int topic = 0;
};

struct ObservationLog {
  std::string rng_algorithm = kRngAlgorithm;
  std::uint64_t seed = 0;
  std::vector<Observation> records;
};

// Builds a synthetic population: assigns each domain a uniform random topic,
// draws per-user per-epoch visit counts from a Zipf(1.0) popularity model over
// a per-user random domain ranking, and recomputes top-k sets. Users whose
// visits span fewer than k topics are resampled up to a bounded retry count.
Population synthesize_population(const models::ModelParams& params,
                                 std::size_t n_domains, std::uint64_t seed);

// Aggregates visit counts per topic and returns the k highest-count topics,
// ties broken by ascending topic id.
TopKProfile compute_top_k(const std::map<int, std::uint64_t>& visit_counts,
                          const DomainTopicMap& domain_topics, std::size_t k);

// One API response: with probability 1-p_noise a uniform member of topk, with
// probability p_noise a uniform member of the full taxonomy.
int sample_observed_topic(const TopKProfile& topk, const Taxonomy& taxonomy,
                          const Rational& p_noise, SplitMix64& rng);

// Per-user normalized histograms of observed topics for one epoch. Rows are
// x{user_id} in profile order, columns span the full taxonomy, and entries are
// exact counts over samples_per_user, so rows sum to 1 exactly.
Channel<Rational> estimate_empirical_channel(const std::vector<UserProfile>& profiles,
                                             const Taxonomy& taxonomy,
                                             const Rational& p_noise,
                                             std::uint64_t samples_per_user,
                                             std::uint64_t seed, std::size_t epoch = 0);

struct ReidResult {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double rate() const;
  double standard_error() const;
};

// Each trial picks a user uniformly, samples one observed topic, and lets the
// adversary guess the user maximizing the analytic posterior (ties broken by
// ascending user id). The expected success rate equals the posterior Bayes
// vulnerability of the analytic channel under the uniform prior.
ReidResult reidentification_experiment(const std::vector<UserProfile>& profiles,
                                       const Taxonomy& taxonomy, const Rational& p_noise,
                                       std::uint64_t trials, std::uint64_t seed,
                                       std::size_t epoch = 0);

// One observed topic per user per epoch.
ObservationLog collect_observations(const std::vector<UserProfile>& profiles,
                                    const Taxonomy& taxonomy, const Rational& p_noise,
                                    std::uint64_t seed);

struct SimConfig {
  std::size_t users = 0;
  std::size_t domains = 0;
  std::size_t taxonomy_size = 0;
  std::size_t k = 0;
  Rational noise_p;
  std::size_t epochs = 1;
  std::uint64_t seed = 0;
  std::uint64_t samples_per_user = 0;
  std::uint64_t trials = 0;

  void validate() const;
  models::ModelParams to_model_params() const;
};

// Parses the simulation config object. Exactly the documented keys are
// accepted; unknown or missing keys are rejected. noise_p may be a JSON
// number or a string such as "0.05" or "1/20" and is kept exact.
SimConfig sim_config_from_json(const nlohmann::json& doc);

// Full pipeline: synthesize a population, then per epoch compare the analytic
// channel (with taxonomy noise applied when noise_p > 0) against the
// empirical channel and the re-identification experiment. The report carries
// the RNG algorithm id and seed, and is byte-identical across reruns.
nlohmann::json run_simulation(const SimConfig& config);

namespace detail {

// Precomputed noise gate: a single 64-bit draw decides noise vs top-k.
// threshold = floor(p * 2^64); always is the p == 1 case.
struct NoiseGate {
  bool always = false;
  std::uint64_t threshold = 0;
};

NoiseGate make_noise_gate(const Rational& p_noise);

int draw_topic(const std::vector<int>& topk_sorted, std::size_t taxonomy_size,
               const NoiseGate& gate, SplitMix64& rng);

}  // namespace detail

}  // namespace qif::sim

#endif  // QIF_SIMULATE_HPP_
