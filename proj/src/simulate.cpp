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

#include "qif/simulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>
#include <utility>

#include "qif/error.hpp"
#include "qif/ops.hpp"

namespace qif::sim {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t a,
                            std::uint64_t b) {
  std::uint64_t s = mix64(seed + 0x9e3779b97f4a7c15ull * (tag + 1));
  s = mix64(s ^ (a + 0x9e3779b97f4a7c15ull));
  s = mix64(s ^ (b + 0x632be59bd9b4e019ull));
  return s;
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next_below(std::uint64_t bound) {
  if (bound == 0) throw InvalidArgument("next_below needs a positive bound");
  // Reject draws below 2^64 mod bound so the remainder is unbiased.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

double SplitMix64::next_unit() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

namespace detail {

NoiseGate make_noise_gate(const Rational& p_noise) {
  if (p_noise < 0 || p_noise > 1) {
    throw InvalidArgument("noise probability must be in [0, 1]");
  }
  NoiseGate gate;
  if (p_noise == 1) {
    gate.always = true;
    return gate;
  }
  BigInt scaled = p_noise.get_num() << 64;
  scaled /= p_noise.get_den();  // floor since both operands are non-negative
  gate.threshold = mpz_get_ui(scaled.get_mpz_t());
  return gate;
}

int draw_topic(const std::vector<int>& topk_sorted, std::size_t taxonomy_size,
               const NoiseGate& gate, SplitMix64& rng) {
  // The gate consumes one draw unconditionally so the stream layout does not
  // depend on the noise probability.
  const std::uint64_t gate_draw = rng.next();
  if (gate.always || gate_draw < gate.threshold) {
    return static_cast<int>(rng.next_below(taxonomy_size)) + 1;
  }
  return topk_sorted[rng.next_below(topk_sorted.size())];
}

}  // namespace detail

namespace {

constexpr int kMaxSpanAttempts = 64;

std::vector<int> sorted_topics(const TopKProfile& topk) {
  return std::vector<int>(topk.begin(), topk.end());
}

void check_topics_in_taxonomy(const TopKProfile& topk, const Taxonomy& taxonomy) {
  for (int t : topk) {
    if (t < 1 || static_cast<std::size_t>(t) > taxonomy.size) {
      throw InvalidArgument("topic " + std::to_string(t) +
                            " outside taxonomy of size " + std::to_string(taxonomy.size));
    }
  }
}

int topic_of_label(const std::string& label) {
  return std::stoi(label.substr(1));  // labels are "t<id>"
}

}  // namespace

Population synthesize_population(const models::ModelParams& params,
                                 std::size_t n_domains, std::uint64_t seed) {
  params.validate();
  if (n_domains < params.k) {
    throw InvalidArgument("need at least k=" + std::to_string(params.k) +
                          " domains, got " + std::to_string(n_domains));
  }

  Population pop;
  pop.domain_topics.resize(n_domains);
  SplitMix64 map_rng(derive_stream(seed, kStreamDomainMap, 0, 0));
  std::set<int> map_span;
  for (std::size_t d = 0; d < n_domains; ++d) {
    pop.domain_topics[d] = static_cast<int>(map_rng.next_below(params.taxonomy_size)) + 1;
    map_span.insert(pop.domain_topics[d]);
  }
  if (map_span.size() < params.k) {
    throw GenerationFailure("domain-topic map spans only " +
                            std::to_string(map_span.size()) + " distinct topics, need " +
                            std::to_string(params.k) +
                            "; add domains or pick another seed");
  }

  // Zipf(1.0) popularity over domain ranks: weight 1/r, cumulative H_r.
  std::vector<double> harmonic(n_domains + 1, 0.0);
  for (std::size_t r = 1; r <= n_domains; ++r) {
    harmonic[r] = harmonic[r - 1] + 1.0 / static_cast<double>(r);
  }
  const double total_weight = harmonic[n_domains];
  const std::uint64_t n_visits = 40 + 10 * static_cast<std::uint64_t>(params.k);

  pop.users.resize(params.n_users);
  for (std::size_t u = 0; u < params.n_users; ++u) {
    UserProfile& profile = pop.users[u];
    profile.user_id = u + 1;
    profile.visits.resize(params.epochs);
    profile.top_topics.resize(params.epochs);

    for (std::size_t e = 0; e < params.epochs; ++e) {
      SplitMix64 rng(derive_stream(seed, kStreamVisits, profile.user_id, e));
      bool accepted = false;
      for (int attempt = 0; attempt < kMaxSpanAttempts && !accepted; ++attempt) {
        // Personal popularity ranking: Fisher-Yates shuffle of the domains.
        std::vector<std::size_t> ranking(n_domains);
        std::iota(ranking.begin(), ranking.end(), 0);
        for (std::size_t i = n_domains - 1; i > 0; --i) {
          const std::size_t j = rng.next_below(i + 1);
          std::swap(ranking[i], ranking[j]);
        }

        std::map<int, std::uint64_t> counts;
        for (std::uint64_t v = 0; v < n_visits; ++v) {
          const double u01 = rng.next_unit() * total_weight;
          std::size_t rank = static_cast<std::size_t>(
              std::upper_bound(harmonic.begin() + 1, harmonic.end(), u01) -
              (harmonic.begin() + 1));
          if (rank >= n_domains) rank = n_domains - 1;
          counts[static_cast<int>(ranking[rank]) + 1] += 1;
        }

        std::set<int> span;
        for (const auto& [domain, count] : counts) {
          span.insert(pop.domain_topics[static_cast<std::size_t>(domain) - 1]);
        }
        if (span.size() >= params.k) {
          profile.top_topics[e] = compute_top_k(counts, pop.domain_topics, params.k);
          profile.visits[e] = std::move(counts);
          accepted = true;
        }
      }
      if (!accepted) {
        throw GenerationFailure(
            "user " + user_label(profile.user_id) + " epoch " + std::to_string(e + 1) +
            ": visits span fewer than " + std::to_string(params.k) +
            " distinct topics after " + std::to_string(kMaxSpanAttempts) + " attempts");
      }
    }
  }
  return pop;
}

TopKProfile compute_top_k(const std::map<int, std::uint64_t>& visit_counts,
                          const DomainTopicMap& domain_topics, std::size_t k) {
  if (k == 0) throw InvalidArgument("k must be at least 1");
  std::map<int, std::uint64_t> topic_counts;
  for (const auto& [domain, count] : visit_counts) {
    if (domain < 1 || static_cast<std::size_t>(domain) > domain_topics.size()) {
      throw InvalidArgument("unknown domain id " + std::to_string(domain));
    }
    if (count == 0) continue;
    topic_counts[domain_topics[static_cast<std::size_t>(domain) - 1]] += count;
  }
  if (topic_counts.size() < k) {
    throw InvalidArgument("visits span " + std::to_string(topic_counts.size()) +
                          " distinct topics, need " + std::to_string(k));
  }

  std::vector<std::pair<int, std::uint64_t>> ranked(topic_counts.begin(),
                                                    topic_counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  TopKProfile topk;
  for (std::size_t i = 0; i < k; ++i) topk.insert(ranked[i].first);
  return topk;
}

int sample_observed_topic(const TopKProfile& topk, const Taxonomy& taxonomy,
                          const Rational& p_noise, SplitMix64& rng) {
  if (topk.empty()) throw InvalidArgument("top-k set must be non-empty");
  if (taxonomy.size == 0) throw InvalidArgument("taxonomy must be non-empty");
  check_topics_in_taxonomy(topk, taxonomy);
  const detail::NoiseGate gate = detail::make_noise_gate(p_noise);
  return detail::draw_topic(sorted_topics(topk), taxonomy.size, gate, rng);
}

Channel<Rational> estimate_empirical_channel(const std::vector<UserProfile>& profiles,
                                             const Taxonomy& taxonomy,
                                             const Rational& p_noise,
                                             std::uint64_t samples_per_user,
                                             std::uint64_t seed, std::size_t epoch) {
  if (profiles.empty()) throw InvalidArgument("no user profiles given");
  if (samples_per_user == 0) throw InvalidArgument("samples_per_user must be at least 1");
  if (taxonomy.size == 0) throw InvalidArgument("taxonomy must be non-empty");
  const detail::NoiseGate gate = detail::make_noise_gate(p_noise);

  const std::size_t n = profiles.size();
  std::vector<std::string> rows, cols;
  rows.reserve(n);
  cols.reserve(taxonomy.size);
  for (const auto& profile : profiles) rows.push_back(user_label(profile.user_id));
  for (std::size_t t = 1; t <= taxonomy.size; ++t) cols.push_back(topic_label(t));

  Matrix<Rational> entries(n, taxonomy.size);
  for (std::size_t i = 0; i < n; ++i) {
    if (epoch >= profiles[i].top_topics.size()) {
      throw InvalidArgument("profile of " + rows[i] + " has no epoch " +
                            std::to_string(epoch + 1));
    }
    const TopKProfile& topk = profiles[i].top_topics[epoch];
    if (topk.empty()) throw InvalidArgument("top-k set of " + rows[i] + " is empty");
    check_topics_in_taxonomy(topk, taxonomy);
    const std::vector<int> sorted = sorted_topics(topk);

    std::vector<std::uint64_t> hist(taxonomy.size, 0);
    SplitMix64 rng(derive_stream(seed, kStreamEmpirical, profiles[i].user_id, epoch));
    for (std::uint64_t s = 0; s < samples_per_user; ++s) {
      const int topic = detail::draw_topic(sorted, taxonomy.size, gate, rng);
      hist[static_cast<std::size_t>(topic) - 1] += 1;
    }
    for (std::size_t j = 0; j < taxonomy.size; ++j) {
      entries.at(i, j) = make_rational(BigInt(hist[j]), BigInt(samples_per_user));
    }
  }
  return validate_channel<Rational>(std::move(rows), std::move(cols), std::move(entries));
}

double ReidResult::rate() const {
  if (trials == 0) return 0.0;
  return static_cast<double>(successes) / static_cast<double>(trials);
}

double ReidResult::standard_error() const {
  if (trials == 0) return 0.0;
  const double r = rate();
  return std::sqrt(r * (1.0 - r) / static_cast<double>(trials));
}

ReidResult reidentification_experiment(const std::vector<UserProfile>& profiles,
                                       const Taxonomy& taxonomy, const Rational& p_noise,
                                       std::uint64_t trials, std::uint64_t seed,
                                       std::size_t epoch) {
  if (profiles.empty()) throw InvalidArgument("no user profiles given");
  if (trials == 0) throw InvalidArgument("trials must be at least 1");
  if (taxonomy.size == 0) throw InvalidArgument("taxonomy must be non-empty");

  TopKProfileSet sets;
  sets.reserve(profiles.size());
  for (const auto& profile : profiles) {
    if (epoch >= profile.top_topics.size()) {
      throw InvalidArgument("profile of " + user_label(profile.user_id) +
                            " has no epoch " + std::to_string(epoch + 1));
    }
    sets.push_back(profile.top_topics[epoch]);
  }

  Channel<Rational> analytic = models::build_topics_channel<Rational>(sets, taxonomy.size);
  if (p_noise > 0) {
    analytic = models::apply_taxonomy_noise<Rational>(analytic, taxonomy.size, p_noise);
  }

  // Bayes-optimal deterministic strategy under the uniform prior: for each
  // observable topic guess a user maximizing the channel column, ties broken
  // by ascending user id (row order).
  std::unordered_map<int, std::size_t> best_user;
  best_user.reserve(analytic.cols());
  for (std::size_t j = 0; j < analytic.cols(); ++j) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < analytic.rows(); ++i) {
      if (analytic.entries.at(i, j) > analytic.entries.at(best, j)) best = i;
    }
    best_user[topic_of_label(analytic.col_labels[j])] = best;
  }

  const detail::NoiseGate gate = detail::make_noise_gate(p_noise);
  std::vector<std::vector<int>> sorted;
  sorted.reserve(sets.size());
  for (const auto& topk : sets) sorted.push_back(sorted_topics(topk));

  ReidResult result;
  result.trials = trials;
  const std::uint64_t n = profiles.size();
  for (std::uint64_t t = 0; t < trials; ++t) {
    SplitMix64 rng(derive_stream(seed, kStreamReid, t, epoch));
    const std::uint64_t user = rng.next_below(n);
    const int topic = detail::draw_topic(sorted[user], taxonomy.size, gate, rng);
    if (best_user.at(topic) == user) result.successes += 1;
  }
  return result;
}

ObservationLog collect_observations(const std::vector<UserProfile>& profiles,
                                    const Taxonomy& taxonomy, const Rational& p_noise,
                                    std::uint64_t seed) {
  if (profiles.empty()) throw InvalidArgument("no user profiles given");
  if (taxonomy.size == 0) throw InvalidArgument("taxonomy must be non-empty");
  const std::size_t epochs = profiles.front().top_topics.size();
  for (const auto& profile : profiles) {
    if (profile.top_topics.size() != epochs) {
      throw InvalidArgument("profiles disagree on the number of epochs");
    }
  }

  const detail::NoiseGate gate = detail::make_noise_gate(p_noise);
  ObservationLog log;
  log.seed = seed;
  log.records.reserve(profiles.size() * epochs);
  for (std::size_t e = 0; e < epochs; ++e) {
    for (const auto& profile : profiles) {
      const TopKProfile& topk = profile.top_topics[e];
      if (topk.empty()) {
        throw InvalidArgument("top-k set of " + user_label(profile.user_id) +
                              " is empty");
      }
      check_topics_in_taxonomy(topk, taxonomy);
      SplitMix64 rng(derive_stream(seed, kStreamObserve, profile.user_id, e));
      const int topic = detail::draw_topic(sorted_topics(topk), taxonomy.size, gate, rng);
      log.records.push_back(Observation{profile.user_id, e + 1, topic});
    }
  }
  return log;
}

void SimConfig::validate() const {
  if (users == 0) throw InvalidArgument("users must be at least 1");
  if (taxonomy_size == 0) throw InvalidArgument("taxonomy_size must be at least 1");
  if (k == 0) throw InvalidArgument("k must be at least 1");
  if (k > taxonomy_size) throw InvalidArgument("k cannot exceed the taxonomy size");
  if (domains < k) {
    throw InvalidArgument("need at least k=" + std::to_string(k) + " domains");
  }
  if (noise_p < 0 || noise_p > 1) throw InvalidArgument("noise_p must be in [0, 1]");
  if (epochs == 0) throw InvalidArgument("epochs must be at least 1");
  if (samples_per_user == 0) throw InvalidArgument("samples_per_user must be at least 1");
  if (trials == 0) throw InvalidArgument("trials must be at least 1");
}

models::ModelParams SimConfig::to_model_params() const {
  models::ModelParams params;
  params.n_users = users;
  params.n_contexts = domains;
  params.taxonomy_size = taxonomy_size;
  params.k = k;
  params.noise_p = noise_p;
  params.epochs = epochs;
  return params;
}

namespace {

std::uint64_t json_u64(const nlohmann::json& doc, const char* key) {
  const nlohmann::json& node = doc.at(key);
  if (node.is_number_unsigned()) return node.get<std::uint64_t>();
  if (node.is_number_integer()) {
    const std::int64_t v = node.get<std::int64_t>();
    if (v < 0) {
      throw InvalidArgument(std::string("config key '") + key + "' must be non-negative");
    }
    return static_cast<std::uint64_t>(v);
  }
  throw InvalidArgument(std::string("config key '") + key + "' must be an integer");
}

}  // namespace

SimConfig sim_config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InvalidArgument("config must be a JSON object");
  static constexpr std::array<const char*, 9> kKeys = {
      "users",  "domains", "taxonomy_size",    "k",     "noise_p",
      "epochs", "seed",    "samples_per_user", "trials"};
  for (const auto& item : doc.items()) {
    if (std::find_if(kKeys.begin(), kKeys.end(), [&](const char* k) {
          return item.key() == k;
        }) == kKeys.end()) {
      throw InvalidArgument("unknown config key '" + item.key() + "'");
    }
  }
  for (const char* key : kKeys) {
    if (!doc.contains(key)) {
      throw InvalidArgument(std::string("missing config key '") + key + "'");
    }
  }

  SimConfig config;
  config.users = static_cast<std::size_t>(json_u64(doc, "users"));
  config.domains = static_cast<std::size_t>(json_u64(doc, "domains"));
  config.taxonomy_size = static_cast<std::size_t>(json_u64(doc, "taxonomy_size"));
  config.k = static_cast<std::size_t>(json_u64(doc, "k"));
  config.epochs = static_cast<std::size_t>(json_u64(doc, "epochs"));
  config.seed = json_u64(doc, "seed");
  config.samples_per_user = json_u64(doc, "samples_per_user");
  config.trials = json_u64(doc, "trials");

  const nlohmann::json& noise = doc.at("noise_p");
  std::string text;
  if (noise.is_string()) {
    text = noise.get<std::string>();
  } else if (noise.is_number()) {
    // The shortest round-trip rendering of the JSON literal, parsed exactly.
    text = noise.dump();
  } else {
    throw InvalidArgument("config key 'noise_p' must be a number or string");
  }
  try {
    config.noise_p = rational_from_string(text);
  } catch (const InvalidArgument&) {
    throw InvalidArgument("config key 'noise_p' is not a valid probability: " + text);
  }
  return config;
}

nlohmann::json run_simulation(const SimConfig& config) {
  config.validate();
  const Population pop =
      synthesize_population(config.to_model_params(), config.domains, config.seed);
  const Taxonomy taxonomy{config.taxonomy_size};
  const std::size_t n = pop.users.size();

  nlohmann::json report;
  report["config"] = {{"users", config.users},
                      {"domains", config.domains},
                      {"taxonomy_size", config.taxonomy_size},
                      {"k", config.k},
                      {"noise_p", format_exact(config.noise_p)},
                      {"epochs", config.epochs},
                      {"seed", config.seed},
                      {"samples_per_user", config.samples_per_user},
                      {"trials", config.trials}};
  report["rng_algorithm"] = kRngAlgorithm;
  report["seed"] = config.seed;

  nlohmann::json epochs = nlohmann::json::array();
  for (std::size_t e = 0; e < config.epochs; ++e) {
    TopKProfileSet sets;
    sets.reserve(n);
    for (const auto& user : pop.users) sets.push_back(user.top_topics.at(e));

    Channel<Rational> analytic =
        models::build_topics_channel<Rational>(sets, config.taxonomy_size);
    const std::size_t realized = analytic.cols();
    if (config.noise_p > 0) {
      analytic = models::apply_taxonomy_noise<Rational>(analytic, config.taxonomy_size,
                                                        config.noise_p);
    }
    const Distribution<Rational> prior = uniform_prior<Rational>(n, analytic.row_labels);
    const VulnerabilityReport<Rational> rep = vulnerability_report(prior, analytic);

    const Channel<Rational> empirical =
        estimate_empirical_channel(pop.users, taxonomy, config.noise_p,
                                   config.samples_per_user, config.seed, e);
    const Rational linf = linf_distance(empirical, analytic);
    const ReidResult reid = reidentification_experiment(pop.users, taxonomy,
                                                        config.noise_p, config.trials,
                                                        config.seed, e);

    nlohmann::json entry;
    entry["epoch"] = e + 1;
    entry["realized_topics"] = realized;
    entry["analytic"] = {
        {"prior_vulnerability", format_exact(rep.prior_v)},
        {"prior_vulnerability_decimal", to_double(rep.prior_v)},
        {"posterior_vulnerability", format_exact(rep.posterior_v)},
        {"posterior_vulnerability_decimal", to_double(rep.posterior_v)},
        {"multiplicative_leakage", format_exact(rep.mult_leakage)},
        {"multiplicative_leakage_decimal", to_double(rep.mult_leakage)},
        {"additive_leakage", format_exact(rep.add_leakage)},
        {"additive_leakage_decimal", to_double(rep.add_leakage)},
        {"log10_multiplicative_leakage", rep.log10_mult_leakage}};
    entry["empirical"] = {{"channel_linf_error", to_double(linf)},
                          {"reid_success_rate", reid.rate()},
                          {"reid_standard_error", reid.standard_error()},
                          {"reid_trials", reid.trials},
                          {"samples_per_user", config.samples_per_user},
                          {"mult_leakage_estimate",
                           reid.rate() * static_cast<double>(n)}};
    epochs.push_back(std::move(entry));
  }
  report["epochs"] = std::move(epochs);
  return report;
}

}  // namespace qif::sim
