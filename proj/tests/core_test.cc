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

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "qif/error.hpp"
#include "qif/numeric.hpp"
#include "qif/ops.hpp"
#include "qif/types.hpp"

namespace {

using qif::Channel;
using qif::Distribution;
using qif::InvalidArgument;
using qif::InvalidChannel;
using qif::Matrix;
using qif::Rational;
using qif::make_rational;

Rational rat(long num, unsigned long den = 1) { return make_rational(num, den); }

// Rows given as integer numerators over one denominator, e.g. {{1,1},{0,2}}/2.
Channel<Rational> rational_channel(const std::vector<std::string>& rows,
                                   const std::vector<std::string>& cols,
                                   const std::vector<std::vector<long>>& numerators,
                                   unsigned long denominator) {
  Matrix<Rational> entries(numerators.size(), cols.size());
  for (std::size_t i = 0; i < numerators.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      entries.at(i, j) = rat(numerators[i][j], denominator);
    }
  }
  return qif::validate_channel<Rational>(rows, cols, std::move(entries));
}

oracles::Mat to_plain(const Channel<Rational>& channel) {
  oracles::Mat plain(channel.rows(), std::vector<oracles::Rat>(channel.cols()));
  for (std::size_t i = 0; i < channel.rows(); ++i) {
    for (std::size_t j = 0; j < channel.cols(); ++j) {
      plain[i][j] = channel.entries.at(i, j);
    }
  }
  return plain;
}

TEST(NumericTest, ParsesFractionsAndDecimalsExactly) {
  EXPECT_EQ(qif::rational_from_string("3/4"), rat(3, 4));
  EXPECT_EQ(qif::rational_from_string("-1/2"), rat(-1, 2));
  EXPECT_EQ(qif::rational_from_string("0.25"), rat(1, 4));
  EXPECT_EQ(qif::rational_from_string("0.05"), rat(1, 20));
  EXPECT_EQ(qif::rational_from_string("1e-3"), rat(1, 1000));
  EXPECT_EQ(qif::rational_from_string("2.5e2"), rat(250));
  EXPECT_EQ(qif::rational_from_string(" 7 "), rat(7));
  EXPECT_EQ(qif::rational_from_string("2/4"), rat(1, 2));  // canonicalized
}

TEST(NumericTest, RejectsMalformedNumbers) {
  EXPECT_THROW(qif::rational_from_string(""), InvalidArgument);
  EXPECT_THROW(qif::rational_from_string("abc"), InvalidArgument);
  EXPECT_THROW(qif::rational_from_string("1/0"), InvalidArgument);
  EXPECT_THROW(qif::rational_from_string("1.2.3"), InvalidArgument);
  EXPECT_THROW(qif::rational_from_string("1e"), InvalidArgument);
  EXPECT_THROW(qif::rational_from_string("0x10"), InvalidArgument);
  EXPECT_THROW(qif::double_from_string("12,5"), InvalidArgument);
}

TEST(NumericTest, Log10OfBigIntegers) {
  qif::BigInt million;
  mpz_ui_pow_ui(million.get_mpz_t(), 10, 6);
  EXPECT_NEAR(qif::log10_value(million), 6.0, 1e-12);
  // 2^500 - 501: the 501 offset is below double resolution at this scale,
  // so 500*log10(2) is an independent reference.
  qif::BigInt big;
  mpz_ui_pow_ui(big.get_mpz_t(), 2, 500);
  big -= 501;
  EXPECT_NEAR(qif::log10_value(big), 500.0 * std::log10(2.0), 1e-9);
  EXPECT_THROW(qif::log10_value(qif::BigInt(0)), InvalidArgument);
}

TEST(NumericTest, FormattingIsStable) {
  EXPECT_EQ(qif::format_exact(rat(70)), "70");
  EXPECT_EQ(qif::format_exact(rat(349, 5)), "349/5");
  EXPECT_EQ(qif::format_sig6(69.8), "69.8");
  EXPECT_EQ(qif::format_sig6(1.0 / 3.0), "0.333333");
  EXPECT_EQ(qif::format_fixed6(1.8450980400142569), "1.845098");
  EXPECT_EQ(qif::format_fixed6(-1e-15), "0.000000");
  // Doubles round-trip through the exact renderer.
  const double v = 0.1 + 0.2;
  EXPECT_EQ(qif::double_from_string(qif::format_exact(v)), v);
}

TEST(UniformPriorTest, MatchesDefinition) {
  const auto quarter = qif::uniform_prior<Rational>(4);
  ASSERT_EQ(quarter.probs.size(), 4u);
  for (const auto& p : quarter.probs) EXPECT_EQ(p, rat(1, 4));
  EXPECT_EQ(quarter.labels[0], "x1");
  EXPECT_EQ(quarter.labels[3], "x4");

  const auto point = qif::uniform_prior<Rational>(1);
  EXPECT_EQ(point.probs[0], rat(1));

  for (std::size_t n : {1u, 2u, 7u, 350u}) {
    EXPECT_EQ(qif::bayes_vulnerability(qif::uniform_prior<Rational>(n)),
              rat(1, n));
  }
  EXPECT_THROW(qif::uniform_prior<Rational>(0), InvalidArgument);
  EXPECT_THROW(qif::uniform_prior<Rational>(2, {{"a"}}), InvalidArgument);
  EXPECT_THROW(qif::uniform_prior<Rational>(2, {{"a", "a"}}), InvalidArgument);
}

TEST(ValidateChannelTest, AcceptsStochasticMatrices) {
  EXPECT_NO_THROW(rational_channel({"x1", "x2"}, {"y1", "y2"}, {{1, 0}, {0, 1}}, 1));
  EXPECT_NO_THROW(
      rational_channel({"x1"}, {"t1", "t2", "t3"}, {{1, 0, 1}}, 2));  // (1/2, 0, 1/2)
}

TEST(ValidateChannelTest, RejectsBadRows) {
  // Row sums 1.1: rejected in both lanes.
  Matrix<double> bad(1, 2);
  bad.at(0, 0) = 0.5;
  bad.at(0, 1) = 0.6;
  EXPECT_THROW(qif::validate_channel<double>({"x1"}, {"y1", "y2"}, std::move(bad)),
               InvalidChannel);
  EXPECT_THROW(rational_channel({"x1"}, {"y1", "y2"}, {{1, 1}}, 3), InvalidChannel);

  Matrix<double> negative(1, 2);
  negative.at(0, 0) = -0.5;
  negative.at(0, 1) = 1.5;
  try {
    qif::validate_channel<double>({"x1"}, {"y1", "y2"}, std::move(negative));
    FAIL() << "negative entry accepted";
  } catch (const InvalidChannel& e) {
    EXPECT_NE(std::string(e.what()).find("row 0"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("column 0"), std::string::npos);
  }

  Matrix<Rational> empty(0, 0);
  EXPECT_THROW(qif::validate_channel<Rational>({}, {}, std::move(empty)),
               InvalidChannel);
}

TEST(ValidateChannelTest, FloatToleranceIsConfigurable) {
  Matrix<double> near(1, 2);
  near.at(0, 0) = 0.5;
  near.at(0, 1) = 0.5 + 5e-10;  // inside the default 1e-9
  EXPECT_NO_THROW(qif::validate_channel<double>({"x1"}, {"y1", "y2"}, near));

  Matrix<double> off(1, 2);
  off.at(0, 0) = 0.5;
  off.at(0, 1) = 0.5 + 5e-8;
  EXPECT_THROW(qif::validate_channel<double>({"x1"}, {"y1", "y2"}, off),
               InvalidChannel);
  EXPECT_NO_THROW(qif::validate_channel<double>({"x1"}, {"y1", "y2"}, off, 1e-6));
}

TEST(JointTest, MatchesDirectProduct) {
  const auto identity =
      rational_channel({"x1", "x2"}, {"y1", "y2"}, {{1, 0}, {0, 1}}, 1);
  const auto j = qif::joint(qif::uniform_prior<Rational>(2, identity.row_labels),
                            identity);
  EXPECT_EQ(j.entries.at(0, 0), rat(1, 2));
  EXPECT_EQ(j.entries.at(0, 1), rat(0));
  EXPECT_EQ(j.entries.at(1, 1), rat(1, 2));

  // Point prior keeps only the first channel row.
  const auto c = rational_channel({"x1", "x2"}, {"y1", "y2"}, {{1, 1}, {0, 2}}, 2);
  const Distribution<Rational> point =
      qif::make_distribution<Rational>({"x1", "x2"}, {rat(1), rat(0)});
  const auto jp = qif::joint(point, c);
  EXPECT_EQ(jp.entries.at(0, 0), rat(1, 2));
  EXPECT_EQ(jp.entries.at(0, 1), rat(1, 2));
  EXPECT_EQ(jp.entries.at(1, 0), rat(0));
  EXPECT_EQ(jp.entries.at(1, 1), rat(0));

  // Uniform over 3 users, k=2 interest rows: every nonzero cell is 1/6.
  const auto topics = rational_channel({"x1", "x2", "x3"}, {"t1", "t2", "t3"},
                                       {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}, 2);
  const auto jt =
      qif::joint(qif::uniform_prior<Rational>(3, topics.row_labels), topics);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j2 = 0; j2 < 3; ++j2) {
      if (jt.entries.at(i, j2) != rat(0)) EXPECT_EQ(jt.entries.at(i, j2), rat(1, 6));
    }
  }

  const Distribution<Rational> mislabeled =
      qif::make_distribution<Rational>({"a", "b"}, {rat(1, 2), rat(1, 2)});
  EXPECT_THROW(qif::joint(mislabeled, identity), InvalidArgument);
}

TEST(HyperTest, IdentityLeaksEverything) {
  const auto identity =
      rational_channel({"x1", "x2"}, {"y1", "y2"}, {{1, 0}, {0, 1}}, 1);
  const Distribution<Rational> prior =
      qif::make_distribution<Rational>({"x1", "x2"}, {rat(1, 4), rat(3, 4)});
  const auto h = qif::hyper(prior, identity);
  ASSERT_EQ(h.inners.size(), 2u);
  EXPECT_EQ(h.outer.probs, prior.probs);
  EXPECT_EQ(h.inners[0].probs[0], rat(1));
  EXPECT_EQ(h.inners[1].probs[1], rat(1));
}

TEST(HyperTest, NullChannelLeaksNothing) {
  const auto null_channel = rational_channel({"x1", "x2", "x3"}, {"y"},
                                             {{1}, {1}, {1}}, 1);
  const Distribution<Rational> prior = qif::make_distribution<Rational>(
      {"x1", "x2", "x3"}, {rat(1, 2), rat(1, 3), rat(1, 6)});
  const auto h = qif::hyper(prior, null_channel);
  ASSERT_EQ(h.inners.size(), 1u);
  EXPECT_EQ(h.outer.probs[0], rat(1));
  EXPECT_EQ(h.inners[0].probs, prior.probs);
}

TEST(HyperTest, DeterministicBlocksGiveUniformInners) {
  // One output hit by user 1, the other by users 2..4: outer (1/4, 3/4).
  const auto blocks = rational_channel({"x1", "x2", "x3", "x4"}, {"y1", "y2"},
                                       {{1, 0}, {0, 1}, {0, 1}, {0, 1}}, 1);
  const auto h =
      qif::hyper(qif::uniform_prior<Rational>(4, blocks.row_labels), blocks);
  ASSERT_EQ(h.inners.size(), 2u);
  EXPECT_EQ(h.outer.probs[0], rat(1, 4));
  EXPECT_EQ(h.outer.probs[1], rat(3, 4));
  EXPECT_EQ(h.inners[0].probs[0], rat(1));
  for (std::size_t x = 1; x < 4; ++x) EXPECT_EQ(h.inners[1].probs[x], rat(1, 3));
}

TEST(HyperTest, DropsZeroMassOutputs) {
  const auto c = rational_channel({"x1", "x2"}, {"y1", "y2", "y3"},
                                  {{2, 0, 0}, {0, 2, 0}}, 2);
  const auto h = qif::hyper(qif::uniform_prior<Rational>(2, c.row_labels), c);
  ASSERT_EQ(h.inners.size(), 2u);
  EXPECT_EQ(h.outer.labels, (std::vector<std::string>{"y1", "y2"}));
}

// Random rational instances; the mixture property and the expected-inner
// identity must hold with zero tolerance. Mirrors the brute-force oracle.
TEST(HyperTest, MixtureAndExpectedInnerProperties) {
  std::mt19937_64 gen(20260821u);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + gen() % 10;
    const std::size_t m = 1 + gen() % 10;

    std::vector<long> weights(n);
    long total = 0;
    for (auto& w : weights) {
      w = static_cast<long>(gen() % 10);
      total += w;
    }
    if (total == 0) {
      weights[0] = 1;
      total = 1;
    }
    std::vector<std::string> labels;
    std::vector<Rational> probs;
    for (std::size_t x = 0; x < n; ++x) {
      labels.push_back("x" + std::to_string(x + 1));
      probs.push_back(rat(weights[x], static_cast<unsigned long>(total)));
    }
    const auto prior = qif::make_distribution<Rational>(labels, probs);

    Matrix<Rational> entries(n, m);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<long> row(m);
      long row_total = 0;
      for (auto& w : row) {
        w = static_cast<long>(gen() % 5);
        row_total += w;
      }
      if (row_total == 0) {
        row[gen() % m] = 1;
        row_total = 1;
      }
      for (std::size_t j = 0; j < m; ++j) {
        entries.at(i, j) = rat(row[j], static_cast<unsigned long>(row_total));
      }
    }
    std::vector<std::string> cols;
    for (std::size_t j = 0; j < m; ++j) cols.push_back("y" + std::to_string(j + 1));
    const auto channel = qif::validate_channel<Rational>(labels, cols, entries);

    const auto h = qif::hyper(prior, channel);
    for (std::size_t x = 0; x < n; ++x) {
      Rational mixed = 0;
      for (std::size_t y = 0; y < h.inners.size(); ++y) {
        mixed += h.outer.probs[y] * h.inners[y].probs[x];
      }
      ASSERT_EQ(mixed, prior.probs[x]) << "trial " << trial;
    }

    Rational expected_inner = 0;
    for (std::size_t y = 0; y < h.inners.size(); ++y) {
      expected_inner += h.outer.probs[y] * qif::bayes_vulnerability(h.inners[y]);
    }
    const Rational posterior = qif::posterior_bayes_vulnerability(prior, channel);
    ASSERT_EQ(expected_inner, posterior) << "trial " << trial;

    const auto brute =
        oracles::brute_posterior_vulnerability(prior.probs, to_plain(channel));
    ASSERT_EQ(posterior, brute) << "trial " << trial;
  }
}

TEST(BayesVulnerabilityTest, TakesTheMax) {
  EXPECT_EQ(qif::bayes_vulnerability(qif::make_distribution<Rational>(
                {"a", "b", "c"}, {rat(1, 5), rat(3, 10), rat(1, 2)})),
            rat(1, 2));
  EXPECT_EQ(qif::bayes_vulnerability(
                qif::make_distribution<Rational>({"a", "b"}, {rat(0), rat(1)})),
            rat(1));
  const auto d = qif::make_distribution<double>({"a", "b", "c"}, {0.2, 0.3, 0.5});
  EXPECT_DOUBLE_EQ(qif::bayes_vulnerability(d), 0.5);
}

TEST(PosteriorTest, IdentityAndNullChannels) {
  const auto identity = rational_channel(
      {"x1", "x2", "x3"}, {"y1", "y2", "y3"}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 1);
  EXPECT_EQ(qif::posterior_bayes_vulnerability(
                qif::uniform_prior<Rational>(3, identity.row_labels), identity),
            rat(1));

  const auto null_channel = rational_channel({"x1", "x2", "x3"}, {"y"},
                                             {{1}, {1}, {1}}, 1);
  const Distribution<Rational> skewed = qif::make_distribution<Rational>(
      {"x1", "x2", "x3"}, {rat(1, 2), rat(1, 3), rat(1, 6)});
  EXPECT_EQ(qif::posterior_bayes_vulnerability(skewed, null_channel),
            qif::bayes_vulnerability(skewed));
}

TEST(PosteriorTest, SixUserTopicsInstanceIsOneThird) {
  // Six users, every 2-subset of four topics: M=4, k=2, so M/(kN) = 1/3.
  const auto channel = rational_channel(
      {"x1", "x2", "x3", "x4", "x5", "x6"}, {"t1", "t2", "t3", "t4"},
      {{1, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 0, 1},
       {0, 0, 1, 1}},
      2);
  const auto prior = qif::uniform_prior<Rational>(6, channel.row_labels);
  EXPECT_EQ(qif::posterior_bayes_vulnerability(prior, channel), rat(1, 3));
  EXPECT_EQ(qif::multiplicative_leakage(prior, channel), rat(2));
  EXPECT_EQ(qif::additive_leakage(prior, channel), rat(1, 6));
  EXPECT_EQ(oracles::brute_posterior_vulnerability(prior.probs, to_plain(channel)),
            rat(1, 3));
}

TEST(DeterministicShortcutTest, CountsRealizedColumns) {
  const auto identity = rational_channel(
      {"x1", "x2", "x3", "x4", "x5"},
      {"y1", "y2", "y3", "y4", "y5"},
      {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0},
       {0, 0, 0, 0, 1}},
      1);
  EXPECT_EQ(qif::posterior_bayes_vulnerability_deterministic_uniform(identity), rat(1));

  const auto funnel = rational_channel({"x1", "x2", "x3", "x4"}, {"y", "unused"},
                                       {{1, 0}, {1, 0}, {1, 0}, {1, 0}}, 1);
  EXPECT_EQ(qif::posterior_bayes_vulnerability_deterministic_uniform(funnel),
            rat(1, 4));

  const auto soft = rational_channel({"x1"}, {"y1", "y2"}, {{1, 1}}, 2);
  EXPECT_THROW(qif::posterior_bayes_vulnerability_deterministic_uniform(soft),
               InvalidArgument);
}

// The realized-column shortcut and the generic column-max sum must agree
// exactly on random deterministic channels under uniform priors.
TEST(DeterministicShortcutTest, AgreesWithColumnMaxOnRandomChannels) {
  std::mt19937_64 gen(424242u);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + gen() % 12;
    const std::size_t m = 1 + gen() % 12;
    Matrix<Rational> entries(n, m);
    for (std::size_t i = 0; i < n; ++i) entries.at(i, gen() % m) = rat(1);
    std::vector<std::string> rows, cols;
    for (std::size_t i = 1; i <= n; ++i) rows.push_back("x" + std::to_string(i));
    for (std::size_t j = 1; j <= m; ++j) cols.push_back("y" + std::to_string(j));
    const auto channel = qif::validate_channel<Rational>(rows, cols, entries);

    const auto shortcut =
        qif::posterior_bayes_vulnerability_deterministic_uniform(channel);
    const auto full = qif::posterior_bayes_vulnerability(
        qif::uniform_prior<Rational>(n, channel.row_labels), channel);
    ASSERT_EQ(shortcut, full) << "trial " << trial;
  }
}

TEST(LeakageTest, BoundsAndMonotonicity) {
  std::mt19937_64 gen(777u);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + gen() % 8;
    const std::size_t m = 1 + gen() % 8;
    Matrix<Rational> entries(n, m);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<long> row(m);
      long total = 0;
      for (auto& w : row) {
        w = static_cast<long>(gen() % 4);
        total += w;
      }
      if (total == 0) {
        row[gen() % m] = 1;
        total = 1;
      }
      for (std::size_t j = 0; j < m; ++j) {
        entries.at(i, j) = rat(row[j], static_cast<unsigned long>(total));
      }
    }
    std::vector<std::string> rows, cols;
    for (std::size_t i = 1; i <= n; ++i) rows.push_back("x" + std::to_string(i));
    for (std::size_t j = 1; j <= m; ++j) cols.push_back("y" + std::to_string(j));
    const auto channel = qif::validate_channel<Rational>(rows, cols, entries);
    const auto prior = qif::uniform_prior<Rational>(n, channel.row_labels);

    const Rational posterior = qif::posterior_bayes_vulnerability(prior, channel);
    const Rational leak = qif::multiplicative_leakage(prior, channel);
    ASSERT_GE(posterior, qif::bayes_vulnerability(prior));
    ASSERT_GE(leak, rat(1));
    ASSERT_LE(leak, rat(static_cast<long>(std::min(n, m))));
    ASSERT_GE(qif::additive_leakage(prior, channel), rat(0));
  }
}

TEST(LeakageTest, PermutingSecretsChangesNothing) {
  const auto channel = rational_channel({"x1", "x2", "x3"}, {"t1", "t2", "t3"},
                                        {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}, 2);
  const auto prior = qif::make_distribution<Rational>(
      {"x1", "x2", "x3"}, {rat(1, 2), rat(1, 3), rat(1, 6)});

  const auto reversed = rational_channel({"x3", "x2", "x1"}, {"t1", "t2", "t3"},
                                         {{1, 0, 1}, {0, 1, 1}, {1, 1, 0}}, 2);
  const auto reversed_prior = qif::make_distribution<Rational>(
      {"x3", "x2", "x1"}, {rat(1, 6), rat(1, 3), rat(1, 2)});

  EXPECT_EQ(qif::posterior_bayes_vulnerability(prior, channel),
            qif::posterior_bayes_vulnerability(reversed_prior, reversed));
  EXPECT_EQ(qif::multiplicative_leakage(prior, channel),
            qif::multiplicative_leakage(reversed_prior, reversed));
  EXPECT_EQ(qif::additive_leakage(prior, channel),
            qif::additive_leakage(reversed_prior, reversed));
}

TEST(ConvexCombinationTest, DegenerateWeights) {
  const auto a = rational_channel({"x1", "x2"}, {"y1", "y2"}, {{1, 0}, {0, 1}}, 1);
  const auto b = rational_channel({"x1", "x2"}, {"y1", "y2"}, {{1, 1}, {1, 1}}, 2);

  const auto keep_first = qif::convex_combination<Rational>({a, b}, {rat(1), rat(0)});
  EXPECT_EQ(keep_first.entries, a.entries);

  const auto same = qif::convex_combination<Rational>({b, b}, {rat(1, 3), rat(2, 3)});
  EXPECT_EQ(same.entries, b.entries);
}

TEST(ConvexCombinationTest, TopicsNoiseArithmetic) {
  // k=2 over a 10-topic taxonomy mixed with 5% uniform noise: nonzero base
  // entries become 0.95/2 + 0.05/10 = 12/25, zeros become 1/200.
  std::vector<std::string> cols;
  for (int t = 1; t <= 10; ++t) cols.push_back("t" + std::to_string(t));
  Matrix<Rational> base(1, 10), flat(1, 10);
  base.at(0, 0) = rat(1, 2);
  base.at(0, 1) = rat(1, 2);
  for (std::size_t j = 0; j < 10; ++j) flat.at(0, j) = rat(1, 10);
  const auto c = qif::validate_channel<Rational>({"x1"}, cols, base);
  const auto u = qif::validate_channel<Rational>({"x1"}, cols, flat);

  const auto mixed =
      qif::convex_combination<Rational>({c, u}, {rat(19, 20), rat(1, 20)});
  EXPECT_EQ(mixed.entries.at(0, 0), rat(12, 25));   // 0.48
  EXPECT_EQ(mixed.entries.at(0, 5), rat(1, 200));   // 0.005
  Rational row_sum = 0;
  for (std::size_t j = 0; j < 10; ++j) row_sum += mixed.entries.at(0, j);
  EXPECT_EQ(row_sum, rat(1));
}

TEST(ConvexCombinationTest, RejectsBadInput) {
  const auto a = rational_channel({"x1"}, {"y1", "y2"}, {{1, 1}}, 2);
  const auto renamed = rational_channel({"x1"}, {"z1", "z2"}, {{1, 1}}, 2);
  EXPECT_THROW(qif::convex_combination<Rational>({a, renamed}, {rat(1, 2), rat(1, 2)}),
               InvalidArgument);
  EXPECT_THROW(qif::convex_combination<Rational>({a, a}, {rat(1, 2), rat(1, 3)}),
               InvalidArgument);
  EXPECT_THROW(qif::convex_combination<Rational>({a, a}, {rat(3, 2), rat(-1, 2)}),
               InvalidArgument);
  EXPECT_THROW(qif::convex_combination<Rational>({}, {}), InvalidArgument);
}

TEST(LinfDistanceTest, AlignsColumnsByLabel) {
  const auto a = rational_channel({"x1"}, {"t1", "t2"}, {{1, 1}}, 2);
  const auto b = rational_channel({"x1"}, {"t2", "t3"}, {{1, 1}}, 2);
  // t1 and t3 are each missing on one side, so the distance is 1/2.
  EXPECT_EQ(qif::linf_distance(a, b), rat(1, 2));
  EXPECT_EQ(qif::linf_distance(a, a), rat(0));

  const auto other_rows = rational_channel({"z1"}, {"t1", "t2"}, {{1, 1}}, 2);
  EXPECT_THROW(qif::linf_distance(a, other_rows), InvalidArgument);
}

TEST(LinfDistanceTest, FloatFastPathMatchesGenericPath) {
  std::mt19937_64 gen(99u);
  Matrix<double> ma(3, 7), mb(3, 7);
  for (std::size_t i = 0; i < 3; ++i) {
    double sa = 0, sb = 0;
    for (std::size_t j = 0; j < 7; ++j) {
      ma.at(i, j) = static_cast<double>(gen() % 1000) + 1;
      mb.at(i, j) = static_cast<double>(gen() % 1000) + 1;
      sa += ma.at(i, j);
      sb += mb.at(i, j);
    }
    for (std::size_t j = 0; j < 7; ++j) {
      ma.at(i, j) /= sa;
      mb.at(i, j) /= sb;
    }
  }
  std::vector<std::string> rows{"x1", "x2", "x3"};
  std::vector<std::string> cols{"a", "b", "c", "d", "e", "f", "g"};
  const auto ca = qif::validate_channel<double>(rows, cols, ma, 1e-6);
  const auto cb = qif::validate_channel<double>(rows, cols, mb, 1e-6);

  const double fast = qif::linf_distance(ca, cb);
  double slow = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 7; ++j) {
      slow = std::max(slow, std::fabs(ma.at(i, j) - mb.at(i, j)));
    }
  }
  EXPECT_EQ(fast, slow);
}

TEST(FloatLaneTest, TracksRationalLaneClosely) {
  const auto exact = rational_channel(
      {"x1", "x2", "x3", "x4", "x5", "x6"}, {"t1", "t2", "t3", "t4"},
      {{1, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 0, 1},
       {0, 0, 1, 1}},
      2);
  Matrix<double> approx(6, 4);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      approx.at(i, j) = exact.entries.at(i, j).get_d();
    }
  }
  const auto channel =
      qif::validate_channel<double>(exact.row_labels, exact.col_labels, approx);
  const auto prior = qif::uniform_prior<double>(6, channel.row_labels);
  EXPECT_NEAR(qif::posterior_bayes_vulnerability(prior, channel), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(qif::multiplicative_leakage(prior, channel), 2.0, 1e-15);
  const auto h = qif::hyper(prior, channel);
  EXPECT_EQ(h.inners.size(), 4u);
}

}  // namespace
