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

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "qif/csv.hpp"
#include "qif/error.hpp"
#include "qif/models.hpp"
#include "qif/ops.hpp"

namespace {

using qif::Channel;
using qif::InvalidArgument;
using qif::InvalidChannel;
using qif::IoError;
using qif::Matrix;
using qif::Rational;
using qif::make_rational;
namespace csv = qif::csv;

Rational rat(long num, unsigned long den = 1) { return make_rational(num, den); }

std::string message_of(const std::exception& e) { return e.what(); }

TEST(FieldQuotingTest, RoundTripsSpecialCharacters) {
  EXPECT_EQ(csv::quote_field("plain"), "plain");
  EXPECT_EQ(csv::quote_field("{D1,D3}"), "\"{D1,D3}\"");
  EXPECT_EQ(csv::quote_field("say \"hi\""), "\"say \"\"hi\"\"\"");

  EXPECT_EQ(csv::split_record("a,b,c"), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(csv::split_record("\"{D1,D3}\",1"),
            (std::vector<std::string>{"{D1,D3}", "1"}));
  EXPECT_EQ(csv::split_record("\"say \"\"hi\"\"\",2"),
            (std::vector<std::string>{"say \"hi\"", "2"}));
  EXPECT_EQ(csv::split_record(""), (std::vector<std::string>{""}));
  EXPECT_EQ(csv::split_record("a,,b"), (std::vector<std::string>{"a", "", "b"}));
  EXPECT_THROW(csv::split_record("\"unterminated"), InvalidArgument);
}

TEST(ChannelCsvTest, RationalRoundTrip) {
  // History labels carry commas, entries are exact fractions.
  const auto histories = qif::models::saturated_browsing_histories(3);
  const auto channel = qif::models::build_cookies_channel<Rational>(histories);

  std::ostringstream out;
  csv::write_channel(out, channel);
  std::istringstream in(out.str());
  const auto parsed = csv::parse_channel<Rational>(in, "roundtrip");
  EXPECT_EQ(parsed, channel);
  // The header must carry the quoted history labels.
  EXPECT_NE(out.str().find("\"{D1,D2}\""), std::string::npos);
}

TEST(ChannelCsvTest, FloatRoundTripIsExact) {
  // Doubles are written with round-trip precision, so write -> parse is the
  // identity on the bit patterns.
  Matrix<double> entries(2, 3);
  entries.at(0, 0) = 1.0 / 3.0;
  entries.at(0, 1) = 1.0 / 3.0;
  entries.at(0, 2) = 1.0 - 2.0 * (1.0 / 3.0);
  entries.at(1, 0) = 0.1;
  entries.at(1, 1) = 0.2;
  entries.at(1, 2) = 0.7;
  const auto channel = qif::validate_channel<double>(
      {"x1", "x2"}, {"y1", "y2", "y3"}, std::move(entries));

  std::ostringstream out;
  csv::write_channel(out, channel);
  std::istringstream in(out.str());
  const auto parsed = csv::parse_channel<double>(in, "roundtrip");
  EXPECT_EQ(parsed, channel);
}

TEST(ChannelCsvTest, ParsesMixedNotation) {
  std::istringstream in(",t1,t2\nx1,1/2,0.5\nx2,0.25,3/4\n");
  const auto channel = csv::parse_channel<Rational>(in, "mixed");
  EXPECT_EQ(channel.entries.at(0, 0), rat(1, 2));
  EXPECT_EQ(channel.entries.at(0, 1), rat(1, 2));
  EXPECT_EQ(channel.entries.at(1, 0), rat(1, 4));
  EXPECT_EQ(channel.entries.at(1, 1), rat(3, 4));
}

TEST(ChannelCsvTest, ReportsErrorsWithLocation) {
  std::istringstream bad_header("t1,t2\nx1,1,0\n");
  try {
    csv::parse_channel<Rational>(bad_header, "header.csv");
    FAIL() << "accepted a header without the empty lead cell";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(message_of(e).find("empty cell"), std::string::npos);
  }

  std::istringstream short_row(",t1,t2\nx1,1\n");
  try {
    csv::parse_channel<Rational>(short_row, "short.csv");
    FAIL() << "accepted a row with a missing field";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(message_of(e).find("line 2"), std::string::npos);
  }

  std::istringstream bad_number(",t1,t2\nx1,1,0\nx2,oops,1\n");
  try {
    csv::parse_channel<Rational>(bad_number, "number.csv");
    FAIL() << "accepted a malformed entry";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(message_of(e).find("line 3"), std::string::npos);
    EXPECT_NE(message_of(e).find("column 1"), std::string::npos);
  }

  std::istringstream bad_sum(",t1,t2\nx1,1/2,1/3\n");
  EXPECT_THROW(csv::parse_channel<Rational>(bad_sum, "sum.csv"), InvalidChannel);

  std::istringstream empty("");
  EXPECT_THROW(csv::parse_channel<Rational>(empty, "empty.csv"), InvalidArgument);

  EXPECT_THROW(csv::read_channel<Rational>("/nonexistent/channel.csv"), IoError);
}

TEST(ChannelCsvTest, SkipsBlankLinesAndCarriageReturns) {
  std::istringstream in(",t1,t2\r\n\r\nx1,1/2,1/2\r\nx2,1,0\r\n\r\n");
  const auto channel = csv::parse_channel<Rational>(in, "crlf");
  EXPECT_EQ(channel.rows(), 2u);
  EXPECT_EQ(channel.entries.at(1, 0), rat(1));
}

TEST(ChannelCsvTest, FileRoundTrip) {
  const auto channel = qif::models::build_topics_channel<Rational>({{1, 2}, {2, 3}}, 10);
  const std::string path = ::testing::TempDir() + "/channel_roundtrip.csv";
  csv::write_channel_file(path, channel);
  const auto parsed = csv::read_channel<Rational>(path);
  EXPECT_EQ(parsed, channel);
  std::remove(path.c_str());
}

TEST(DistributionCsvTest, RoundTripsWithAndWithoutHeader) {
  std::istringstream with_header("label,probability\nx1,1/4\nx2,3/4\n");
  const auto a = csv::parse_distribution<Rational>(with_header, "with");
  EXPECT_EQ(a.labels, (std::vector<std::string>{"x1", "x2"}));
  EXPECT_EQ(a.probs[0], rat(1, 4));

  std::istringstream without("x1,0.25\nx2,0.75\n");
  const auto b = csv::parse_distribution<Rational>(without, "without");
  EXPECT_EQ(a, b);

  std::ostringstream out;
  csv::write_distribution(out, a);
  std::istringstream in(out.str());
  EXPECT_EQ(csv::parse_distribution<Rational>(in, "roundtrip"), a);

  std::istringstream bad_sum("x1,1/2\nx2,1/3\n");
  EXPECT_THROW(csv::parse_distribution<Rational>(bad_sum, "bad"), InvalidArgument);
  std::istringstream negative("x1,-1/2\nx2,3/2\n");
  EXPECT_THROW(csv::parse_distribution<Rational>(negative, "neg"), InvalidArgument);
  EXPECT_THROW(csv::read_distribution<Rational>("/nonexistent/prior.csv"), IoError);
}

TEST(HyperCsvTest, GoldenLayout) {
  // Uniform prior on 2 secrets through the k=2 channel over 3 topics.
  Matrix<Rational> entries(2, 3);
  entries.at(0, 0) = rat(1, 2);
  entries.at(0, 1) = rat(1, 2);
  entries.at(1, 1) = rat(1, 2);
  entries.at(1, 2) = rat(1, 2);
  const auto channel = qif::validate_channel<Rational>(
      {"x1", "x2"}, {"t1", "t2", "t3"}, std::move(entries));
  const auto h = qif::hyper(qif::uniform_prior<Rational>(2, channel.row_labels),
                            channel);

  std::ostringstream out;
  csv::write_hyper(out, h);
  EXPECT_EQ(out.str(),
            ",t1,t2,t3\n"
            "outer,1/4,1/2,1/4\n"
            "x1,1,1/2,0\n"
            "x2,0,1/2,1\n");
}

TEST(SweepCsvTest, GoldenLayout) {
  const auto table = qif::models::leakage_sweep({50, 350}, {3, 5});
  std::ostringstream out;
  csv::write_sweep(out, table);
  EXPECT_EQ(out.str(),
            "m,k,leakage,log10_leakage\n"
            "50,3,16.6667,1.221849\n"
            "50,5,10,1.000000\n"
            "350,3,116.667,2.066947\n"
            "350,5,70,1.845098\n");
}

TEST(SweepCsvTest, FileWriteFailsLoudly) {
  const auto table = qif::models::leakage_sweep({50}, {5});
  EXPECT_THROW(csv::write_sweep_file("/nonexistent/dir/sweep.csv", table), IoError);

  const std::string path = ::testing::TempDir() + "/sweep_roundtrip.csv";
  csv::write_sweep_file(path, table);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "m,k,leakage,log10_leakage");
  std::string row;
  std::getline(in, row);
  EXPECT_EQ(row, "50,5,10,1.000000");
  std::remove(path.c_str());
}

}  // namespace
