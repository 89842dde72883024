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

// CSV input/output for channels, distributions, hypers, and sweep tables.
//
// Channel files: the first header cell is empty, the remaining header cells
// are column labels; each following row is a row label and its entries.
// Distribution files: two columns, label and probability, with an optional
// "label,probability" header. Entries are decimal numbers or exact fractions
// written "a/b". Fields containing commas or quotes are quoted with doubled
// inner quotes (history labels such as "{D1,D3}" need this).

#ifndef QIF_CSV_HPP_
#define QIF_CSV_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "qif/models.hpp"
#include "qif/types.hpp"

namespace qif::csv {

// Quotes a field if it contains a comma, quote, or line break.
std::string quote_field(const std::string& field);

// Splits one CSV record; doubled quotes inside quoted fields unescape to one.
std::vector<std::string> split_record(const std::string& line);

template <typename T>
Channel<T> parse_channel(std::istream& in, const std::string& source,
                         double tolerance = kRowSumTolerance);

template <typename T>
Channel<T> read_channel(const std::string& path, double tolerance = kRowSumTolerance);

template <typename T>
Distribution<T> parse_distribution(std::istream& in, const std::string& source,
                                   double tolerance = kRowSumTolerance);

template <typename T>
Distribution<T> read_distribution(const std::string& path,
                                  double tolerance = kRowSumTolerance);

template <typename T>
void write_channel(std::ostream& out, const Channel<T>& channel);

template <typename T>
void write_channel_file(const std::string& path, const Channel<T>& channel);

template <typename T>
void write_distribution(std::ostream& out, const Distribution<T>& dist);

// Hyper as CSV: header row of output labels, an "outer" row of output
// probabilities, then one row per secret with the inner probabilities.
template <typename T>
void write_hyper(std::ostream& out, const Hyper<T>& hyper);

// Header "m,k,leakage,log10_leakage"; leakage with 6 significant digits,
// log10 with 6 decimal places.
void write_sweep(std::ostream& out, const models::SweepTable& table);

void write_sweep_file(const std::string& path, const models::SweepTable& table);

}  // namespace qif::csv

#endif  // QIF_CSV_HPP_
