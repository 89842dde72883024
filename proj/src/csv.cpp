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

#include "qif/csv.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

#include "qif/error.hpp"
#include "qif/numeric.hpp"
#include "qif/ops.hpp"

namespace qif::csv {

std::string quote_field(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::vector<std::string> split_record(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  bool in_quotes = false;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          i += 2;
          continue;
        }
        in_quotes = false;
        ++i;
        continue;
      }
      current += c;
      ++i;
      continue;
    }
    if (c == '"') {
      in_quotes = true;
      ++i;
      continue;
    }
    if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
      ++i;
      continue;
    }
    current += c;
    ++i;
  }
  if (in_quotes) throw InvalidArgument("unterminated quote in CSV record");
  fields.push_back(std::move(current));
  return fields;
}

namespace {

// Reads logical lines, tolerating trailing \r and skipping blank lines.
std::vector<std::pair<std::size_t, std::string>> read_lines(std::istream& in) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    lines.emplace_back(number, line);
  }
  return lines;
}

template <typename T>
T parse_entry(const std::string& text, const std::string& source, std::size_t line,
              std::size_t row, std::size_t col) {
  try {
    return NumTraits<T>::parse(text);
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(source + " line " + std::to_string(line) + ", row " +
                          std::to_string(row) + ", column " + std::to_string(col) +
                          ": " + e.what());
  }
}

}  // namespace

template <typename T>
Channel<T> parse_channel(std::istream& in, const std::string& source, double tolerance) {
  const auto lines = read_lines(in);
  if (lines.size() < 2) {
    throw InvalidArgument(source + ": expected a header and at least one row");
  }

  std::vector<std::string> header;
  try {
    header = split_record(lines[0].second);
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(source + " line " + std::to_string(lines[0].first) + ": " +
                          e.what());
  }
  if (header.size() < 2 || !header[0].empty()) {
    throw InvalidArgument(source + ": header must start with an empty cell followed by "
                          "column labels");
  }
  std::vector<std::string> col_labels(header.begin() + 1, header.end());
  const std::size_t n_cols = col_labels.size();
  const std::size_t n_rows = lines.size() - 1;

  std::vector<std::string> row_labels;
  row_labels.reserve(n_rows);
  Matrix<T> entries(n_rows, n_cols);
  for (std::size_t r = 0; r < n_rows; ++r) {
    const auto& [line_no, text] = lines[r + 1];
    std::vector<std::string> fields;
    try {
      fields = split_record(text);
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(source + " line " + std::to_string(line_no) + ": " + e.what());
    }
    if (fields.size() != n_cols + 1) {
      throw InvalidArgument(source + " line " + std::to_string(line_no) + ": expected " +
                            std::to_string(n_cols + 1) + " fields, got " +
                            std::to_string(fields.size()));
    }
    row_labels.push_back(fields[0]);
    for (std::size_t c = 0; c < n_cols; ++c) {
      entries.at(r, c) = parse_entry<T>(fields[c + 1], source, line_no, r + 1, c + 1);
    }
  }
  return validate_channel<T>(std::move(row_labels), std::move(col_labels),
                             std::move(entries), tolerance);
}

template <typename T>
Channel<T> read_channel(const std::string& path, double tolerance) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return parse_channel<T>(in, path, tolerance);
}

template <typename T>
Distribution<T> parse_distribution(std::istream& in, const std::string& source,
                                   double tolerance) {
  const auto lines = read_lines(in);
  if (lines.empty()) throw InvalidArgument(source + ": empty distribution file");

  std::vector<std::string> labels;
  std::vector<T> probs;
  for (std::size_t r = 0; r < lines.size(); ++r) {
    const auto& [line_no, text] = lines[r];
    std::vector<std::string> fields;
    try {
      fields = split_record(text);
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(source + " line " + std::to_string(line_no) + ": " + e.what());
    }
    if (r == 0 && fields.size() == 2 && fields[0] == "label" &&
        fields[1] == "probability") {
      continue;
    }
    if (fields.size() != 2) {
      throw InvalidArgument(source + " line " + std::to_string(line_no) +
                            ": expected 2 fields (label, probability), got " +
                            std::to_string(fields.size()));
    }
    labels.push_back(fields[0]);
    probs.push_back(parse_entry<T>(fields[1], source, line_no, labels.size(), 2));
  }
  if (labels.empty()) throw InvalidArgument(source + ": no distribution rows");
  return make_distribution<T>(std::move(labels), std::move(probs), tolerance);
}

template <typename T>
Distribution<T> read_distribution(const std::string& path, double tolerance) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return parse_distribution<T>(in, path, tolerance);
}

template <typename T>
void write_channel(std::ostream& out, const Channel<T>& channel) {
  for (const auto& label : channel.col_labels) out << ',' << quote_field(label);
  out << '\n';
  for (std::size_t r = 0; r < channel.rows(); ++r) {
    out << quote_field(channel.row_labels[r]);
    for (std::size_t c = 0; c < channel.cols(); ++c) {
      out << ',' << quote_field(NumTraits<T>::render(channel.entries.at(r, c)));
    }
    out << '\n';
  }
}

template <typename T>
void write_channel_file(const std::string& path, const Channel<T>& channel) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_channel(out, channel);
  if (!out) throw IoError("failed writing '" + path + "'");
}

template <typename T>
void write_distribution(std::ostream& out, const Distribution<T>& dist) {
  out << "label,probability\n";
  for (std::size_t i = 0; i < dist.labels.size(); ++i) {
    out << quote_field(dist.labels[i]) << ','
        << quote_field(NumTraits<T>::render(dist.probs[i])) << '\n';
  }
}

template <typename T>
void write_hyper(std::ostream& out, const Hyper<T>& hyper) {
  for (const auto& label : hyper.outer.labels) out << ',' << quote_field(label);
  out << '\n';
  out << "outer";
  for (const auto& p : hyper.outer.probs) {
    out << ',' << quote_field(NumTraits<T>::render(p));
  }
  out << '\n';
  if (hyper.inners.empty()) return;
  const auto& secrets = hyper.inners.front().labels;
  for (std::size_t x = 0; x < secrets.size(); ++x) {
    out << quote_field(secrets[x]);
    for (const auto& inner : hyper.inners) {
      out << ',' << quote_field(NumTraits<T>::render(inner.probs[x]));
    }
    out << '\n';
  }
}

void write_sweep(std::ostream& out, const models::SweepTable& table) {
  out << "m,k,leakage,log10_leakage\n";
  for (const auto& row : table.rows) {
    out << row.m << ',' << row.k << ',' << format_sig6(row.leakage) << ','
        << format_fixed6(row.log10_leakage) << '\n';
  }
}

void write_sweep_file(const std::string& path, const models::SweepTable& table) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_sweep(out, table);
  if (!out) throw IoError("failed writing '" + path + "'");
}

template Channel<double> parse_channel<double>(std::istream&, const std::string&, double);
template Channel<Rational> parse_channel<Rational>(std::istream&, const std::string&,
                                                   double);
template Channel<double> read_channel<double>(const std::string&, double);
template Channel<Rational> read_channel<Rational>(const std::string&, double);
template Distribution<double> parse_distribution<double>(std::istream&,
                                                         const std::string&, double);
template Distribution<Rational> parse_distribution<Rational>(std::istream&,
                                                             const std::string&, double);
template Distribution<double> read_distribution<double>(const std::string&, double);
template Distribution<Rational> read_distribution<Rational>(const std::string&, double);
template void write_channel<double>(std::ostream&, const Channel<double>&);
template void write_channel<Rational>(std::ostream&, const Channel<Rational>&);
template void write_channel_file<double>(const std::string&, const Channel<double>&);
template void write_channel_file<Rational>(const std::string&, const Channel<Rational>&);
template void write_distribution<double>(std::ostream&, const Distribution<double>&);
template void write_distribution<Rational>(std::ostream&, const Distribution<Rational>&);
template void write_hyper<double>(std::ostream&, const Hyper<double>&);
template void write_hyper<Rational>(std::ostream&, const Hyper<Rational>&);

}  // namespace qif::csv
