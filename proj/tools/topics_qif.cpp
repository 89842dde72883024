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

// topics-qif: leakage calculators, channel analysis, the leakage sweep, and
// the Monte-Carlo simulator behind one command-line front end.
//
// Exit codes: 0 success, 2 usage or validation error, 3 I/O error,
// 4 population generation failure. Results go to stdout, diagnostics to
// stderr.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qif/csv.hpp"
#include "qif/error.hpp"
#include "qif/models.hpp"
#include "qif/numeric.hpp"
#include "qif/ops.hpp"
#include "qif/simulate.hpp"
#include "qif/types.hpp"

namespace {

using qif::BigInt;
using qif::Channel;
using qif::Distribution;
using qif::Rational;

constexpr char kCookiesNote[] =
    "the original analysis reports cookie-leakage magnitudes of 1.8e238 (500 "
    "contexts) and 1.3e95 (roughly 40 percent of 500), but the stated formula "
    "2^M' - M' - 1 evaluates to about 10^150.51 and 10^60.21; those printed "
    "figures are unreproduced and this tool reports the formula's exact value. "
    "The qualitative conclusion is unaffected: cookie leakage is astronomically "
    "larger than the top-5 Topics leakage of 70.";

bool fits_plain_integer(const BigInt& value) {
  BigInt limit;
  mpz_ui_pow_ui(limit.get_mpz_t(), 10, 30);
  return value <= limit;
}

// "70/N" for integral values, "(349/5)/N" otherwise.
std::string symbolic_over_n(const Rational& value) {
  const std::string s = qif::format_exact(value);
  if (s.find('/') == std::string::npos) return s + "/N";
  return "(" + s + ")/N";
}

void print_decimal_line(const std::string& key, double value) {
  if (std::isfinite(value)) {
    std::cout << key << ": " << qif::format_sig6(value) << "\n";
  }
}

struct LeakageOpts {
  unsigned long taxonomy = 0;
  unsigned long k = 0;
  unsigned long domains = 0;
  unsigned long users = 0;
  bool users_set = false;
  bool json = false;
};

int run_leakage_topics(const LeakageOpts& opt) {
  const Rational leakage = qif::models::topics_closed_form_leakage(opt.taxonomy, opt.k);
  const double log10_leakage = qif::log10_value(leakage);

  if (opt.json) {
    nlohmann::json doc;
    doc["model"] = "topics";
    doc["taxonomy"] = opt.taxonomy;
    doc["k"] = opt.k;
    doc["multiplicative_leakage"] = qif::format_exact(leakage);
    doc["multiplicative_leakage_decimal"] = qif::to_double(leakage);
    doc["log10_multiplicative_leakage"] = log10_leakage;
    if (opt.users_set) {
      const Rational posterior =
          qif::models::topics_closed_form_vulnerability(opt.users, opt.taxonomy, opt.k);
      const Rational prior = qif::make_rational(1, opt.users);
      doc["users"] = opt.users;
      doc["prior_vulnerability"] = qif::format_exact(prior);
      doc["posterior_vulnerability"] = qif::format_exact(posterior);
      doc["additive_leakage"] = qif::format_exact(posterior - prior);
    } else {
      doc["prior_vulnerability"] = "1/N";
      doc["posterior_vulnerability"] = symbolic_over_n(leakage);
    }
    std::cout << doc.dump(2) << "\n";
    return 0;
  }

  std::cout << "model: topics\n";
  std::cout << "taxonomy: " << opt.taxonomy << "\n";
  std::cout << "k: " << opt.k << "\n";
  if (opt.users_set) {
    const Rational posterior =
        qif::models::topics_closed_form_vulnerability(opt.users, opt.taxonomy, opt.k);
    const Rational prior = qif::make_rational(1, opt.users);
    const Rational additive = posterior - prior;
    std::cout << "users: " << opt.users << "\n";
    std::cout << "prior_vulnerability: " << qif::format_exact(prior) << "\n";
    print_decimal_line("prior_vulnerability_decimal", qif::to_double(prior));
    std::cout << "posterior_vulnerability: " << qif::format_exact(posterior) << "\n";
    print_decimal_line("posterior_vulnerability_decimal", qif::to_double(posterior));
    std::cout << "multiplicative_leakage: " << qif::format_exact(leakage) << "\n";
    print_decimal_line("multiplicative_leakage_decimal", qif::to_double(leakage));
    std::cout << "log10_multiplicative_leakage: " << qif::format_fixed6(log10_leakage)
              << "\n";
    std::cout << "additive_leakage: " << qif::format_exact(additive) << "\n";
    print_decimal_line("additive_leakage_decimal", qif::to_double(additive));
  } else {
    std::cout << "prior_vulnerability: 1/N\n";
    std::cout << "posterior_vulnerability: " << symbolic_over_n(leakage) << "\n";
    std::cout << "multiplicative_leakage: " << qif::format_exact(leakage) << "\n";
    print_decimal_line("multiplicative_leakage_decimal", qif::to_double(leakage));
    std::cout << "log10_multiplicative_leakage: " << qif::format_fixed6(log10_leakage)
              << "\n";
  }
  return 0;
}

int run_leakage_cookies(const LeakageOpts& opt) {
  if (opt.domains < 2) {
    throw qif::InvalidArgument("--domains must be at least 2");
  }
  const qif::models::CookiesLeakage leakage =
      qif::models::cookies_closed_form_leakage(static_cast<unsigned>(opt.domains));
  const bool small = fits_plain_integer(leakage.exact);

  if (opt.json) {
    nlohmann::json doc;
    doc["model"] = "cookies";
    doc["domains"] = opt.domains;
    if (small) doc["multiplicative_leakage"] = leakage.exact.get_str();
    doc["log10_multiplicative_leakage"] = leakage.log10;
    if (opt.users_set) {
      const Rational posterior = qif::models::cookies_closed_form_vulnerability(
          static_cast<unsigned>(opt.domains), opt.users);
      doc["users"] = opt.users;
      doc["prior_vulnerability"] = qif::format_exact(qif::make_rational(1, opt.users));
      if (small) {
        doc["posterior_vulnerability"] = qif::format_exact(posterior);
        doc["additive_leakage"] =
            qif::format_exact(posterior - qif::make_rational(1, opt.users));
      }
      doc["log10_posterior_vulnerability"] =
          leakage.log10 - std::log10(static_cast<double>(opt.users));
      if (posterior > 1) {
        std::cerr << "warning: only " << opt.users << " users but 2^M'-M'-1 = 10^"
                  << qif::format_fixed6(leakage.log10)
                  << " realizable histories; the closed form presumes a saturated "
                     "population and exceeds 1 here\n";
      }
    } else {
      doc["prior_vulnerability"] = "1/N";
    }
    doc["note"] = kCookiesNote;
    std::cout << doc.dump(2) << "\n";
    return 0;
  }

  std::cout << "model: cookies\n";
  std::cout << "domains: " << opt.domains << "\n";
  if (opt.users_set) {
    const Rational prior = qif::make_rational(1, opt.users);
    const Rational posterior = qif::models::cookies_closed_form_vulnerability(
        static_cast<unsigned>(opt.domains), opt.users);
    std::cout << "users: " << opt.users << "\n";
    std::cout << "prior_vulnerability: " << qif::format_exact(prior) << "\n";
    print_decimal_line("prior_vulnerability_decimal", qif::to_double(prior));
    if (small) {
      std::cout << "posterior_vulnerability: " << qif::format_exact(posterior) << "\n";
      print_decimal_line("posterior_vulnerability_decimal", qif::to_double(posterior));
      std::cout << "additive_leakage: " << qif::format_exact(posterior - prior) << "\n";
      print_decimal_line("additive_leakage_decimal", qif::to_double(posterior - prior));
    }
    std::cout << "log10_posterior_vulnerability: "
              << qif::format_fixed6(leakage.log10 -
                                    std::log10(static_cast<double>(opt.users)))
              << "\n";
    if (posterior > 1) {
      std::cerr << "warning: only " << opt.users << " users but 2^M'-M'-1 = 10^"
                << qif::format_fixed6(leakage.log10)
                << " realizable histories; the closed form presumes a saturated "
                   "population and exceeds 1 here\n";
    }
  } else {
    std::cout << "prior_vulnerability: 1/N\n";
    if (small) {
      std::cout << "posterior_vulnerability: " << leakage.exact.get_str() << "/N\n";
    }
  }
  if (small) {
    std::cout << "multiplicative_leakage: " << leakage.exact.get_str() << "\n";
  }
  std::cout << "log10_multiplicative_leakage: " << qif::format_fixed6(leakage.log10)
            << "\n";
  std::cout << "note: " << kCookiesNote << "\n";
  return 0;
}

struct AnalyzeOpts {
  std::string channel_path;
  std::string prior = "uniform";
  std::string mode = "rational";
  double tolerance = qif::kRowSumTolerance;
  bool hyper = false;
  bool json = false;
};

template <typename T>
int run_analyze(const AnalyzeOpts& opt) {
  const Channel<T> channel = qif::csv::read_channel<T>(opt.channel_path, opt.tolerance);
  const Distribution<T> prior =
      opt.prior == "uniform"
          ? qif::uniform_prior<T>(channel.rows(), channel.row_labels)
          : qif::csv::read_distribution<T>(opt.prior, opt.tolerance);
  const qif::VulnerabilityReport<T> rep = qif::vulnerability_report(prior, channel);

  if (opt.json) {
    nlohmann::json doc;
    doc["mode"] = qif::NumTraits<T>::kModeName;
    doc["channel"] = opt.channel_path;
    doc["secrets"] = channel.rows();
    doc["outputs"] = channel.cols();
    doc["prior_vulnerability"] = qif::NumTraits<T>::render(rep.prior_v);
    doc["prior_vulnerability_decimal"] = qif::to_double(rep.prior_v);
    doc["posterior_vulnerability"] = qif::NumTraits<T>::render(rep.posterior_v);
    doc["posterior_vulnerability_decimal"] = qif::to_double(rep.posterior_v);
    doc["multiplicative_leakage"] = qif::NumTraits<T>::render(rep.mult_leakage);
    doc["multiplicative_leakage_decimal"] = qif::to_double(rep.mult_leakage);
    doc["additive_leakage"] = qif::NumTraits<T>::render(rep.add_leakage);
    doc["additive_leakage_decimal"] = qif::to_double(rep.add_leakage);
    doc["log10_multiplicative_leakage"] = rep.log10_mult_leakage;
    if (opt.hyper) {
      const qif::Hyper<T> h = qif::hyper(prior, channel);
      nlohmann::json hj;
      hj["outputs"] = h.outer.labels;
      nlohmann::json outer = nlohmann::json::array();
      for (const T& p : h.outer.probs) outer.push_back(qif::NumTraits<T>::render(p));
      hj["outer"] = std::move(outer);
      hj["secrets"] = h.inners.empty() ? std::vector<std::string>{} : h.inners[0].labels;
      nlohmann::json inners = nlohmann::json::array();
      for (const auto& inner : h.inners) {
        nlohmann::json column = nlohmann::json::array();
        for (const T& p : inner.probs) column.push_back(qif::NumTraits<T>::render(p));
        inners.push_back(std::move(column));
      }
      hj["inners"] = std::move(inners);
      doc["hyper"] = std::move(hj);
    }
    std::cout << doc.dump(2) << "\n";
    return 0;
  }

  std::cout << "mode: " << qif::NumTraits<T>::kModeName << "\n";
  std::cout << "channel: " << opt.channel_path << "\n";
  std::cout << "secrets: " << channel.rows() << "\n";
  std::cout << "outputs: " << channel.cols() << "\n";
  std::cout << "prior_vulnerability: " << qif::NumTraits<T>::render(rep.prior_v) << "\n";
  print_decimal_line("prior_vulnerability_decimal", qif::to_double(rep.prior_v));
  std::cout << "posterior_vulnerability: " << qif::NumTraits<T>::render(rep.posterior_v)
            << "\n";
  print_decimal_line("posterior_vulnerability_decimal", qif::to_double(rep.posterior_v));
  std::cout << "multiplicative_leakage: " << qif::NumTraits<T>::render(rep.mult_leakage)
            << "\n";
  print_decimal_line("multiplicative_leakage_decimal", qif::to_double(rep.mult_leakage));
  std::cout << "additive_leakage: " << qif::NumTraits<T>::render(rep.add_leakage) << "\n";
  print_decimal_line("additive_leakage_decimal", qif::to_double(rep.add_leakage));
  std::cout << "log10_multiplicative_leakage: "
            << qif::format_fixed6(rep.log10_mult_leakage) << "\n";
  if (opt.hyper) {
    const qif::Hyper<T> h = qif::hyper(prior, channel);
    std::cout << "\n";
    qif::csv::write_hyper(std::cout, h);
  }
  return 0;
}

unsigned long parse_ulong(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(text, &used);
  } catch (const std::exception&) {
    throw qif::InvalidArgument(what + ": '" + text + "' is not a non-negative integer");
  }
  if (used != text.size() || text[0] == '-') {
    throw qif::InvalidArgument(what + ": '" + text + "' is not a non-negative integer");
  }
  return value;
}

std::vector<unsigned long> parse_m_range(const std::string& range) {
  std::vector<std::string> parts;
  std::string piece;
  for (char c : range) {
    if (c == ':') {
      parts.push_back(piece);
      piece.clear();
    } else {
      piece += c;
    }
  }
  parts.push_back(piece);
  if (parts.size() > 3) {
    throw qif::InvalidArgument("--m expects start:stop[:step], got '" + range + "'");
  }

  const unsigned long start = parse_ulong(parts[0], "--m start");
  const unsigned long stop =
      parts.size() > 1 ? parse_ulong(parts[1], "--m stop") : start;
  const unsigned long step = parts.size() > 2 ? parse_ulong(parts[2], "--m step") : 1;
  if (step == 0) throw qif::InvalidArgument("--m step must be positive");
  if (start == 0) throw qif::InvalidArgument("--m start must be positive");
  if (start > stop) throw qif::InvalidArgument("--m start exceeds stop");

  std::vector<unsigned long> values;
  for (unsigned long m = start; m <= stop; m += step) {
    values.push_back(m);
    if (m > stop - step) break;  // avoid wraparound near the type maximum
  }
  return values;
}

std::vector<unsigned long> parse_k_list(const std::string& range) {
  std::vector<unsigned long> values;
  std::string piece;
  for (char c : range + ",") {
    if (c == ',') {
      if (piece.empty()) throw qif::InvalidArgument("--k has an empty element");
      values.push_back(parse_ulong(piece, "--k"));
      piece.clear();
    } else {
      piece += c;
    }
  }
  if (values.empty()) throw qif::InvalidArgument("--k must list at least one value");
  return values;
}

struct SweepOpts {
  std::string m_range;
  std::string k_range;
  std::string out_path;
};

int run_sweep(const SweepOpts& opt) {
  const std::vector<unsigned long> m_values = parse_m_range(opt.m_range);
  const std::vector<unsigned long> k_values = parse_k_list(opt.k_range);
  const qif::models::SweepTable table = qif::models::leakage_sweep(m_values, k_values);
  for (const auto& skip : table.skipped) {
    std::cerr << "skipped m=" << skip.m << " k=" << skip.k << " (m < k)\n";
  }
  if (opt.out_path.empty()) {
    qif::csv::write_sweep(std::cout, table);
  } else {
    qif::csv::write_sweep_file(opt.out_path, table);
  }
  return 0;
}

struct SimulateOpts {
  std::string config_path;
  std::string out_path;
};

int run_simulate(const SimulateOpts& opt) {
  std::ifstream in(opt.config_path);
  if (!in) throw qif::IoError("cannot open '" + opt.config_path + "' for reading");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw qif::InvalidArgument("config '" + opt.config_path + "': " + e.what());
  }
  const qif::sim::SimConfig config = qif::sim::sim_config_from_json(doc);
  const nlohmann::json report = qif::sim::run_simulation(config);
  const std::string text = report.dump(2) + "\n";
  if (opt.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opt.out_path);
    if (!out) throw qif::IoError("cannot open '" + opt.out_path + "' for writing");
    out << text;
    if (!out) throw qif::IoError("failed writing '" + opt.out_path + "'");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Leakage analysis for the third-party-cookies and Topics channels"};
  app.require_subcommand(1);

  LeakageOpts leakage_opts;
  CLI::App* leakage = app.add_subcommand(
      "leakage", "Closed-form vulnerability and leakage for a built-in model");
  leakage->require_subcommand(1);
  CLI::App* topics = leakage->add_subcommand("topics", "Top-k interest disclosure model");
  topics->add_option("--taxonomy", leakage_opts.taxonomy,
                     "Number of observable topics M (saturated taxonomy)")
      ->required();
  topics->add_option("--k", leakage_opts.k, "Size of the top-topics set")->required();
  CLI::Option* topics_users =
      topics->add_option("--users", leakage_opts.users, "Population size N");
  topics->add_flag("--json", leakage_opts.json, "Emit a JSON object");

  CLI::App* cookies =
      leakage->add_subcommand("cookies", "Third-party cookie identifier model");
  cookies->add_option("--domains", leakage_opts.domains,
                      "Number of contexts M' carrying the identifier")
      ->required();
  CLI::Option* cookies_users =
      cookies->add_option("--users", leakage_opts.users, "Population size N");
  cookies->add_flag("--json", leakage_opts.json, "Emit a JSON object");

  AnalyzeOpts analyze_opts;
  CLI::App* analyze =
      app.add_subcommand("analyze", "Vulnerability and leakage of a channel CSV file");
  analyze->add_option("--channel", analyze_opts.channel_path, "Channel CSV path")
      ->required();
  analyze->add_option("--prior", analyze_opts.prior,
                      "'uniform' or a distribution CSV path")
      ->capture_default_str();
  analyze->add_option("--mode", analyze_opts.mode, "Arithmetic: rational or float")
      ->check(CLI::IsMember({"rational", "float"}))
      ->capture_default_str();
  analyze->add_option("--tolerance", analyze_opts.tolerance,
                      "Row-sum tolerance in float mode")
      ->capture_default_str();
  analyze->add_flag("--hyper", analyze_opts.hyper,
                    "Also print the full hyper-distribution as CSV");
  analyze->add_flag("--json", analyze_opts.json, "Emit a JSON object");

  SweepOpts sweep_opts;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Leakage M/k over a grid of M and k values, as CSV");
  sweep->add_option("--m", sweep_opts.m_range,
                    "Topic counts start:stop[:step]; stop is included when "
                    "start + i*step lands on it (step defaults to 1)")
      ->required();
  sweep->add_option("--k", sweep_opts.k_range, "Comma-separated top-k sizes")->required();
  sweep->add_option("--out", sweep_opts.out_path,
                    "Output CSV path (stdout when omitted)");

  SimulateOpts simulate_opts;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte-Carlo validation of the analytic model");
  simulate->add_option("--config", simulate_opts.config_path, "Simulation config JSON")
      ->required();
  simulate->add_option("--out", simulate_opts.out_path,
                       "Output report path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (leakage->parsed()) {
      leakage_opts.users_set =
          topics->parsed() ? topics_users->count() > 0 : cookies_users->count() > 0;
      if (topics->parsed()) return run_leakage_topics(leakage_opts);
      return run_leakage_cookies(leakage_opts);
    }
    if (analyze->parsed()) {
      if (analyze_opts.mode == "float") return run_analyze<double>(analyze_opts);
      return run_analyze<Rational>(analyze_opts);
    }
    if (sweep->parsed()) return run_sweep(sweep_opts);
    if (simulate->parsed()) return run_simulate(simulate_opts);
  } catch (const qif::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const qif::GenerationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const qif::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
