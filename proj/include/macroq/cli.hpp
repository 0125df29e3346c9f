// Copyright 2026 The macroq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Command-line front end. Commands write data (JSON or CSV) to the output
 * stream and diagnostics to the error stream, and return the exit status:
 * 0 success, 1 failed verification, 2 invalid flags or flag values,
 * 3 unreadable or invalid input files.
 */

#pragma once

#include <charconv>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "macroq/analytic.hpp"
#include "macroq/core.hpp"
#include "macroq/io.hpp"
#include "macroq/measure.hpp"
#include "macroq/mmqs.hpp"
#include "macroq/oracle.hpp"
#include "macroq/quadrature.hpp"
#include "macroq/states.hpp"

namespace macroq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFile = 3;

inline constexpr int kDefaultThermalCutoff = 50;
inline constexpr double kDefaultQuadratureBinWidth = 0.1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StateOptions {
  std::string state;
  std::optional<int> n;
  std::optional<double> eps;
  std::string alpha;
  std::optional<double> beta;
  std::optional<int> cutoff;
  std::string observable;
  std::optional<double> bin_width;
  std::string input;
  std::string observable_file;
};

/// What gets measured: a state with its observable, class weights of a
/// family too large to enumerate, or the exact uniform-state count.
struct Problem {
  std::optional<State> state;
  std::optional<Observable> observable;
  std::optional<SpectralWeights> classes;
  int analytic_uniform_n = 0;
  bool binned = false;
};

/// Shortest round-trip decimal form, independent of the locale.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

/// "RE,IM" or "RE".
inline Complex parse_alpha(const std::string& text) {
  if (text.empty()) throw UsageError("--alpha is required for this state");
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    const std::string re_text = text.substr(0, comma);
    const double re = std::stod(re_text, &used);
    if (used != re_text.size()) throw std::invalid_argument(text);
    double im = 0.0;
    if (comma != std::string::npos) {
      const std::string im_text = text.substr(comma + 1);
      im = std::stod(im_text, &used);
      if (used != im_text.size()) throw std::invalid_argument(text);
    }
    return {re, im};
  } catch (const std::logic_error&) {
    throw UsageError("--alpha expects RE,IM, got '" + text + "'");
  }
}

namespace detail {

inline int require_n(const StateOptions& o, int n) {
  if (n < 1) throw UsageError("--n must be >= 1 for state '" + o.state + "'");
  return n;
}

inline Observable load_observable_file(const StateOptions& o) {
  if (o.observable_file.empty()) throw UsageError("--observable file needs --observable-file PATH");
  try {
    return io::load_observable(o.observable_file);
  } catch (const Error& ex) {
    throw FileError(o.observable_file + ": " + ex.what());
  }
}

inline std::string observable_or(const StateOptions& o, const char* fallback) {
  return o.observable.empty() ? std::string(fallback) : o.observable;
}

inline void reject_observable(const StateOptions& o, const std::string& obs) {
  throw UsageError("observable '" + obs + "' is not available for state '" + o.state + "'");
}

inline Problem spin_problem(const StateOptions& o, int n) {
  require_n(o, n);
  const std::string obs = observable_or(o, "magnetization");
  if (obs != "magnetization" && obs != "file") reject_observable(o, obs);
  const bool explicit_basis = obs == "file";
  Problem p;
  auto with_state = [&](PureState psi) {
    p.observable = explicit_basis ? load_observable_file(o) : magnetization_z(n);
    p.state = std::move(psi);
  };
  if (o.state == "ghz") {
    if (n <= kMaxSpins) with_state(ghz(n));
    else p.classes = ghz_classes(n);
  } else if (o.state == "psi1") {
    if (n <= kMaxSpins) with_state(single_excitation(n));
    else p.classes = single_excitation_classes(n);
  } else if (o.state == "w") {
    if (n <= kMaxSpins) with_state(w_state(n));
    else p.classes = w_classes(n);
  } else if (o.state == "uniform") {
    if (n <= kMaxUniformSpins) with_state(uniform(n));
    else p.analytic_uniform_n = n;
  } else {
    if (!o.eps) throw UsageError("--eps is required for state 'gghz'");
    if (n <= kMaxGeneralizedGhzSpins) with_state(generalized_ghz(n, *o.eps));
    else p.classes = generalized_ghz_classes(n, *o.eps);
  }
  if (explicit_basis && !p.state) throw UsageError("n too large to pair with an observable file");
  return p;
}

inline Problem photonic_problem(const StateOptions& o, int n) {
  Problem p;
  if (o.state == "noon") {
    require_n(o, n);
    const int cutoff = o.cutoff.value_or(n);
    const std::string obs = observable_or(o, "number");
    if (obs == "number") p.observable = mode_photon_number(cutoff);
    else if (obs == "file") p.observable = load_observable_file(o);
    else reject_observable(o, obs);
    p.state = noon(n, cutoff);
    return p;
  }
  if (o.state == "thermal") {
    if (!o.beta) throw UsageError("--beta is required for state 'thermal'");
    const int cutoff = o.cutoff.value_or(kDefaultThermalCutoff);
    const std::string obs = observable_or(o, "number");
    if (obs == "number") p.observable = number_operator(cutoff);
    else if (obs == "file") p.observable = load_observable_file(o);
    else reject_observable(o, obs);
    p.state = thermal(*o.beta, cutoff);
    return p;
  }
  // scs and mixed-scs
  const Complex alpha = parse_alpha(o.alpha);
  const int cutoff = o.cutoff.value_or(coherent_cutoff(alpha));
  const bool mixed = o.state == "mixed-scs";
  const std::string obs = observable_or(o, "quadrature");
  if (obs == "quadrature") {
    const BinSpec bins{o.bin_width.value_or(kDefaultQuadratureBinWidth), 0.0};
    auto q = mixed ? mixed_scs_quadrature_problem(alpha, cutoff, bins)
                   : scs_quadrature_problem(alpha, cutoff, bins);
    p.state = std::move(q.state);
    p.observable = std::move(q.observable);
    p.binned = true;
    return p;
  }
  if (obs == "number") p.observable = number_operator(cutoff);
  else if (obs == "file") p.observable = load_observable_file(o);
  else reject_observable(o, obs);
  if (mixed) p.state = mixed_scs_fock(alpha, cutoff);
  else p.state = scs(alpha, cutoff);
  return p;
}

inline Problem file_problem(const StateOptions& o) {
  if (o.input.empty()) throw UsageError("--state file needs --input PATH");
  Problem p;
  try {
    p.state = io::load_state(o.input);
  } catch (const Error& ex) {
    throw FileError(o.input + ": " + ex.what());
  }
  const std::string obs = observable_or(o, "file");
  if (obs == "file") {
    p.observable = load_observable_file(o);
  } else if (obs == "magnetization") {
    if (!o.n) throw UsageError("--observable magnetization needs --n");
    p.observable = magnetization_z(*o.n);
  } else if (obs == "number") {
    if (!o.cutoff) throw UsageError("--observable number needs --cutoff");
    p.observable = number_operator(*o.cutoff);
  } else {
    reject_observable(o, obs);
  }
  return p;
}

}  // namespace detail

inline Problem build_problem(const StateOptions& o, int n) {
  Problem p;
  const auto& s = o.state;
  if (s == "ghz" || s == "psi1" || s == "w" || s == "uniform" || s == "gghz") {
    p = detail::spin_problem(o, n);
  } else if (s == "noon" || s == "thermal" || s == "scs" || s == "mixed-scs") {
    p = detail::photonic_problem(o, n);
  } else if (s == "file") {
    p = detail::file_problem(o);
  } else {
    throw UsageError("unknown state '" + s + "'");
  }
  if (o.bin_width && !p.binned) {
    const BinSpec bins{*o.bin_width, 0.0};
    if (p.observable) p.observable = bin_observable(*p.observable, bins);
    else if (p.classes) p.classes = bin_classes(*p.classes, bins);
    else throw UsageError("--bin-width is not supported on the analytic path");
    p.binned = true;
  }
  if (p.state && p.observable) validate_pair(*p.state, *p.observable);
  return p;
}

inline MeasureReport evaluate(const Problem& p) {
  if (p.state) return measure(*p.state, *p.observable);
  if (p.classes) return measure_grouped(*p.classes);
  return uniform_measure_report(p.analytic_uniform_n);
}

inline nlohmann::ordered_json report_to_json(const MeasureReport& r) {
  nlohmann::ordered_json doc;
  doc["M"] = r.m;
  doc["N_eff"] = r.n_eff;
  doc["path"] = to_string(r.path);
  auto dist = nlohmann::ordered_json::array();
  for (const auto& pt : r.distribution.points) dist.push_back({pt.delta, pt.probability});
  doc["distribution"] = std::move(dist);
  return doc;
}

namespace detail {

inline void add_state_options(CLI::App& cmd, StateOptions& o, bool with_n) {
  cmd.add_option("--state", o.state, "State family")
      ->required()
      ->check(CLI::IsMember({"ghz", "psi1", "uniform", "w", "gghz", "noon", "scs", "mixed-scs",
                             "thermal", "file"}));
  if (with_n) cmd.add_option("--n", o.n, "System size (spins or photons)");
  cmd.add_option("--eps", o.eps, "Generalized GHZ angle");
  cmd.add_option("--alpha", o.alpha, "Coherent amplitude as RE,IM");
  cmd.add_option("--beta", o.beta, "Inverse temperature of the thermal state");
  cmd.add_option("--cutoff", o.cutoff, "Highest retained Fock level")->check(CLI::NonNegativeNumber);
  cmd.add_option("--observable", o.observable, "Measured observable")
      ->check(CLI::IsMember({"magnetization", "number", "quadrature", "file"}));
  cmd.add_option("--bin-width", o.bin_width, "Spectrum bin width (bin centers, origin 0)")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--input", o.input, "State file for --state file");
  cmd.add_option("--observable-file", o.observable_file, "Observable file for --observable file");
}

inline int n_or_zero(const StateOptions& o) { return o.n.value_or(0); }

}  // namespace detail

/// Runs one command line (args[0] is the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Macroscopic coherence measure of quantum states", "macroq"};
  app.require_subcommand(1);

  StateOptions measure_opts;
  auto* measure_cmd = app.add_subcommand("measure", "Measure one state (JSON)");
  detail::add_state_options(*measure_cmd, measure_opts, true);

  StateOptions pdist_opts;
  auto* pdist_cmd = app.add_subcommand("pdist", "Distance distribution P(delta) of one state (CSV)");
  detail::add_state_options(*pdist_cmd, pdist_opts, true);

  StateOptions sweep_opts;
  int n_min = 1;
  int n_max = 1;
  int step = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "Measure a family over a range of n (CSV)");
  detail::add_state_options(*sweep_cmd, sweep_opts, false);
  sweep_cmd->add_option("--n-min", n_min)->required()->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--n-max", n_max)->required()->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--step", step)->check(CLI::PositiveNumber);

  int dim = 0;
  int trials = 1000;
  std::uint64_t seed = 1;
  auto* verify_cmd =
      app.add_subcommand("mmqs-verify", "Check the MMQS bound on a random spectrum (JSON)");
  verify_cmd->add_option("--dim", dim)->required()->check(CLI::Range(1, 8));
  verify_cmd->add_option("--trials", trials)->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--seed", seed);

  StateOptions export_opts;
  auto* export_state_cmd = app.add_subcommand("export-state", "Write a state file (JSON)");
  detail::add_state_options(*export_state_cmd, export_opts, true);
  auto* export_obs_cmd =
      app.add_subcommand("export-observable", "Write the paired observable file (JSON)");
  detail::add_state_options(*export_obs_cmd, export_opts, true);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "macroq: " << ex.what() << "\n";
    return kExitUsage;
  }

  try {
    if (measure_cmd->parsed()) {
      const auto report = evaluate(build_problem(measure_opts, detail::n_or_zero(measure_opts)));
      out << report_to_json(report).dump() << "\n";
    } else if (pdist_cmd->parsed()) {
      const auto report = evaluate(build_problem(pdist_opts, detail::n_or_zero(pdist_opts)));
      out << "delta,p\n";
      for (const auto& pt : report.distribution.points) {
        out << format_double(pt.delta) << "," << format_double(pt.probability) << "\n";
      }
    } else if (sweep_cmd->parsed()) {
      const auto& s = sweep_opts.state;
      if (s != "ghz" && s != "psi1" && s != "w" && s != "uniform" && s != "gghz" && s != "noon") {
        throw UsageError("sweep needs an n-indexed family, not '" + s + "'");
      }
      if (n_max < n_min) throw UsageError("--n-max must be >= --n-min");
      const bool uniform_family = s == "uniform";
      out << "n,M,N_eff,path" << (uniform_family ? ",M_paper_closed" : "") << "\n";
      for (int n = n_min; n <= n_max; n += step) {
        const auto report = evaluate(build_problem(sweep_opts, n));
        out << n << "," << format_double(report.m) << "," << report.n_eff << ","
            << to_string(report.path);
        if (uniform_family) out << "," << format_double(uniform_measure_closed(n));
        out << "\n";
      }
    } else if (verify_cmd->parsed()) {
      const auto spectrum = random_spectrum(static_cast<Index>(dim), seed, true);
      const auto report = scan_theorem(spectrum, trials, seed);
      nlohmann::ordered_json doc;
      doc["d_max_over_2"] = report.d_max_over_2;
      doc["best_m"] = report.best_m;
      doc["bound_violations"] = report.bound_violations;
      doc["converged"] = report.converged;
      out << doc.dump() << "\n";
      if (!report.holds()) {
        err << "macroq: MMQS bound check failed\n";
        return kExitFailed;
      }
    } else if (export_state_cmd->parsed()) {
      const auto p = build_problem(export_opts, detail::n_or_zero(export_opts));
      if (!p.state) throw UsageError("state is too large to write out explicitly");
      out << io::write_state(*p.state) << "\n";
    } else if (export_obs_cmd->parsed()) {
      const auto p = build_problem(export_opts, detail::n_or_zero(export_opts));
      if (!p.observable) throw UsageError("observable is too large to write out explicitly");
      out << io::write_observable(*p.observable) << "\n";
    }
  } catch (const UsageError& ex) {
    err << "macroq: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const FileError& ex) {
    err << "macroq: " << ex.what() << "\n";
    return kExitFile;
  } catch (const Error& ex) {
    err << "macroq: " << ex.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace macroq::cli
