// Copyright 2026 The FRR Toolkit Authors
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

#include "cli_commands.h"

#include <csignal>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "absl/strings/numbers.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "frr/errors.h"
#include "frr/random_stream.h"
#include "frr/randomizer.h"
#include "frr/report_io.h"
#include "frr/simulation.h"
#include "frr/survey_service.h"
#include "http_api.h"
#include "server_config.h"

namespace frr {
namespace {

using nlohmann::json;

int Fail(std::ostream& err, const absl::Status& status) {
  err << "error: " << status.message() << "\n";
  return kExitError;
}

absl::Status WriteJsonFile(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path, std::ios::trunc);
  out << doc.dump(2) << "\n";
  if (!out) {
    return absl::InternalError(Cat("cannot write ", path.string()));
  }
  return absl::OkStatus();
}

json MatrixJson(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

absl::StatusOr<SpinnerLayout> LayoutFor(const DesignSpec& design,
                                        int interleave) {
  if (const auto* b = std::get_if<BinaryDesign>(&design)) {
    return LayoutFromBinary(*b, interleave);
  }
  if (const auto* q = std::get_if<QuantDesign>(&design)) {
    return LayoutFromQuant(*q, interleave);
  }
  return UnrealizableLayout("custom matrices have no spinner layout");
}

std::uint64_t ChooseSeed(const std::optional<std::uint64_t>& seed,
                         std::ostream& err) {
  if (seed) return *seed;
  const std::uint64_t chosen = RandomStream::EntropySeed();
  err << "seed: " << chosen << " (pass --seed " << chosen
      << " to replay)\n";
  return chosen;
}

std::string DirectiveName(const Directive& d,
                          const std::vector<std::string>& labels) {
  if (d.is_truthful()) return "truthful";
  return Cat("forced:", d.category < labels.size() ? labels[d.category]
                                                   : Cat(d.category + 1));
}

json ValidationJson(const ValidationReport& v) {
  return {{"column_stochastic", v.column_stochastic},
          {"max_column_error", v.max_column_error},
          {"entries_in_range", v.entries_in_range},
          {"diagonal_dominant", v.diagonal_dominant},
          {"dominance_pass", v.dominance_pass},
          {"nonsingular", v.nonsingular},
          {"condition_number", v.condition_number},
          {"category_protected", v.category_protected},
          {"symmetric", v.symmetric},
          {"errors", v.Errors()},
          {"warnings", v.Warnings()}};
}

int ExitFor(const ValidationReport& v) {
  if (v.HasErrors()) return kExitError;
  return v.HasWarnings() ? kExitWarnings : kExitOk;
}

}  // namespace

absl::StatusOr<Eigen::VectorXd> ParsePiVector(const std::string& text,
                                              const DesignSpec& design) {
  const std::size_t k = DesignCategories(design);
  std::vector<double> values;
  for (absl::string_view field : absl::StrSplit(text, ',')) {
    double v = 0.0;
    if (!absl::SimpleAtod(absl::StripAsciiWhitespace(field), &v)) {
      return InvalidPi("'", ToStd(field), "' is not a number");
    }
    values.push_back(v);
  }
  if (values.size() == 1 && std::holds_alternative<BinaryDesign>(design)) {
    values.push_back(1.0 - values[0]);
  }
  if (values.size() != k) {
    return DimensionMismatch("pi has ", values.size(),
                             " entries, design has ", k, " categories");
  }
  Eigen::VectorXd pi = Eigen::Map<Eigen::VectorXd>(values.data(), k);
  if (auto s = CheckOnSimplex(pi, k); !s.ok()) return s;
  return pi;
}

absl::StatusOr<std::size_t> ParseCategory(
    const std::string& text, const std::vector<std::string>& labels) {
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (labels[j] == text) return j;
  }
  std::size_t number = 0;
  if (absl::SimpleAtoi(text, &number) && number >= 1 &&
      number <= labels.size()) {
    return number - 1;
  }
  return absl::OutOfRangeError(
      Cat(error_tag::kCategoryOutOfRange, ": '", text,
          "' is neither a label nor a number in 1..", labels.size()));
}

int RunDesign(const DesignCommand& cmd, std::ostream& out, std::ostream& err) {
  auto design = ReadDesignFile(cmd.design);
  if (!design.ok()) return Fail(err, design.status());
  const MisclassificationDesign matrix = BuildMatrix(*design);
  const ValidationReport validation = ValidateDesign(matrix);
  const std::vector<std::string> labels = DesignLabels(*design);

  std::optional<EfficiencyReport> efficiency;
  std::optional<JeopardyReport> jeopardy;
  if (!cmd.pi.empty()) {
    auto pi = ParsePiVector(cmd.pi, *design);
    if (!pi.ok()) return Fail(err, pi.status());
    if (cmd.n > 0 && !validation.HasErrors()) {
      auto e = DesignEfficiency(matrix, *pi, static_cast<std::size_t>(cmd.n));
      if (!e.ok()) return Fail(err, e.status());
      efficiency = *std::move(e);
    }
    auto j = Jeopardy(matrix, *pi);
    if (!j.ok()) return Fail(err, j.status());
    jeopardy = *std::move(j);
  }

  if (cmd.json) {
    json doc = {{"design", DesignToJson(*design)},
                {"digest", DesignDigest(*design)},
                {"labels", labels},
                {"matrix", MatrixJson(matrix.matrix)},
                {"validation", ValidationJson(validation)}};
    if (efficiency) {
      json ratio = json::array();
      for (const auto& r : efficiency->inflation_ratio) {
        ratio.push_back(r ? json(*r) : json(nullptr));
      }
      doc["efficiency"] = {{"n", cmd.n},
                           {"variance", efficiency->variance},
                           {"direct_variance", efficiency->direct_variance},
                           {"inflation_ratio", std::move(ratio)}};
    }
    if (jeopardy) {
      json defined = json::array();
      for (bool d : jeopardy->defined) defined.push_back(d);
      json rows = json::array();
      for (Eigen::Index o = 0; o < jeopardy->posterior.rows(); ++o) {
        json row = json::array();
        for (Eigen::Index t = 0; t < jeopardy->posterior.cols(); ++t) {
          const double v = jeopardy->posterior(o, t);
          row.push_back(std::isfinite(v) ? json(v) : json(nullptr));
        }
        rows.push_back(std::move(row));
      }
      doc["jeopardy"] = {{"posterior", std::move(rows)},
                         {"defined", std::move(defined)}};
    }
    out << doc.dump(2) << "\n";
    return ExitFor(validation);
  }

  out << "design " << DesignSourceName(matrix.source) << ", k = "
      << matrix.k() << ", digest " << DesignDigest(*design).substr(0, 12)
      << "\n";
  out << "P(observed | true), rows = observed:\n";
  for (Eigen::Index r = 0; r < matrix.matrix.rows(); ++r) {
    out << absl::StrFormat("  %-12s", labels[r]);
    for (Eigen::Index c = 0; c < matrix.matrix.cols(); ++c) {
      out << absl::StrFormat(" %9.6f", matrix.matrix(r, c));
    }
    out << "\n";
  }
  out << absl::StrFormat("condition number %.4g\n",
                         validation.condition_number);
  if (efficiency) {
    out << "category        var(pi_hat)   direct_var  inflation\n";
    for (std::size_t j = 0; j < labels.size(); ++j) {
      const auto& r = efficiency->inflation_ratio[j];
      out << absl::StrFormat("  %-12s %12.5e %12.5e %10s\n", labels[j],
                             efficiency->variance[j],
                             efficiency->direct_variance[j],
                             r ? absl::StrFormat("%.3f", *r) : "-");
    }
  }
  if (jeopardy) {
    out << "P(true | observed), rows = observed:\n";
    for (Eigen::Index o = 0; o < jeopardy->posterior.rows(); ++o) {
      out << absl::StrFormat("  %-12s", labels[o]);
      for (Eigen::Index t = 0; t < jeopardy->posterior.cols(); ++t) {
        const double v = jeopardy->posterior(o, t);
        out << (std::isfinite(v) ? absl::StrFormat(" %9.6f", v)
                                 : absl::StrFormat(" %9s", "-"));
      }
      out << "\n";
    }
  }
  for (const auto& e : validation.Errors()) out << "ERROR   " << e << "\n";
  for (const auto& w : validation.Warnings()) out << "WARNING " << w << "\n";
  const int code = ExitFor(validation);
  out << (code == kExitOk         ? "PASS\n"
          : code == kExitWarnings ? "PASS with warnings\n"
                                  : "FAIL\n");
  return code;
}

int RunLayout(const LayoutCommand& cmd, std::ostream& out, std::ostream& err) {
  auto design = ReadDesignFile(cmd.design);
  if (!design.ok()) return Fail(err, design.status());
  auto layout = LayoutFor(*design, cmd.interleave);
  if (!layout.ok()) return Fail(err, layout.status());
  const json doc = LayoutToJson(*layout);
  if (cmd.out) {
    if (auto s = WriteJsonFile(*cmd.out, doc); !s.ok()) return Fail(err, s);
    return kExitOk;
  }
  out << doc.dump(2) << "\n";
  return kExitOk;
}

int RunSpin(const SpinCommand& cmd, std::ostream& out, std::ostream& err) {
  if (cmd.count < 1) {
    return Fail(err, absl::InvalidArgumentError("--count must be positive"));
  }
  auto design = ReadDesignFile(cmd.design);
  if (!design.ok()) return Fail(err, design.status());
  auto layout = LayoutFor(*design, cmd.interleave);
  if (!layout.ok()) return Fail(err, layout.status());
  const std::vector<std::string> labels = DesignLabels(*design);
  const std::uint64_t seed = ChooseSeed(cmd.seed, err);
  RandomStream stream(seed);

  // Distinct directives in layout order.
  std::vector<Directive> directives;
  for (const Segment& s : layout->segments()) {
    if (std::find(directives.begin(), directives.end(), s.directive) ==
        directives.end()) {
      directives.push_back(s.directive);
    }
  }
  std::vector<std::int64_t> counts(directives.size(), 0);
  json outcomes = json::array();
  for (std::int64_t i = 0; i < cmd.count; ++i) {
    const SpinOutcome o = Spin(*layout, stream);
    const auto index = std::find(directives.begin(), directives.end(),
                                 o.directive) - directives.begin();
    ++counts[static_cast<std::size_t>(index)];
    if (cmd.summary_only) continue;
    if (cmd.json) {
      outcomes.push_back(
          {{"angle", o.angle}, {"directive", DirectiveToJson(o.directive)}});
    } else {
      out << absl::StrFormat("%6d  %10.5f  %s\n", i + 1, o.angle,
                             DirectiveName(o.directive, labels));
    }
  }

  json summary = json::array();
  if (!cmd.json) {
    out << absl::StrFormat("%-18s %10s %10s %10s %10s\n", "directive",
                           "degrees", "expected", "count", "frequency");
  }
  for (std::size_t d = 0; d < directives.size(); ++d) {
    const double degrees = layout->Degrees(directives[d]);
    const double frequency =
        static_cast<double>(counts[d]) / static_cast<double>(cmd.count);
    if (cmd.json) {
      summary.push_back({{"directive", DirectiveToJson(directives[d])},
                         {"degrees", degrees},
                         {"expected", degrees / kFullTurn},
                         {"count", counts[d]},
                         {"frequency", frequency}});
    } else {
      out << absl::StrFormat("%-18s %10.4f %10.6f %10d %10.6f\n",
                             DirectiveName(directives[d], labels), degrees,
                             degrees / kFullTurn, counts[d], frequency);
    }
  }
  if (cmd.json) {
    json doc = {{"seed", seed},
                {"generator", RandomStream::kGeneratorName},
                {"count", cmd.count},
                {"summary", std::move(summary)}};
    if (!cmd.summary_only) doc["outcomes"] = std::move(outcomes);
    out << doc.dump(2) << "\n";
  }
  return kExitOk;
}

int RunSimulate(const SimulateCommand& cmd, std::ostream& out,
                std::ostream& err) {
  auto design = ReadDesignFile(cmd.design);
  if (!design.ok()) return Fail(err, design.status());
  auto pi = ParsePiVector(cmd.pi, *design);
  if (!pi.ok()) return Fail(err, pi.status());

  PopulationSpec spec;
  spec.pi = *pi;
  spec.n = cmd.n;
  spec.sp_rate = cmd.sp_rate;
  spec.safe_category = DefaultSafeCategory(*design);
  if (!cmd.safe_category.empty()) {
    auto safe = ParseCategory(cmd.safe_category, DesignLabels(*design));
    if (!safe.ok()) return Fail(err, safe.status());
    spec.safe_category = *safe;
  }
  const std::uint64_t seed = ChooseSeed(cmd.seed, err);
  CalibrationOptions options;
  options.level = cmd.level;
  options.interleave = cmd.interleave;
  options.threads = cmd.threads;
  auto report = Calibrate(spec, *design, cmd.reps, seed, options);
  if (!report.ok()) return Fail(err, report.status());

  const json doc = CalibrationReportToJson(*report);
  if (cmd.out) {
    if (auto s = WriteJsonFile(*cmd.out, doc); !s.ok()) return Fail(err, s);
  }
  if (cmd.json) {
    out << doc.dump(2) << "\n";
  } else {
    out << CalibrationReportToTable(*report);
  }
  return kExitOk;
}

int RunEstimate(const EstimateCommand& cmd, std::ostream& out,
                std::ostream& err) {
  auto design = ReadDesignFile(cmd.design);
  if (!design.ok()) return Fail(err, design.status());
  const std::vector<std::string> labels = DesignLabels(*design);
  auto tally = ReadTallyFile(cmd.tally, labels, cmd.question);
  if (!tally.ok()) return Fail(err, tally.status());
  auto report = EstimateForDesign(*tally, *design, {cmd.level});
  if (!report.ok()) return Fail(err, report.status());

  const json doc = EstimateReportToJson(*report, labels, DesignDigest(*design));
  if (cmd.out) {
    if (auto s = WriteJsonFile(*cmd.out, doc); !s.ok()) return Fail(err, s);
  }
  if (cmd.json) {
    out << doc.dump(2) << "\n";
  } else {
    out << absl::StrFormat("n = %d, level = %.3f\n", report->n, report->level);
    out << absl::StrFormat("%-14s %10s %10s %10s %10s %10s  %s\n", "category",
                           "pi_raw", "projected", "std_err", "ci_low",
                           "ci_high", "flag");
    for (std::size_t j = 0; j < labels.size(); ++j) {
      std::string flag;
      for (const auto& f : report->flags) {
        if (f.category == j) flag = std::string(FlagKindName(f.kind));
      }
      out << absl::StrFormat(
          "%-14s %10.6f %10.6f %10.6f %10.6f %10.6f  %s\n", labels[j],
          report->pi_raw(j), report->pi_projected(j),
          std::sqrt(report->variance(j)), report->ci[j].lower,
          report->ci[j].upper, flag);
    }
  }
  return report->flags.empty() ? kExitOk : kExitWarnings;
}

int RunServe(const ServeCommand& cmd, std::ostream& out, std::ostream& err) {
  auto config = LoadServerConfig(cmd.config);
  if (!config.ok()) return Fail(err, config.status());
  if (cmd.port) config->port = *cmd.port;
  if (cmd.data_dir) config->data_dir = *cmd.data_dir;

  ServiceOptions options;
  options.data_dir = config->data_dir;
  options.timestamp_granularity =
      std::chrono::seconds(config->timestamp_granularity_s);
  options.interleave = config->interleave;
  options.compact_every = config->compact_every;
  auto service = SurveyService::Open(std::move(options));
  if (!service.ok()) return Fail(err, service.status());

  // Route SIGINT/SIGTERM to a watcher thread instead of a signal handler.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  httplib::Server server;
  RegisterRoutes(server, **service, {config->admin_token});
  if (!server.bind_to_port(config->host, config->port)) {
    return Fail(err, absl::UnavailableError(Cat(
                         "cannot bind ", config->host, ":", config->port)));
  }
  out << "listening on http://" << config->host << ":" << config->port
      << ", data in " << config->data_dir.string() << std::endl;
  std::thread watcher([&server, signals] {
    int received = 0;
    sigwait(&signals, &received);
    server.stop();
  });
  server.listen_after_bind();
  // A stop that did not come from a signal leaves the watcher waiting.
  pthread_kill(watcher.native_handle(), SIGTERM);
  watcher.join();
  out << "stopped" << std::endl;
  return kExitOk;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Forced randomized response survey toolkit", "frr"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  DesignCommand design_cmd;
  auto* design = app.add_subcommand("design", "Validate a design file");
  design->add_option("--design", design_cmd.design, "Design JSON")->required();
  design->add_option("--pi", design_cmd.pi,
                     "Prior pi for efficiency and jeopardy analysis");
  design->add_option("--n", design_cmd.n, "Sample size for efficiency")
      ->default_str("");
  design->add_flag("--json", design_cmd.json, "Machine-readable output");

  LayoutCommand layout_cmd;
  auto* layout = app.add_subcommand("layout", "Export the spinner layout");
  layout->add_option("--design", layout_cmd.design, "Design JSON")->required();
  layout->add_option("--interleave", layout_cmd.interleave,
                     "Truthful sub-areas before each forced block");
  auto* layout_out = layout->add_option("--out", "Write the layout here")
                        ->type_name("PATH");

  SpinCommand spin_cmd;
  std::uint64_t spin_seed = 0;
  auto* spin = app.add_subcommand("spin", "Spin the digital spinner");
  spin->add_option("--design", spin_cmd.design, "Design JSON")->required();
  spin->add_option("--count", spin_cmd.count, "Number of spins");
  auto* spin_seed_opt = spin->add_option("--seed", spin_seed, "Random seed")
                           ->default_str("");
  spin->add_option("--interleave", spin_cmd.interleave,
                   "Truthful sub-areas before each forced block");
  spin->add_flag("--summary-only", spin_cmd.summary_only,
                 "Print only the frequency summary");
  spin->add_flag("--json", spin_cmd.json, "Machine-readable output");

  SimulateCommand sim_cmd;
  std::uint64_t sim_seed = 0;
  auto* simulate =
      app.add_subcommand("simulate", "Monte Carlo calibration of estimators");
  simulate->add_option("--design", sim_cmd.design, "Design JSON")->required();
  simulate->add_option("--pi", sim_cmd.pi, "True proportions")->required();
  simulate->add_option("--n", sim_cmd.n, "Respondents per survey")
      ->default_str("")
      ->required();
  simulate->add_option("--reps", sim_cmd.reps, "Replications");
  simulate->add_option("--sp-rate", sim_cmd.sp_rate,
                       "Share of self-protective respondents");
  simulate->add_option("--safe-category", sim_cmd.safe_category,
                       "Answer given by self-protective respondents");
  auto* sim_seed_opt = simulate->add_option("--seed", sim_seed, "Random seed")
                          ->default_str("");
  simulate->add_option("--level", sim_cmd.level, "Confidence level");
  simulate->add_option("--interleave", sim_cmd.interleave,
                       "Truthful sub-areas before each forced block");
  simulate->add_option("--threads", sim_cmd.threads,
                       "Worker threads (0 = all cores)");
  simulate->add_flag("--json", sim_cmd.json, "Machine-readable output");
  auto* sim_out = simulate->add_option("--out", "Write the JSON report here")
                     ->type_name("PATH");

  EstimateCommand est_cmd;
  auto* estimate = app.add_subcommand("estimate", "Estimate from a tally");
  estimate->add_option("--design", est_cmd.design, "Design JSON")->required();
  estimate->add_option("--tally", est_cmd.tally,
                       "Tally CSV, tally JSON or response log (.ndjson)")
      ->required();
  estimate->add_option("--question", est_cmd.question,
                       "Question id when --tally is a response log");
  estimate->add_option("--level", est_cmd.level, "Confidence level");
  estimate->add_flag("--json", est_cmd.json, "Machine-readable output");
  auto* est_out = estimate->add_option("--out", "Write the JSON report here")
                     ->type_name("PATH");

  ServeCommand serve_cmd;
  int port = 0;
  std::string data_dir;
  std::string config_file;
  auto* serve = app.add_subcommand("serve", "Run the survey HTTP service");
  auto* config_opt =
      serve->add_option("--config", config_file, "Server config JSON");
  auto* port_opt = serve->add_option("--port", port, "Listening port")
                       ->default_str("");
  auto* dir_opt =
      serve->add_option("--data-dir", data_dir, "Survey data directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  auto out_path = [](CLI::Option* opt) -> std::optional<std::filesystem::path> {
    if (opt->count() == 0) return std::nullopt;
    return std::filesystem::path(opt->as<std::string>());
  };
  if (design->parsed()) return RunDesign(design_cmd, out, err);
  if (layout->parsed()) {
    layout_cmd.out = out_path(layout_out);
    return RunLayout(layout_cmd, out, err);
  }
  if (spin->parsed()) {
    if (spin_seed_opt->count() > 0) spin_cmd.seed = spin_seed;
    return RunSpin(spin_cmd, out, err);
  }
  if (simulate->parsed()) {
    if (sim_seed_opt->count() > 0) sim_cmd.seed = sim_seed;
    sim_cmd.out = out_path(sim_out);
    return RunSimulate(sim_cmd, out, err);
  }
  if (estimate->parsed()) {
    est_cmd.out = out_path(est_out);
    return RunEstimate(est_cmd, out, err);
  }
  if (serve->parsed()) {
    if (config_opt->count() > 0) serve_cmd.config = config_file;
    if (port_opt->count() > 0) serve_cmd.port = port;
    if (dir_opt->count() > 0) serve_cmd.data_dir = data_dir;
    return RunServe(serve_cmd, out, err);
  }
  return kExitError;
}

}  // namespace frr
