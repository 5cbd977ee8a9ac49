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

// The `frr` operator command line:
//
//   frr design   --design D [--pi P --n N] [--json]
//   frr layout   --design D [--interleave I] [--out F]
//   frr spin     --design D [--count C] [--seed S] [--summary-only] [--json]
//   frr simulate --design D --pi P --n N --reps R [--sp-rate T]
//                [--safe-category C] [--seed S] [--level L] [--json] [--out F]
//   frr estimate --design D --tally T [--question Q] [--level L] [--json]
//                [--out F]
//   frr serve    [--config F] [--port P] [--data-dir DIR]
//
// Exit codes: 0 success, 1 error, 2 success with warnings. Commands that draw
// random numbers print the seed to stderr when --seed is omitted.

#ifndef FRR_TOOLS_CLI_COMMANDS_H_
#define FRR_TOOLS_CLI_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "frr/design_io.h"

namespace frr {

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitWarnings = 2 };

struct DesignCommand {
  std::filesystem::path design;
  // Optional efficiency and jeopardy analysis at this pi and n.
  std::string pi;
  std::int64_t n = 0;
  bool json = false;
};

struct LayoutCommand {
  std::filesystem::path design;
  int interleave = 3;
  std::optional<std::filesystem::path> out;
};

struct SpinCommand {
  std::filesystem::path design;
  std::int64_t count = 10;
  std::optional<std::uint64_t> seed;
  int interleave = 3;
  bool summary_only = false;
  bool json = false;
};

struct SimulateCommand {
  std::filesystem::path design;
  std::string pi;
  std::int64_t n = 0;
  std::int64_t reps = 1000;
  double sp_rate = 0.0;
  // Label or 1-based number; empty picks the design's default.
  std::string safe_category;
  std::optional<std::uint64_t> seed;
  double level = 0.95;
  int interleave = 3;
  unsigned threads = 0;
  bool json = false;
  std::optional<std::filesystem::path> out;
};

struct EstimateCommand {
  std::filesystem::path design;
  std::filesystem::path tally;
  // Selects a question when the tally is a response log.
  std::string question;
  double level = 0.95;
  bool json = false;
  std::optional<std::filesystem::path> out;
};

struct ServeCommand {
  std::optional<std::filesystem::path> config;
  std::optional<int> port;
  std::optional<std::filesystem::path> data_dir;
};

int RunDesign(const DesignCommand& cmd, std::ostream& out, std::ostream& err);
int RunLayout(const LayoutCommand& cmd, std::ostream& out, std::ostream& err);
int RunSpin(const SpinCommand& cmd, std::ostream& out, std::ostream& err);
int RunSimulate(const SimulateCommand& cmd, std::ostream& out,
                std::ostream& err);
int RunEstimate(const EstimateCommand& cmd, std::ostream& out,
                std::ostream& err);
// Blocks until SIGINT or SIGTERM.
int RunServe(const ServeCommand& cmd, std::ostream& out, std::ostream& err);

// Parses `args` (without the program name) and dispatches.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

// "0.2" for a binary design means pi(yes) = 0.2; otherwise a comma-separated
// list with one entry per category.
absl::StatusOr<Eigen::VectorXd> ParsePiVector(const std::string& text,
                                              const DesignSpec& design);

// Resolves a label or 1-based category number to a 0-based index.
absl::StatusOr<std::size_t> ParseCategory(const std::string& text,
                                          const std::vector<std::string>& labels);

}  // namespace frr

#endif  // FRR_TOOLS_CLI_COMMANDS_H_
