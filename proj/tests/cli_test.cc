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

#include <fstream>
#include <sstream>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "frr/response_log.h"
#include "oracles.h"
#include "test_util.h"

namespace frr {
namespace {

using ::frr::testing::HasTag;
using ::frr::testing::TempDir;
using ::frr::testing::Unwrap;
using ::testing::HasSubstr;
using ::testing::MatchesRegex;
using nlohmann::json;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    Write("dice.json",
          R"({"type": "binary", "p_truth": "27/36", "p_forced": ["6/36", "3/36"]})");
    Write("spinner.json",
          R"({"type": "quant", "k": 6, "p_truth": "3/4", "p_forced": "1/24"})");
    Write("asym.json",
          R"({"type": "binary", "p_truth": "3/4", "p_forced": ["1/4", "0"]})");
    Write("singular.json",
          R"({"type": "custom", "matrix": [[0.5, 0.5], [0.5, 0.5]]})");
    Write("identity.json",
          R"({"type": "custom", "matrix": [[1, 0], [0, 1]]})");
    Write("half.csv", "category,count\nyes,500\nno,500\n");
    Write("low.csv", "category,count\nyes,100\nno,900\n");
  }

  std::string Write(const std::string& name, const std::string& text) {
    std::ofstream(dir_.path() / name) << text;
    return Path(name);
  }
  std::string Path(const std::string& name) {
    return (dir_.path() / name).string();
  }

  CliResult Run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = RunCli(args, out, err);
    return {code, out.str(), err.str()};
  }

  TempDir dir_;
};

TEST(ParsePiVectorTest, BinaryShorthandAndLists) {
  const DesignSpec dice = ::frr::testing::DiceDesign();
  const Eigen::VectorXd pi = Unwrap(ParsePiVector("0.2", dice));
  EXPECT_DOUBLE_EQ(pi(kYes), 0.2);
  EXPECT_DOUBLE_EQ(pi(kNo), 0.8);
  EXPECT_EQ(Unwrap(ParsePiVector("0.3,0.7", dice)).size(), 2);
  const DesignSpec spinner = ::frr::testing::SpinnerDesign();
  EXPECT_EQ(Unwrap(ParsePiVector("0.4,0.3,0.15,0.1,0.04,0.01", spinner)).size(),
            6);
  EXPECT_FALSE(ParsePiVector("0.4,0.3", spinner).ok());
  EXPECT_FALSE(ParsePiVector("0.5,0.6", dice).ok());
  EXPECT_FALSE(ParsePiVector("x", dice).ok());
}

TEST(ParseCategoryTest, LabelsAndNumbers) {
  const std::vector<std::string> labels = {"yes", "no"};
  EXPECT_EQ(Unwrap(ParseCategory("no", labels)), 1u);
  EXPECT_EQ(Unwrap(ParseCategory("1", labels)), 0u);
  EXPECT_FALSE(ParseCategory("3", labels).ok());
  EXPECT_FALSE(ParseCategory("maybe", labels).ok());
}

TEST_F(CliTest, DesignCheckPassesAndReportsOracles) {
  const CliResult r = Run({"design", "--design", Path("dice.json"), "--pi",
                           "0.2", "--n", "1000", "--json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_NEAR(doc["efficiency"]["variance"][0].get<double>(),
              oracle::kVarianceAtPoint2N1000, 1e-15);
  EXPECT_NEAR(doc["jeopardy"]["posterior"][0][0].get<double>(),
              oracle::kPosteriorYesGivenYes, 1e-12);
  EXPECT_EQ(doc["digest"].get<std::string>().size(), 64u);
}

TEST_F(CliTest, IdentityDesignPasses) {
  const CliResult r = Run({"design", "--design", Path("identity.json")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_THAT(r.out, HasSubstr("PASS"));
}

TEST_F(CliTest, DesignWarningsAndErrorsSetExitCode) {
  const CliResult warn = Run({"design", "--design", Path("asym.json")});
  EXPECT_EQ(warn.code, kExitWarnings);
  EXPECT_THAT(warn.out, HasSubstr("WARNING"));
  EXPECT_THAT(warn.out, HasSubstr("PASS with warnings"));
  const CliResult bad = Run({"design", "--design", Path("singular.json")});
  EXPECT_EQ(bad.code, kExitError);
  EXPECT_THAT(bad.err, HasSubstr("singular-design"));
  EXPECT_EQ(Run({"design", "--design", Path("absent.json")}).code, kExitError);
}

TEST_F(CliTest, EstimateMatchesOracle) {
  const CliResult r = Run({"estimate", "--design", Path("dice.json"),
                           "--tally", Path("half.csv"), "--json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_NEAR(doc["pi_raw"][0].get<double>(), oracle::kPiHatYes500, 1e-12);
  EXPECT_NEAR(doc["ci"][0][0].get<double>(), oracle::kCiLowerYes500, 1e-9);
  EXPECT_NEAR(doc["ci"][0][1].get<double>(), oracle::kCiUpperYes500, 1e-9);
}

TEST_F(CliTest, FlaggedEstimateExitsWithWarnings) {
  const CliResult r = Run({"estimate", "--design", Path("dice.json"),
                           "--tally", Path("low.csv")});
  EXPECT_EQ(r.code, kExitWarnings);
  EXPECT_THAT(r.out, HasSubstr("below-chance"));
}

TEST_F(CliTest, EstimateReadsResponseLogs) {
  {
    std::ofstream log(dir_.path() / "r.ndjson");
    for (int i = 0; i < 4; ++i) {
      log << ResponseRecordToJson({"s", "q", i == 0 ? kYes : kNo, "t"}).dump()
          << "\n";
    }
  }
  const CliResult r = Run({"estimate", "--design", Path("dice.json"),
                           "--tally", Path("r.ndjson"), "--question", "q",
                           "--json"});
  EXPECT_NE(r.code, kExitError) << r.err;
  EXPECT_EQ(json::parse(r.out)["n"], 4);
}

TEST_F(CliTest, EstimateErrors) {
  Write("short.csv", "category,count\nyes,1\n");
  const CliResult r = Run({"estimate", "--design", Path("dice.json"),
                           "--tally", Path("short.csv")});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_THAT(r.err, HasSubstr("insufficient-data"));
}

TEST_F(CliTest, SpinPrintsSeedWhenNotGiven) {
  const CliResult r = Run({"spin", "--design", Path("dice.json"), "--count",
                           "5"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_THAT(r.err, MatchesRegex("seed: [0-9]+ \\(pass --seed [0-9]+ to "
                                  "replay\\)\n"));
  const CliResult seeded = Run({"spin", "--design", Path("dice.json"),
                                "--count", "5", "--seed", "11"});
  EXPECT_TRUE(seeded.err.empty());
  EXPECT_EQ(seeded.out, Run({"spin", "--design", Path("dice.json"), "--count",
                             "5", "--seed", "11"})
                            .out);
}

TEST_F(CliTest, SpinJsonSummary) {
  const CliResult r = Run({"spin", "--design", Path("spinner.json"),
                           "--count", "2000", "--seed", "4", "--json",
                           "--summary-only"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["seed"], 4);
  EXPECT_FALSE(doc.contains("outcomes"));
  EXPECT_EQ(doc["count"], 2000);
}

TEST_F(CliTest, LayoutWritesFile) {
  const CliResult r = Run({"layout", "--design", Path("dice.json"), "--out",
                           Path("layout.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream in(dir_.path() / "layout.json");
  EXPECT_EQ(json::parse(in).size(), 8u);
  EXPECT_EQ(Run({"layout", "--design", Path("dice.json"), "--interleave", "0"})
                .code,
            kExitError);
}

TEST_F(CliTest, SimulateIsReproducible) {
  const std::vector<std::string> args = {
      "simulate", "--design", Path("dice.json"), "--pi", "0.2", "--n", "200",
      "--reps", "100", "--seed", "6", "--json"};
  const CliResult a = Run(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, Run(args).out);
  EXPECT_EQ(json::parse(a.out)["metadata"]["seed"], 6);
  EXPECT_EQ(Run({"simulate", "--design", Path("dice.json"), "--pi", "0.2",
                 "--n", "200", "--reps", "10"})
                .code,
            kExitError);
}

TEST_F(CliTest, SimulateBiasWithinThreeStandardErrors) {
  const CliResult r =
      Run({"simulate", "--design", Path("dice.json"), "--pi", "0.2", "--n",
           "2000", "--reps", "5000", "--seed", "15", "--json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json yes = json::parse(r.out)["categories"][0];
  EXPECT_LE(std::abs(yes["bias"].get<double>()),
            3 * yes["bias_se"].get<double>());
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Run({}).code, kExitError);
  EXPECT_EQ(Run({"bogus"}).code, kExitError);
  EXPECT_EQ(Run({"estimate", "--design", Path("dice.json")}).code, kExitError);
  EXPECT_EQ(Run({"--help"}).code, kExitOk);
}

}  // namespace
}  // namespace frr
