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

#include <benchmark/benchmark.h>

#include "frr/design.h"
#include "frr/estimation.h"
#include "frr/randomizer.h"
#include "frr/simulation.h"

namespace frr {
namespace {

QuantDesign Spinner(int k) {
  return *QuantDesign::Create(
      Probability::Exact(3, 4),
      std::vector<Probability>(static_cast<std::size_t>(k),
                               Probability::Exact(1, 4 * k)));
}

void BM_SimulateSurvey(benchmark::State& state) {
  const SpinnerLayout layout = *LayoutFromQuant(Spinner(6));
  PopulationSpec spec;
  spec.pi = Eigen::VectorXd::Constant(6, 1.0 / 6);
  spec.n = state.range(0);
  std::uint64_t rep = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SimulateSurvey(spec, layout, 1, rep++));
  }
  state.SetItemsProcessed(state.iterations() * spec.n);
}
BENCHMARK(BM_SimulateSurvey)->Arg(1000)->Arg(100000);

void BM_EstimateQuant(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const QuantDesign design = Spinner(k);
  const ResponseTally tally =
      *ResponseTally::Create(std::vector<std::int64_t>(k, 100));
  for (auto _ : state) benchmark::DoNotOptimize(EstimateQuant(tally, design));
}
BENCHMARK(BM_EstimateQuant)->Arg(2)->Arg(6)->Arg(50);

void BM_EstimateGeneral(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const MisclassificationDesign matrix = BuildQuantMatrix(Spinner(k));
  const ResponseTally tally =
      *ResponseTally::Create(std::vector<std::int64_t>(k, 100));
  for (auto _ : state) benchmark::DoNotOptimize(EstimateGeneral(tally, matrix));
}
BENCHMARK(BM_EstimateGeneral)->Arg(2)->Arg(6)->Arg(50);

void BM_OutcomeAt(benchmark::State& state) {
  const SpinnerLayout layout =
      *LayoutFromQuant(Spinner(static_cast<int>(state.range(0))));
  double angle = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(OutcomeAt(layout, angle));
    angle += 7.31;
    if (angle >= kFullTurn) angle -= kFullTurn;
  }
}
BENCHMARK(BM_OutcomeAt)->Arg(6)->Arg(50);

}  // namespace
}  // namespace frr

BENCHMARK_MAIN();
