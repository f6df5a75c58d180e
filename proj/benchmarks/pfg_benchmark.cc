// Copyright 2026 The pfgames Authors
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

#include <random>
#include <vector>

#include "pfg/afw.h"
#include "pfg/games.h"
#include "pfg/learners.h"
#include "pfg/selfplay.h"

namespace pfg {
namespace {

const SequenceFormGame& Game(int id) {
  static const std::vector<SequenceFormGame> games = {
      ToSequenceForm(BuildKuhn(2)), ToSequenceForm(BuildLeduc(2)),
      ToSequenceForm(BuildKuhn(3)), ToSequenceForm(BuildGoofspiel(3))};
  return games[id];
}

const char* kGameNames[] = {"kuhn2", "leduc", "kuhn3", "goofspiel3"};

Vector RandomLoss(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector v(n);
  for (double& x : v) x = u(rng);
  return v;
}

void BM_Lmo(benchmark::State& state) {
  const Treeplex& t = Game(static_cast<int>(state.range(0))).treeplexes[0];
  std::mt19937_64 rng(1);
  const Vector loss = RandomLoss(t.num_sequences(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(Lmo(t, loss));
  state.SetLabel(kGameNames[state.range(0)]);
}
BENCHMARK(BM_Lmo)->DenseRange(0, 3);

void BM_LossGradient(benchmark::State& state) {
  const SequenceFormGame& g = Game(static_cast<int>(state.range(0)));
  JointStrategy x;
  for (const Treeplex& t : g.treeplexes) x.push_back(t.UniformPoint());
  for (auto _ : state) benchmark::DoNotOptimize(LossGradient(g, 0, x));
  state.SetLabel(kGameNames[state.range(0)]);
}
BENCHMARK(BM_LossGradient)->DenseRange(0, 3);

void BM_ApoWolfeGap(benchmark::State& state) {
  const Treeplex& t = Game(static_cast<int>(state.range(0))).treeplexes[0];
  std::mt19937_64 rng(2);
  const Vector loss = RandomLoss(t.num_sequences(), rng);
  const Vector center = t.UniformPoint();
  for (auto _ : state) {
    benchmark::DoNotOptimize(Apo(loss, 1.0, center, WolfeGap{1e-6}, std::nullopt, t));
  }
  state.SetLabel(kGameNames[state.range(0)]);
}
BENCHMARK(BM_ApoWolfeGap)->Arg(0)->Arg(1);

void BM_SelfPlayIteration(benchmark::State& state) {
  const SequenceFormGame& g = Game(static_cast<int>(state.range(0)));
  LearnerConfig c;
  c.algorithm = Algorithm::kFwRomd;
  c.eta = 1.28;
  c.max_lmo_calls = 5;
  std::vector<Learner> learners;
  for (const Treeplex& t : g.treeplexes) learners.emplace_back(t, c);
  JointStrategy x(g.num_players);
  JointStrategy m(g.num_players);
  for (int i = 0; i < g.num_players; ++i) m[i].assign(g.NumSequences(i), 0.0);
  for (auto _ : state) {
    for (int i = 0; i < g.num_players; ++i) x[i] = learners[i].Next(m[i]);
    for (int i = 0; i < g.num_players; ++i) {
      m[i] = LossGradient(g, i, x);
      learners[i].Observe(m[i]);
    }
  }
  state.SetLabel(kGameNames[state.range(0)]);
}
BENCHMARK(BM_SelfPlayIteration)->DenseRange(0, 3);

void BM_DualityGap(benchmark::State& state) {
  const SequenceFormGame& g = Game(static_cast<int>(state.range(0)));
  JointStrategy x;
  for (const Treeplex& t : g.treeplexes) x.push_back(t.UniformPoint());
  for (auto _ : state) benchmark::DoNotOptimize(DualityGap(g, x));
  state.SetLabel(kGameNames[state.range(0)]);
}
BENCHMARK(BM_DualityGap)->Arg(0)->Arg(1);

}  // namespace
}  // namespace pfg

BENCHMARK_MAIN();
