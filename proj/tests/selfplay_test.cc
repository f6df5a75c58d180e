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


#include "pfg/selfplay.h"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "pfg/games.h"

namespace pfg {
namespace {

const SequenceFormGame& Kuhn2() {
  static const SequenceFormGame g = ToSequenceForm(BuildKuhn(2));
  return g;
}

LearnerConfig Config(Algorithm a, double eta = 1.0) {
  LearnerConfig c;
  c.algorithm = a;
  c.eta = eta;
  return c;
}

TEST(AveragingTest, WeightExamples) {
  EXPECT_DOUBLE_EQ(AveragingWeight(Averaging::kUniform, 0), 1.0);
  EXPECT_DOUBLE_EQ(AveragingWeight(Averaging::kUniform, 3), 0.25);
  EXPECT_DOUBLE_EQ(AveragingWeight(Averaging::kLinear, 0), 1.0);
  EXPECT_DOUBLE_EQ(AveragingWeight(Averaging::kLinear, 1), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(AveragingWeight(Averaging::kQuadratic, 0), 1.0);
  EXPECT_DOUBLE_EQ(AveragingWeight(Averaging::kQuadratic, 1), 0.8);
  EXPECT_DOUBLE_EQ(AveragingWeight(Averaging::kLast, 17), 1.0);
  for (Averaging a : {Averaging::kUniform, Averaging::kLinear, Averaging::kQuadratic,
                      Averaging::kLast}) {
    for (int k = 0; k < 5000; ++k) {
      const double w = AveragingWeight(a, k);
      EXPECT_GT(w, 0.0);
      EXPECT_LE(w, 1.0);
    }
  }
}

TEST(AveragingTest, RecursiveMatchesPolynomialWeights) {
  // Linear and quadratic averaging weight iterate s by (s+1) and (s+1)^2.
  for (const auto& [avg, power] : {std::pair{Averaging::kLinear, 1}, std::pair{Averaging::kQuadratic, 2}}) {
    double running = 0.0, num = 0.0, den = 0.0;
    for (int s = 0; s < 200; ++s) {
      const double x = std::sin(0.37 * s);
      running += AveragingWeight(avg, s) * (x - running);
      const double w = std::pow(s + 1.0, power);
      num += w * x;
      den += w;
      EXPECT_NEAR(running, num / den, 1e-12);
    }
  }
}

TEST(AveragingTest, Names) {
  EXPECT_EQ(ParseAveraging("constant"), Averaging::kUniform);
  EXPECT_EQ(ParseAveraging(AveragingName(Averaging::kQuadratic)), Averaging::kQuadratic);
  EXPECT_FALSE(ParseAveraging("geometric").has_value());
}

TEST(RestartHookTest, Examples) {
  RestartState s{4, 1.0};
  s = AdaptiveRestartHook(s, 0.6);
  EXPECT_EQ(s.r, 5);
  EXPECT_DOUBLE_EQ(s.xi, 1.0);
  s = AdaptiveRestartHook(s, 0.5);
  EXPECT_EQ(s.r, 0);
  EXPECT_DOUBLE_EQ(s.xi, 0.5);
  s = AdaptiveRestartHook(s, 0.26);
  EXPECT_EQ(s.r, 1);
}

TEST(AuditFormulaTest, Arithmetic) {
  EXPECT_DOUBLE_EQ(RvuSlack(4.0, 0.5, 2.0, 1.0, 2.0, 3.0), 12.0 + 0.5 - 1.0 - 3.0);
  EXPECT_DOUBLE_EQ(StabilityMargin(1.0, 0.25, 0.5), 1.0 - 0.75 - 0.5);
}

TEST(OmegaTest, KuhnAndFallback) {
  EXPECT_DOUBLE_EQ(EstimateOmega(Kuhn2().treeplexes[0]), 4.5);
  EXPECT_DOUBLE_EQ(EstimateOmega(Kuhn2().treeplexes[1]), 6.0);
  EXPECT_DOUBLE_EQ(EstimateOmega(Kuhn2().treeplexes[1], 10), 13.0);
}

TEST(SelfPlayTest, RejectsBadOptions) {
  const SequenceFormGame three = ToSequenceForm(BuildKuhn(3));
  const LearnerConfig c = Config(Algorithm::kFp);
  SelfPlayOptions o;
  o.restart = true;
  EXPECT_THROW(RunSelfPlay(three, {c, c, c}, o), std::invalid_argument);
  EXPECT_THROW(RunSelfPlay(Kuhn2(), {c}, SelfPlayOptions{}), std::invalid_argument);
  SelfPlayOptions zero;
  zero.lmo_budget = 0.0;
  EXPECT_THROW(RunSelfPlay(Kuhn2(), {c, c}, zero), std::invalid_argument);
  SelfPlayOptions omega;
  omega.omega = {1.0};
  EXPECT_THROW(RunSelfPlay(Kuhn2(), {c, c}, omega), std::invalid_argument);
}

TEST(SelfPlayTest, RvuAndStabilityAuditsHoldOnKuhn) {
  for (double eta : {0.25, 1.28}) {
    LearnerConfig c = Config(Algorithm::kFwRomd, eta);
    c.apo_stop = ApoStop::kWolfeGap;
    SelfPlayOptions o;
    o.max_iterations = 300;
    o.lmo_budget = 1e9;
    const SelfPlayResult r = RunSelfPlay(Kuhn2(), {c, c}, o);
    ASSERT_TRUE(r.ok) << r.error;
    ASSERT_EQ(r.records.size(), 300u);
    EXPECT_EQ(r.omega, (std::vector<double>{4.5, 6.0}));
    for (const RunRecord& rec : r.records) {
      EXPECT_GE(rec.rvu_slack, -1e-6) << rec.iteration;
      EXPECT_LE(rec.stability_margin, 1e-6) << rec.iteration;
      if (eta <= 0.5) EXPECT_LE(rec.social_regret, 2 * (6.0 + 2) / eta);
    }
  }
}

TEST(SelfPlayTest, AuditsAreNanWhenNotApplicable) {
  LearnerConfig c = Config(Algorithm::kFwRomd, 1.0);
  c.max_lmo_calls = 2;
  SelfPlayOptions o;
  o.max_iterations = 10;
  const SelfPlayResult r = RunSelfPlay(Kuhn2(), {c, c}, o);
  for (const RunRecord& rec : r.records) {
    EXPECT_TRUE(std::isnan(rec.rvu_slack));
    EXPECT_TRUE(std::isnan(rec.stability_margin));
  }
  EXPECT_TRUE(std::isnan(r.omega[0]));
}

TEST(SelfPlayTest, MatchingPenniesBestResponse) {
  const SequenceFormGame g = ToSequenceForm(BuildMatchingPennies());
  const LearnerConfig br = Config(Algorithm::kBr);
  SelfPlayOptions o;
  o.max_iterations = 1000;
  o.lmo_budget = 1e9;
  // The iterates never settle: the last-iterate gap is the game's maximum.
  o.averaging = Averaging::kLast;
  const SelfPlayResult last = RunSelfPlay(g, {br, br}, o);
  for (const RunRecord& rec : last.records) {
    EXPECT_NEAR(rec.metric, 1.0 / std::sqrt(2.0), 1e-12);
    EXPECT_GE(rec.metric, 0.4);
  }
  // Their uniform average closes the four-cycle exactly every fourth round.
  o.averaging = Averaging::kUniform;
  const SelfPlayResult uniform = RunSelfPlay(g, {br, br}, o);
  EXPECT_NEAR(uniform.records[0].metric, 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(uniform.records[3].metric, 0.0, 1e-15);
  EXPECT_NEAR(uniform.records[998].metric, 7.0781e-4, 1e-7);
  EXPECT_EQ(uniform.records.back().lmo_calls, (std::vector<std::int64_t>{1000, 1000}));
}

TEST(SelfPlayTest, DeterministicAndMonotoneRecords) {
  LearnerConfig c = Config(Algorithm::kFtpl, 0.5);
  c.seed = 3;
  LearnerConfig d = c;
  d.seed = 4;
  SelfPlayOptions o;
  o.lmo_budget = 1500;
  const SelfPlayResult a = RunSelfPlay(Kuhn2(), {c, d}, o);
  const SelfPlayResult b = RunSelfPlay(Kuhn2(), {c, d}, o);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    EXPECT_EQ(a.records[k].metric, b.records[k].metric);
    EXPECT_EQ(a.records[k].lmo_calls, b.records[k].lmo_calls);
    if (k > 0) {
      EXPECT_GT(a.records[k].avg_lmo_calls, a.records[k - 1].avg_lmo_calls);
      EXPECT_GT(a.records[k].iteration, a.records[k - 1].iteration);
    }
  }
  EXPECT_EQ(a.average, b.average);
}

TEST(SelfPlayTest, RecordScheduleAndBudget) {
  const LearnerConfig fp = Config(Algorithm::kFp);
  SelfPlayOptions o;
  o.lmo_budget = 1505;
  const SelfPlayResult r = RunSelfPlay(Kuhn2(), {fp, fp}, o);
  // 1..1000 every round, then every 10th, then the final round.
  ASSERT_EQ(r.records.size(), 1000u + 50u + 1u);
  EXPECT_EQ(r.records[1000].iteration, 1010);
  EXPECT_EQ(r.records.back().iteration, 1505);
  EXPECT_DOUBLE_EQ(r.records.back().avg_lmo_calls, 1505.0);
  EXPECT_EQ(r.iterations, 1505);

  o.record_every = 100;
  o.lmo_budget = 950;
  const SelfPlayResult sparse = RunSelfPlay(Kuhn2(), {fp, fp}, o);
  ASSERT_EQ(sparse.records.size(), 10u);
  EXPECT_EQ(sparse.records.back().iteration, 950);
}

TEST(SelfPlayTest, FrankWolfeRespectsPerIterationBudget) {
  LearnerConfig c = Config(Algorithm::kFwRomd, 1.28);
  c.max_lmo_calls = 5;
  SelfPlayOptions o;
  o.max_iterations = 200;
  o.lmo_budget = 1e9;
  const SelfPlayResult r = RunSelfPlay(Kuhn2(), {c, c}, o);
  for (std::size_t k = 1; k < r.records.size(); ++k) {
    for (int i = 0; i < 2; ++i) {
      const auto step = r.records[k].lmo_calls[i] - r.records[k - 1].lmo_calls[i];
      EXPECT_GE(step, 1);
      EXPECT_LE(step, 5);
    }
  }
}

TEST(SelfPlayTest, RestartingConverges) {
  LearnerConfig c = Config(Algorithm::kFwRomd, 1.28);
  c.max_lmo_calls = 5;
  SelfPlayOptions o;
  o.restart = true;
  o.averaging = Averaging::kLinear;
  o.lmo_budget = 2000;
  const SelfPlayResult r = RunSelfPlay(Kuhn2(), {c, c}, o);
  ASSERT_TRUE(r.ok);
  EXPECT_LT(r.records.back().metric, 1e-2);
  EXPECT_GT(r.metric_lmo_calls, 0);
}

TEST(SelfPlayTest, ThreePlayersUseRegretMetricAndUniformAveraging) {
  const SequenceFormGame g = ToSequenceForm(BuildKuhn(3));
  const LearnerConfig fp = Config(Algorithm::kFp);
  SelfPlayOptions o;
  o.max_iterations = 50;
  o.averaging = Averaging::kLast;
  const SelfPlayResult last = RunSelfPlay(g, {fp, fp, fp}, o);
  o.averaging = Averaging::kUniform;
  const SelfPlayResult uniform = RunSelfPlay(g, {fp, fp, fp}, o);
  EXPECT_EQ(last.average, uniform.average);
  for (const RunRecord& rec : uniform.records) {
    EXPECT_GE(rec.metric, -1e-12);
    // The worst player's regret is at least the mean.
    EXPECT_GE(rec.metric * rec.iteration, rec.social_regret / 3 - 1e-12);
  }
}

TEST(SelfPlayTest, LearnerFailureKeepsPartialRecords) {
  LearnerConfig c = Config(Algorithm::kFwRomd, 1.0);
  c.apo_stop = ApoStop::kWolfeGap;
  c.eps_schedule = {EpsSchedule::Kind::kFixed, 1e-300};
  SelfPlayOptions o;
  o.max_iterations = 5;
  const SelfPlayResult r = RunSelfPlay(Kuhn2(), {c, c}, o);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.error.find("iteration 2"), std::string::npos);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_EQ(r.records.size(), 1u);
}

}  // namespace
}  // namespace pfg
