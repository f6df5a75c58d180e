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

// N-player self-play with iterate averaging, adaptive restarts and run-time
// checks of the regret and stability inequalities.

#ifndef PFG_SELFPLAY_H_
#define PFG_SELFPLAY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pfg/games.h"
#include "pfg/learners.h"

namespace pfg {

enum class Averaging { kUniform, kLinear, kQuadratic, kLast };

std::string_view AveragingName(Averaging averaging);
std::optional<Averaging> ParseAveraging(std::string_view name);

// Weight on the newest iterate, x_bar <- x_bar + f(k) (x - x_bar), where k
// counts iterates already folded in since the last restart.
double AveragingWeight(Averaging averaging, int k);

struct RestartState {
  int r = 0;
  double xi = 0.0;
};

// Restart when the gap has halved since the last restart, else advance r.
RestartState AdaptiveRestartHook(RestartState state, double current_gap);

// Half the squared diameter of the polytope. Exact when the vertex count is
// at most `vertex_cap`, otherwise the bound n.
double EstimateOmega(const Treeplex& polytope, std::int64_t vertex_cap = 2000);

// RHS - LHS of the refined RVU bound at horizon T:
//   (omega + bonus)/eta + eta * sum_loss_var - sum_move_sq/(4 eta) - regret
double RvuSlack(double omega, double eta, double bonus, double sum_loss_var,
                double sum_move_sq, double regret);

// ||x^t - x^{t-1}|| - (3 eta + sqrt(2 eta eps^t)).
double StabilityMargin(double step_norm, double eta, double eps);

struct SelfPlayOptions {
  // Stop once the mean learning LMO count per player reaches this value.
  double lmo_budget = 1e4;
  Averaging averaging = Averaging::kUniform;
  bool restart = false;
  // 0: every iteration up to 1000, then every 10^(d-3) iterations for
  // d-digit iteration counts.
  int record_every = 0;
  // Per-player omega for the regret audit; empty means EstimateOmega.
  std::vector<double> omega;
  // Hard stop on iterations regardless of budget (0: none).
  int max_iterations = 0;
};

struct RunRecord {
  int iteration = 0;
  std::vector<std::int64_t> lmo_calls;  // cumulative, per player
  double avg_lmo_calls = 0.0;
  // Duality gap of the averaged profile (two-player zero-sum) or max average
  // regret of the play so far.
  double metric = 0.0;
  // Smallest per-player RVU slack; NaN when no player is audited.
  double rvu_slack = 0.0;
  // Largest stability margin over players and over iterations since the
  // previous record; NaN when no player is audited.
  double stability_margin = 0.0;
  double social_regret = 0.0;
  double wall_seconds = 0.0;
};

struct SelfPlayResult {
  std::vector<RunRecord> records;
  JointStrategy average;
  JointStrategy last;
  std::vector<double> omega;
  // LMO calls spent on metrics and restart checks, not charged to learners.
  std::int64_t metric_lmo_calls = 0;
  int iterations = 0;
  bool ok = true;
  std::string error;
};

// Throws std::invalid_argument on bad options (restart outside two-player
// zero-sum, config count mismatch). Learner failures end the run early with
// ok = false and the records gathered so far.
SelfPlayResult RunSelfPlay(const SequenceFormGame& game,
                           const std::vector<LearnerConfig>& configs,
                           const SelfPlayOptions& options);

}  // namespace pfg

#endif  // PFG_SELFPLAY_H_
