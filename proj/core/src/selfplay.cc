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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pfg {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool ShouldRecord(int t, int every) {
  if (every > 0) return t % every == 0;
  if (t <= 1000) return true;
  int step = 1;
  for (int v = t; v >= 1000; v /= 10) step *= 10;
  return t % step == 0;
}

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

bool AuditsStability(const LearnerConfig& c) {
  return IsFrankWolfeFamily(c.algorithm) && c.apo_stop == ApoStop::kWolfeGap;
}

bool AuditsRvu(const LearnerConfig& c) {
  return c.algorithm == Algorithm::kFwRomd && c.apo_stop == ApoStop::kWolfeGap;
}

}  // namespace

std::string_view AveragingName(Averaging averaging) {
  switch (averaging) {
    case Averaging::kUniform:
      return "uniform";
    case Averaging::kLinear:
      return "linear";
    case Averaging::kQuadratic:
      return "quadratic";
    case Averaging::kLast:
      return "last";
  }
  return "unknown";
}

std::optional<Averaging> ParseAveraging(std::string_view name) {
  if (name == "uniform" || name == "constant") return Averaging::kUniform;
  if (name == "linear") return Averaging::kLinear;
  if (name == "quadratic") return Averaging::kQuadratic;
  if (name == "last") return Averaging::kLast;
  return std::nullopt;
}

double AveragingWeight(Averaging averaging, int k) {
  const double t = static_cast<double>(k);
  switch (averaging) {
    case Averaging::kUniform:
      return 1.0 / (t + 1.0);
    case Averaging::kLinear:
      return 2.0 / (t + 2.0);
    case Averaging::kQuadratic:
      return (6.0 * t + 6.0) / ((t + 2.0) * (2.0 * t + 3.0));
    case Averaging::kLast:
      return 1.0;
  }
  return 1.0;
}

RestartState AdaptiveRestartHook(RestartState state, double current_gap) {
  if (current_gap <= state.xi / 2.0) {
    state.xi = current_gap;
    state.r = 0;
  } else {
    ++state.r;
  }
  return state;
}

double EstimateOmega(const Treeplex& polytope, std::int64_t vertex_cap) {
  if (polytope.CountVertices() <= vertex_cap) {
    return 0.5 * SquaredDiameter(polytope, vertex_cap);
  }
  return static_cast<double>(polytope.num_sequences());
}

double RvuSlack(double omega, double eta, double bonus, double sum_loss_var,
                double sum_move_sq, double regret) {
  return (omega + bonus) / eta + eta * sum_loss_var -
         sum_move_sq / (4.0 * eta) - regret;
}

double StabilityMargin(double step_norm, double eta, double eps) {
  return step_norm - (3.0 * eta + std::sqrt(2.0 * eta * eps));
}

SelfPlayResult RunSelfPlay(const SequenceFormGame& game,
                           const std::vector<LearnerConfig>& configs,
                           const SelfPlayOptions& options) {
  const int n = game.num_players;
  if (static_cast<int>(configs.size()) != n) {
    throw std::invalid_argument("need one learner config per player");
  }
  const bool two_player_zero_sum = n == 2 && game.zero_sum;
  if (options.restart && !two_player_zero_sum) {
    throw std::invalid_argument(
        "adaptive restarting needs a two-player zero-sum game");
  }
  if (!(options.lmo_budget > 0.0)) {
    throw std::invalid_argument("lmo budget must be positive");
  }
  if (!options.omega.empty() && static_cast<int>(options.omega.size()) != n) {
    throw std::invalid_argument("omega needs one value per player");
  }
  const Averaging averaging = n >= 3 ? Averaging::kUniform : options.averaging;
  const auto start = std::chrono::steady_clock::now();

  SelfPlayResult result;
  std::vector<Learner> learners;
  learners.reserve(n);
  for (int i = 0; i < n; ++i) learners.emplace_back(game.treeplexes[i], configs[i]);
  bool any_rvu = false;
  for (const auto& c : configs) any_rvu = any_rvu || AuditsRvu(c);
  result.omega = options.omega;
  if (result.omega.empty()) {
    for (int i = 0; i < n; ++i) {
      result.omega.push_back(any_rvu ? EstimateOmega(game.treeplexes[i])
                                     : kNaN);
    }
  }

  JointStrategy x(n);
  JointStrategy prev_x(n);
  JointStrategy prev_loss(n);
  std::vector<RegretTracker> trackers;
  for (int i = 0; i < n; ++i) {
    prev_x[i] = InitialStrategy(game.treeplexes[i]);
    prev_loss[i].assign(game.NumSequences(i), 0.0);
    trackers.emplace_back(game.NumSequences(i));
  }
  result.average = prev_x;
  std::vector<double> sum_loss_var(n, 0.0);
  std::vector<double> sum_move_sq(n, 0.0);

  RestartState restart;
  if (options.restart) {
    restart.xi = DualityGap(game, result.average);
    result.metric_lmo_calls += n;
  }

  double window_margin = -std::numeric_limits<double>::infinity();
  bool any_stability = false;
  auto avg_calls = [&] {
    double total = 0.0;
    for (const auto& l : learners) total += static_cast<double>(l.state().lmo_calls_total);
    return total / n;
  };

  for (int t = 1;; ++t) {
    if (options.max_iterations > 0 && t > options.max_iterations) break;
    if (avg_calls() >= options.lmo_budget) break;

    try {
      for (int i = 0; i < n; ++i) {
        std::span<const double> pred;
        if (IsOptimistic(configs[i].algorithm)) pred = prev_loss[i];
        x[i] = learners[i].Next(pred);
      }
    } catch (const std::exception& e) {
      result.ok = false;
      result.error = "iteration " + std::to_string(t) + ": " + e.what();
      break;
    }

    for (int i = 0; i < n; ++i) {
      const double move_sq = SquaredDistance(x[i], prev_x[i]);
      if (t >= 2) sum_move_sq[i] += move_sq;
      if (AuditsStability(configs[i])) {
        any_stability = true;
        window_margin = std::max(
            window_margin, StabilityMargin(std::sqrt(move_sq), configs[i].eta,
                                           learners[i].last_eps()));
      }
    }

    const bool last = avg_calls() >= options.lmo_budget ||
                      (options.max_iterations > 0 && t == options.max_iterations);
    const bool record = last || ShouldRecord(t, options.record_every);

    // The RVU bound at horizon T uses x^{T+1}, which is x^t here.
    double rvu = kNaN;
    if (record && any_rvu) {
      rvu = std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i) {
        if (!AuditsRvu(configs[i])) continue;
        const int horizon = t - 1;
        double regret = 0.0;
        if (horizon > 0) {
          regret = trackers[i].Regret(game.treeplexes[i]);
          ++result.metric_lmo_calls;
        }
        const EpsSchedule& sched = configs[i].eps_schedule;
        const double bonus = sched.kind == EpsSchedule::Kind::kInverseSquare
                                 ? 2.0
                                 : horizon * sched.eps;
        rvu = std::min(rvu, RvuSlack(result.omega[i], configs[i].eta, bonus,
                                     sum_loss_var[i], sum_move_sq[i], regret));
      }
    }

    for (int i = 0; i < n; ++i) {
      Vector loss = LossGradient(game, i, x);
      trackers[i].Add(x[i], loss);
      sum_loss_var[i] += SquaredDistance(loss, prev_loss[i]);
      learners[i].Observe(loss);
      prev_loss[i] = std::move(loss);
      prev_x[i] = x[i];
    }

    const int k = options.restart ? restart.r : t - 1;
    const double w = AveragingWeight(averaging, k);
    for (int i = 0; i < n; ++i) {
      Vector& avg = result.average[i];
      for (std::size_t s = 0; s < avg.size(); ++s) avg[s] += w * (x[i][s] - avg[s]);
    }
    double gap = kNaN;
    if (options.restart) {
      gap = DualityGap(game, result.average);
      result.metric_lmo_calls += n;
      restart = AdaptiveRestartHook(restart, gap);
    }
    result.iterations = t;

    if (record) {
      RunRecord rec;
      rec.iteration = t;
      for (const auto& l : learners) rec.lmo_calls.push_back(l.state().lmo_calls_total);
      rec.avg_lmo_calls = avg_calls();
      double social = 0.0;
      double worst_avg = -std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i) {
        const double reg = trackers[i].Regret(game.treeplexes[i]);
        ++result.metric_lmo_calls;
        social += reg;
        worst_avg = std::max(worst_avg, reg / t);
      }
      rec.social_regret = social;
      if (two_player_zero_sum) {
        if (std::isnan(gap)) {
          gap = DualityGap(game, result.average);
          result.metric_lmo_calls += n;
        }
        rec.metric = gap;
      } else {
        rec.metric = worst_avg;
      }
      rec.rvu_slack = rvu;
      rec.stability_margin = any_stability ? window_margin : kNaN;
      window_margin = -std::numeric_limits<double>::infinity();
      rec.wall_seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
      result.records.push_back(std::move(rec));
    }
  }
  result.last = prev_x;
  return result;
}

}  // namespace pfg
