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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pfg/games.h"

namespace pfg {

namespace {

struct PlayerBuild {
  int num_sequences = 1;
  std::vector<DecisionPoint> decision_points;
  std::vector<std::string> infoset_keys;
  std::vector<std::string> sequence_labels = {"<root>"};
  // Tree infoset id -> decision point index.
  std::unordered_map<int, int> decision_point_of;
};

// Conservative bound B_i = max(G_i, S_i) on gradient norm and Lipschitz
// constant of player i's raw loss.
double PayoffBound(const SequenceFormGame& game, int player) {
  const int n = game.NumSequences(player);
  Vector g(n, 0.0);
  for (const Leaf& leaf : game.leaves) {
    g[leaf.seq[player]] += leaf.chance_prob * std::abs(leaf.payoff[player]);
  }
  double grad_sq = 0.0;
  for (double v : g) grad_sq += v * v;
  double lipschitz = 0.0;
  for (int other = 0; other < game.num_players; ++other) {
    if (other == player) continue;
    const auto m = static_cast<std::int64_t>(game.NumSequences(other));
    std::unordered_map<std::int64_t, double> block;
    for (const Leaf& leaf : game.leaves) {
      block[leaf.seq[player] * m + leaf.seq[other]] +=
          leaf.chance_prob * std::abs(leaf.payoff[player]);
    }
    double frob = 0.0;
    for (const auto& [key, v] : block) frob += v * v;
    lipschitz = std::max(lipschitz, std::sqrt(frob));
  }
  return std::max(std::sqrt(grad_sq), lipschitz);
}

}  // namespace

SequenceFormGame ToSequenceForm(const GameTree& tree) {
  tree.Validate();
  const int num_players = tree.num_players;
  std::vector<PlayerBuild> build(num_players);
  SequenceFormGame game;
  game.name = tree.name;
  game.num_players = num_players;

  struct Frame {
    int node;
    double prob;
    std::vector<int> seq;
  };
  std::vector<Frame> stack = {{tree.root, 1.0, std::vector<int>(num_players, 0)}};
  // Depth-first with children pushed in reverse keeps sequence numbering in
  // tree order.
  while (!stack.empty()) {
    Frame frame = std::move(stack.back());
    stack.pop_back();
    const GameNode& node = tree.nodes[frame.node];
    switch (node.kind) {
      case NodeKind::kTerminal:
        if (frame.prob > 0.0) {
          game.leaves.push_back({frame.prob, frame.seq, node.payoffs});
        }
        break;
      case NodeKind::kChance:
        for (std::size_t k = node.children.size(); k-- > 0;) {
          stack.push_back({node.children[k], frame.prob * node.probs[k], frame.seq});
        }
        break;
      case NodeKind::kDecision: {
        const Infoset& info = tree.infosets[node.infoset];
        PlayerBuild& pb = build[info.player];
        const int parent = frame.seq[info.player];
        auto [it, inserted] = pb.decision_point_of.try_emplace(
            node.infoset, static_cast<int>(pb.decision_points.size()));
        if (inserted) {
          DecisionPoint dp;
          dp.parent = parent;
          for (const std::string& action : info.actions) {
            dp.children.push_back(pb.num_sequences++);
            pb.sequence_labels.push_back(info.key + "/" + action);
          }
          pb.decision_points.push_back(std::move(dp));
          pb.infoset_keys.push_back(info.key);
        } else if (pb.decision_points[it->second].parent != parent) {
          throw GameError("imperfect recall: infoset " + info.key +
                          " is reached from two different sequences");
        }
        const DecisionPoint& dp = pb.decision_points[it->second];
        for (std::size_t k = node.children.size(); k-- > 0;) {
          Frame child{node.children[k], frame.prob, frame.seq};
          child.seq[info.player] = dp.children[k];
          stack.push_back(std::move(child));
        }
        break;
      }
    }
  }

  for (PlayerBuild& pb : build) {
    game.treeplexes.emplace_back(pb.num_sequences, std::move(pb.decision_points));
    game.infoset_keys.push_back(std::move(pb.infoset_keys));
    game.sequence_labels.push_back(std::move(pb.sequence_labels));
  }

  game.zero_sum = true;
  for (const Leaf& leaf : game.leaves) {
    double total = 0.0;
    for (double u : leaf.payoff) total += u;
    if (std::abs(total) > 1e-12) {
      game.zero_sum = false;
      break;
    }
  }
  game.scale.resize(num_players);
  for (int i = 0; i < num_players; ++i) {
    game.scale[i] = std::max(PayoffBound(game, i), 1e-300);
  }
  if (game.zero_sum) {
    const double common = *std::max_element(game.scale.begin(), game.scale.end());
    std::fill(game.scale.begin(), game.scale.end(), common);
  }
  game.coefficient.assign(num_players, Vector(game.leaves.size()));
  for (int i = 0; i < num_players; ++i) {
    for (std::size_t k = 0; k < game.leaves.size(); ++k) {
      const Leaf& leaf = game.leaves[k];
      game.coefficient[i][k] = leaf.chance_prob * leaf.payoff[i] / game.scale[i];
    }
  }
  return game;
}

Vector FromBehavioral(const Treeplex& polytope,
                      const std::vector<Vector>& behavior) {
  const auto& dps = polytope.decision_points();
  if (behavior.size() != dps.size()) {
    throw GameError("behavioral strategy needs one distribution per decision point");
  }
  Vector x(polytope.num_sequences(), 0.0);
  x[0] = 1.0;
  // Children always carry larger indices than their parent, so a pass in
  // sequence order sees every parent mass before it is split.
  std::vector<int> order(dps.size());
  for (std::size_t d = 0; d < dps.size(); ++d) order[d] = static_cast<int>(d);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return dps[a].parent < dps[b].parent; });
  for (int d : order) {
    const DecisionPoint& dp = dps[d];
    if (behavior[d].size() != dp.children.size()) {
      throw GameError("behavioral strategy has the wrong action count");
    }
    for (std::size_t k = 0; k < dp.children.size(); ++k) {
      x[dp.children[k]] = x[dp.parent] * behavior[d][k];
    }
  }
  return x;
}

namespace {

void CheckJoint(const SequenceFormGame& game, const JointStrategy& x) {
  if (static_cast<int>(x.size()) != game.num_players) {
    throw GameError("joint strategy has the wrong number of players");
  }
  for (int i = 0; i < game.num_players; ++i) {
    if (static_cast<int>(x[i].size()) != game.NumSequences(i)) {
      throw GameError("strategy of player " + std::to_string(i) +
                      " has the wrong dimension");
    }
  }
}

double ReachOthers(const SequenceFormGame& game, const Leaf& leaf,
                   const JointStrategy& x, int skip) {
  double reach = 1.0;
  for (int j = 0; j < game.num_players; ++j) {
    if (j != skip) reach *= x[j][leaf.seq[j]];
  }
  return reach;
}

}  // namespace

double Utility(const SequenceFormGame& game, int player,
               const JointStrategy& x) {
  CheckJoint(game, x);
  double total = 0.0;
  for (std::size_t k = 0; k < game.leaves.size(); ++k) {
    total += game.coefficient[player][k] * ReachOthers(game, game.leaves[k], x, -1);
  }
  return total;
}

double RawUtility(const SequenceFormGame& game, int player,
                  const JointStrategy& x) {
  return Utility(game, player, x) * game.scale[player];
}

Vector LossGradient(const SequenceFormGame& game, int player,
                    const JointStrategy& x) {
  CheckJoint(game, x);
  Vector loss(game.NumSequences(player), 0.0);
  for (std::size_t k = 0; k < game.leaves.size(); ++k) {
    const Leaf& leaf = game.leaves[k];
    loss[leaf.seq[player]] -=
        game.coefficient[player][k] * ReachOthers(game, leaf, x, player);
  }
  return loss;
}

double DualityGap(const SequenceFormGame& game, const JointStrategy& x) {
  double gap = 0.0;
  for (int i = 0; i < game.num_players; ++i) {
    const Vector loss = LossGradient(game, i, x);
    const Vertex br = Lmo(game.treeplexes[i], loss);
    // Best-response value minus current value, both as negated losses.
    gap += Dot(loss, x[i]) - Dot(loss, br);
  }
  if (gap < 0.0 && gap > -1e-12) gap = 0.0;
  return gap;
}

void RegretTracker::Add(std::span<const double> strategy,
                        std::span<const double> loss) {
  for (std::size_t k = 0; k < loss.size(); ++k) cumulative_loss_[k] += loss[k];
  incurred_ += Dot(loss, strategy);
  ++rounds_;
}

double RegretTracker::Regret(const Treeplex& polytope) const {
  const Vertex best = Lmo(polytope, cumulative_loss_);
  return incurred_ - Dot(cumulative_loss_, best);
}

double MaxAvgRegret(const SequenceFormGame& game,
                    const std::vector<std::vector<PlayRecord>>& histories) {
  if (static_cast<int>(histories.size()) != game.num_players) {
    throw GameError("need one history per player");
  }
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < game.num_players; ++i) {
    if (histories[i].empty()) throw GameError("empty play history");
    RegretTracker tracker(game.NumSequences(i));
    for (const PlayRecord& r : histories[i]) tracker.Add(r.strategy, r.loss);
    worst = std::max(worst, tracker.Regret(game.treeplexes[i]) / tracker.rounds());
  }
  return worst;
}

}  // namespace pfg
