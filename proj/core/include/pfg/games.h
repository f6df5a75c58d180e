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

#ifndef PFG_GAMES_H_
#define PFG_GAMES_H_

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pfg/polytope.h"

namespace pfg {

class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class NodeKind { kChance, kDecision, kTerminal };

struct Infoset {
  int player = 0;
  std::string key;
  std::vector<std::string> actions;
};

struct GameNode {
  NodeKind kind = NodeKind::kTerminal;
  // Decision nodes: index into GameTree::infosets.
  int infoset = -1;
  std::vector<int> children;
  // Chance nodes: outcome labels and probabilities, parallel to `children`.
  std::vector<std::string> outcomes;
  std::vector<double> probs;
  // Terminal nodes: one payoff per player.
  std::vector<double> payoffs;
};

// Extensive-form game tree. Decision nodes sharing an infoset are
// indistinguishable to the acting player.
struct GameTree {
  std::string name;
  int num_players = 0;
  std::vector<Infoset> infosets;
  std::vector<GameNode> nodes;
  int root = 0;

  // Throws GameError if chance probabilities or infoset structure are broken.
  void Validate() const;
  int NumTerminals() const;
};

struct LeducDeck {
  int ranks = 3;
  int suits = 2;
};

// N-player Kuhn poker: one-chip ante, a single bet of one chip, showdown to
// the highest card still in. `ranks` = 0 picks the default (players + 1).
GameTree BuildKuhn(int players, int ranks = 0);
// Two-player Leduc hold'em with raise sizes 2 and 4 and at most `raise_cap`
// raises per round.
GameTree BuildLeduc(int raise_cap, LeducDeck deck = {});
// Liar's Dice with one die per player. `faces` = 0 picks the default
// (6 for two players, 3 for three).
GameTree BuildLiarsDice(int players, int faces = 0);
// Limited-information Goofspiel with cards {-1, 0, 1}: bids go to a referee
// and only the winners of each prize are announced.
GameTree BuildGoofspiel(int players = 3);
// Two-player simultaneous-move matrix game.
GameTree BuildMatrixGame(const std::vector<std::vector<double>>& payoff_row,
                         const std::vector<std::vector<double>>& payoff_col,
                         std::string name = "matrix");
GameTree BuildMatchingPennies();

// Text serialization, one record per node. See docs/game_format.md.
void WriteGameTree(const GameTree& tree, std::ostream& out);
GameTree ReadGameTree(std::istream& in);

struct Leaf {
  double chance_prob = 0.0;
  std::vector<int> seq;
  std::vector<double> payoff;  // raw, before scaling
};

struct SequenceFormGame {
  std::string name;
  int num_players = 0;
  std::vector<Treeplex> treeplexes;
  std::vector<Leaf> leaves;
  // Player i's normalized payoff is payoff_i / scale[i].
  std::vector<double> scale;
  bool zero_sum = false;
  // Infoset key per (player, decision point) and label per (player, sequence).
  std::vector<std::vector<std::string>> infoset_keys;
  std::vector<std::vector<std::string>> sequence_labels;
  // coefficient[i][k] = chance_prob * payoff_i / scale[i] for leaf k.
  std::vector<Vector> coefficient;

  int NumSequences(int player) const {
    return treeplexes[player].num_sequences();
  }
};

// One sequence-form point per player.
using JointStrategy = std::vector<Vector>;

// Builds per-player treeplexes and the leaf list, then normalizes payoffs so
// that loss gradients have norm at most 1 and are 1-Lipschitz in the other
// players' strategies. Zero-sum games share one scale across players.
// Throws GameError on imperfect recall.
SequenceFormGame ToSequenceForm(const GameTree& tree);

// Sequence-form point from per-decision-point action probabilities.
Vector FromBehavioral(const Treeplex& polytope,
                      const std::vector<Vector>& behavior);

// Expected normalized utility of `player`.
double Utility(const SequenceFormGame& game, int player,
               const JointStrategy& x);
// Expected raw utility (game units).
double RawUtility(const SequenceFormGame& game, int player,
                  const JointStrategy& x);

// Loss seen by `player`: the negative gradient of its normalized utility.
Vector LossGradient(const SequenceFormGame& game, int player,
                    const JointStrategy& x);

// Sum over players of the best-response improvement. For two-player
// zero-sum games this is max_y <A x, y> - min_x <A x, y>.
double DualityGap(const SequenceFormGame& game, const JointStrategy& x);

// Running sums for one player's regret against the best fixed vertex.
class RegretTracker {
 public:
  explicit RegretTracker(int num_sequences)
      : cumulative_loss_(num_sequences, 0.0) {}

  void Add(std::span<const double> strategy, std::span<const double> loss);
  // Cumulative regret; one LMO call.
  double Regret(const Treeplex& polytope) const;
  int rounds() const { return rounds_; }
  const Vector& cumulative_loss() const { return cumulative_loss_; }

 private:
  Vector cumulative_loss_;
  double incurred_ = 0.0;
  int rounds_ = 0;
};

struct PlayRecord {
  Vector strategy;
  Vector loss;
};

// max_i (1/T) (sum_t <l_i^t, x_i^t> - min_v <sum_t l_i^t, v>).
double MaxAvgRegret(const SequenceFormGame& game,
                    const std::vector<std::vector<PlayRecord>>& histories);

}  // namespace pfg

#endif  // PFG_GAMES_H_
