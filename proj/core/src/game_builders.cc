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
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "pfg/games.h"

namespace pfg {

namespace {

// Appends nodes and interns infosets by key.
class TreeBuilder {
 public:
  TreeBuilder(std::string name, int players) {
    tree_.name = std::move(name);
    tree_.num_players = players;
  }

  int Chance(std::vector<std::string> outcomes, std::vector<double> probs) {
    GameNode node;
    node.kind = NodeKind::kChance;
    node.outcomes = std::move(outcomes);
    node.probs = std::move(probs);
    tree_.nodes.push_back(std::move(node));
    return static_cast<int>(tree_.nodes.size()) - 1;
  }

  int Decision(int player, const std::string& key,
               const std::vector<std::string>& actions) {
    const std::string full = "p" + std::to_string(player) + "|" + key;
    auto [it, inserted] =
        infoset_ids_.try_emplace(full, static_cast<int>(tree_.infosets.size()));
    if (inserted) tree_.infosets.push_back({player, full, actions});
    GameNode node;
    node.kind = NodeKind::kDecision;
    node.infoset = it->second;
    tree_.nodes.push_back(std::move(node));
    return static_cast<int>(tree_.nodes.size()) - 1;
  }

  int Terminal(std::vector<double> payoffs) {
    GameNode node;
    node.kind = NodeKind::kTerminal;
    node.payoffs = std::move(payoffs);
    tree_.nodes.push_back(std::move(node));
    return static_cast<int>(tree_.nodes.size()) - 1;
  }

  void Link(int parent, int child) {
    tree_.nodes[parent].children.push_back(child);
  }

  GameTree Finish() {
    tree_.root = 0;
    tree_.Validate();
    return std::move(tree_);
  }

 private:
  GameTree tree_;
  std::map<std::string, int> infoset_ids_;
};

// All ordered selections of `k` distinct items from [0, n).
std::vector<std::vector<int>> OrderedDeals(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(current.size()) == k) {
      out.push_back(current);
      return;
    }
    for (int c = 0; c < n; ++c) {
      if (used[c]) continue;
      used[c] = 1;
      current.push_back(c);
      self(self);
      current.pop_back();
      used[c] = 0;
    }
  };
  rec(rec);
  return out;
}

std::string JoinInts(const std::vector<int>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(values[i]);
  }
  return s;
}

// ---------------------------------------------------------------- Kuhn

class KuhnBuilder {
 public:
  KuhnBuilder(int players, int ranks)
      : players_(players),
        builder_("kuhn" + std::to_string(players) + "p_r" +
                     std::to_string(ranks),
                 players) {
    const auto deals = OrderedDeals(ranks, players);
    std::vector<std::string> labels;
    for (const auto& d : deals) labels.push_back(JoinInts(d));
    const int root = builder_.Chance(
        labels, std::vector<double>(deals.size(), 1.0 / deals.size()));
    for (const auto& deal : deals) {
      cards_ = deal;
      builder_.Link(root, Betting(""));
    }
  }

  GameTree Finish() { return builder_.Finish(); }

 private:
  // history: 'k' check, 'b' bet, 'f' fold, 'c' call.
  int Betting(const std::string& history) {
    const auto bet_at = history.find('b');
    if (bet_at == std::string::npos) {
      if (static_cast<int>(history.size()) == players_) return Showdown(history);
      const int p = static_cast<int>(history.size());
      const int node = Decision(p, history, {"check", "bet"});
      builder_.Link(node, Betting(history + 'k'));
      builder_.Link(node, Betting(history + 'b'));
      return node;
    }
    const int bettor = static_cast<int>(bet_at);
    const int responses = static_cast<int>(history.size() - bet_at - 1);
    if (responses == players_ - 1) return Showdown(history);
    const int p = (bettor + 1 + responses) % players_;
    const int node = Decision(p, history, {"fold", "call"});
    builder_.Link(node, Betting(history + 'f'));
    builder_.Link(node, Betting(history + 'c'));
    return node;
  }

  int Decision(int player, const std::string& history,
               const std::vector<std::string>& actions) {
    return builder_.Decision(
        player, std::to_string(cards_[player]) + ":" + history, actions);
  }

  int Showdown(const std::string& history) {
    std::vector<double> contribution(players_, 1.0);
    std::vector<char> in(players_, 1);
    const auto bet_at = history.find('b');
    if (bet_at != std::string::npos) {
      const int bettor = static_cast<int>(bet_at);
      contribution[bettor] += 1.0;
      for (std::size_t k = bet_at + 1; k < history.size(); ++k) {
        const int p = (bettor + static_cast<int>(k - bet_at)) % players_;
        if (history[k] == 'c') {
          contribution[p] += 1.0;
        } else {
          in[p] = 0;
        }
      }
    }
    int winner = -1;
    for (int p = 0; p < players_; ++p) {
      if (in[p] && (winner < 0 || cards_[p] > cards_[winner])) winner = p;
    }
    const double pot =
        std::accumulate(contribution.begin(), contribution.end(), 0.0);
    std::vector<double> payoffs(players_);
    for (int p = 0; p < players_; ++p) payoffs[p] = -contribution[p];
    payoffs[winner] += pot;
    return builder_.Terminal(std::move(payoffs));
  }

  int players_;
  TreeBuilder builder_;
  std::vector<int> cards_;
};

// ---------------------------------------------------------------- Leduc

class LeducBuilder {
 public:
  LeducBuilder(int raise_cap, LeducDeck deck)
      : raise_cap_(raise_cap),
        deck_(deck),
        builder_("leduc_cap" + std::to_string(raise_cap) + "_r" +
                     std::to_string(deck.ranks) + "s" +
                     std::to_string(deck.suits),
                 2) {
    const int cards = deck.ranks * deck.suits;
    const auto deals = OrderedDeals(cards, 2);
    std::vector<std::string> labels;
    for (const auto& d : deals) labels.push_back(JoinInts(d));
    const int root = builder_.Chance(
        labels, std::vector<double>(deals.size(), 1.0 / deals.size()));
    for (const auto& deal : deals) {
      hole_ = {Rank(deal[0]), Rank(deal[1])};
      dealt_ = deal;
      builder_.Link(root, Round(0, "", "", {1.0, 1.0}, 0, false));
    }
  }

  GameTree Finish() { return builder_.Finish(); }

 private:
  int Rank(int card) const { return card / deck_.suits; }

  // `history` covers the current round only: 'k' check, 'r' raise, 'c' call,
  // 'f' fold.
  int Round(int round, const std::string& past, const std::string& history,
            std::vector<double> contribution, int raises, bool facing) {
    const int p = static_cast<int>(history.size()) % 2;
    const std::string board = round == 0 ? "-" : std::to_string(board_rank_);
    const std::string key = std::to_string(hole_[p]) + ":" + board + ":" +
                            past + (round ? "/" : "") + history;
    const double amount = round == 0 ? 2.0 : 4.0;
    std::vector<std::string> actions;
    std::vector<char> codes;
    if (facing) {
      actions = {"fold", "call"};
      codes = {'f', 'c'};
    } else {
      actions = {"check"};
      codes = {'k'};
    }
    if (raises < raise_cap_) {
      actions.push_back("raise");
      codes.push_back('r');
    }
    const int node = builder_.Decision(p, key, actions);
    for (char code : codes) {
      const std::string next = history + code;
      std::vector<double> c = contribution;
      int child;
      switch (code) {
        case 'f': {
          std::vector<double> payoffs(2);
          payoffs[p] = -c[p];
          payoffs[1 - p] = c[p];
          child = builder_.Terminal(std::move(payoffs));
          break;
        }
        case 'k':
          child = next == "kk" ? EndRound(round, next, c)
                               : Round(round, past, next, c, raises, false);
          break;
        case 'c':
          c[p] = c[1 - p];
          child = EndRound(round, next, c);
          break;
        default:  // 'r'
          c[p] = c[1 - p] + amount;
          child = Round(round, past, next, c, raises + 1, true);
          break;
      }
      builder_.Link(node, child);
    }
    return node;
  }

  int EndRound(int round, const std::string& history,
               const std::vector<double>& contribution) {
    if (round == 1) return Showdown(contribution);
    std::vector<std::string> labels;
    std::vector<int> remaining;
    for (int card = 0; card < deck_.ranks * deck_.suits; ++card) {
      if (card == dealt_[0] || card == dealt_[1]) continue;
      remaining.push_back(card);
      labels.push_back(std::to_string(card));
    }
    const int node = builder_.Chance(
        labels, std::vector<double>(remaining.size(), 1.0 / remaining.size()));
    for (int card : remaining) {
      board_rank_ = Rank(card);
      builder_.Link(node, Round(1, history, "", contribution, 0, false));
    }
    return node;
  }

  int Showdown(const std::vector<double>& contribution) {
    auto strength = [&](int p) {
      return hole_[p] == board_rank_ ? 100 + hole_[p] : hole_[p];
    };
    const int s0 = strength(0), s1 = strength(1);
    const double pot = contribution[0];  // equal after a call or checks
    if (s0 == s1) return builder_.Terminal({0.0, 0.0});
    return s0 > s1 ? builder_.Terminal({pot, -pot})
                   : builder_.Terminal({-pot, pot});
  }

  int raise_cap_;
  LeducDeck deck_;
  TreeBuilder builder_;
  std::vector<int> hole_;
  std::vector<int> dealt_;
  int board_rank_ = -1;
};

// ---------------------------------------------------------------- Liar's Dice

class LiarsDiceBuilder {
 public:
  LiarsDiceBuilder(int players, int faces)
      : players_(players),
        faces_(faces),
        num_bids_(players * faces),
        builder_("liars_dice" + std::to_string(players) + "p_k" +
                     std::to_string(faces),
                 players) {
    int outcomes = 1;
    for (int p = 0; p < players; ++p) outcomes *= faces;
    std::vector<std::string> labels;
    std::vector<std::vector<int>> rolls;
    for (int code = 0; code < outcomes; ++code) {
      std::vector<int> roll(players);
      int rest = code;
      for (int p = players - 1; p >= 0; --p) {
        roll[p] = rest % faces + 1;
        rest /= faces;
      }
      labels.push_back(JoinInts(roll));
      rolls.push_back(std::move(roll));
    }
    const int root = builder_.Chance(
        labels, std::vector<double>(outcomes, 1.0 / outcomes));
    for (const auto& roll : rolls) {
      roll_ = roll;
      builder_.Link(root, Turn({}));
    }
  }

  GameTree Finish() { return builder_.Finish(); }

 private:
  std::string BidLabel(int bid) const {
    return std::to_string(bid / faces_ + 1) + "x" +
           std::to_string(bid % faces_ + 1);
  }

  int Turn(const std::vector<int>& bids) {
    const int p = static_cast<int>(bids.size()) % players_;
    const int last = bids.empty() ? -1 : bids.back();
    std::string key = std::to_string(roll_[p]) + ":";
    for (int b : bids) key += BidLabel(b) + ".";
    std::vector<std::string> actions;
    for (int b = last + 1; b < num_bids_; ++b) actions.push_back(BidLabel(b));
    if (last >= 0) actions.push_back("liar");
    const int node = builder_.Decision(p, key, actions);
    for (int b = last + 1; b < num_bids_; ++b) {
      std::vector<int> next = bids;
      next.push_back(b);
      builder_.Link(node, Turn(next));
    }
    if (last >= 0) {
      const int count = last / faces_ + 1;
      const int face = last % faces_ + 1;
      const int shown = static_cast<int>(std::count(roll_.begin(), roll_.end(), face));
      const int bidder = (p + players_ - 1) % players_;
      std::vector<double> payoffs(players_, 0.0);
      const bool valid = shown >= count;
      payoffs[bidder] = valid ? 1.0 : -1.0;
      payoffs[p] = valid ? -1.0 : 1.0;
      builder_.Link(node, builder_.Terminal(std::move(payoffs)));
    }
    return node;
  }

  int players_;
  int faces_;
  int num_bids_;
  TreeBuilder builder_;
  std::vector<int> roll_;
};

// ---------------------------------------------------------------- Goofspiel

class GoofspielBuilder {
 public:
  explicit GoofspielBuilder(int players)
      : players_(players),
        builder_("goofspiel" + std::to_string(players) + "p", players) {
    std::vector<int> perm = {-1, 0, 1};
    std::vector<std::vector<int>> orders;
    do {
      orders.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::vector<std::string> labels;
    for (const auto& o : orders) labels.push_back(JoinInts(o));
    const int root = builder_.Chance(
        labels, std::vector<double>(orders.size(), 1.0 / orders.size()));
    for (const auto& order : orders) {
      prizes_ = order;
      State state;
      state.hands.assign(players, {-1, 0, 1});
      state.own_bids.assign(players, {});
      state.scores.assign(players, 0.0);
      builder_.Link(root, Bid(state, 0, {}));
    }
  }

  GameTree Finish() { return builder_.Finish(); }

 private:
  struct State {
    std::vector<std::vector<int>> hands;
    std::vector<std::vector<int>> own_bids;
    std::vector<double> scores;
    std::string winners;  // announced outcome of each finished turn
  };

  int Turn(const State& state) const {
    return static_cast<int>(state.own_bids[0].size());
  }

  // `current` holds this turn's bids of players before `player`.
  int Bid(const State& state, int player, const std::vector<int>& current) {
    const int turn = Turn(state);
    if (turn == 3) return builder_.Terminal(state.scores);
    std::string key = "t" + std::to_string(turn) + ":prizes=";
    for (int k = 0; k <= turn; ++k) key += std::to_string(prizes_[k]) + ",";
    key += ":bids=" + JoinInts(state.own_bids[player]) + ":won=" +
           state.winners;
    std::vector<std::string> actions;
    for (int card : state.hands[player]) actions.push_back(std::to_string(card));
    const int node = builder_.Decision(player, key, actions);
    for (int card : state.hands[player]) {
      std::vector<int> bids = current;
      bids.push_back(card);
      if (player + 1 < players_) {
        builder_.Link(node, Bid(state, player + 1, bids));
      } else {
        builder_.Link(node, Resolve(state, bids));
      }
    }
    return node;
  }

  int Resolve(State state, const std::vector<int>& bids) {
    const int turn = Turn(state);
    const int top = *std::max_element(bids.begin(), bids.end());
    std::vector<int> winners;
    for (int p = 0; p < players_; ++p) {
      if (bids[p] == top) winners.push_back(p);
    }
    const double share = static_cast<double>(prizes_[turn]) / winners.size();
    for (int p : winners) state.scores[p] += share;
    for (int p = 0; p < players_; ++p) {
      auto& hand = state.hands[p];
      hand.erase(std::find(hand.begin(), hand.end(), bids[p]));
      state.own_bids[p].push_back(bids[p]);
    }
    state.winners += JoinInts(winners) + ";";
    return Bid(state, 0, {});
  }

  int players_;
  TreeBuilder builder_;
  std::vector<int> prizes_;
};

}  // namespace

GameTree BuildKuhn(int players, int ranks) {
  if (players < 2 || players > 3) {
    throw GameError("kuhn: players must be 2 or 3");
  }
  if (ranks == 0) ranks = players + 1;
  if (ranks < players) {
    throw GameError("kuhn: need at least as many ranks as players");
  }
  return KuhnBuilder(players, ranks).Finish();
}

GameTree BuildLeduc(int raise_cap, LeducDeck deck) {
  if (raise_cap < 1 || raise_cap > 2) {
    throw GameError("leduc: raise cap must be 1 or 2");
  }
  if (deck.ranks < 2 || deck.suits < 1 || deck.ranks * deck.suits < 3) {
    throw GameError("leduc: deck needs at least 2 ranks and 3 cards");
  }
  return LeducBuilder(raise_cap, deck).Finish();
}

GameTree BuildLiarsDice(int players, int faces) {
  if (players < 2 || players > 3) {
    throw GameError("liars_dice: players must be 2 or 3");
  }
  if (faces == 0) faces = players == 2 ? 6 : 3;
  if (faces < 1) throw GameError("liars_dice: faces must be positive");
  return LiarsDiceBuilder(players, faces).Finish();
}

GameTree BuildGoofspiel(int players) {
  if (players < 2 || players > 3) {
    throw GameError("goofspiel: players must be 2 or 3");
  }
  return GoofspielBuilder(players).Finish();
}

GameTree BuildMatrixGame(const std::vector<std::vector<double>>& payoff_row,
                         const std::vector<std::vector<double>>& payoff_col,
                         std::string name) {
  const std::size_t rows = payoff_row.size();
  if (rows == 0 || payoff_col.size() != rows) {
    throw GameError("matrix game: payoff matrices must share a shape");
  }
  const std::size_t cols = payoff_row.front().size();
  std::vector<std::string> row_actions, col_actions;
  for (std::size_t r = 0; r < rows; ++r) {
    if (payoff_row[r].size() != cols || payoff_col[r].size() != cols) {
      throw GameError("matrix game: ragged payoff matrix");
    }
    row_actions.push_back("r" + std::to_string(r));
  }
  for (std::size_t c = 0; c < cols; ++c) {
    col_actions.push_back("c" + std::to_string(c));
  }
  TreeBuilder builder(std::move(name), 2);
  const int root = builder.Decision(0, "", row_actions);
  for (std::size_t r = 0; r < rows; ++r) {
    const int col = builder.Decision(1, "", col_actions);
    builder.Link(root, col);
    for (std::size_t c = 0; c < cols; ++c) {
      builder.Link(col, builder.Terminal({payoff_row[r][c], payoff_col[r][c]}));
    }
  }
  return builder.Finish();
}

GameTree BuildMatchingPennies() {
  return BuildMatrixGame({{1, -1}, {-1, 1}}, {{-1, 1}, {1, -1}},
                         "matching_pennies");
}

void GameTree::Validate() const {
  if (num_players < 1) throw GameError("game has no players");
  if (root < 0 || root >= static_cast<int>(nodes.size())) {
    throw GameError("root index out of range");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const GameNode& node = nodes[i];
    const std::string where = "node " + std::to_string(i);
    for (int c : node.children) {
      if (c < 0 || c >= static_cast<int>(nodes.size())) {
        throw GameError(where + ": child out of range");
      }
    }
    switch (node.kind) {
      case NodeKind::kChance: {
        if (node.children.empty() || node.probs.size() != node.children.size()) {
          throw GameError(where + ": chance outcomes mismatch");
        }
        double total = 0.0;
        for (double p : node.probs) {
          if (p < 0.0) throw GameError(where + ": negative probability");
          total += p;
        }
        if (std::abs(total - 1.0) > 1e-12) {
          throw GameError(where + ": chance probabilities sum to " +
                          std::to_string(total));
        }
        break;
      }
      case NodeKind::kDecision: {
        if (node.infoset < 0 ||
            node.infoset >= static_cast<int>(infosets.size())) {
          throw GameError(where + ": infoset out of range");
        }
        const Infoset& info = infosets[node.infoset];
        if (info.player < 0 || info.player >= num_players) {
          throw GameError(where + ": acting player out of range");
        }
        if (node.children.size() != info.actions.size() ||
            node.children.empty()) {
          throw GameError(where + ": action count differs from infoset " +
                          info.key);
        }
        break;
      }
      case NodeKind::kTerminal:
        if (!node.children.empty() ||
            static_cast<int>(node.payoffs.size()) != num_players) {
          throw GameError(where + ": malformed terminal");
        }
        break;
    }
  }
}

int GameTree::NumTerminals() const {
  return static_cast<int>(std::count_if(nodes.begin(), nodes.end(), [](const auto& n) {
    return n.kind == NodeKind::kTerminal;
  }));
}

}  // namespace pfg
