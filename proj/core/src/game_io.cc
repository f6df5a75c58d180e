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

// Line-oriented game format:
//
//   pfgame 1
//   name <name>
//   players <N>
//   infosets <count>
//   infoset <id> <player> <key> <k> <action_1> ... <action_k>
//   nodes <count>
//   node <id> chance <k> <label_1> <prob_1> <child_1> ...
//   node <id> decision <infoset> <k> <child_1> ... <child_k>
//   node <id> terminal <payoff_1> ... <payoff_N>
//   root <id>
//
// Tokens are whitespace separated; keys and labels never contain spaces.
// Reals are printed with 17 significant digits.

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "pfg/games.h"

namespace pfg {

namespace {

std::string Real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::string Word() {
    std::string w;
    if (!(in_ >> w)) throw GameError("game file: unexpected end of input");
    return w;
  }
  void Expect(const std::string& word) {
    const std::string got = Word();
    if (got != word) {
      throw GameError("game file: expected '" + word + "', got '" + got + "'");
    }
  }
  long Int() {
    const std::string w = Word();
    try {
      std::size_t used = 0;
      const long v = std::stol(w, &used);
      if (used == w.size()) return v;
    } catch (const std::exception&) {
    }
    throw GameError("game file: expected an integer, got '" + w + "'");
  }
  double Double() {
    const std::string w = Word();
    try {
      std::size_t used = 0;
      const double v = std::stod(w, &used);
      if (used == w.size()) return v;
    } catch (const std::exception&) {
    }
    throw GameError("game file: expected a number, got '" + w + "'");
  }

 private:
  std::istream& in_;
};

}  // namespace

void WriteGameTree(const GameTree& tree, std::ostream& out) {
  out << "pfgame 1\n";
  out << "name " << tree.name << "\n";
  out << "players " << tree.num_players << "\n";
  out << "infosets " << tree.infosets.size() << "\n";
  for (std::size_t i = 0; i < tree.infosets.size(); ++i) {
    const Infoset& info = tree.infosets[i];
    out << "infoset " << i << ' ' << info.player << ' ' << info.key << ' '
        << info.actions.size();
    for (const auto& a : info.actions) out << ' ' << a;
    out << '\n';
  }
  out << "nodes " << tree.nodes.size() << "\n";
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const GameNode& node = tree.nodes[i];
    out << "node " << i;
    switch (node.kind) {
      case NodeKind::kChance:
        out << " chance " << node.children.size();
        for (std::size_t k = 0; k < node.children.size(); ++k) {
          out << ' ' << node.outcomes[k] << ' ' << Real(node.probs[k]) << ' '
              << node.children[k];
        }
        break;
      case NodeKind::kDecision:
        out << " decision " << node.infoset << ' ' << node.children.size();
        for (int c : node.children) out << ' ' << c;
        break;
      case NodeKind::kTerminal:
        out << " terminal";
        for (double u : node.payoffs) out << ' ' << Real(u);
        break;
    }
    out << '\n';
  }
  out << "root " << tree.root << "\n";
}

GameTree ReadGameTree(std::istream& in) {
  Reader r(in);
  r.Expect("pfgame");
  if (r.Int() != 1) throw GameError("game file: unsupported version");
  GameTree tree;
  r.Expect("name");
  tree.name = r.Word();
  r.Expect("players");
  tree.num_players = static_cast<int>(r.Int());
  r.Expect("infosets");
  const long num_infosets = r.Int();
  for (long i = 0; i < num_infosets; ++i) {
    r.Expect("infoset");
    if (r.Int() != i) throw GameError("game file: infosets out of order");
    Infoset info;
    info.player = static_cast<int>(r.Int());
    info.key = r.Word();
    const long k = r.Int();
    for (long a = 0; a < k; ++a) info.actions.push_back(r.Word());
    tree.infosets.push_back(std::move(info));
  }
  r.Expect("nodes");
  const long num_nodes = r.Int();
  for (long i = 0; i < num_nodes; ++i) {
    r.Expect("node");
    if (r.Int() != i) throw GameError("game file: nodes out of order");
    GameNode node;
    const std::string kind = r.Word();
    if (kind == "chance") {
      node.kind = NodeKind::kChance;
      const long k = r.Int();
      for (long c = 0; c < k; ++c) {
        node.outcomes.push_back(r.Word());
        node.probs.push_back(r.Double());
        node.children.push_back(static_cast<int>(r.Int()));
      }
    } else if (kind == "decision") {
      node.kind = NodeKind::kDecision;
      node.infoset = static_cast<int>(r.Int());
      const long k = r.Int();
      for (long c = 0; c < k; ++c) node.children.push_back(static_cast<int>(r.Int()));
    } else if (kind == "terminal") {
      node.kind = NodeKind::kTerminal;
      for (int p = 0; p < tree.num_players; ++p) node.payoffs.push_back(r.Double());
    } else {
      throw GameError("game file: unknown node kind '" + kind + "'");
    }
    tree.nodes.push_back(std::move(node));
  }
  r.Expect("root");
  tree.root = static_cast<int>(r.Int());
  tree.Validate();
  return tree;
}

}  // namespace pfg
