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

#ifndef PFG_TESTS_TEST_UTIL_H_
#define PFG_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "pfg/games.h"
#include "pfg/polytope.h"

namespace pfg::testing {

// Euclidean projection onto the probability simplex by sorting and
// thresholding.
inline std::vector<double> ProjectOntoSimplex(const std::vector<double>& v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cumulative += u[k];
    const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) tau = t;
  }
  std::vector<double> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = std::max(v[k] - tau, 0.0);
  return out;
}

// Simplex coordinates -> treeplex coordinates (leading 1 for the empty
// sequence), and back.
inline Vector Embed(const std::vector<double>& v, double root = 1.0) {
  Vector out = {root};
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

inline std::vector<double> Strip(const Vector& x) {
  return std::vector<double>(x.begin() + 1, x.end());
}

inline double MaxAbsDiff(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

// Random point of the polytope from random behavioral probabilities.
inline Vector RandomPoint(const Treeplex& polytope, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<Vector> behavior;
  for (const DecisionPoint& dp : polytope.decision_points()) {
    Vector p(dp.children.size());
    for (double& x : p) x = u(rng);
    const double s = std::accumulate(p.begin(), p.end(), 0.0);
    for (double& x : p) x /= s;
    behavior.push_back(p);
  }
  return FromBehavioral(polytope, behavior);
}

inline Vector RandomVertexPoint(const Treeplex& polytope, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector loss(polytope.num_sequences());
  for (double& x : loss) x = u(rng);
  return ToDense(Lmo(polytope, loss), polytope.num_sequences());
}

// Behavioral strategy from the probability of the second action at each
// infoset key; keys not listed play their first action.
inline Vector BehaviorFromKeys(const SequenceFormGame& game, int player,
                               const std::map<std::string, double>& second) {
  const auto& dps = game.treeplexes[player].decision_points();
  std::vector<Vector> behavior;
  for (std::size_t d = 0; d < dps.size(); ++d) {
    const auto it = second.find(game.infoset_keys[player][d]);
    const double p = it == second.end() ? 0.0 : it->second;
    Vector b(dps[d].children.size(), 0.0);
    b[0] = 1.0 - p;
    b[1] = p;
    behavior.push_back(b);
  }
  return FromBehavioral(game.treeplexes[player], behavior);
}

// Closed-form equilibrium family of two-player Kuhn poker (cards 0 < 1 < 2),
// alpha in [0, 1/3]. Actions are check/bet and fold/call.
inline JointStrategy KuhnEquilibrium(const SequenceFormGame& game, double alpha) {
  const Vector first = BehaviorFromKeys(game, 0,
                                        {{"p0|0:", alpha},
                                         {"p0|0:kb", 0.0},
                                         {"p0|1:", 0.0},
                                         {"p0|1:kb", alpha + 1.0 / 3.0},
                                         {"p0|2:", 3.0 * alpha},
                                         {"p0|2:kb", 1.0}});
  const Vector second = BehaviorFromKeys(game, 1,
                                         {{"p1|0:k", 1.0 / 3.0},
                                          {"p1|0:b", 0.0},
                                          {"p1|1:k", 0.0},
                                          {"p1|1:b", 1.0 / 3.0},
                                          {"p1|2:k", 1.0},
                                          {"p1|2:b", 1.0}});
  return {first, second};
}

}  // namespace pfg::testing

#endif  // PFG_TESTS_TEST_UTIL_H_
