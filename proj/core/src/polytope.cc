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

#include "pfg/polytope.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace pfg {

namespace {

std::int64_t SaturatingMul(std::int64_t a, std::int64_t b) {
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  if (a != 0 && b > kMax / a) return kMax;
  return a * b;
}

std::int64_t SaturatingAdd(std::int64_t a, std::int64_t b) {
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  if (b > kMax - a) return kMax;
  return a + b;
}

}  // namespace

Treeplex::Treeplex(int num_sequences,
                   std::vector<DecisionPoint> decision_points)
    : num_sequences_(num_sequences),
      decision_points_(std::move(decision_points)),
      child_decision_points_(num_sequences),
      owner_(num_sequences, -1) {
  if (num_sequences_ < 1) {
    throw PolytopeError("treeplex needs at least the empty sequence");
  }
  for (int d = 0; d < static_cast<int>(decision_points_.size()); ++d) {
    const DecisionPoint& dp = decision_points_[d];
    if (dp.parent < 0 || dp.parent >= num_sequences_) {
      throw PolytopeError("decision point " + std::to_string(d) +
                          " has out-of-range parent");
    }
    if (dp.children.empty()) {
      throw PolytopeError("decision point " + std::to_string(d) +
                          " has no children");
    }
    for (int c : dp.children) {
      if (c <= 0 || c >= num_sequences_) {
        throw PolytopeError("decision point " + std::to_string(d) +
                            " has out-of-range child " + std::to_string(c));
      }
      if (c <= dp.parent) {
        throw PolytopeError("sequence " + std::to_string(c) +
                            " precedes its parent");
      }
      if (owner_[c] != -1) {
        throw PolytopeError("sequence " + std::to_string(c) +
                            " belongs to two decision points");
      }
      owner_[c] = d;
    }
    child_decision_points_[dp.parent].push_back(d);
  }
  for (int s = 1; s < num_sequences_; ++s) {
    if (owner_[s] == -1) {
      throw PolytopeError("sequence " + std::to_string(s) +
                          " is not a child of any decision point");
    }
  }
  bottom_up_.resize(decision_points_.size());
  std::iota(bottom_up_.begin(), bottom_up_.end(), 0);
  std::stable_sort(bottom_up_.begin(), bottom_up_.end(), [&](int a, int b) {
    return decision_points_[a].parent > decision_points_[b].parent;
  });
}

Treeplex Treeplex::Simplex(int num_actions) {
  if (num_actions < 1) throw PolytopeError("simplex needs an action");
  DecisionPoint dp;
  dp.parent = 0;
  for (int a = 1; a <= num_actions; ++a) dp.children.push_back(a);
  return Treeplex(num_actions + 1, {dp});
}

Vector Treeplex::UniformPoint() const {
  Vector x(num_sequences_, 0.0);
  x[0] = 1.0;
  // Parents precede children, so visiting by increasing parent is top-down.
  for (auto it = bottom_up_.rbegin(); it != bottom_up_.rend(); ++it) {
    const DecisionPoint& dp = decision_points_[*it];
    const double share = x[dp.parent] / static_cast<double>(dp.children.size());
    for (int c : dp.children) x[c] = share;
  }
  return x;
}

Vertex Treeplex::FirstChildVertex() const {
  return Lmo(*this, Vector(num_sequences_, 0.0));
}

std::int64_t Treeplex::CountVertices() const {
  // count[s] = number of ways to complete the subtree below sequence s.
  std::vector<std::int64_t> count(num_sequences_, 1);
  for (int d : bottom_up_) {
    const DecisionPoint& dp = decision_points_[d];
    std::int64_t choices = 0;
    for (int c : dp.children) choices = SaturatingAdd(choices, count[c]);
    count[dp.parent] = SaturatingMul(count[dp.parent], choices);
  }
  return count[0];
}

bool Treeplex::IsFeasible(std::span<const double> x, double tol) const {
  if (static_cast<int>(x.size()) != num_sequences_) return false;
  if (std::abs(x[0] - 1.0) > tol) return false;
  for (double v : x) {
    if (v < -tol) return false;
  }
  for (const DecisionPoint& dp : decision_points_) {
    double sum = 0.0;
    for (int c : dp.children) sum += x[c];
    if (std::abs(sum - x[dp.parent]) > tol) return false;
  }
  return true;
}

bool Treeplex::IsVertex(const Vertex& v) const {
  if (!std::is_sorted(v.selected.begin(), v.selected.end())) return false;
  if (std::adjacent_find(v.selected.begin(), v.selected.end()) !=
      v.selected.end()) {
    return false;
  }
  if (v.selected.empty() || v.selected.front() != 0) return false;
  if (v.selected.back() >= num_sequences_) return false;
  std::vector<char> in(num_sequences_, 0);
  for (int s : v.selected) in[s] = 1;
  for (const DecisionPoint& dp : decision_points_) {
    int chosen = 0;
    for (int c : dp.children) chosen += in[c];
    if (chosen != (in[dp.parent] ? 1 : 0)) return false;
  }
  return true;
}

ActiveSet ActiveSet::Singleton(const Vertex& v, int num_sequences) {
  ActiveSet set;
  set.atoms.emplace_back(v, 1.0);
  set.point = ToDense(v, num_sequences);
  return set;
}

void ActiveSet::Rebuild(int num_sequences) {
  point.assign(num_sequences, 0.0);
  for (const auto& [v, w] : atoms) {
    for (int s : v.selected) point[s] += w;
  }
}

bool ActiveSet::IsValid(const Treeplex& polytope, double tol) const {
  if (atoms.empty()) return false;
  double total = 0.0;
  Vector rebuilt(polytope.num_sequences(), 0.0);
  for (const auto& [v, w] : atoms) {
    if (!(w > 0.0)) return false;
    if (!polytope.IsVertex(v)) return false;
    total += w;
    for (int s : v.selected) rebuilt[s] += w;
  }
  if (std::abs(total - 1.0) > tol) return false;
  if (point.size() != rebuilt.size()) return false;
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (std::abs(point[i] - rebuilt[i]) > tol) return false;
  }
  return polytope.IsFeasible(point, tol);
}

Vertex Lmo(const Treeplex& polytope, std::span<const double> loss) {
  const int n = polytope.num_sequences();
  if (static_cast<int>(loss.size()) != n) {
    throw PolytopeError("lmo: loss has length " + std::to_string(loss.size()) +
                        ", expected " + std::to_string(n));
  }
  // value[s]: loss of the best completion of the subtree rooted at s.
  Vector value(loss.begin(), loss.end());
  std::vector<int> best(polytope.decision_points_.size(), -1);
  for (int d : polytope.bottom_up_) {
    const DecisionPoint& dp = polytope.decision_points_[d];
    int arg = dp.children.front();
    for (int c : dp.children) {
      if (value[c] < value[arg] || (value[c] == value[arg] && c < arg)) {
        arg = c;
      }
    }
    best[d] = arg;
    value[dp.parent] += value[arg];
  }
  Vertex v;
  std::vector<int> stack = {0};
  while (!stack.empty()) {
    const int s = stack.back();
    stack.pop_back();
    v.selected.push_back(s);
    for (int d : polytope.ChildDecisionPoints(s)) stack.push_back(best[d]);
  }
  std::sort(v.selected.begin(), v.selected.end());
  return v;
}

double Dot(std::span<const double> loss, const Vertex& v) {
  double sum = 0.0;
  for (int s : v.selected) sum += loss[s];
  return sum;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

Vector ToDense(const Vertex& v, int num_sequences) {
  Vector x(num_sequences, 0.0);
  for (int s : v.selected) x[s] = 1.0;
  return x;
}

namespace {

// Expands every choice at the decision points in `frontier`.
void Enumerate(const Treeplex& polytope, std::vector<int> frontier,
               std::vector<int>& selected, std::vector<Vertex>& out) {
  if (frontier.empty()) {
    Vertex v{selected};
    std::sort(v.selected.begin(), v.selected.end());
    out.push_back(std::move(v));
    return;
  }
  const int d = frontier.back();
  frontier.pop_back();
  for (int c : polytope.decision_points()[d].children) {
    std::vector<int> next = frontier;
    const auto& below = polytope.ChildDecisionPoints(c);
    next.insert(next.end(), below.rbegin(), below.rend());
    selected.push_back(c);
    Enumerate(polytope, std::move(next), selected, out);
    selected.pop_back();
  }
}

}  // namespace

std::vector<Vertex> EnumerateVertices(const Treeplex& polytope,
                                      std::int64_t cap) {
  const std::int64_t count = polytope.CountVertices();
  if (count > cap) {
    throw PolytopeError("vertex enumeration: " + std::to_string(count) +
                        " vertices exceed cap " + std::to_string(cap));
  }
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<int> selected = {0};
  const auto& root = polytope.ChildDecisionPoints(0);
  Enumerate(polytope, std::vector<int>(root.rbegin(), root.rend()), selected,
            out);
  return out;
}

double FacialDistanceLowerBound(double gamma, int n, int k) {
  if (!(gamma > 0.0)) throw PolytopeError("gamma must be positive");
  if (n < 1) throw PolytopeError("dimension must be positive");
  if (k < 0 || k > n) throw PolytopeError("k must lie in [0, n]");
  return gamma / std::sqrt(static_cast<double>(k > 0 ? k : n));
}

double FacialDistanceLowerBoundIntegral(
    const std::vector<std::vector<std::int64_t>>& c, int n) {
  if (n < 1) throw PolytopeError("dimension must be positive");
  std::int64_t norm = 0;
  for (const auto& row : c) {
    std::int64_t sum = 0;
    for (std::int64_t entry : row) {
      if (entry < 0) throw PolytopeError("C must be nonnegative");
      sum += entry;
    }
    norm = std::max(norm, sum);
  }
  if (norm == 0) throw PolytopeError("C must be nonzero");
  return 1.0 / (static_cast<double>(norm) * std::sqrt(static_cast<double>(n)));
}

double SquaredDiameter(const Treeplex& polytope, std::int64_t cap) {
  const std::vector<Vertex> vertices = EnumerateVertices(polytope, cap);
  std::size_t best = 0;
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      // Symmetric difference size of two 0/1 supports.
      const auto& x = vertices[a].selected;
      const auto& y = vertices[b].selected;
      std::size_t i = 0, j = 0, common = 0;
      while (i < x.size() && j < y.size()) {
        if (x[i] == y[j]) {
          ++common, ++i, ++j;
        } else if (x[i] < y[j]) {
          ++i;
        } else {
          ++j;
        }
      }
      best = std::max(best, x.size() + y.size() - 2 * common);
    }
  }
  return static_cast<double>(best);
}

}  // namespace pfg
