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

#ifndef PFG_POLYTOPE_H_
#define PFG_POLYTOPE_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pfg {

// Feasibility tolerance shared by every point/active-set invariant check.
inline constexpr double kFeasibilityTol = 1e-9;

// Default limit on the number of vertices EnumerateVertices will produce.
inline constexpr std::int64_t kDefaultVertexCap = 1'000'000;

class PolytopeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Vector = std::vector<double>;

// One information set: the sequences leaving it sum to the mass on `parent`.
struct DecisionPoint {
  int parent = 0;
  std::vector<int> children;
};

// A deterministic strategy: the sorted support of a 0/1 vertex.
struct Vertex {
  std::vector<int> selected;

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

// Sequence-form strategy polytope {x : F x = f, x >= 0}. Sequence 0 is the
// empty sequence and is fixed to 1. Sequences are numbered so that a parent
// always precedes its children.
class Treeplex {
 public:
  Treeplex(int num_sequences, std::vector<DecisionPoint> decision_points);

  // Probability simplex over `num_actions` actions: one decision point hanging
  // off the empty sequence. Action a lives at sequence index a + 1.
  static Treeplex Simplex(int num_actions);

  int num_sequences() const { return num_sequences_; }
  const std::vector<DecisionPoint>& decision_points() const {
    return decision_points_;
  }
  // Decision points whose parent is `sequence`.
  const std::vector<int>& ChildDecisionPoints(int sequence) const {
    return child_decision_points_[sequence];
  }
  // Decision point that owns `sequence`, or -1 for the empty sequence.
  int OwnerDecisionPoint(int sequence) const { return owner_[sequence]; }

  // Point that splits mass uniformly at every decision point.
  Vector UniformPoint() const;
  // Vertex choosing the first child at every reachable decision point.
  Vertex FirstChildVertex() const;

  // Number of vertices, computed by counting over the tree without
  // enumerating. Saturates at INT64_MAX.
  std::int64_t CountVertices() const;

  bool IsFeasible(std::span<const double> x, double tol = kFeasibilityTol) const;
  bool IsVertex(const Vertex& v) const;

 private:
  int num_sequences_;
  std::vector<DecisionPoint> decision_points_;
  std::vector<std::vector<int>> child_decision_points_;
  std::vector<int> owner_;
  // Decision points sorted by decreasing parent index (bottom-up order).
  std::vector<int> bottom_up_;

  friend Vertex Lmo(const Treeplex&, std::span<const double>);
};

// A point of the polytope plus the convex combination of vertices that
// produced it.
struct ActiveSet {
  std::vector<std::pair<Vertex, double>> atoms;
  Vector point;

  static ActiveSet Singleton(const Vertex& v, int num_sequences);
  // Recomputes `point` from the atoms.
  void Rebuild(int num_sequences);
  bool IsValid(const Treeplex& polytope, double tol = kFeasibilityTol) const;
};

// Best response: the vertex minimizing <loss, v>. Ties go to the lowest
// sequence index.
Vertex Lmo(const Treeplex& polytope, std::span<const double> loss);

// <loss, v> for a 0/1 vertex.
double Dot(std::span<const double> loss, const Vertex& v);
double Dot(std::span<const double> a, std::span<const double> b);
Vector ToDense(const Vertex& v, int num_sequences);

// All vertices in lexicographic order of their choices. Throws PolytopeError
// when the vertex count exceeds `cap`.
std::vector<Vertex> EnumerateVertices(const Treeplex& polytope,
                                      std::int64_t cap = kDefaultVertexCap);

// Facial-distance lower bound for {Ax = b, x >= 0}: gamma / sqrt(n), or
// gamma / sqrt(k) when the face of interest has k zero coordinates.
double FacialDistanceLowerBound(double gamma, int n, int k = 0);

// Facial-distance lower bound for integral polytopes with the extra
// constraint C x <= d: 1 / (||C||_inf * sqrt(n)).
double FacialDistanceLowerBoundIntegral(
    const std::vector<std::vector<std::int64_t>>& c, int n);

// Maximum squared Euclidean distance between two vertices.
double SquaredDiameter(const Treeplex& polytope,
                       std::int64_t cap = kDefaultVertexCap);

}  // namespace pfg

#endif  // PFG_POLYTOPE_H_
