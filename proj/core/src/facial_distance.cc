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

#include "pfg/facial_distance.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <utility>

#include "pfg/away_step.h"

namespace pfg {

namespace {

// Product of two explicit hulls, embedded as (p, q) in R^{2n}.
class HullPair {
 public:
  using Atom = std::pair<int, int>;

  HullPair(std::span<const Vector> a, std::span<const Vector> b)
      : a_(a), b_(b), n_(static_cast<int>(a.front().size())) {}

  int dim() const { return 2 * n_; }

  Atom Lmo(std::span<const double> grad) const {
    return {ArgMin(a_, grad.first(n_)), ArgMin(b_, grad.last(n_))};
  }
  double Dot(std::span<const double> grad, const Atom& atom) const {
    return pfg::Dot(grad.first(n_), a_[atom.first]) +
           pfg::Dot(grad.last(n_), b_[atom.second]);
  }
  void AddScaled(double w, const Atom& atom, std::span<double> out) const {
    const Vector& p = a_[atom.first];
    const Vector& q = b_[atom.second];
    for (int i = 0; i < n_; ++i) {
      out[i] += w * p[i];
      out[n_ + i] += w * q[i];
    }
  }
  double Value(std::span<const double> x) const {
    double sq = 0.0;
    for (int i = 0; i < n_; ++i) {
      const double diff = x[i] - x[n_ + i];
      sq += diff * diff;
    }
    return 0.5 * sq;
  }
  void Gradient(std::span<const double> x, std::span<double> out) const {
    for (int i = 0; i < n_; ++i) {
      const double diff = x[i] - x[n_ + i];
      out[i] = diff;
      out[n_ + i] = -diff;
    }
  }
  double Curvature(std::span<const double> d) const {
    double sq = 0.0;
    for (int i = 0; i < n_; ++i) {
      const double diff = d[i] - d[n_ + i];
      sq += diff * diff;
    }
    return sq;
  }

 private:
  static int ArgMin(std::span<const Vector> set, std::span<const double> g) {
    int best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (int k = 0; k < static_cast<int>(set.size()); ++k) {
      const double v = pfg::Dot(g, set[k]);
      if (v < best_value) best_value = v, best = k;
    }
    return best;
  }

  std::span<const Vector> a_;
  std::span<const Vector> b_;
  int n_;
};

}  // namespace

double HullDistance(std::span<const Vector> a, std::span<const Vector> b,
                    const HullDistanceOptions& options) {
  if (a.empty() || b.empty()) {
    throw PolytopeError("hull distance needs two nonempty point sets");
  }
  const HullPair problem(a, b);
  AwayStepLimits limits;
  limits.gap_tolerance = options.gap_tolerance;
  limits.iteration_cap = options.iteration_cap;
  const auto outcome =
      RunAwayStep(problem, {{HullPair::Atom{0, 0}, 1.0}}, limits);
  return std::sqrt(2.0 * std::max(outcome.objective, 0.0));
}

double MinNonzeroVertexCoordinate(std::span<const Vector> vertices) {
  double gamma = std::numeric_limits<double>::infinity();
  for (const Vector& v : vertices) {
    for (double c : v) {
      if (c != 0.0) gamma = std::min(gamma, std::abs(c));
    }
  }
  return gamma;
}

double FacialDistanceBruteForce(std::span<const Vector> vertices,
                                const HullDistanceOptions& options) {
  if (vertices.size() < 2) {
    throw PolytopeError("facial distance needs at least two vertices");
  }
  const int n = static_cast<int>(vertices.front().size());
  if (n > kMaxBruteForceDimension) {
    throw PolytopeError("facial distance brute force supports at most " +
                        std::to_string(kMaxBruteForceDimension) +
                        " coordinates, got " + std::to_string(n));
  }
  std::vector<std::uint32_t> support(vertices.size(), 0);
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    for (int i = 0; i < n; ++i) {
      if (vertices[k][i] != 0.0) support[k] |= (1u << i);
    }
  }
  // Distinct proper nonempty faces, keyed by membership of each vertex.
  std::set<std::vector<bool>> faces;
  const std::uint32_t subsets = 1u << n;
  for (std::uint32_t zero = 1; zero < subsets; ++zero) {
    std::vector<bool> in_face(vertices.size());
    std::size_t count = 0;
    for (std::size_t k = 0; k < vertices.size(); ++k) {
      in_face[k] = (support[k] & zero) == 0;
      count += in_face[k] ? 1 : 0;
    }
    if (count == 0 || count == vertices.size()) continue;
    faces.insert(std::move(in_face));
  }
  double best = std::numeric_limits<double>::infinity();
  std::vector<Vector> face, rest;
  for (const auto& in_face : faces) {
    face.clear();
    rest.clear();
    for (std::size_t k = 0; k < vertices.size(); ++k) {
      (in_face[k] ? face : rest).push_back(vertices[k]);
    }
    best = std::min(best, HullDistance(face, rest, options));
  }
  return best;
}

double FacialDistanceBruteForce(const Treeplex& polytope,
                                const HullDistanceOptions& options) {
  std::vector<Vector> dense;
  for (const Vertex& v : EnumerateVertices(polytope)) {
    dense.push_back(ToDense(v, polytope.num_sequences()));
  }
  return FacialDistanceBruteForce(dense, options);
}

}  // namespace pfg
