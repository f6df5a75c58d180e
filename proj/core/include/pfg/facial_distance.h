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

#ifndef PFG_FACIAL_DISTANCE_H_
#define PFG_FACIAL_DISTANCE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "pfg/polytope.h"

namespace pfg {

// Largest ambient dimension the brute-force oracle accepts (2^n faces).
inline constexpr int kMaxBruteForceDimension = 24;

struct HullDistanceOptions {
  double gap_tolerance = 1e-10;
  std::int64_t iteration_cap = 100'000;
};

// Euclidean distance between conv(a) and conv(b), computed by away-step
// Frank-Wolfe on 1/2 ||p - q||^2 over the product of the two hulls.
double HullDistance(std::span<const Vector> a, std::span<const Vector> b,
                    const HullDistanceOptions& options = {});

// Minimum over faces F of dist(F, conv(vertices outside F)) for a polytope
// of the form {Ax = b, x >= 0}, given its vertex list. Faces are generated by
// zeroing subsets of coordinates.
double FacialDistanceBruteForce(std::span<const Vector> vertices,
                                const HullDistanceOptions& options = {});

double FacialDistanceBruteForce(const Treeplex& polytope,
                                const HullDistanceOptions& options = {});

// Smallest nonzero coordinate over all vertices.
double MinNonzeroVertexCoordinate(std::span<const Vector> vertices);

}  // namespace pfg

#endif  // PFG_FACIAL_DISTANCE_H_
