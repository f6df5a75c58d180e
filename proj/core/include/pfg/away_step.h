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

// Away-step Frank-Wolfe over the convex hull of a set of atoms, for convex
// quadratic objectives (exact line search). The atom set is abstracted behind
// a problem type so the same loop serves strategy polytopes and the
// hull-distance subproblems used by the facial-distance oracle.
//
// A Problem must provide:
//   using Atom = ...;                       // equality-comparable
//   int dim() const;
//   Atom Lmo(std::span<const double> grad) const;
//   double Dot(std::span<const double> grad, const Atom& a) const;
//   void AddScaled(double w, const Atom& a, std::span<double> out) const;
//   double Value(std::span<const double> x) const;
//   void Gradient(std::span<const double> x, std::span<double> out) const;
//   double Curvature(std::span<const double> d) const;   // d' H d

#ifndef PFG_AWAY_STEP_H_
#define PFG_AWAY_STEP_H_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pfg {

class AfwError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Atoms whose weight falls to this level are dropped from the active set.
inline constexpr double kAtomDropTol = 1e-12;

template <class Atom>
struct WeightedAtom {
  Atom atom;
  double weight;
};

// Snapshot handed to an observer right after each LMO call, before the step.
struct AfwIterate {
  int lmo_calls;
  double objective;
  double wolfe_gap;
  std::span<const double> point;
};

using AfwObserver = std::function<void(const AfwIterate&)>;

struct AwayStepLimits {
  // Stop as soon as the Wolfe gap is at most this value.
  double gap_tolerance = -std::numeric_limits<double>::infinity();
  // Stop after this many LMO calls.
  int max_lmo_calls = std::numeric_limits<int>::max();
  // Hard iteration cap; exceeding it without stopping is an error.
  std::int64_t iteration_cap = 1'000'000;
};

template <class Atom>
struct AwayStepOutcome {
  std::vector<WeightedAtom<Atom>> atoms;
  std::vector<double> point;
  double objective = 0.0;
  int lmo_calls = 0;
  // Wolfe gap measured at the most recent LMO call (NaN if none was made).
  double final_wolfe_gap = std::numeric_limits<double>::quiet_NaN();
  bool gap_reached = false;
};

namespace internal {

template <class Problem, class Atom>
void RebuildPoint(const Problem& problem,
                  const std::vector<WeightedAtom<Atom>>& atoms,
                  std::vector<double>& x) {
  std::fill(x.begin(), x.end(), 0.0);
  for (const auto& wa : atoms) problem.AddScaled(wa.weight, wa.atom, x);
}

template <class Atom>
void PruneAndNormalize(std::vector<WeightedAtom<Atom>>& atoms) {
  std::erase_if(atoms, [](const auto& wa) { return wa.weight <= kAtomDropTol; });
  double total = 0.0;
  for (const auto& wa : atoms) total += wa.weight;
  for (auto& wa : atoms) wa.weight /= total;
}

}  // namespace internal

template <class Problem>
AwayStepOutcome<typename Problem::Atom> RunAwayStep(
    const Problem& problem,
    std::vector<WeightedAtom<typename Problem::Atom>> atoms,
    const AwayStepLimits& limits, const AfwObserver& observer = {}) {
  using Atom = typename Problem::Atom;
  if (atoms.empty()) throw AfwError("away-step: empty initial active set");
  const int n = problem.dim();
  internal::PruneAndNormalize(atoms);

  std::vector<double> x(n), grad(n), d(n);
  internal::RebuildPoint(problem, atoms, x);

  AwayStepOutcome<Atom> out;
  double value = problem.Value(x);
  out.atoms = atoms;
  out.point = x;
  out.objective = value;

  for (std::int64_t iter = 0;; ++iter) {
    if (out.lmo_calls >= limits.max_lmo_calls) break;
    if (iter >= limits.iteration_cap) {
      throw AfwError("away-step: iteration cap reached before the gap target");
    }
    problem.Gradient(x, grad);
    const Atom s = problem.Lmo(grad);
    ++out.lmo_calls;
    const double grad_x = [&] {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += grad[i] * x[i];
      return sum;
    }();
    const double fw_gap = grad_x - problem.Dot(grad, s);
    out.final_wolfe_gap = fw_gap;
    if (observer) observer({out.lmo_calls, value, fw_gap, x});
    if (fw_gap <= limits.gap_tolerance) {
      // The current iterate certifies the target; prefer it over the snapshot.
      out.atoms = atoms;
      out.point = x;
      out.objective = value;
      out.gap_reached = true;
      return out;
    }

    std::size_t away = 0;
    double away_dot = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      const double dot = problem.Dot(grad, atoms[k].atom);
      if (dot > away_dot) away_dot = dot, away = k;
    }
    const double away_gap = away_dot - grad_x;
    const double away_weight = atoms[away].weight;
    const bool fw_step = fw_gap >= away_gap || away_weight >= 1.0;

    std::fill(d.begin(), d.end(), 0.0);
    double gamma_max;
    double slope;
    if (fw_step) {
      problem.AddScaled(1.0, s, d);
      for (int i = 0; i < n; ++i) d[i] -= x[i];
      gamma_max = 1.0;
      slope = fw_gap;
    } else {
      problem.AddScaled(-1.0, atoms[away].atom, d);
      for (int i = 0; i < n; ++i) d[i] += x[i];
      gamma_max = away_weight / (1.0 - away_weight);
      slope = away_gap;
    }
    const double curvature = problem.Curvature(d);
    double gamma = curvature > 0.0 ? std::min(slope / curvature, gamma_max)
                                   : gamma_max;
    gamma = std::max(gamma, 0.0);

    if (fw_step) {
      if (gamma >= 1.0) {
        atoms.clear();
        atoms.push_back({s, 1.0});
      } else {
        bool found = false;
        for (auto& wa : atoms) {
          wa.weight *= (1.0 - gamma);
          if (wa.atom == s) {
            wa.weight += gamma;
            found = true;
          }
        }
        if (!found) atoms.push_back({s, gamma});
      }
    } else {
      for (auto& wa : atoms) wa.weight *= (1.0 + gamma);
      if (gamma >= gamma_max) {
        atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(away));
      } else {
        atoms[away].weight -= gamma;
      }
    }
    internal::PruneAndNormalize(atoms);
    internal::RebuildPoint(problem, atoms, x);
    value = problem.Value(x);
    if (value <= out.objective) {
      out.atoms = atoms;
      out.point = x;
      out.objective = value;
    }
  }
  return out;
}

}  // namespace pfg

#endif  // PFG_AWAY_STEP_H_
