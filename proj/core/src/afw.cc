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

#include "pfg/afw.h"

#include <limits>
#include <string>
#include <vector>

namespace pfg {

double ProxObjective::Value(std::span<const double> x) const {
  double lin = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lin += linear[i] * x[i];
    const double diff = x[i] - center[i];
    sq += diff * diff;
  }
  return lin + sq / (2.0 * eta);
}

void ProxObjective::Gradient(std::span<const double> x,
                             std::span<double> out) const {
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = linear[i] + (x[i] - center[i]) / eta;
  }
}

namespace {

class TreeplexProx {
 public:
  using Atom = Vertex;

  TreeplexProx(const ProxObjective& objective, const Treeplex& polytope)
      : objective_(objective), polytope_(polytope) {}

  int dim() const { return polytope_.num_sequences(); }
  Atom Lmo(std::span<const double> grad) const {
    return pfg::Lmo(polytope_, grad);
  }
  double Dot(std::span<const double> grad, const Atom& a) const {
    return pfg::Dot(grad, a);
  }
  void AddScaled(double w, const Atom& a, std::span<double> out) const {
    for (int s : a.selected) out[s] += w;
  }
  double Value(std::span<const double> x) const { return objective_.Value(x); }
  void Gradient(std::span<const double> x, std::span<double> out) const {
    objective_.Gradient(x, out);
  }
  double Curvature(std::span<const double> d) const {
    double sq = 0.0;
    for (double v : d) sq += v * v;
    return sq / objective_.eta;
  }

 private:
  const ProxObjective& objective_;
  const Treeplex& polytope_;
};

void CheckDims(const ProxObjective& objective, const Treeplex& polytope) {
  const auto n = static_cast<std::size_t>(polytope.num_sequences());
  if (objective.linear.size() != n || objective.center.size() != n) {
    throw AfwError("prox objective dimension does not match the polytope (" +
                   std::to_string(n) + " sequences)");
  }
  if (!(objective.eta > 0.0)) throw AfwError("eta must be positive");
}

}  // namespace

AfwResult AfwMinimize(const ProxObjective& objective, const Treeplex& polytope,
                      const ActiveSet& init, const Termination& termination,
                      const AfwObserver& observer) {
  CheckDims(objective, polytope);
  AwayStepLimits limits;
  if (const auto* gap = std::get_if<WolfeGap>(&termination)) {
    limits.gap_tolerance = gap->eps;
  } else {
    limits.max_lmo_calls = std::get<MaxLmoCalls>(termination).calls;
    // A zero gap means the iterate is optimal; further calls cannot help.
    limits.gap_tolerance = 0.0;
  }
  std::vector<WeightedAtom<Vertex>> atoms;
  atoms.reserve(init.atoms.size());
  for (const auto& [v, w] : init.atoms) atoms.push_back({v, w});

  const TreeplexProx problem(objective, polytope);
  auto outcome = RunAwayStep(problem, std::move(atoms), limits, observer);

  AfwResult result;
  result.point = std::move(outcome.point);
  result.lmo_calls = outcome.lmo_calls;
  result.final_wolfe_gap = outcome.final_wolfe_gap;
  result.objective = outcome.objective;
  result.active_set.point = result.point;
  result.active_set.atoms.reserve(outcome.atoms.size());
  for (auto& wa : outcome.atoms) {
    result.active_set.atoms.emplace_back(std::move(wa.atom), wa.weight);
  }
  return result;
}

AfwResult Apo(std::span<const double> loss_combo, double eta,
              std::span<const double> center, const Termination& termination,
              const std::optional<ActiveSet>& warmstart,
              const Treeplex& polytope) {
  ProxObjective objective{Vector(loss_combo.begin(), loss_combo.end()),
                          Vector(center.begin(), center.end()), eta};
  CheckDims(objective, polytope);
  if (warmstart) {
    return AfwMinimize(objective, polytope, *warmstart, termination);
  }
  const ActiveSet init =
      ActiveSet::Singleton(Lmo(polytope, loss_combo), polytope.num_sequences());
  Termination rest = termination;
  if (auto* budget = std::get_if<MaxLmoCalls>(&rest)) {
    budget->calls -= 1;
    if (budget->calls <= 0) {
      AfwResult result;
      result.point = init.point;
      result.active_set = init;
      result.lmo_calls = 1;
      result.objective = objective.Value(init.point);
      result.final_wolfe_gap = std::numeric_limits<double>::quiet_NaN();
      return result;
    }
  }
  AfwResult result = AfwMinimize(objective, polytope, init, rest);
  result.lmo_calls += 1;
  return result;
}

}  // namespace pfg
