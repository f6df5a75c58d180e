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

#ifndef PFG_AFW_H_
#define PFG_AFW_H_

#include <optional>
#include <span>
#include <variant>

#include "pfg/away_step.h"
#include "pfg/polytope.h"

namespace pfg {

// f(x) = <linear, x> + ||x - center||^2 / (2 eta). The minimizer is the
// Euclidean prox step from `center` along -eta * linear.
struct ProxObjective {
  Vector linear;
  Vector center;
  double eta = 1.0;

  double Value(std::span<const double> x) const;
  void Gradient(std::span<const double> x, std::span<double> out) const;
};

struct WolfeGap {
  double eps;
};
struct MaxLmoCalls {
  int calls;
};
using Termination = std::variant<WolfeGap, MaxLmoCalls>;

struct AfwResult {
  Vector point;
  ActiveSet active_set;
  int lmo_calls = 0;
  double final_wolfe_gap = 0.0;
  double objective = 0.0;
};

// Away-step Frank-Wolfe on a prox objective over `polytope`, started from
// `init`. With WolfeGap the result's gap certifies eps-suboptimality; with
// MaxLmoCalls exactly that many LMO calls are made unless the gap hits zero
// first. Throws AfwError if WolfeGap is not reached within 10^6 iterations.
AfwResult AfwMinimize(const ProxObjective& objective, const Treeplex& polytope,
                      const ActiveSet& init, const Termination& termination,
                      const AfwObserver& observer = {});

// Approximate prox oracle. Without a warm start the active set begins at
// lmo(loss_combo), and that call is charged to the LMO count and, under
// MaxLmoCalls, to the budget.
AfwResult Apo(std::span<const double> loss_combo, double eta,
              std::span<const double> center, const Termination& termination,
              const std::optional<ActiveSet>& warmstart,
              const Treeplex& polytope);

}  // namespace pfg

#endif  // PFG_AFW_H_
