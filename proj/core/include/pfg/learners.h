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

// Online learners over a strategy polytope that touch the polytope only
// through its LMO (directly, or through away-step Frank-Wolfe prox steps).
//
// Each round the driver calls Next(prediction) to obtain x^t and then
// Observe(loss) with l^t. Non-optimistic learners ignore the prediction.

#ifndef PFG_LEARNERS_H_
#define PFG_LEARNERS_H_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>

#include "pfg/afw.h"
#include "pfg/polytope.h"

namespace pfg {

enum class Algorithm { kFwRomd, kFwOmd, kFtpl, kOftpl, kFp, kOfp, kBr, kObr };

std::string_view AlgorithmName(Algorithm algorithm);
std::optional<Algorithm> ParseAlgorithm(std::string_view name);
bool IsOptimistic(Algorithm algorithm);
// FW-ROMD and FW-OMD: the learners that call the approximate prox oracle.
bool IsFrankWolfeFamily(Algorithm algorithm);
// True when eta matters (step size, or Gumbel scale for FTPL/OFTPL).
bool UsesEta(Algorithm algorithm);

struct EpsSchedule {
  enum class Kind { kInverseSquare, kFixed };
  Kind kind = Kind::kInverseSquare;
  double eps = 0.0;  // used by kFixed

  // Prox accuracy requested at round t >= 1.
  double At(int t) const;
};

enum class ApoStop { kWolfeGap, kMaxLmoCalls };

struct LearnerConfig {
  Algorithm algorithm = Algorithm::kFwRomd;
  double eta = 1.0;
  // Frank-Wolfe family only.
  ApoStop apo_stop = ApoStop::kMaxLmoCalls;
  int max_lmo_calls = 1;
  EpsSchedule eps_schedule;
  bool warmstart = true;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument on out-of-range fields.
  void Validate() const;
};

struct LearnerState {
  Vector last_strategy;        // x^{t-1}
  Vector last_loss;            // l^{t-1}
  Vector second_last_loss;     // l^{t-2}
  Vector cumulative_loss;      // sum of observed losses
  Vector last_prediction;      // m^{t-1}
  std::optional<ActiveSet> warm_active_set;
  int step = 1;                // index t of the next strategy
  std::int64_t lmo_calls_total = 0;
  std::mt19937_64 rng;

  LearnerState(const Treeplex& polytope, std::uint64_t seed);
};

// x^0: mass split uniformly at every decision point.
Vector InitialStrategy(const Treeplex& polytope);

// One round of each algorithm. They read l^{t-1}, m^{t-1} and friends from
// `state`, charge LMO calls to it, and record x^t and m^t, but leave the
// loss history to Learner::Observe.
Vector FwRomdNext(LearnerState& state, const Treeplex& polytope,
                  const LearnerConfig& config, std::span<const double> m_t);
Vector FwOmdNext(LearnerState& state, const Treeplex& polytope,
                 const LearnerConfig& config);
Vertex FtplNext(LearnerState& state, const Treeplex& polytope,
                const LearnerConfig& config);
Vertex OftplNext(LearnerState& state, const Treeplex& polytope,
                 const LearnerConfig& config, std::span<const double> m_t);
Vertex FpNext(LearnerState& state, const Treeplex& polytope);
Vertex OfpNext(LearnerState& state, const Treeplex& polytope,
               std::span<const double> m_t);
Vertex BrNext(LearnerState& state, const Treeplex& polytope);
Vertex ObrNext(LearnerState& state, const Treeplex& polytope,
               std::span<const double> m_t);

// Vector of independent Gumbel(0, scale) draws, -scale * ln(-ln U).
Vector GumbelNoise(std::mt19937_64& rng, int n, double scale);

class Learner {
 public:
  Learner(const Treeplex& polytope, LearnerConfig config);

  const Vector& Next(std::span<const double> prediction);
  void Observe(std::span<const double> loss);

  const LearnerState& state() const { return state_; }
  const LearnerConfig& config() const { return config_; }
  const Treeplex& polytope() const { return *polytope_; }
  // LMO calls spent by the most recent Next.
  int last_lmo_calls() const { return last_lmo_calls_; }
  // Prox accuracy requested by the most recent Next, as used by the
  // regret audits (NaN unless the learner stops on the Wolfe gap).
  double last_eps() const { return last_eps_; }

 private:
  const Treeplex* polytope_;
  LearnerConfig config_;
  LearnerState state_;
  int last_lmo_calls_ = 0;
  double last_eps_ = 0.0;
};

}  // namespace pfg

#endif  // PFG_LEARNERS_H_
