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

#include "pfg/learners.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace pfg {

namespace {

constexpr std::array<std::pair<Algorithm, std::string_view>, 8> kNames = {{
    {Algorithm::kFwRomd, "fw-romd"},
    {Algorithm::kFwOmd, "fw-omd"},
    {Algorithm::kFtpl, "ftpl"},
    {Algorithm::kOftpl, "oftpl"},
    {Algorithm::kFp, "fp"},
    {Algorithm::kOfp, "ofp"},
    {Algorithm::kBr, "br"},
    {Algorithm::kObr, "obr"},
}};

void CheckDim(std::span<const double> v, const Treeplex& polytope,
              const char* what) {
  if (static_cast<int>(v.size()) != polytope.num_sequences()) {
    throw std::invalid_argument(std::string(what) + " has dimension " +
                                std::to_string(v.size()) + ", expected " +
                                std::to_string(polytope.num_sequences()));
  }
}

// l^{t-1} + m^t - m^{t-1}.
Vector ReflectedLoss(const LearnerState& state, std::span<const double> m_t) {
  Vector combo = state.last_loss;
  for (std::size_t k = 0; k < combo.size(); ++k) {
    combo[k] += m_t[k] - state.last_prediction[k];
  }
  return combo;
}

Vector ProxStep(LearnerState& state, const Treeplex& polytope,
                const LearnerConfig& config, std::span<const double> combo) {
  Termination term = MaxLmoCalls{config.max_lmo_calls};
  if (config.apo_stop == ApoStop::kWolfeGap) {
    // The objective keeps the 1/(2 eta) factor on the distance term; the
    // extra min(1, 1/eta) makes the tolerance also hold after rescaling the
    // objective by eta.
    const double eps = config.eps_schedule.At(state.step) *
                       std::min(1.0, 1.0 / config.eta);
    term = WolfeGap{eps};
  }
  std::optional<ActiveSet> warm;
  if (config.warmstart && state.step > 1) warm = std::move(state.warm_active_set);
  AfwResult result =
      Apo(combo, config.eta, state.last_strategy, term, warm, polytope);
  state.lmo_calls_total += result.lmo_calls;
  state.warm_active_set = std::move(result.active_set);
  return std::move(result.point);
}

Vertex LmoCharged(LearnerState& state, const Treeplex& polytope,
                  std::span<const double> loss) {
  ++state.lmo_calls_total;
  return Lmo(polytope, loss);
}

void Remember(LearnerState& state, const Vector& x, std::span<const double> m_t) {
  state.last_strategy = x;
  if (!m_t.empty()) state.last_prediction.assign(m_t.begin(), m_t.end());
}

}  // namespace

std::string_view AlgorithmName(Algorithm algorithm) {
  for (const auto& [a, name] : kNames) {
    if (a == algorithm) return name;
  }
  return "unknown";
}

std::optional<Algorithm> ParseAlgorithm(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) {
    return c == '_' ? '-' : static_cast<char>(std::tolower(c));
  });
  if (lower == "fwromd") lower = "fw-romd";
  if (lower == "fwomd") lower = "fw-omd";
  for (const auto& [a, n] : kNames) {
    if (n == lower) return a;
  }
  return std::nullopt;
}

bool IsOptimistic(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kFwRomd:
    case Algorithm::kOftpl:
    case Algorithm::kOfp:
    case Algorithm::kObr:
      return true;
    default:
      return false;
  }
}

bool IsFrankWolfeFamily(Algorithm algorithm) {
  return algorithm == Algorithm::kFwRomd || algorithm == Algorithm::kFwOmd;
}

bool UsesEta(Algorithm algorithm) {
  return IsFrankWolfeFamily(algorithm) || algorithm == Algorithm::kFtpl ||
         algorithm == Algorithm::kOftpl;
}

double EpsSchedule::At(int t) const {
  if (kind == Kind::kFixed) return eps;
  const double td = static_cast<double>(t);
  return 1.0 / (td * td);
}

void LearnerConfig::Validate() const {
  if (UsesEta(algorithm) && !(eta > 0.0 && std::isfinite(eta))) {
    throw std::invalid_argument("eta must be positive and finite");
  }
  if (IsFrankWolfeFamily(algorithm)) {
    if (apo_stop == ApoStop::kMaxLmoCalls && max_lmo_calls < 1) {
      throw std::invalid_argument("max_lmo_calls must be at least 1");
    }
    if (apo_stop == ApoStop::kWolfeGap &&
        eps_schedule.kind == EpsSchedule::Kind::kFixed &&
        !(eps_schedule.eps > 0.0)) {
      throw std::invalid_argument("fixed eps must be positive");
    }
  }
}

LearnerState::LearnerState(const Treeplex& polytope, std::uint64_t seed)
    : last_strategy(InitialStrategy(polytope)),
      last_loss(polytope.num_sequences(), 0.0),
      second_last_loss(polytope.num_sequences(), 0.0),
      cumulative_loss(polytope.num_sequences(), 0.0),
      last_prediction(polytope.num_sequences(), 0.0),
      rng(seed) {}

Vector InitialStrategy(const Treeplex& polytope) { return polytope.UniformPoint(); }

Vector GumbelNoise(std::mt19937_64& rng, int n, double scale) {
  Vector g(n);
  for (double& v : g) {
    // 53 random bits, shifted half a step off zero: U lies strictly in (0, 1).
    const double u = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    v = -scale * std::log(-std::log(u));
  }
  return g;
}

Vector FwRomdNext(LearnerState& state, const Treeplex& polytope,
                  const LearnerConfig& config, std::span<const double> m_t) {
  CheckDim(m_t, polytope, "prediction");
  const Vector combo = ReflectedLoss(state, m_t);
  Vector x = ProxStep(state, polytope, config, combo);
  Remember(state, x, m_t);
  return x;
}

Vector FwOmdNext(LearnerState& state, const Treeplex& polytope,
                 const LearnerConfig& config) {
  const Vector combo = state.last_loss;
  Vector x = ProxStep(state, polytope, config, combo);
  Remember(state, x, {});
  return x;
}

Vertex FtplNext(LearnerState& state, const Treeplex& polytope,
                const LearnerConfig& config) {
  Vector loss = state.cumulative_loss;
  const Vector g = GumbelNoise(state.rng, polytope.num_sequences(), config.eta);
  for (std::size_t k = 0; k < loss.size(); ++k) loss[k] -= g[k];
  Vertex v = LmoCharged(state, polytope, loss);
  Remember(state, ToDense(v, polytope.num_sequences()), {});
  return v;
}

Vertex OftplNext(LearnerState& state, const Treeplex& polytope,
                 const LearnerConfig& config, std::span<const double> m_t) {
  CheckDim(m_t, polytope, "prediction");
  Vector loss = state.cumulative_loss;
  const Vector g = GumbelNoise(state.rng, polytope.num_sequences(), config.eta);
  for (std::size_t k = 0; k < loss.size(); ++k) loss[k] += m_t[k] - g[k];
  Vertex v = LmoCharged(state, polytope, loss);
  Remember(state, ToDense(v, polytope.num_sequences()), m_t);
  return v;
}

Vertex FpNext(LearnerState& state, const Treeplex& polytope) {
  Vertex v = LmoCharged(state, polytope, state.cumulative_loss);
  Remember(state, ToDense(v, polytope.num_sequences()), {});
  return v;
}

Vertex OfpNext(LearnerState& state, const Treeplex& polytope,
               std::span<const double> m_t) {
  CheckDim(m_t, polytope, "prediction");
  Vector loss = state.cumulative_loss;
  for (std::size_t k = 0; k < loss.size(); ++k) loss[k] += m_t[k];
  Vertex v = LmoCharged(state, polytope, loss);
  Remember(state, ToDense(v, polytope.num_sequences()), m_t);
  return v;
}

Vertex BrNext(LearnerState& state, const Treeplex& polytope) {
  Vertex v = LmoCharged(state, polytope, state.last_loss);
  Remember(state, ToDense(v, polytope.num_sequences()), {});
  return v;
}

Vertex ObrNext(LearnerState& state, const Treeplex& polytope,
               std::span<const double> m_t) {
  CheckDim(m_t, polytope, "prediction");
  Vertex v = LmoCharged(state, polytope, ReflectedLoss(state, m_t));
  Remember(state, ToDense(v, polytope.num_sequences()), m_t);
  return v;
}

Learner::Learner(const Treeplex& polytope, LearnerConfig config)
    : polytope_(&polytope),
      config_(config),
      state_(polytope, config.seed) {
  config_.Validate();
}

const Vector& Learner::Next(std::span<const double> prediction) {
  const std::int64_t before = state_.lmo_calls_total;
  last_eps_ = std::numeric_limits<double>::quiet_NaN();
  const Treeplex& p = *polytope_;
  switch (config_.algorithm) {
    case Algorithm::kFwRomd:
      FwRomdNext(state_, p, config_, prediction);
      break;
    case Algorithm::kFwOmd:
      FwOmdNext(state_, p, config_);
      break;
    case Algorithm::kFtpl:
      FtplNext(state_, p, config_);
      break;
    case Algorithm::kOftpl:
      OftplNext(state_, p, config_, prediction);
      break;
    case Algorithm::kFp:
      FpNext(state_, p);
      break;
    case Algorithm::kOfp:
      OfpNext(state_, p, prediction);
      break;
    case Algorithm::kBr:
      BrNext(state_, p);
      break;
    case Algorithm::kObr:
      ObrNext(state_, p, prediction);
      break;
  }
  if (IsFrankWolfeFamily(config_.algorithm) &&
      config_.apo_stop == ApoStop::kWolfeGap) {
    last_eps_ = config_.eps_schedule.At(state_.step);
  }
  last_lmo_calls_ = static_cast<int>(state_.lmo_calls_total - before);
  return state_.last_strategy;
}

void Learner::Observe(std::span<const double> loss) {
  CheckDim(loss, *polytope_, "loss");
  state_.second_last_loss = std::move(state_.last_loss);
  state_.last_loss.assign(loss.begin(), loss.end());
  for (std::size_t k = 0; k < loss.size(); ++k) state_.cumulative_loss[k] += loss[k];
  ++state_.step;
}

}  // namespace pfg
