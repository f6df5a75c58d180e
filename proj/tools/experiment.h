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

// Config-driven experiment sweeps, CSV output and the facial-distance
// verification table behind the `pfg` command-line tool.

#ifndef PFG_TOOLS_EXPERIMENT_H_
#define PFG_TOOLS_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pfg/games.h"
#include "pfg/learners.h"
#include "pfg/selfplay.h"

namespace YAML {
class Node;
}

namespace pfg {

inline constexpr int kConfigSchemaVersion = 1;

enum ExitCode {
  kExitOk = 0,
  kExitConfigError = 1,
  kExitRuntimeFailure = 2,
  kExitVerificationFailure = 3,
};

// Invalid config. what() carries "source:line:column: message" when the
// offending node is known.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GameSpec {
  std::string id = "kuhn";
  int players = 2;
  int raise_cap = 2;  // leduc
  int ranks = 0;      // kuhn (0: players + 1), leduc
  int suits = 2;      // leduc
  int faces = 0;      // liars_dice (0: 6 for two players, 3 for three)

  bool operator==(const GameSpec&) const = default;
};

struct GameInfo {
  std::string id;
  std::string description;
  std::vector<std::string> parameters;
};

const std::vector<GameInfo>& GameRegistry();
// Throws ConfigError for unknown ids or unsupported parameters.
GameTree BuildGame(const GameSpec& spec);

// Per-player settings applied on top of every grid point.
struct PlayerOverride {
  std::optional<Algorithm> algorithm;
  std::optional<double> eta;
  std::optional<int> max_lmo_calls;
  std::optional<bool> warmstart;

  bool operator==(const PlayerOverride&) const = default;
};

struct ExperimentConfig {
  GameSpec game;
  std::vector<Algorithm> algorithms = {Algorithm::kFwRomd};
  ApoStop apo_stop = ApoStop::kMaxLmoCalls;
  EpsSchedule eps_schedule;
  bool warmstart = true;
  std::vector<double> eta_grid = DefaultEtaGrid();
  std::vector<int> lmo_grid = DefaultLmoGrid();
  std::vector<Averaging> averaging = {Averaging::kUniform};
  std::vector<PlayerOverride> players;
  bool restart = false;
  double lmo_budget = 1e4;
  int record_every = 0;
  int max_iterations = 0;
  std::uint64_t seed = 0;
  std::string output = "pfg_out";

  // 0.01 * 2^k for k = 1..14.
  static std::vector<double> DefaultEtaGrid();
  static std::vector<int> DefaultLmoGrid();

  bool operator==(const ExperimentConfig& other) const;
};

ExperimentConfig ParseConfig(const YAML::Node& root, const std::string& source);
ExperimentConfig ParseConfigText(const std::string& text,
                                 const std::string& source = "<config>");
ExperimentConfig LoadConfig(const std::string& path);
// YAML text that ParseConfigText maps back to an equal config.
std::string EmitConfig(const ExperimentConfig& config);

struct GridPoint {
  Algorithm algorithm = Algorithm::kFwRomd;
  double eta = 0.0;       // 0 when the algorithm has no step size
  int max_lmo_calls = 0;  // 0 unless the FW family runs on an LMO budget
  Averaging averaging = Averaging::kUniform;
  std::string file_name;
  std::vector<LearnerConfig> learners;
  SelfPlayOptions options;
};

// One grid point per distinct (algorithm, eta, m, averaging); parameters an
// algorithm ignores collapse to a single point.
std::vector<GridPoint> ExpandGrid(const ExperimentConfig& config,
                                  const std::string& game_name,
                                  int num_players);

// iteration,avg_lmo_calls,metric,rvu_slack,stability_margin with 17
// significant digits; NaN prints as "nan".
std::string FormatCsv(const std::vector<RunRecord>& records);
std::string FormatReal(double value);

// Writes to a temporary sibling and renames it into place.
void WriteFileAtomic(const std::string& path, const std::string& contents);

struct RunSummary {
  std::string file;
  GridPoint point;
  bool ok = true;
  std::string error;
  int iterations = 0;
  double final_metric = 0.0;
  double avg_lmo_calls = 0.0;
  std::int64_t metric_lmo_calls = 0;
  std::vector<double> omega;
  double wall_seconds = 0.0;
};

struct ExperimentReport {
  std::string output_dir;
  std::vector<RunSummary> runs;
  bool all_ok = true;
};

struct RunOptions {
  // Worker threads; 0 picks the hardware concurrency.
  int jobs = 0;
  // Replaces config.output when set (the CLI fills this from PFG_OUTPUT_DIR).
  std::optional<std::string> output_dir;
};

// Runs every grid point, writes one CSV per point and manifest.yaml.
// Throws ConfigError if the config cannot be realized (bad game parameters).
ExperimentReport RunExperiment(const ExperimentConfig& config,
                               const RunOptions& options = {});

struct FdRow {
  std::string polytope;
  int dimension = 0;
  double brute_force = 0.0;
  double closed_form = 0.0;  // NaN when unknown
  double lower_bound = 0.0;
  bool ok = false;
};

// Brute-force facial distance against the closed form and the lower bound
// for simplices of 2..max_n actions and a few treeplex fixtures.
std::vector<FdRow> VerifyFacialDistance(int max_n);
std::string FormatFdTable(const std::vector<FdRow>& rows);

}  // namespace pfg

#endif  // PFG_TOOLS_EXPERIMENT_H_
