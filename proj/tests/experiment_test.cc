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


#include "experiment.h"

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace pfg {
namespace {

namespace fs = std::filesystem;

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path FreshDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("pfg_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string ConfigErrorOf(const std::string& text) {
  try {
    ParseConfigText(text, "cfg.yaml");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

constexpr char kSmall[] = R"(schema: 1
game: kuhn
algorithms: [fw-romd, fp]
eta: [1.28]
max_lmo_calls: [5]
averaging: [quadratic]
lmo_budget: 300
seed: 7
)";

TEST(ConfigTest, DefaultsFromMinimalConfig) {
  const ExperimentConfig c = ParseConfigText("schema: 1\ngame: kuhn\n");
  EXPECT_EQ(c.game.id, "kuhn");
  EXPECT_EQ(c.algorithms, std::vector<Algorithm>{Algorithm::kFwRomd});
  ASSERT_EQ(c.eta_grid.size(), 14u);
  EXPECT_DOUBLE_EQ(c.eta_grid.front(), 0.02);
  EXPECT_DOUBLE_EQ(c.eta_grid.back(), 163.84);
  EXPECT_EQ(c.lmo_grid, (std::vector<int>{1, 2, 3, 4, 5, 10, 20, 100, 200}));
  EXPECT_DOUBLE_EQ(c.lmo_budget, 1e4);
  EXPECT_EQ(c.apo_stop, ApoStop::kMaxLmoCalls);
}

TEST(ConfigTest, FullSchema) {
  const ExperimentConfig c = ParseConfigText(R"(schema: 1
game: {id: leduc, raise_cap: 1, ranks: 3, suits: 3}
algorithms: [FW_ROMD, obr]
apo: {stop: wolfe_gap, eps: 0.001, warmstart: false}
eta: [0.5, 2]
max_lmo_calls: [3]
averaging: [constant, last]
players:
  - {eta: 0.25}
  - null
restart: true
lmo_budget: 500
record_every: 10
max_iterations: 40
seed: 12
output: out_dir
)");
  EXPECT_EQ(c.game.id, "leduc");
  EXPECT_EQ(c.game.raise_cap, 1);
  EXPECT_EQ(c.game.suits, 3);
  EXPECT_EQ(c.apo_stop, ApoStop::kWolfeGap);
  EXPECT_EQ(c.eps_schedule.kind, EpsSchedule::Kind::kFixed);
  EXPECT_DOUBLE_EQ(c.eps_schedule.eps, 0.001);
  EXPECT_FALSE(c.warmstart);
  EXPECT_EQ(c.averaging, (std::vector<Averaging>{Averaging::kUniform, Averaging::kLast}));
  ASSERT_EQ(c.players.size(), 2u);
  EXPECT_EQ(c.players[0].eta, 0.25);
  EXPECT_FALSE(c.players[1].eta.has_value());
  EXPECT_TRUE(c.restart);
  EXPECT_EQ(c.record_every, 10);
  EXPECT_EQ(c.max_iterations, 40);
  EXPECT_EQ(c.seed, 12u);
  EXPECT_EQ(c.output, "out_dir");
  EXPECT_EQ(ParseConfigText(EmitConfig(c)), c);
}

TEST(ConfigTest, ErrorsCarryLineNumbers) {
  EXPECT_EQ(ConfigErrorOf("schema: 1\ngame: kuhn\nbogus: 3\n"),
            "cfg.yaml:3:1: unknown key 'bogus' in config");
  EXPECT_EQ(ConfigErrorOf("schema: 1\ngame: kuhn\neta: [1, -2]\n"),
            "cfg.yaml:3:10: eta must be positive");
  EXPECT_EQ(ConfigErrorOf("schema: 1\ngame: chess\n"), "cfg.yaml:2:7: unknown game 'chess'");
  EXPECT_EQ(ConfigErrorOf("schema: 2\ngame: kuhn\n"),
            "cfg.yaml:1:9: unsupported schema (expected 1)");
  EXPECT_NE(ConfigErrorOf("game: kuhn\n").find("missing 'schema'"), std::string::npos);
  EXPECT_NE(ConfigErrorOf("schema: 1\ngame: kuhn\nalgorithms: [cfr]\n")
                .find("cfg.yaml:3:"),
            std::string::npos);
  EXPECT_NE(ConfigErrorOf("schema: 1\ngame: {id: kuhn, players: 3}\nrestart: true\n")
                .find("restart needs a two-player game"),
            std::string::npos);
  EXPECT_NE(ConfigErrorOf("schema: 1\ngame: {id: kuhn, suits: 2}\n")
                .find("has no parameter 'suits'"),
            std::string::npos);
  EXPECT_NE(ConfigErrorOf("schema: 1\ngame: kuhn\nplayers: [null]\n")
                .find("one entry per player"),
            std::string::npos);
  EXPECT_NE(ConfigErrorOf("schema: [1\n").find("cfg.yaml:"), std::string::npos);
  EXPECT_THROW(LoadConfig("/nonexistent/pfg.yaml"), ConfigError);
}

TEST(ConfigTest, BadGameParametersFailAtBuild) {
  GameSpec spec;
  spec.id = "kuhn";
  spec.players = 5;
  EXPECT_THROW(BuildGame(spec), ConfigError);
  spec.id = "liars_dice";
  spec.players = 2;
  spec.faces = 2;
  EXPECT_EQ(BuildGame(spec).name, "liars_dice2p_k2");
  EXPECT_GE(GameRegistry().size(), 5u);
}

TEST(GridTest, ParametersCollapseWhenUnused) {
  ExperimentConfig c = ParseConfigText(R"(schema: 1
game: kuhn
algorithms: [fw-romd, ftpl, fp]
eta: [0.5, 1]
max_lmo_calls: [1, 5]
averaging: [uniform, last]
)");
  const auto points = ExpandGrid(c, "kuhn2p_r3", 2);
  // fw-romd: 2 eta x 2 m x 2 avg; ftpl: 2 eta x 2 avg; fp: 2 avg.
  ASSERT_EQ(points.size(), 8u + 4u + 2u);
  EXPECT_EQ(points[0].file_name, "kuhn2p_r3__fw-romd__eta0.5__m1__uniform.csv");
  EXPECT_EQ(points.back().file_name, "kuhn2p_r3__fp__last.csv");
  EXPECT_EQ(points[0].learners[0].seed, 0u);
  EXPECT_EQ(points[0].learners[1].seed, 1u);

  c.apo_stop = ApoStop::kWolfeGap;
  EXPECT_EQ(ExpandGrid(c, "k", 2).size(), 4u + 4u + 2u);
}

TEST(GridTest, PlayerOverridesApply) {
  const ExperimentConfig c = ParseConfigText(R"(schema: 1
game: kuhn
eta: [1]
max_lmo_calls: [2]
players:
  - {algorithm: br}
  - {eta: 3, max_lmo_calls: 7, warmstart: false}
)");
  const auto points = ExpandGrid(c, "k", 2);
  ASSERT_EQ(points.size(), 1u);
  EXPECT_EQ(points[0].learners[0].algorithm, Algorithm::kBr);
  EXPECT_EQ(points[0].learners[1].eta, 3.0);
  EXPECT_EQ(points[0].learners[1].max_lmo_calls, 7);
  EXPECT_FALSE(points[0].learners[1].warmstart);
}

TEST(CsvTest, Format) {
  RunRecord r;
  r.iteration = 3;
  r.avg_lmo_calls = 6;
  r.metric = 0.1;
  r.rvu_slack = std::nan("");
  r.stability_margin = -0.5;
  EXPECT_EQ(FormatCsv({r}),
            "iteration,avg_lmo_calls,metric,rvu_slack,stability_margin\n"
            "3,6,0.10000000000000001,nan,-0.5\n");
}

TEST(RunExperimentTest, WritesCsvsAndRoundTripManifest) {
  const fs::path dir = FreshDir("run");
  ExperimentConfig c = ParseConfigText(kSmall);
  RunOptions opts;
  opts.output_dir = dir.string();
  opts.jobs = 2;
  const ExperimentReport report = RunExperiment(c, opts);
  EXPECT_TRUE(report.all_ok);
  ASSERT_EQ(report.runs.size(), 2u);
  EXPECT_TRUE(fs::exists(dir / "kuhn2p_r3__fw-romd__eta1.28__m5__quadratic.csv"));
  EXPECT_TRUE(fs::exists(dir / "kuhn2p_r3__fp__quadratic.csv"));
  EXPECT_FALSE(fs::exists(dir / "manifest.yaml.tmp"));

  const YAML::Node manifest = YAML::LoadFile((dir / "manifest.yaml").string());
  EXPECT_EQ(manifest["schema"].as<int>(), 1);
  EXPECT_EQ(manifest["seed"].as<int>(), 7);
  EXPECT_EQ(ParseConfig(manifest["config"], "manifest"), c);
  ASSERT_EQ(manifest["runs"].size(), 2u);
  EXPECT_EQ(manifest["runs"][1]["status"].as<std::string>(), "ok");
  EXPECT_EQ(manifest["runs"][1]["iterations"].as<int>(), 300);

  const std::string csv = ReadFile(dir / "kuhn2p_r3__fp__quadratic.csv");
  EXPECT_EQ(csv.rfind("iteration,avg_lmo_calls,metric,rvu_slack,stability_margin\n", 0), 0u);
  EXPECT_NE(csv.find("\n300,300,"), std::string::npos);
}

TEST(RunExperimentTest, RerunIsByteIdentical) {
  ExperimentConfig c = ParseConfigText(kSmall);
  c.algorithms = {Algorithm::kFwRomd, Algorithm::kFtpl, Algorithm::kOftpl};
  RunOptions a;
  a.output_dir = FreshDir("rerun_a").string();
  a.jobs = 3;
  RunOptions b;
  b.output_dir = FreshDir("rerun_b").string();
  b.jobs = 1;
  const auto ra = RunExperiment(c, a);
  RunExperiment(c, b);
  for (const RunSummary& r : ra.runs) {
    const std::string x = ReadFile(fs::path(*a.output_dir) / r.file);
    EXPECT_FALSE(x.empty());
    EXPECT_EQ(x, ReadFile(fs::path(*b.output_dir) / r.file)) << r.file;
  }
}

TEST(RunExperimentTest, FailedRunIsMarkedPartial) {
  ExperimentConfig c = ParseConfigText(R"(schema: 1
game: kuhn
apo: {stop: wolfe_gap, eps: 1.0e-300}
eta: [1]
max_iterations: 3
)");
  RunOptions opts;
  opts.output_dir = FreshDir("partial").string();
  const ExperimentReport report = RunExperiment(c, opts);
  EXPECT_FALSE(report.all_ok);
  const YAML::Node manifest = YAML::LoadFile(*opts.output_dir + "/manifest.yaml");
  EXPECT_EQ(manifest["runs"][0]["status"].as<std::string>(), "failed");
  EXPECT_TRUE(manifest["runs"][0]["partial"].as<bool>());
  const std::string csv = ReadFile(fs::path(*opts.output_dir) / report.runs[0].file);
  EXPECT_NE(csv.find("\n1,"), std::string::npos);
}

TEST(VerifyFdTest, SmallSimplicesAndFixtures) {
  const auto rows = VerifyFacialDistance(5);
  ASSERT_EQ(rows.size(), 4u + 3u);
  for (const FdRow& r : rows) {
    EXPECT_TRUE(r.ok) << r.polytope;
    EXPECT_GT(r.brute_force, r.lower_bound);
  }
  EXPECT_NEAR(rows[0].brute_force, std::sqrt(2.0), 1e-9);
  EXPECT_THROW(VerifyFacialDistance(1), std::invalid_argument);
  EXPECT_NE(FormatFdTable(rows).find("kuhn_p1"), std::string::npos);
}

#ifdef PFG_CLI_PATH
int RunCli(const std::string& args) {
  const int status = std::system((std::string(PFG_CLI_PATH) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(CliTest, ExitCodes) {
  const fs::path dir = FreshDir("cli");
  fs::create_directories(dir);
  {
    std::ofstream(dir / "good.yaml") << kSmall << "output: " << (dir / "out").string() << "\n";
    std::ofstream(dir / "bad.yaml") << "schema: 1\ngame: kuhn\nwat: 1\n";
  }
  EXPECT_EQ(RunCli("list-games"), 0);
  EXPECT_EQ(RunCli("verify-fd --max-n 4"), 0);
  EXPECT_EQ(RunCli("run " + (dir / "bad.yaml").string()), 1);
  EXPECT_EQ(RunCli("run " + (dir / "missing.yaml").string()), 1);
  EXPECT_EQ(RunCli("frobnicate"), 1);
  EXPECT_EQ(RunCli("run " + (dir / "good.yaml").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "out" / "manifest.yaml"));
  EXPECT_EQ(RunCli("run " + (dir / "good.yaml").string() + " --jobs 1"), 0);
  const std::string env = "PFG_OUTPUT_DIR=" + (dir / "env").string() + " ";
  EXPECT_EQ(std::system((env + PFG_CLI_PATH + " run " + (dir / "good.yaml").string() +
                         " > /dev/null").c_str()),
            0);
  EXPECT_TRUE(fs::exists(dir / "env" / "manifest.yaml"));
}
#endif

}  // namespace
}  // namespace pfg
