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

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

namespace pfg {

namespace {

namespace fs = std::filesystem;

[[noreturn]] void Fail(const YAML::Node& node, const std::string& source,
                       const std::string& message) {
  const YAML::Mark mark = node.Mark();
  if (mark.is_null()) throw ConfigError(source + ": " + message);
  throw ConfigError(source + ":" + std::to_string(mark.line + 1) + ":" +
                    std::to_string(mark.column + 1) + ": " + message);
}

template <class T>
T Scalar(const YAML::Node& node, const std::string& source,
         const std::string& what) {
  if (!node.IsScalar()) Fail(node, source, what + " must be a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    Fail(node, source, "cannot read " + what + " from '" + node.Scalar() + "'");
  }
}

template <class T, class F>
std::vector<T> List(const YAML::Node& node, const std::string& source,
                    const std::string& what, F read) {
  std::vector<T> out;
  if (node.IsSequence()) {
    if (node.size() == 0) Fail(node, source, what + " must not be empty");
    for (const auto& item : node) out.push_back(read(item));
  } else {
    out.push_back(read(node));
  }
  return out;
}

void CheckKeys(const YAML::Node& map, const std::string& source,
               const std::set<std::string>& allowed, const std::string& what) {
  if (!map.IsMap()) Fail(map, source, what + " must be a mapping");
  for (const auto& kv : map) {
    const std::string key = kv.first.as<std::string>();
    if (!allowed.contains(key)) {
      Fail(kv.first, source, "unknown key '" + key + "' in " + what);
    }
  }
}

Algorithm ReadAlgorithm(const YAML::Node& node, const std::string& source) {
  const auto name = Scalar<std::string>(node, source, "algorithm");
  const auto a = ParseAlgorithm(name);
  if (!a) Fail(node, source, "unknown algorithm '" + name + "'");
  return *a;
}

double ReadEta(const YAML::Node& node, const std::string& source) {
  const double eta = Scalar<double>(node, source, "eta");
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    Fail(node, source, "eta must be positive");
  }
  return eta;
}

int ReadLmoCalls(const YAML::Node& node, const std::string& source) {
  const int m = Scalar<int>(node, source, "max_lmo_calls");
  if (m < 1) Fail(node, source, "max_lmo_calls must be at least 1");
  return m;
}

const GameInfo* FindGame(const std::string& id) {
  for (const GameInfo& g : GameRegistry()) {
    if (g.id == id) return &g;
  }
  return nullptr;
}

GameSpec ReadGame(const YAML::Node& node, const std::string& source) {
  GameSpec spec;
  if (node.IsScalar()) {
    spec.id = node.as<std::string>();
    if (!FindGame(spec.id)) Fail(node, source, "unknown game '" + spec.id + "'");
    return spec;
  }
  CheckKeys(node, source, {"id", "players", "raise_cap", "ranks", "suits", "faces"},
            "game");
  if (!node["id"]) Fail(node, source, "game needs an id");
  spec.id = Scalar<std::string>(node["id"], source, "game id");
  const GameInfo* info = FindGame(spec.id);
  if (!info) Fail(node["id"], source, "unknown game '" + spec.id + "'");
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    if (key == "id") continue;
    if (std::find(info->parameters.begin(), info->parameters.end(), key) ==
        info->parameters.end()) {
      Fail(kv.first, source, "game '" + spec.id + "' has no parameter '" + key + "'");
    }
    const int value = Scalar<int>(kv.second, source, key);
    if (key == "players") spec.players = value;
    if (key == "raise_cap") spec.raise_cap = value;
    if (key == "ranks") spec.ranks = value;
    if (key == "suits") spec.suits = value;
    if (key == "faces") spec.faces = value;
  }
  if (spec.id == "goofspiel" && !node["players"]) spec.players = 3;
  // Mirrors the builder checks so errors point at the config line.
  try {
    if (spec.players < 2 || spec.players > 3) {
      throw GameError("players must be 2 or 3");
    }
    if ((spec.id == "leduc" || spec.id == "matching_pennies") && spec.players != 2) {
      throw GameError(spec.id + " is a two-player game");
    }
    if (spec.id == "leduc" && (spec.raise_cap < 1 || spec.raise_cap > 2)) {
      throw GameError("raise_cap must be 1 or 2");
    }
    if (spec.ranks < 0 || spec.suits < 1 || spec.faces < 0) {
      throw GameError("deck parameters must be positive");
    }
  } catch (const GameError& e) {
    Fail(node, source, e.what());
  }
  return spec;
}

EpsSchedule ReadEps(const YAML::Node& node, const std::string& source) {
  EpsSchedule eps;
  if (node.IsScalar() && node.Scalar() == "inverse_square") return eps;
  const double v = Scalar<double>(node, source, "eps");
  if (!(v > 0.0)) Fail(node, source, "eps must be 'inverse_square' or positive");
  eps.kind = EpsSchedule::Kind::kFixed;
  eps.eps = v;
  return eps;
}

std::string Slug(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

std::vector<double> ExperimentConfig::DefaultEtaGrid() {
  std::vector<double> grid;
  for (int k = 1; k <= 14; ++k) grid.push_back(0.01 * std::ldexp(1.0, k));
  return grid;
}

std::vector<int> ExperimentConfig::DefaultLmoGrid() {
  return {1, 2, 3, 4, 5, 10, 20, 100, 200};
}

bool ExperimentConfig::operator==(const ExperimentConfig& o) const {
  return game == o.game && algorithms == o.algorithms && apo_stop == o.apo_stop &&
         eps_schedule.kind == o.eps_schedule.kind &&
         eps_schedule.eps == o.eps_schedule.eps && warmstart == o.warmstart &&
         eta_grid == o.eta_grid && lmo_grid == o.lmo_grid &&
         averaging == o.averaging && players == o.players &&
         restart == o.restart && lmo_budget == o.lmo_budget &&
         record_every == o.record_every && max_iterations == o.max_iterations &&
         seed == o.seed && output == o.output;
}

const std::vector<GameInfo>& GameRegistry() {
  static const std::vector<GameInfo> registry = {
      {"kuhn", "Kuhn poker, 2 or 3 players", {"players", "ranks"}},
      {"leduc", "Leduc hold'em, 2 players", {"players", "raise_cap", "ranks", "suits"}},
      {"liars_dice", "Liar's Dice with one die each, 2 or 3 players", {"players", "faces"}},
      {"goofspiel", "limited-information Goofspiel, 3 ranks, 2 or 3 players", {"players"}},
      {"matching_pennies", "matching pennies as a one-shot game", {"players"}},
  };
  return registry;
}

GameTree BuildGame(const GameSpec& spec) {
  try {
    if (spec.id == "kuhn") return BuildKuhn(spec.players, spec.ranks);
    if (spec.id == "leduc") {
      LeducDeck deck;
      if (spec.ranks > 0) deck.ranks = spec.ranks;
      deck.suits = spec.suits;
      return BuildLeduc(spec.raise_cap, deck);
    }
    if (spec.id == "liars_dice") return BuildLiarsDice(spec.players, spec.faces);
    if (spec.id == "goofspiel") return BuildGoofspiel(spec.players);
    if (spec.id == "matching_pennies") return BuildMatchingPennies();
  } catch (const GameError& e) {
    throw ConfigError("game '" + spec.id + "': " + e.what());
  }
  throw ConfigError("unknown game '" + spec.id + "'");
}

ExperimentConfig ParseConfig(const YAML::Node& root, const std::string& source) {
  CheckKeys(root, source,
            {"schema", "game", "algorithms", "apo", "eta", "max_lmo_calls",
             "averaging", "players", "restart", "lmo_budget", "record_every",
             "max_iterations", "seed", "output"},
            "config");
  ExperimentConfig c;
  if (!root["schema"]) Fail(root, source, "missing 'schema'");
  if (Scalar<int>(root["schema"], source, "schema") != kConfigSchemaVersion) {
    Fail(root["schema"], source,
         "unsupported schema (expected " + std::to_string(kConfigSchemaVersion) + ")");
  }
  if (!root["game"]) Fail(root, source, "missing 'game'");
  c.game = ReadGame(root["game"], source);
  if (const auto n = root["algorithms"]) {
    c.algorithms = List<Algorithm>(n, source, "algorithms", [&](const YAML::Node& x) {
      return ReadAlgorithm(x, source);
    });
  }
  if (const auto apo = root["apo"]) {
    CheckKeys(apo, source, {"stop", "eps", "warmstart"}, "apo");
    if (const auto s = apo["stop"]) {
      const auto v = Scalar<std::string>(s, source, "apo.stop");
      if (v == "max_lmo_calls") {
        c.apo_stop = ApoStop::kMaxLmoCalls;
      } else if (v == "wolfe_gap") {
        c.apo_stop = ApoStop::kWolfeGap;
      } else {
        Fail(s, source, "apo.stop must be 'max_lmo_calls' or 'wolfe_gap'");
      }
    }
    if (const auto e = apo["eps"]) c.eps_schedule = ReadEps(e, source);
    if (const auto w = apo["warmstart"]) c.warmstart = Scalar<bool>(w, source, "warmstart");
  }
  if (const auto n = root["eta"]) {
    c.eta_grid = List<double>(n, source, "eta", [&](const YAML::Node& x) {
      return ReadEta(x, source);
    });
  }
  if (const auto n = root["max_lmo_calls"]) {
    c.lmo_grid = List<int>(n, source, "max_lmo_calls", [&](const YAML::Node& x) {
      return ReadLmoCalls(x, source);
    });
  }
  if (const auto n = root["averaging"]) {
    c.averaging = List<Averaging>(n, source, "averaging", [&](const YAML::Node& x) {
      const auto name = Scalar<std::string>(x, source, "averaging");
      const auto a = ParseAveraging(name);
      if (!a) Fail(x, source, "unknown averaging '" + name + "'");
      return *a;
    });
  }
  if (const auto n = root["players"]) {
    if (!n.IsSequence()) Fail(n, source, "players must be a list");
    if (static_cast<int>(n.size()) != c.game.players) {
      Fail(n, source, "players needs one entry per player (" +
                          std::to_string(c.game.players) + ")");
    }
    for (const auto& p : n) {
      PlayerOverride o;
      if (p.IsNull()) {
        c.players.push_back(o);
        continue;
      }
      CheckKeys(p, source, {"algorithm", "eta", "max_lmo_calls", "warmstart"},
                "player entry");
      if (p["algorithm"]) o.algorithm = ReadAlgorithm(p["algorithm"], source);
      if (p["eta"]) o.eta = ReadEta(p["eta"], source);
      if (p["max_lmo_calls"]) o.max_lmo_calls = ReadLmoCalls(p["max_lmo_calls"], source);
      if (p["warmstart"]) o.warmstart = Scalar<bool>(p["warmstart"], source, "warmstart");
      c.players.push_back(o);
    }
  }
  if (const auto n = root["restart"]) {
    c.restart = Scalar<bool>(n, source, "restart");
    if (c.restart && c.game.players != 2) {
      Fail(n, source, "restart needs a two-player game");
    }
  }
  if (const auto n = root["lmo_budget"]) {
    c.lmo_budget = Scalar<double>(n, source, "lmo_budget");
    if (!(c.lmo_budget > 0.0)) Fail(n, source, "lmo_budget must be positive");
  }
  if (const auto n = root["record_every"]) {
    c.record_every = Scalar<int>(n, source, "record_every");
    if (c.record_every < 0) Fail(n, source, "record_every must be >= 0");
  }
  if (const auto n = root["max_iterations"]) {
    c.max_iterations = Scalar<int>(n, source, "max_iterations");
    if (c.max_iterations < 0) Fail(n, source, "max_iterations must be >= 0");
  }
  if (const auto n = root["seed"]) c.seed = Scalar<std::uint64_t>(n, source, "seed");
  if (const auto n = root["output"]) c.output = Scalar<std::string>(n, source, "output");
  return c;
}

ExperimentConfig ParseConfigText(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ":" +
                      std::to_string(e.mark.column + 1) + ": " + e.msg);
  }
  if (!root.IsMap()) throw ConfigError(source + ": config must be a mapping");
  return ParseConfig(root, source);
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config");
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseConfigText(buf.str(), path);
}

namespace {

void EmitConfigBody(YAML::Emitter& out, const ExperimentConfig& c) {
  out << YAML::BeginMap;
  out << YAML::Key << "schema" << YAML::Value << kConfigSchemaVersion;
  out << YAML::Key << "game" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "id" << YAML::Value << c.game.id;
  const GameInfo* info = FindGame(c.game.id);
  auto has = [&](const char* p) {
    return info && std::find(info->parameters.begin(), info->parameters.end(), p) !=
                       info->parameters.end();
  };
  if (has("players")) out << YAML::Key << "players" << YAML::Value << c.game.players;
  if (has("raise_cap")) out << YAML::Key << "raise_cap" << YAML::Value << c.game.raise_cap;
  if (has("ranks")) out << YAML::Key << "ranks" << YAML::Value << c.game.ranks;
  if (has("suits")) out << YAML::Key << "suits" << YAML::Value << c.game.suits;
  if (has("faces")) out << YAML::Key << "faces" << YAML::Value << c.game.faces;
  out << YAML::EndMap;
  out << YAML::Key << "algorithms" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (Algorithm a : c.algorithms) out << std::string(AlgorithmName(a));
  out << YAML::EndSeq;
  out << YAML::Key << "apo" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "stop" << YAML::Value
      << (c.apo_stop == ApoStop::kWolfeGap ? "wolfe_gap" : "max_lmo_calls");
  out << YAML::Key << "eps" << YAML::Value;
  if (c.eps_schedule.kind == EpsSchedule::Kind::kInverseSquare) {
    out << "inverse_square";
  } else {
    out << c.eps_schedule.eps;
  }
  out << YAML::Key << "warmstart" << YAML::Value << c.warmstart;
  out << YAML::EndMap;
  out << YAML::Key << "eta" << YAML::Value << YAML::Flow << c.eta_grid;
  out << YAML::Key << "max_lmo_calls" << YAML::Value << YAML::Flow << c.lmo_grid;
  out << YAML::Key << "averaging" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (Averaging a : c.averaging) out << std::string(AveragingName(a));
  out << YAML::EndSeq;
  if (!c.players.empty()) {
    out << YAML::Key << "players" << YAML::Value << YAML::BeginSeq;
    for (const PlayerOverride& p : c.players) {
      if (!p.algorithm && !p.eta && !p.max_lmo_calls && !p.warmstart) {
        out << YAML::Null;
        continue;
      }
      out << YAML::BeginMap;
      if (p.algorithm) {
        out << YAML::Key << "algorithm" << YAML::Value
            << std::string(AlgorithmName(*p.algorithm));
      }
      if (p.eta) out << YAML::Key << "eta" << YAML::Value << *p.eta;
      if (p.max_lmo_calls) {
        out << YAML::Key << "max_lmo_calls" << YAML::Value << *p.max_lmo_calls;
      }
      if (p.warmstart) out << YAML::Key << "warmstart" << YAML::Value << *p.warmstart;
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  out << YAML::Key << "restart" << YAML::Value << c.restart;
  out << YAML::Key << "lmo_budget" << YAML::Value << c.lmo_budget;
  out << YAML::Key << "record_every" << YAML::Value << c.record_every;
  out << YAML::Key << "max_iterations" << YAML::Value << c.max_iterations;
  out << YAML::Key << "seed" << YAML::Value << c.seed;
  out << YAML::Key << "output" << YAML::Value << c.output;
  out << YAML::EndMap;
}

}  // namespace

std::string EmitConfig(const ExperimentConfig& config) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  EmitConfigBody(out, config);
  return std::string(out.c_str()) + "\n";
}

std::vector<GridPoint> ExpandGrid(const ExperimentConfig& config,
                                  const std::string& game_name, int num_players) {
  std::vector<GridPoint> points;
  std::set<std::string> seen;
  for (Algorithm a : config.algorithms) {
    const std::vector<double> etas =
        UsesEta(a) ? config.eta_grid : std::vector<double>{0.0};
    const bool budgeted =
        IsFrankWolfeFamily(a) && config.apo_stop == ApoStop::kMaxLmoCalls;
    const std::vector<int> ms = budgeted ? config.lmo_grid : std::vector<int>{0};
    const std::vector<Averaging> avgs =
        num_players >= 3 ? std::vector<Averaging>{Averaging::kUniform}
                         : config.averaging;
    for (double eta : etas) {
      for (int m : ms) {
        for (Averaging avg : avgs) {
          GridPoint p;
          p.algorithm = a;
          p.eta = eta;
          p.max_lmo_calls = m;
          p.averaging = avg;
          std::string name = game_name + "__" + std::string(AlgorithmName(a));
          if (eta > 0.0) name += "__eta" + Slug(eta);
          if (m > 0) name += "__m" + std::to_string(m);
          name += "__" + std::string(AveragingName(avg)) + ".csv";
          if (!seen.insert(name).second) continue;
          p.file_name = name;
          for (int i = 0; i < num_players; ++i) {
            LearnerConfig lc;
            lc.algorithm = a;
            lc.eta = eta > 0.0 ? eta : 1.0;
            lc.apo_stop = config.apo_stop;
            lc.max_lmo_calls = m > 0 ? m : 1;
            lc.eps_schedule = config.eps_schedule;
            lc.warmstart = config.warmstart;
            lc.seed = config.seed + static_cast<std::uint64_t>(i);
            if (!config.players.empty()) {
              const PlayerOverride& o = config.players[i];
              if (o.algorithm) lc.algorithm = *o.algorithm;
              if (o.eta) lc.eta = *o.eta;
              if (o.max_lmo_calls) lc.max_lmo_calls = *o.max_lmo_calls;
              if (o.warmstart) lc.warmstart = *o.warmstart;
            }
            p.learners.push_back(lc);
          }
          p.options.lmo_budget = config.lmo_budget;
          p.options.averaging = avg;
          p.options.restart = config.restart;
          p.options.record_every = config.record_every;
          p.options.max_iterations = config.max_iterations;
          points.push_back(std::move(p));
        }
      }
    }
  }
  return points;
}

std::string FormatReal(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string FormatCsv(const std::vector<RunRecord>& records) {
  std::string out = "iteration,avg_lmo_calls,metric,rvu_slack,stability_margin\n";
  for (const RunRecord& r : records) {
    out += std::to_string(r.iteration);
    for (double v : {r.avg_lmo_calls, r.metric, r.rvu_slack, r.stability_margin}) {
      out += ',';
      out += FormatReal(v);
    }
    out += '\n';
  }
  return out;
}

void WriteFileAtomic(const std::string& path, const std::string& contents) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

namespace {

std::string EmitManifest(const ExperimentConfig& config,
                         const ExperimentReport& report) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "schema" << YAML::Value << kConfigSchemaVersion;
  out << YAML::Key << "seed" << YAML::Value << config.seed;
  out << YAML::Key << "config" << YAML::Value;
  EmitConfigBody(out, config);
  out << YAML::Key << "runs" << YAML::Value << YAML::BeginSeq;
  for (const RunSummary& r : report.runs) {
    out << YAML::BeginMap;
    out << YAML::Key << "file" << YAML::Value << r.file;
    out << YAML::Key << "algorithm" << YAML::Value
        << std::string(AlgorithmName(r.point.algorithm));
    if (r.point.eta > 0.0) out << YAML::Key << "eta" << YAML::Value << r.point.eta;
    if (r.point.max_lmo_calls > 0) {
      out << YAML::Key << "max_lmo_calls" << YAML::Value << r.point.max_lmo_calls;
    }
    out << YAML::Key << "averaging" << YAML::Value
        << std::string(AveragingName(r.point.averaging));
    out << YAML::Key << "status" << YAML::Value << (r.ok ? "ok" : "failed");
    out << YAML::Key << "partial" << YAML::Value << !r.ok;
    if (!r.ok) out << YAML::Key << "error" << YAML::Value << r.error;
    out << YAML::Key << "iterations" << YAML::Value << r.iterations;
    out << YAML::Key << "avg_lmo_calls" << YAML::Value << r.avg_lmo_calls;
    out << YAML::Key << "final_metric" << YAML::Value << FormatReal(r.final_metric);
    out << YAML::Key << "metric_lmo_calls" << YAML::Value << r.metric_lmo_calls;
    out << YAML::Key << "omega" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (double w : r.omega) out << FormatReal(w);
    out << YAML::EndSeq;
    out << YAML::Key << "wall_seconds" << YAML::Value << r.wall_seconds;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

RunSummary RunPoint(const SequenceFormGame& game, const GridPoint& point,
                    const fs::path& dir) {
  RunSummary s;
  s.file = point.file_name;
  s.point = point;
  const auto start = std::chrono::steady_clock::now();
  SelfPlayResult result;
  try {
    result = RunSelfPlay(game, point.learners, point.options);
  } catch (const std::exception& e) {
    result.ok = false;
    result.error = e.what();
  }
  s.ok = result.ok;
  s.error = result.error;
  s.iterations = result.iterations;
  s.metric_lmo_calls = result.metric_lmo_calls;
  s.omega = result.omega;
  s.final_metric = std::numeric_limits<double>::quiet_NaN();
  if (!result.records.empty()) {
    s.final_metric = result.records.back().metric;
    s.avg_lmo_calls = result.records.back().avg_lmo_calls;
  }
  try {
    WriteFileAtomic((dir / point.file_name).string(), FormatCsv(result.records));
  } catch (const std::exception& e) {
    s.ok = false;
    s.error = e.what();
  }
  s.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

}  // namespace

ExperimentReport RunExperiment(const ExperimentConfig& config,
                               const RunOptions& options) {
  ExperimentReport report;
  report.output_dir = options.output_dir.value_or(config.output);
  const GameTree tree = BuildGame(config.game);
  SequenceFormGame game;
  try {
    game = ToSequenceForm(tree);
  } catch (const GameError& e) {
    throw ConfigError(e.what());
  }
  const std::vector<GridPoint> points = ExpandGrid(config, tree.name, game.num_players);
  const fs::path dir(report.output_dir);
  fs::create_directories(dir);

  report.runs.resize(points.size());
  int jobs = options.jobs > 0 ? options.jobs
                              : static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::clamp(jobs, 1, std::max<int>(1, static_cast<int>(points.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < points.size(); k = next++) {
      report.runs[k] = RunPoint(game, points[k], dir);
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }
  for (const RunSummary& r : report.runs) report.all_ok = report.all_ok && r.ok;
  WriteFileAtomic((dir / "manifest.yaml").string(), EmitManifest(config, report));
  return report;
}

}  // namespace pfg
