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

// pfg run <config.yaml> [--jobs N]
// pfg verify-fd [--max-n N]
// pfg list-games
//
// PFG_OUTPUT_DIR, when set, replaces the config's output directory.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "experiment.h"

namespace {

int Run(const std::string& config_path, int jobs) {
  pfg::ExperimentConfig config;
  try {
    config = pfg::LoadConfig(config_path);
  } catch (const pfg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return pfg::kExitConfigError;
  }
  pfg::RunOptions options;
  options.jobs = jobs;
  if (const char* dir = std::getenv("PFG_OUTPUT_DIR"); dir && *dir) {
    options.output_dir = dir;
  }
  pfg::ExperimentReport report;
  try {
    report = pfg::RunExperiment(config, options);
  } catch (const pfg::ConfigError& e) {
    std::cerr << "config error: " << config_path << ": " << e.what() << "\n";
    return pfg::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "runtime failure: " << e.what() << "\n";
    return pfg::kExitRuntimeFailure;
  }
  int failed = 0;
  for (const auto& r : report.runs) {
    std::printf("%-60s %s iterations=%d metric=%s\n", r.file.c_str(),
                r.ok ? "ok" : "FAILED", r.iterations,
                pfg::FormatReal(r.final_metric).c_str());
    if (!r.ok) {
      ++failed;
      std::fprintf(stderr, "  %s\n", r.error.c_str());
    }
  }
  std::printf("%zu runs written to %s\n", report.runs.size(), report.output_dir.c_str());
  return failed > 0 ? pfg::kExitRuntimeFailure : pfg::kExitOk;
}

int VerifyFd(int max_n) {
  std::vector<pfg::FdRow> rows;
  try {
    rows = pfg::VerifyFacialDistance(max_n);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pfg::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "runtime failure: " << e.what() << "\n";
    return pfg::kExitRuntimeFailure;
  }
  std::cout << pfg::FormatFdTable(rows);
  for (const auto& r : rows) {
    if (!r.ok) return pfg::kExitVerificationFailure;
  }
  return pfg::kExitOk;
}

int ListGames() {
  for (const auto& g : pfg::GameRegistry()) {
    std::string params;
    for (const auto& p : g.parameters) params += (params.empty() ? "" : ", ") + p;
    std::printf("%-18s %s [%s]\n", g.id.c_str(), g.description.c_str(), params.c_str());
  }
  return pfg::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projection-free equilibrium computation in sequence-form games"};
  app.require_subcommand(1);

  std::string config_path;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  auto* run = app.add_subcommand("run", "Run an experiment sweep from a YAML config");
  run->add_option("config", config_path, "Experiment config")->required();
  run->add_option("-j,--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  int max_n = 5;
  auto* fd = app.add_subcommand("verify-fd", "Check facial-distance bounds by brute force");
  fd->add_option("--max-n", max_n, "Largest simplex dimension")->check(CLI::Range(2, 24));

  auto* list = app.add_subcommand("list-games", "List the game registry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? pfg::kExitOk : pfg::kExitConfigError;
  }
  if (*run) return Run(config_path, jobs);
  if (*fd) return VerifyFd(max_n);
  if (*list) return ListGames();
  return pfg::kExitConfigError;
}
