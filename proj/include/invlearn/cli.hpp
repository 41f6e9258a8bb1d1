// Copyright 2026 The invlearn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "invlearn/cost.hpp"
#include "invlearn/demand.hpp"
#include "invlearn/harness.hpp"
#include "json.hpp"

namespace invlearn {

/// Environment variable holding the default output directory.
inline constexpr const char* kOutDirEnv = "INVLEARN_OUT_DIR";

/// Thrown by parse_command_line for --help; carries the help text.
struct HelpRequested {
  std::string text;
};

enum class Subcommand { RunExperiment, DiagnoseDistribution, BoundsReport };

struct CliCommand {
  Subcommand subcommand = Subcommand::RunExperiment;
  ExperimentConfig config;
  std::string out_dir = ".";
  std::optional<std::string> config_path;

  // diagnose-distribution
  std::optional<std::string> pmf_text;
  std::optional<std::string> trace_policy;
  std::int64_t trace_T = 100;
  std::optional<std::string> trace_out;
};

/// Config JSON schema: dbar, h_plus_b, beta, K, L, T, alphas, gamma_insep,
/// policies, seed, checkpoints, threads. Missing keys keep `base`'s value;
/// unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& doc, ExperimentConfig base = {});
nlohmann::json config_to_json(const ExperimentConfig& config);

/// Parses argv (without the program name). Defaults, then the --config file,
/// then flags. Throws ConfigError for invalid values and
/// std::invalid_argument for malformed command lines.
CliCommand parse_command_line(const std::vector<std::string>& args);

/// The resolved experiment configuration of a command line.
ExperimentConfig parse_config(const std::vector<std::string>& args);

std::string surface_csv(const RegretSurface& surface, const ExperimentConfig& config);
std::string detail_csv(const RegretSurface& surface);
std::string manifest_json(const ExperimentConfig& config);

/// quantity,value report of the newsvendor and separation quantities of one pmf.
std::string diagnose_report(const Pmf& pmf, const CostParams& params);

/// One row per sampled distribution: k,f_hash,eps_f,alpha,gamma,delta,kappa,tau,theorem1.
std::string bounds_csv(const ExperimentConfig& config);

/// Writes surface.csv, detail.csv and manifest.json into out_dir (created if
/// missing). Throws std::runtime_error when a file cannot be written.
void emit_outputs(const RegretSurface& surface, const ExperimentConfig& config, const std::string& out_dir);

/// Entry point. Exit codes: 0 success, 1 validation, 2 runtime.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace invlearn
