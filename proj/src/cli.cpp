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

#include "invlearn/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "invlearn/bounds.hpp"
#include "invlearn/format.hpp"

namespace invlearn {

namespace {

struct Overrides {
  std::optional<Level> dbar;
  std::optional<double> h_plus_b;
  std::optional<double> beta;
  std::optional<std::int64_t> K, L, T;
  std::optional<std::string> alphas;
  std::optional<double> gamma_insep;
  std::optional<std::string> policies;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> checkpoints;
  std::optional<int> threads;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  if (trim(text).empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& item) {
  try {
    std::size_t used = 0;
    T value;
    if constexpr (std::is_floating_point_v<T>) {
      value = static_cast<T>(std::stod(item, &used));
    } else {
      value = static_cast<T>(std::stoll(item, &used));
    }
    if (used != item.size()) throw std::invalid_argument(item);
    return value;
  } catch (const std::logic_error&) {
    throw ConfigError(key, "cannot parse '" + item + "'");
  }
}

std::vector<PolicyKind> parse_policies(const std::vector<std::string>& ids) {
  std::vector<PolicyKind> out;
  for (const auto& id : ids) {
    try {
      out.push_back(policy_from_id(id));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("policies", e.what());
    }
  }
  return out;
}

void add_config_options(CLI::App* sub, Overrides& ov, CliCommand& cmd) {
  sub->add_option("--config", cmd.config_path, "JSON config file; flags override its values");
  sub->add_option("--dbar", ov.dbar, "maximum demand level (default 20)");
  sub->add_option("--h-plus-b", ov.h_plus_b, "h + b (default 10)");
  sub->add_option("--beta", ov.beta, "critical quantile b/(h+b) (default 0.5)");
  sub->add_option("--K", ov.K, "number of sampled distributions");
  sub->add_option("--L", ov.L, "demand paths per distribution");
  sub->add_option("--T", ov.T, "horizon in periods");
  sub->add_option("--alphas", ov.alphas, "comma-separated CVaR levels in [0,1)");
  sub->add_option("--gamma-insep,--gamma", ov.gamma_insep, "inseparability index in [0,1)");
  sub->add_option("--policies", ov.policies, "comma-separated: newsvendor,sa,updown,oracle");
  sub->add_option("--seed", ov.seed, "64-bit master seed");
  sub->add_option("--checkpoints", ov.checkpoints, "comma-separated periods (default squares up to T)");
  sub->add_option("--threads", ov.threads, "worker threads, 0 for the OpenMP default");
  sub->add_option("--out-dir", cmd.out_dir, std::string("output directory (default $") + kOutDirEnv + " or .)");
}

void apply(const Overrides& ov, ExperimentConfig& c) {
  if (ov.dbar) c.dbar = *ov.dbar;
  if (ov.h_plus_b) c.h_plus_b = *ov.h_plus_b;
  if (ov.beta) c.beta = *ov.beta;
  if (ov.K) c.K = *ov.K;
  if (ov.L) c.L = *ov.L;
  if (ov.T) c.T = *ov.T;
  if (ov.alphas) {
    c.alphas.clear();
    for (const auto& item : split_list(*ov.alphas)) c.alphas.push_back(parse_number<double>("alphas", item));
  }
  if (ov.gamma_insep) c.gamma_insep = *ov.gamma_insep;
  if (ov.policies) c.policies = parse_policies(split_list(*ov.policies));
  if (ov.seed) c.seed = *ov.seed;
  if (ov.checkpoints) {
    c.checkpoints.clear();
    for (const auto& item : split_list(*ov.checkpoints)) {
      c.checkpoints.push_back(parse_number<std::int64_t>("checkpoints", item));
    }
  }
  if (ov.threads) c.threads = *ov.threads;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << contents;
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& doc, ExperimentConfig c) {
  if (!doc.is_object()) throw ConfigError("config", "top level must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    try {
      if (key == "dbar") c.dbar = value.get<Level>();
      else if (key == "h_plus_b") c.h_plus_b = value.get<double>();
      else if (key == "beta") c.beta = value.get<double>();
      else if (key == "K") c.K = value.get<std::int64_t>();
      else if (key == "L") c.L = value.get<std::int64_t>();
      else if (key == "T") c.T = value.get<std::int64_t>();
      else if (key == "alphas") c.alphas = value.get<std::vector<double>>();
      else if (key == "gamma_insep") c.gamma_insep = value.get<double>();
      else if (key == "policies") c.policies = parse_policies(value.get<std::vector<std::string>>());
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "checkpoints") c.checkpoints = value.get<std::vector<std::int64_t>>();
      else if (key == "threads") c.threads = value.get<int>();
      else throw ConfigError(key, "unknown key");
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(key, e.what());
    }
  }
  return c;
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["dbar"] = c.dbar;
  j["h_plus_b"] = c.h_plus_b;
  j["beta"] = c.beta;
  j["K"] = c.K;
  j["L"] = c.L;
  j["T"] = c.T;
  j["alphas"] = c.alphas;
  j["gamma_insep"] = c.gamma_insep;
  std::vector<std::string> ids;
  for (auto p : c.policies) ids.emplace_back(policy_id(p));
  j["policies"] = ids;
  j["seed"] = c.seed;
  j["checkpoints"] = c.checkpoints;
  j["threads"] = c.threads;
  return j;
}

CliCommand parse_command_line(const std::vector<std::string>& args) {
  CliCommand cmd;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) cmd.out_dir = env;
  Overrides ov;

  CLI::App app{"Adaptive inventory control experiments with unknown discrete demand", "invlearn"};
  app.require_subcommand(1, 1);
  auto* run = app.add_subcommand("run-experiment", "Monte Carlo regret surface; writes surface.csv, detail.csv, manifest.json");
  auto* diag = app.add_subcommand("diagnose-distribution", "newsvendor level, separation, kappa, tau and bound of one pmf");
  auto* bounds = app.add_subcommand("bounds-report", "separation diagnostics of the sampled distributions; writes bounds.csv");
  for (auto* sub : {run, diag, bounds}) add_config_options(sub, ov, cmd);
  diag->add_option("--pmf", cmd.pmf_text, "probabilities f(0),...,f(dbar), comma list or JSON array")->required();
  diag->add_option("--trace-policy", cmd.trace_policy, "also simulate one path of this policy");
  diag->add_option("--trace-T", cmd.trace_T, "periods of the traced path");
  diag->add_option("--trace-out", cmd.trace_out, "path CSV destination ('-' for stdout)");

  std::vector<const char*> argv{"invlearn"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw std::invalid_argument(e.what());
  }
  if (diag->parsed()) {
    cmd.subcommand = Subcommand::DiagnoseDistribution;
  } else if (bounds->parsed()) {
    cmd.subcommand = Subcommand::BoundsReport;
  } else {
    cmd.subcommand = Subcommand::RunExperiment;
  }

  if (cmd.config_path) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(read_file(*cmd.config_path));
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("config", e.what());
    }
    cmd.config = config_from_json(doc, cmd.config);
  }
  apply(ov, cmd.config);
  validate(cmd.config);
  if (cmd.trace_policy) (void)policy_from_id(*cmd.trace_policy);
  if (cmd.trace_T < 1) throw ConfigError("trace_T", "must be >= 1");
  return cmd;
}

ExperimentConfig parse_config(const std::vector<std::string>& args) { return parse_command_line(args).config; }

std::string surface_csv(const RegretSurface& s, const ExperimentConfig& config) {
  const std::string beta = format_real(config.cost().beta());
  const std::string gamma = format_real(config.gamma_insep);
  std::string out = "policy,beta,gamma_insep,t,alpha,R,D\n";
  for (std::size_t p = 0; p < s.policies.size(); ++p) {
    const std::string id(policy_id(s.policies[p]));
    for (std::size_t c = 0; c < s.checkpoints.size(); ++c) {
      for (std::size_t a = 0; a < s.alphas.size(); ++a) {
        out += id + ',' + beta + ',' + gamma + ',' + std::to_string(s.checkpoints[c]) + ',' +
               format_real(s.alphas[a]) + ',' + format_real(s.cvar_at(p, c, a)) + ',' +
               format_real(s.sep_at(p, c, a)) + '\n';
      }
    }
  }
  return out;
}

std::string detail_csv(const RegretSurface& s) {
  std::string out = "policy,k,delta,kappa_or_inf,t,r\n";
  for (std::size_t p = 0; p < s.policies.size(); ++p) {
    const std::string id(policy_id(s.policies[p]));
    for (std::size_t k = 0; k < s.K; ++k) {
      const std::string prefix =
          id + ',' + std::to_string(k + 1) + ',' + format_real(s.separations[k]) + ',' + format_real(s.kappas[k]) + ',';
      for (std::size_t c = 0; c < s.checkpoints.size(); ++c) {
        out += prefix + std::to_string(s.checkpoints[c]) + ',' + format_real(s.mean_regret(p, k, c)) + '\n';
      }
    }
  }
  return out;
}

std::string manifest_json(const ExperimentConfig& config) {
  const CostParams params = config.cost();
  nlohmann::json m;
  m["tool"] = "invlearn";
  m["format_version"] = 1;
  m["config"] = config_to_json(config);
  m["derived"] = {{"h", params.h()},
                  {"b", params.b()},
                  {"beta", params.beta()},
                  {"checkpoints", resolved_checkpoints(config)}};
  m["rng"] = "mt19937_64 per stream; seed = mix64(master ^ mix64(tag ^ mix64(k ^ mix64(l)))); "
             "tags: distribution=1, demand=2, policy=16+kind";
  m["outputs"] = {"surface.csv", "detail.csv"};
  return m.dump(2) + "\n";
}

std::string diagnose_report(const Pmf& pmf, const CostParams& params) {
  const double beta = params.beta();
  const auto [y_star, q_star] = optimal_order(params, pmf);
  const SeparationProfile prof = separation_profile(pmf, beta);
  std::string tau = "NA";
  std::string bound = "NA";
  if (prof.tau) {
    tau = std::to_string(*prof.tau);
    if (pmf.eps_f() > 0.0) bound = format_real(theorem1_bound(params, pmf.dbar(), pmf.eps_f(), prof.kappa, *prof.tau));
  }
  std::string out = "quantity,value\n";
  out += "dbar," + std::to_string(pmf.dbar()) + '\n';
  out += "beta," + format_real(beta) + '\n';
  out += "h," + format_real(params.h()) + '\n';
  out += "b," + format_real(params.b()) + '\n';
  out += "y_star," + std::to_string(y_star) + '\n';
  out += "q_star," + format_real(q_star) + '\n';
  out += "eps_f," + format_real(pmf.eps_f()) + '\n';
  out += "alpha," + format_real(prof.alpha) + '\n';
  out += "gamma," + format_real(prof.gamma) + '\n';
  out += "delta," + format_real(prof.delta) + '\n';
  out += "kappa," + format_real(prof.kappa) + '\n';
  out += "tau," + tau + '\n';
  out += "theorem1_bound," + bound + '\n';
  return out;
}

std::string bounds_csv(const ExperimentConfig& config) {
  const CostParams params = config.cost();
  std::string out = "k,f_hash,eps_f,alpha,gamma,delta,kappa,tau,theorem1\n";
  for (std::int64_t k = 0; k < config.K; ++k) {
    const Pmf f = sample_distribution(config, k);
    const SeparationProfile prof = separation_profile(f, params.beta());
    std::string tau = "NA";
    std::string bound = "NA";
    if (prof.tau) {
      tau = std::to_string(*prof.tau);
      if (f.eps_f() > 0.0) bound = format_real(theorem1_bound(params, f.dbar(), f.eps_f(), prof.kappa, *prof.tau));
    }
    out += std::to_string(k + 1) + ',' + hex64(fnv1a(to_csv_row(f))) + ',' + format_real(f.eps_f()) + ',' +
           format_real(prof.alpha) + ',' + format_real(prof.gamma) + ',' + format_real(prof.delta) + ',' +
           format_real(prof.kappa) + ',' + tau + ',' + bound + '\n';
  }
  return out;
}

void emit_outputs(const RegretSurface& surface, const ExperimentConfig& config, const std::string& out_dir) {
  const std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());
  write_file(dir / "surface.csv", surface_csv(surface, config));
  write_file(dir / "detail.csv", detail_csv(surface));
  write_file(dir / "manifest.json", manifest_json(config));
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliCommand cmd;
  std::optional<Pmf> pmf;
  try {
    cmd = parse_command_line(args);
    if (cmd.pmf_text) pmf = pmf_from_text(*cmd.pmf_text);
  } catch (const HelpRequested& help) {
    out << help.text;
    return 0;
  } catch (const std::exception& e) {
    err << "invlearn: " << e.what() << '\n';
    return 1;
  }

  try {
    switch (cmd.subcommand) {
      case Subcommand::RunExperiment: {
        const RegretSurface surface = run_experiment(cmd.config);
        emit_outputs(surface, cmd.config, cmd.out_dir);
        out << "wrote " << (std::filesystem::path(cmd.out_dir) / "surface.csv").string() << '\n';
        break;
      }
      case Subcommand::DiagnoseDistribution: {
        const CostParams params = cmd.config.cost();
        out << diagnose_report(*pmf, params);
        if (cmd.trace_policy) {
          const PolicyKind kind = policy_from_id(*cmd.trace_policy);
          Stream demand_rng = derive_stream(cmd.config.seed, 0, 0, StreamTag::Demand);
          std::vector<Level> demand(static_cast<std::size_t>(cmd.trace_T));
          sample_path(cdf(*pmf), demand_rng, demand);
          Stream rng = policy_stream(cmd.config, kind, 0, 0);
          const std::string csv = path_csv(simulate_path(*pmf, params, kind, cmd.trace_T, rng, demand));
          if (!cmd.trace_out || *cmd.trace_out == "-") {
            out << csv;
          } else {
            write_file(*cmd.trace_out, csv);
          }
        }
        break;
      }
      case Subcommand::BoundsReport: {
        const std::filesystem::path dir(cmd.out_dir);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());
        write_file(dir / "bounds.csv", bounds_csv(cmd.config));
        out << "wrote " << (dir / "bounds.csv").string() << '\n';
        break;
      }
    }
  } catch (const std::exception& e) {
    err << "invlearn: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace invlearn
