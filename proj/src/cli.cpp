// Copyright 2026 the rumorlab authors
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

#include "rumorlab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "rumorlab/analytic.hpp"
#include "rumorlab/experiments.hpp"
#include "rumorlab/oracle.hpp"
#include "rumorlab/sim.hpp"
#include "rumorlab/stifling.hpp"
#include "rumorlab/tables.hpp"

namespace rumorlab {

namespace {

using ordered_json = nlohmann::ordered_json;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("RUMOR_LAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("RUMOR_LAB_SEED must be an unsigned integer");
    }
  }
  return 1;
}

std::map<std::uint64_t, double> parse_y0_spec(const std::string& spec) {
  std::map<std::uint64_t, double> y0;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("y0 entries must look like type=proportion");
    try {
      y0[std::stoull(item.substr(0, eq))] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("invalid y0 entry '" + item + "'");
    }
  }
  if (y0.empty()) throw std::invalid_argument("y0 spec is empty");
  return y0;
}

InitialCondition build_initial_condition(const RunConfig& config) {
  if (!config.y0_spec.empty())
    return InitialCondition::with_proportions(config.x0, parse_y0_spec(config.y0_spec));
  if (config.w0 != 0.0) {
    // Analytic commands can work from (x0, w0) alone.
    InitialCondition ic;
    ic.x0 = config.x0;
    ic.w0 = config.w0;
    ic.z0 = std::max(0.0, 1.0 - config.x0);
    return ic;
  }
  return InitialCondition::degenerate(config.x0);
}

StiflingDistribution build_distribution(const std::string& spec,
                                        const RunConfig& config) {
  StiflingDistribution dist = StiflingDistribution::parse(spec);
  if (config.truncate_at) dist = dist.truncate(*config.truncate_at);
  return dist;
}

// Sink that writes to stdout or a file and flushes on destruction.
class OutputSink {
 public:
  explicit OutputSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::invalid_argument("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

ordered_json report_to_json(const MonteCarloReport& report) {
  ordered_json j;
  j["name"] = report.name;
  j["N"] = report.n;
  j["replicas"] = report.replicas;
  j["target"] = report.target;
  j["estimate"] = report.estimate;
  j["std_error"] = report.std_error;
  if (report.ks_distance) j["ks_distance"] = *report.ks_distance;
  j["pass"] = report.pass;
  j["criterion"] = report.criterion;
  return j;
}

ordered_json analytic_to_json(double mu, double nu2, double x0, double w0) {
  ordered_json j;
  j["mu"] = std::isinf(mu) ? ordered_json() : ordered_json(mu);
  j["nu2"] = std::isinf(nu2) ? ordered_json() : ordered_json(nu2);
  j["x0"] = x0;
  j["w0"] = w0;
  if (std::isinf(mu)) {
    // Infinite-mean degeneracy: the limit fraction is 0 and nothing else
    // from the fluctuation theory applies.
    j["x_inf"] = limit_fraction(mu, x0, w0);
    j["sigma2"] = nullptr;
    j["t_inf"] = nullptr;
    j["case"] = "MU_INFINITE";
    return j;
  }
  const AnalyticResult result = analyze(mu, nu2, x0, w0);
  j["x_inf"] = result.x_inf;
  if (result.sigma2)
    j["sigma2"] = *result.sigma2;
  else
    j["sigma2"] = nullptr;
  j["t_inf"] = result.t_inf;
  j["case"] = to_string(result.case_label);
  return j;
}

void emit_json(OutputSink& sink, const ordered_json& j) {
  sink.stream() << j.dump(2) << '\n';
}

int cmd_analytic(const RunConfig& config) {
  const auto dist = build_distribution(config.dist_spec, config);
  OutputSink sink(config.output);
  emit_json(sink, analytic_to_json(dist.mu(), dist.nu2(), config.x0, config.w0));
  return 0;
}

int cmd_simulate(const RunConfig& config) {
  const auto dist = build_distribution(config.dist_spec, config);
  const auto ic = build_initial_condition(config);
  OutputSink sink(config.output);
  for (std::uint64_t r = 0; r < config.replicas; ++r) {
    const std::uint64_t run_seed =
        config.replicas == 1 ? config.seed : substream_seed(config.seed, r);
    SimulationOutcome outcome;
    if (config.full_chain) {
      outcome = run_full(config.n, ic, dist, run_seed, config.with_clocks, nullptr,
                         config.seed_type);
    } else {
      if (config.with_clocks)
        throw std::invalid_argument("clocks need the full engine; pass --full");
      outcome = run_reduced(config.n, ic, dist, run_seed, config.seed_type);
    }
    ordered_json j;
    j["seed"] = outcome.seed;
    j["N"] = config.n;
    j["final_ignorants"] = outcome.final_ignorants;
    j["transitions"] = outcome.transitions;
    if (outcome.absorption_time) j["absorption_time"] = *outcome.absorption_time;
    sink.stream() << j.dump() << '\n';
  }
  return 0;
}

int cmd_oracle(const RunConfig& config) {
  const auto dist = build_distribution(config.dist_spec, config);
  const auto ic = build_initial_condition(config);
  const auto exact = exact_final_distribution(config.n, ic, dist);
  OutputSink sink(config.output);
  auto& os = sink.stream();
  os << "# N=" << exact.n << '\n';
  os << "# mean=" << format_significant(exact.mean, config.digits) << '\n';
  os << "# mean_transitions="
     << format_significant(exact.mean_transitions, config.digits) << '\n';
  os << "final_x,probability\n";
  for (const auto& [x, p] : exact.probabilities)
    os << x << ',' << format_significant(p, config.digits) << '\n';
  return 0;
}

int cmd_lln(const RunConfig& config) {
  const auto dist = build_distribution(config.dist_spec, config);
  const auto ic = build_initial_condition(config);
  const auto report = mc_lln(config.n, config.replicas, ic, dist, config.seed,
                             config.threads);
  OutputSink sink(config.output);
  emit_json(sink, report_to_json(report));
  return report.pass ? 0 : 1;
}

int cmd_clt(const RunConfig& config) {
  const auto dist = build_distribution(config.dist_spec, config);
  const auto ic = build_initial_condition(config);
  const bool keep = !config.samples_out.empty();
  const auto report = mc_clt(config.n, config.replicas, ic, dist, config.seed,
                             config.threads, keep);
  if (keep) {
    std::ofstream samples(config.samples_out, std::ios::binary);
    if (!samples)
      throw std::invalid_argument("cannot open samples file '" +
                                  config.samples_out + "'");
    samples << "standardized\n";
    for (const double v : report.standardized_samples)
      samples << format_significant(v, config.digits) << '\n';
  }
  OutputSink sink(config.output);
  emit_json(sink, report_to_json(report));
  return report.pass ? 0 : 1;
}

int cmd_transitions(const RunConfig& config) {
  const auto dist = build_distribution(config.dist_spec, config);
  const auto ic = build_initial_condition(config);
  const auto report = mc_transitions(config.n, config.replicas, ic, dist,
                                     config.seed, config.threads);
  OutputSink sink(config.output);
  emit_json(sink, report_to_json(report));
  return report.pass ? 0 : 1;
}

int cmd_muinf(const RunConfig& config) {
  const auto dist = build_distribution(config.dist_spec, config);
  const auto reports = mc_mu_infinity(config.n_grid, config.replicas, dist,
                                      config.seed, config.threads);
  bool all_pass = true;
  ordered_json j;
  j["name"] = "muinf";
  j["reports"] = ordered_json::array();
  for (const auto& report : reports) {
    all_pass = all_pass && report.pass;
    j["reports"].push_back(report_to_json(report));
  }
  j["pass"] = all_pass;
  OutputSink sink(config.output);
  emit_json(sink, j);
  return all_pass ? 0 : 1;
}

int cmd_monotone(const RunConfig& config) {
  const auto low = build_distribution(config.dist_low_spec, config);
  const auto high = build_distribution(config.dist_high_spec, config);
  const auto report = mc_monotone(config.n, config.replicas, low, high,
                                  config.seed, config.threads);
  ordered_json j;
  j["name"] = "monotone";
  j["dist_low"] = report.dist_low;
  j["dist_high"] = report.dist_high;
  j["N"] = report.n;
  j["replicas"] = report.replicas;
  j["mean_low"] = report.mean_low;
  j["mean_high"] = report.mean_high;
  j["pooled_se"] = report.pooled_se;
  j["pass"] = report.pass;
  j["criterion"] = report.criterion;
  OutputSink sink(config.output);
  emit_json(sink, j);
  return report.pass ? 0 : 1;
}

int cmd_tables(const RunConfig& config) {
  OutputSink sink(config.output);
  write_tables_csv(sink.stream(), reference_table_rows(), config.digits);
  return 0;
}

int cmd_curve(const RunConfig& config) {
  if (!(config.mu_min > 0.0) || !(config.mu_max >= config.mu_min) ||
      !(config.mu_step > 0.0))
    throw std::invalid_argument("curve needs 0 < mu-min <= mu-max and mu-step > 0");
  std::vector<double> grid;
  const auto steps = static_cast<std::size_t>(
      (config.mu_max - config.mu_min) / config.mu_step + 1e-9);
  for (std::size_t j = 0; j <= steps; ++j)
    grid.push_back(config.mu_min + static_cast<double>(j) * config.mu_step);
  OutputSink sink(config.output);
  write_curve_csv(sink.stream(), limit_curve(grid), config.digits);
  return 0;
}

int cmd_fprofile(const RunConfig& config) {
  const auto profile =
      classify_case(config.mu, config.x0, config.w0, config.grid_size);
  OutputSink sink(config.output);
  write_fprofile_csv(sink.stream(), profile, config.digits);
  return 0;
}

void add_common_options(CLI::App* cmd, RunConfig& config, bool with_dist = true) {
  if (with_dist)
    cmd->add_option("--dist", config.dist_spec,
                    "stifling law: constant:K | geometric:P | poisson:L | "
                    "zeta:S | pmf:i=p,...")
        ->required();
  cmd->add_option("--seed", config.seed, "master seed (RUMOR_LAB_SEED overrides the default)");
  cmd->add_option("--truncate", config.truncate_at,
                  "fold all stifling mass at or above K onto K");
  cmd->add_option("-o,--output", config.output, "output path (default stdout)");
  cmd->add_option("--digits", config.digits, "significant digits for CSV output")
      ->check(CLI::Range(1, 17));
}

void add_start_options(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--x0", config.x0, "limiting ignorant proportion");
  cmd->add_option("--w0", config.w0, "limiting weighted spreader mass");
  cmd->add_option("--y0", config.y0_spec,
                  "per-type spreader proportions, e.g. 1=0.3,2=0.2");
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
  RunConfig config;
  config.seed = default_seed();

  CLI::App app{"Maki-Thompson rumour process with random stifling: exact "
               "simulation, closed-form limits, and Monte Carlo checks"};
  app.require_subcommand(1);

  auto* analytic = app.add_subcommand(
      "analytic", "limit fraction, variance, stop time for one parameter set");
  add_common_options(analytic, config);
  add_start_options(analytic, config);

  auto* simulate =
      app.add_subcommand("simulate", "dump per-run outcomes as JSONL");
  add_common_options(simulate, config);
  add_start_options(simulate, config);
  simulate->add_option("--N", config.n, "population size minus one")->check(CLI::PositiveNumber);
  simulate->add_option("--M", config.replicas, "number of runs")->check(CLI::PositiveNumber);
  simulate->add_flag("--full", config.full_chain, "simulate the type-resolved chain");
  simulate->add_flag("--clocks", config.with_clocks,
                     "draw exponential jump times (needs --full)");
  simulate->add_option("--seed-type", config.seed_type,
                       "force the seeded spreader's type");

  auto* oracle = app.add_subcommand(
      "oracle", "exact final-ignorant distribution by dynamic programming");
  add_common_options(oracle, config);
  add_start_options(oracle, config);
  oracle->add_option("--N", config.n, "population size minus one")->check(CLI::PositiveNumber);

  for (const auto& [name, help] :
       {std::pair<const char*, const char*>{"lln", "law-of-large-numbers check"},
        {"clt", "fluctuation (central-limit) check"},
        {"transitions", "transitions-per-capita check"}}) {
    auto* cmd = app.add_subcommand(name, help);
    add_common_options(cmd, config);
    add_start_options(cmd, config);
    cmd->add_option("--N", config.n, "population size minus one")->check(CLI::PositiveNumber);
    cmd->add_option("--M", config.replicas, "replica count")->check(CLI::PositiveNumber);
    cmd->add_option("--threads", config.threads, "worker threads")
        ->check(CLI::PositiveNumber);
    if (std::string(name) == "clt")
      cmd->add_option("--samples-out", config.samples_out,
                      "CSV path for standardized samples");
  }

  auto* muinf = app.add_subcommand(
      "muinf", "infinite-mean degeneracy across a population grid");
  add_common_options(muinf, config);
  muinf->add_option("--N-grid", config.n_grid, "population sizes")
      ->delimiter(',');
  muinf->add_option("--M", config.replicas, "replica count per grid point")
      ->check(CLI::PositiveNumber);
  muinf->add_option("--threads", config.threads, "worker threads")
      ->check(CLI::PositiveNumber);

  auto* monotone = app.add_subcommand(
      "monotone", "stochastic-order comparison of two stifling laws");
  add_common_options(monotone, config, /*with_dist=*/false);
  monotone->add_option("--dist-low", config.dist_low_spec, "dominated law")
      ->required();
  monotone->add_option("--dist-high", config.dist_high_spec, "dominating law")
      ->required();
  monotone->add_option("--N", config.n, "population size minus one")
      ->check(CLI::PositiveNumber);
  monotone->add_option("--M", config.replicas, "replica count per law")
      ->check(CLI::PositiveNumber);
  monotone->add_option("--threads", config.threads, "worker threads")
      ->check(CLI::PositiveNumber);

  auto* tables = app.add_subcommand(
      "tables", "reference (x_inf, sigma2) grid for the classic families");
  add_common_options(tables, config, /*with_dist=*/false);

  auto* curve = app.add_subcommand("curve", "x_inf(mu, 1, 0) over a mean grid");
  add_common_options(curve, config, /*with_dist=*/false);
  curve->add_option("--mu-min", config.mu_min);
  curve->add_option("--mu-max", config.mu_max);
  curve->add_option("--mu-step", config.mu_step);

  auto* fprofile =
      app.add_subcommand("fprofile", "profile of f over (0, x0] with its case");
  add_common_options(fprofile, config, /*with_dist=*/false);
  fprofile->add_option("--mu", config.mu, "mean stifling count")->required();
  fprofile->add_option("--x0", config.x0);
  fprofile->add_option("--w0", config.w0);
  fprofile->add_option("--grid-size", config.grid_size)
      ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    config.command = "help";
    return config;
  } catch (const CLI::ParseError& e) {
    throw std::invalid_argument(e.what());
  }
  config.command = app.get_subcommands().front()->get_name();
  return config;
}

int execute(const RunConfig& config) {
  if (config.command == "help") return 0;
  if (config.command == "analytic") return cmd_analytic(config);
  if (config.command == "simulate") return cmd_simulate(config);
  if (config.command == "oracle") return cmd_oracle(config);
  if (config.command == "lln") return cmd_lln(config);
  if (config.command == "clt") return cmd_clt(config);
  if (config.command == "transitions") return cmd_transitions(config);
  if (config.command == "muinf") return cmd_muinf(config);
  if (config.command == "monotone") return cmd_monotone(config);
  if (config.command == "tables") return cmd_tables(config);
  if (config.command == "curve") return cmd_curve(config);
  if (config.command == "fprofile") return cmd_fprofile(config);
  throw std::invalid_argument("unknown command '" + config.command + "'");
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return execute(parse_config(args));
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace rumorlab
