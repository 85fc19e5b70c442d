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

#ifndef RUMORLAB_CLI_HPP_
#define RUMORLAB_CLI_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rumorlab {

// Everything a subcommand can consume, filled by parse_config.
struct RunConfig {
  std::string command;
  std::string dist_spec;
  std::string dist_low_spec;
  std::string dist_high_spec;
  std::uint64_t n = 1000;
  std::uint64_t replicas = 100;
  double x0 = 1.0;
  double w0 = 0.0;
  std::string y0_spec;
  std::uint64_t seed = 1;
  std::string output;       // empty means stdout
  int threads = 1;
  int digits = 6;
  bool full_chain = false;
  bool with_clocks = false;
  std::optional<std::uint64_t> truncate_at;
  std::optional<std::uint64_t> seed_type;
  std::vector<std::uint64_t> n_grid{1000, 10000, 100000};
  double mu = 1.0;          // fprofile
  double mu_min = 0.1;      // curve
  double mu_max = 8.0;
  double mu_step = 0.1;
  std::size_t grid_size = 256;
  std::string samples_out;  // clt standardized-sample dump
};

// Parse command-line arguments (without the program name).  Throws
// std::invalid_argument with a usage message on malformed input.
RunConfig parse_config(const std::vector<std::string>& args);

// Run a parsed configuration.  Returns 0 on success, 1 when an experiment's
// pass criterion failed.  Throws on invalid configurations.
int execute(const RunConfig& config);

// Full entry point: exit code 0 (pass), 1 (experiment criteria not met), or
// 2 (usage error).
int run_cli(int argc, char** argv);

}  // namespace rumorlab

#endif  // RUMORLAB_CLI_HPP_
