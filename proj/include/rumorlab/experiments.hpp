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

#ifndef RUMORLAB_EXPERIMENTS_HPP_
#define RUMORLAB_EXPERIMENTS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rumorlab/analytic.hpp"
#include "rumorlab/sim.hpp"
#include "rumorlab/stifling.hpp"

namespace rumorlab {

// Pass/fail thresholds.  The limit theorems carry no finite-size rates, so
// these bands are calibration choices; reports quote the rule they applied.
struct PassBands {
  double lln_floor_c = 2.0;     // |est - x_inf| <= max(3 se, c / sqrt(n))
  double clt_var_rel = 0.15;    // sample variance within 15% of sigma^2
  double ks_mult = 1.5;         // ks < mult * 1.63 / sqrt(M)  (1% asymptotic)
  double transitions_abs = 0.02;
  double muinf_final = 0.05;
  double monotone_se_mult = 3.0;
};

struct MonteCarloReport {
  std::string name;
  std::uint64_t n = 0;
  std::uint64_t replicas = 0;
  double target = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  std::optional<double> ks_distance;
  bool pass = false;
  std::string criterion;
  // Filled by mc_clt on request: sqrt(n) (X_r/n - x_inf) per replica.
  std::vector<double> standardized_samples;
};

struct MonotoneReport {
  std::string dist_low;
  std::string dist_high;
  std::uint64_t n = 0;
  std::uint64_t replicas = 0;
  double mean_low = 0.0;    // mean final ignorants under the smaller law
  double mean_high = 0.0;   // mean final ignorants under the larger law
  double pooled_se = 0.0;
  bool pass = false;
  std::string criterion;
};

// Mean final ignorant fraction over M independent reduced-chain replicas,
// checked against the limiting fraction.
MonteCarloReport mc_lln(std::uint64_t n, std::uint64_t replicas,
                        const InitialCondition& ic, const StiflingDistribution& dist,
                        std::uint64_t seed, int threads = 1,
                        const PassBands& bands = {});

// Standardized fluctuations versus the limiting Gaussian: sample-variance
// band plus Kolmogorov-Smirnov distance.  Throws when the fluctuation
// hypotheses fail.
MonteCarloReport mc_clt(std::uint64_t n, std::uint64_t replicas,
                        const InitialCondition& ic, const StiflingDistribution& dist,
                        std::uint64_t seed, int threads = 1,
                        bool keep_samples = false, const PassBands& bands = {});

// Mean transitions per capita versus the deterministic stopping time.
MonteCarloReport mc_transitions(std::uint64_t n, std::uint64_t replicas,
                                const InitialCondition& ic,
                                const StiflingDistribution& dist, std::uint64_t seed,
                                int threads = 1, const PassBands& bands = {});

// Infinite-mean degeneracy: estimates of the final ignorant fraction across
// a grid of population sizes.  Pass rule per report: strictly below every
// earlier estimate; the last must fall under bands.muinf_final.  Rejects
// finite-mean laws.
std::vector<MonteCarloReport> mc_mu_infinity(const std::vector<std::uint64_t>& n_grid,
                                             std::uint64_t replicas,
                                             const StiflingDistribution& dist,
                                             std::uint64_t seed, int threads = 1,
                                             const PassBands& bands = {});

// Distribution-level monotonicity: a stochastically larger stifling law must
// not leave more ignorants.  Verifies dist_low <= dist_high stochastically
// on the pmfs before running.
MonotoneReport mc_monotone(std::uint64_t n, std::uint64_t replicas,
                           const StiflingDistribution& dist_low,
                           const StiflingDistribution& dist_high, std::uint64_t seed,
                           int threads = 1, const PassBands& bands = {});

// Kolmogorov-Smirnov distance between a sample and N(0, sigma2).
double ks_distance_to_normal(std::vector<double> samples, double sigma2);

// P(Z <= z) for a standard normal.
double standard_normal_cdf(double z);

}  // namespace rumorlab

#endif  // RUMORLAB_EXPERIMENTS_HPP_
