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

#include "rumorlab/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace rumorlab {

FinalDistribution exact_final_distribution(std::uint64_t n,
                                           const InitialCondition& ic,
                                           const StiflingDistribution& dist,
                                           std::size_t max_states) {
  if (n < 1) throw std::invalid_argument("population parameter n must be >= 1");
  ic.validate();
  const auto support = dist.max_support();
  if (!support)
    throw std::invalid_argument(
        "the exact oracle needs a bounded stifling law; truncate it first");
  const std::uint64_t max_r = *support;

  // Support points of the stifling law, once.
  std::vector<std::pair<std::uint64_t, double>> jumps;
  for (std::uint64_t i = 0; i <= max_r; ++i) {
    const double p = dist.pmf(i);
    if (p > 0.0) jumps.emplace_back(i, p);
  }

  // Initial mass: a degenerate start mixes the seeded spreader's type over
  // R | R >= 1; an explicit start is a single deterministic point.
  const std::uint64_t population = n + 1;
  std::uint64_t x0_count = 0;
  std::vector<std::pair<std::uint64_t, double>> init;  // (w, mass) at x0_count
  if (ic.degenerate_start()) {
    if (ic.w0 != 0.0)
      throw std::invalid_argument(
          "a start with w0 > 0 needs explicit per-type proportions y0");
    x0_count = static_cast<std::uint64_t>(
        std::llround(static_cast<double>(population) * ic.x0));
    if (x0_count > n) x0_count = n;
    const double positive_mass = 1.0 - dist.pmf(0);
    if (!(positive_mass > 0.0))
      throw std::invalid_argument("stifling law has no mass above zero");
    for (const auto& [i, p] : jumps)
      if (i >= 1) init.emplace_back(i, p / positive_mass);
  } else {
    x0_count = static_cast<std::uint64_t>(
        std::llround(static_cast<double>(population) * ic.x0));
    std::uint64_t y_sum = 0, w = 0;
    for (const auto& [type, prop] : ic.y0) {
      const auto count = static_cast<std::uint64_t>(
          std::llround(static_cast<double>(population) * prop));
      y_sum += count;
      w += type * count;
    }
    if (y_sum == 0)
      throw std::invalid_argument(
          "rounding produced no spreaders; increase n or use a degenerate start");
    if (x0_count + y_sum > population)
      throw std::invalid_argument(
          "rounded counts exceed the population; adjust the proportions");
    init.emplace_back(w, 1.0);
  }

  std::uint64_t w_start_max = 0;
  for (const auto& [w, mass] : init) w_start_max = std::max(w_start_max, w);

  // Reachable budgets at level x never exceed the initial budget plus max_r
  // per conversion already made.
  const std::uint64_t w_cap = w_start_max + max_r * x0_count;
  const std::size_t level_size = static_cast<std::size_t>(w_cap) + 1;
  if (static_cast<double>(level_size) * static_cast<double>(x0_count + 1) >
      static_cast<double>(max_states))
    throw std::invalid_argument(
        "state space too large for the exact oracle; truncate harder or shrink n");

  std::vector<double> current(level_size, 0.0);
  std::vector<double> next(level_size, 0.0);
  for (const auto& [w, mass] : init) current[w] += mass;

  FinalDistribution out;
  out.n = n;
  const double n_real = static_cast<double>(n);

  // Sweep levels x descending; within a level, budgets descending.  Mass at
  // (x, w > 0) makes exactly one jump, so the expected jump count is the
  // total transient mass.
  for (std::uint64_t x = x0_count;; --x) {
    const double p_contact = static_cast<double>(x) / n_real;
    const double p_budget = 1.0 - p_contact;
    for (std::size_t w = level_size - 1; w >= 1; --w) {
      const double mass = current[w];
      if (mass == 0.0) continue;
      out.mean_transitions += mass;
      if (x > 0) {
        const double outflow = mass * p_contact;
        for (const auto& [i, p] : jumps) next[w + i] += outflow * p;
      }
      if (p_budget > 0.0) current[w - 1] += mass * p_budget;
    }
    if (current[0] > 0.0) {
      out.probabilities[x] += current[0];
      out.mean += static_cast<double>(x) * current[0];
    }
    if (x == 0) break;
    std::swap(current, next);
    std::fill(next.begin(), next.end(), 0.0);
  }

  return out;
}

double exact_mean_ignorants(std::uint64_t n, const InitialCondition& ic,
                            const StiflingDistribution& dist) {
  return exact_final_distribution(n, ic, dist).mean;
}

}  // namespace rumorlab
