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

#ifndef RUMORLAB_SIM_HPP_
#define RUMORLAB_SIM_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rumorlab/analytic.hpp"
#include "rumorlab/rng.hpp"
#include "rumorlab/stifling.hpp"

namespace rumorlab {

// Two-dimensional embedded chain: ignorants x and remaining stifling budget
// w = sum_i i * Y_i.  n is the rate normalizer (population size minus one).
struct ReducedState {
  std::uint64_t x = 0;
  std::uint64_t w = 0;
  std::uint64_t n = 1;
  bool absorbed() const { return w == 0; }
};

// Type-resolved state: spreader counts per remaining-experience type, kept
// dense for small types with an overflow map for heavy-tailed laws.
struct FullState {
  std::uint64_t x = 0;
  std::vector<std::uint64_t> y_dense;  // index = type (entry 0 unused)
  std::map<std::uint64_t, std::uint64_t> y_overflow;
  std::uint64_t y_total = 0;
  std::uint64_t z = 0;
  std::uint64_t n = 1;

  std::uint64_t population() const { return x + y_total + z; }
  std::uint64_t stifling_budget() const;  // sum_i i * Y_i, saturating
  void add_spreader(std::uint64_t type);
};

struct SimulationOutcome {
  std::uint64_t final_ignorants = 0;
  std::uint64_t transitions = 0;
  std::optional<double> absorption_time;
  std::uint64_t seed = 0;
};

// Stifling budgets and jump counters saturate here; a budget this large can
// never be consumed before every ignorant is converted.
inline constexpr std::uint64_t kBudgetCap = std::uint64_t{1} << 62;

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t s = a + b;
  return (s < a || s > kBudgetCap) ? kBudgetCap : s;
}

// Integer initial counts for population n+1: X = round((n+1) x0), per-type
// spreader counts from y0, rounding slack absorbed by the stiflers.  For a
// degenerate start (empty y0, w0 == 0) a single spreader is seeded with type
// drawn from R | R >= 1, or forced_seed_type when given.
std::pair<ReducedState, FullState> init_state(
    std::uint64_t n, const InitialCondition& ic, const StiflingDistribution& dist,
    SplitMix64& rng, std::optional<std::uint64_t> forced_seed_type = std::nullopt);

// One jump of the reduced chain: (x-1, w+i) with probability r_i x/n for
// each i, (x, w-1) with probability (n-x)/n.  Throws if already absorbed.
ReducedState step_reduced(const ReducedState& s, const StiflingDistribution& dist,
                          SplitMix64& rng);

// Run the reduced chain to absorption (w == 0).  Maximal runs of consecutive
// budget decrements are drawn as one geometric variate, which leaves the
// joint law of (final x, jump count) unchanged while making heavy-tailed
// budgets affordable.
SimulationOutcome run_reduced(std::uint64_t n, const InitialCondition& ic,
                              const StiflingDistribution& dist, std::uint64_t seed,
                              std::optional<std::uint64_t> forced_seed_type = std::nullopt);

// Run the type-resolved chain to absorption (no spreaders left), one jump at
// a time.  With clocks enabled, jump times are exponential at the total rate
// n * Y and the absorption time is reported.  The optional observer fires
// after every jump.
SimulationOutcome run_full(
    std::uint64_t n, const InitialCondition& ic, const StiflingDistribution& dist,
    std::uint64_t seed, bool with_clocks = false,
    const std::function<void(const FullState&)>& on_jump = nullptr,
    std::optional<std::uint64_t> forced_seed_type = std::nullopt);

}  // namespace rumorlab

#endif  // RUMORLAB_SIM_HPP_
