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

#include "rumorlab/sim.hpp"

#include <cmath>
#include <stdexcept>

namespace rumorlab {

namespace {

constexpr std::size_t kDenseTypeLimit = 1024;

// Number of failures before the first success of a Bernoulli(p) sequence,
// returned as a double so callers can compare against huge budgets before
// narrowing.  Exact inverse transform.
double geometric_failures(double p, SplitMix64& rng) {
  if (p >= 1.0) return 0.0;
  const double u = rng.next_open_double();
  return std::floor(std::log(u) / std::log1p(-p));
}

}  // namespace

std::uint64_t FullState::stifling_budget() const {
  std::uint64_t w = 0;
  for (std::size_t type = 1; type < y_dense.size(); ++type)
    w = saturating_add(w, y_dense[type] * type);
  for (const auto& [type, count] : y_overflow)
    for (std::uint64_t c = 0; c < count; ++c) w = saturating_add(w, type);
  return w;
}

void FullState::add_spreader(std::uint64_t type) {
  if (type < kDenseTypeLimit) {
    if (y_dense.size() <= type) y_dense.resize(type + 1, 0);
    ++y_dense[type];
  } else {
    ++y_overflow[type];
  }
  ++y_total;
}

std::pair<ReducedState, FullState> init_state(
    std::uint64_t n, const InitialCondition& ic, const StiflingDistribution& dist,
    SplitMix64& rng, std::optional<std::uint64_t> forced_seed_type) {
  if (n < 1) throw std::invalid_argument("population parameter n must be >= 1");
  ic.validate();
  const std::uint64_t population = n + 1;

  FullState full;
  full.n = n;

  if (ic.degenerate_start()) {
    if (ic.w0 != 0.0)
      throw std::invalid_argument(
          "a start with w0 > 0 needs explicit per-type proportions y0");
    std::uint64_t x =
        static_cast<std::uint64_t>(std::llround(static_cast<double>(population) * ic.x0));
    if (x > n) x = n;  // leave room for the seeded spreader
    std::uint64_t seed_type;
    if (forced_seed_type) {
      if (*forced_seed_type == 0)
        throw std::invalid_argument("seed spreader type must be >= 1");
      seed_type = *forced_seed_type;
    } else {
      seed_type = dist.sample_positive(rng);
    }
    full.x = x;
    full.add_spreader(seed_type);
    full.z = population - x - 1;
    return {ReducedState{x, seed_type, n}, full};
  }

  const auto x_ll =
      std::llround(static_cast<double>(population) * ic.x0);
  std::uint64_t x = static_cast<std::uint64_t>(x_ll);
  std::uint64_t y_sum = 0;
  std::uint64_t w = 0;
  for (const auto& [type, prop] : ic.y0) {
    const auto count = static_cast<std::uint64_t>(
        std::llround(static_cast<double>(population) * prop));
    if (count == 0) continue;
    for (std::uint64_t c = 0; c < count; ++c) full.add_spreader(type);
    // add_spreader already tracked y_total
    y_sum += count;
    w = saturating_add(w, type * count);
  }
  if (y_sum == 0)
    throw std::invalid_argument(
        "rounding produced no spreaders; increase n or use a degenerate start");
  if (x + y_sum > population)
    throw std::invalid_argument(
        "rounded counts exceed the population; adjust the proportions");
  full.x = x;
  full.z = population - x - y_sum;  // rounding slack parks with the stiflers
  return {ReducedState{x, w, n}, full};
}

ReducedState step_reduced(const ReducedState& s, const StiflingDistribution& dist,
                          SplitMix64& rng) {
  if (s.absorbed())
    throw std::logic_error("step_reduced called on an absorbed state");
  const double u = rng.next_double();
  if (u * static_cast<double>(s.n) < static_cast<double>(s.x)) {
    const std::uint64_t i = dist.sample(rng);
    return ReducedState{s.x - 1, saturating_add(s.w, i), s.n};
  }
  return ReducedState{s.x, s.w - 1, s.n};
}

SimulationOutcome run_reduced(std::uint64_t n, const InitialCondition& ic,
                              const StiflingDistribution& dist, std::uint64_t seed,
                              std::optional<std::uint64_t> forced_seed_type) {
  SplitMix64 rng(seed);
  auto [state, full] = init_state(n, ic, dist, rng, forced_seed_type);
  (void)full;

  std::uint64_t x = state.x;
  std::uint64_t w = state.w;
  const double n_real = static_cast<double>(n);
  std::uint64_t transitions = 0;

  while (w > 0) {
    if (x == 0) {
      // Only budget decrements remain; the chain walks straight to w == 0.
      transitions = saturating_add(transitions, w);
      break;
    }
    const double p_contact = static_cast<double>(x) / n_real;
    const double failures = geometric_failures(p_contact, rng);
    if (!(failures < static_cast<double>(w))) {
      // The budget runs out before the next ignorant contact.
      transitions = saturating_add(transitions, w);
      break;
    }
    const auto consumed = static_cast<std::uint64_t>(failures);
    w -= consumed;
    transitions = saturating_add(transitions, consumed + 1);
    --x;
    w = saturating_add(w, dist.sample(rng));
  }

  return SimulationOutcome{x, transitions, std::nullopt, seed};
}

SimulationOutcome run_full(std::uint64_t n, const InitialCondition& ic,
                           const StiflingDistribution& dist, std::uint64_t seed,
                           bool with_clocks,
                           const std::function<void(const FullState&)>& on_jump,
                           std::optional<std::uint64_t> forced_seed_type) {
  SplitMix64 rng(seed);
  auto [reduced, state] = init_state(n, ic, dist, rng, forced_seed_type);
  (void)reduced;

  const double n_real = static_cast<double>(n);
  std::uint64_t transitions = 0;
  double clock = 0.0;

  while (state.y_total > 0) {
    if (with_clocks) {
      const double total_rate = n_real * static_cast<double>(state.y_total);
      clock += -std::log(rng.next_open_double()) / total_rate;
    }
    transitions = saturating_add(transitions, 1);

    const double u = rng.next_double();
    if (u * n_real < static_cast<double>(state.x)) {
      // Spreader-ignorant contact; the newcomer's type decides its fate.
      const std::uint64_t type = dist.sample(rng);
      --state.x;
      if (type == 0)
        ++state.z;
      else
        state.add_spreader(type);
    } else {
      // A stifling experience hits a uniformly chosen spreader.
      std::uint64_t pick = rng.next_below(state.y_total);
      std::uint64_t type = 0;
      for (std::size_t candidate = 1; candidate < state.y_dense.size(); ++candidate) {
        if (pick < state.y_dense[candidate]) {
          type = candidate;
          --state.y_dense[candidate];
          break;
        }
        pick -= state.y_dense[candidate];
      }
      if (type == 0) {
        for (auto it = state.y_overflow.begin(); it != state.y_overflow.end(); ++it) {
          if (pick < it->second) {
            type = it->first;
            if (--it->second == 0) state.y_overflow.erase(it);
            break;
          }
          pick -= it->second;
        }
      }
      if (type == 0) throw std::logic_error("spreader pick out of range");
      --state.y_total;
      if (type == 1)
        ++state.z;  // last experience spent: the spreader retires
      else
        state.add_spreader(type - 1);
    }
    if (on_jump) on_jump(state);
  }

  return SimulationOutcome{state.x, transitions,
                           with_clocks ? std::optional<double>(clock) : std::nullopt,
                           seed};
}

}  // namespace rumorlab
