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

#ifndef RUMORLAB_ORACLE_HPP_
#define RUMORLAB_ORACLE_HPP_

#include <cstdint>
#include <map>

#include "rumorlab/analytic.hpp"
#include "rumorlab/stifling.hpp"

namespace rumorlab {

// Exact law of the final ignorant count for a finite population.
struct FinalDistribution {
  std::uint64_t n = 1;
  std::map<std::uint64_t, double> probabilities;  // final x -> probability
  double mean = 0.0;
  double mean_transitions = 0.0;
};

// Forward dynamic program over the reduced chain's reachable states.  The
// stifling law must have bounded support (truncate unbounded laws first);
// within that bound the result is exact.  A degenerate start mixes the
// initial budget over R | R >= 1, matching the simulator.  Throws when the
// enumerated state space would exceed max_states.
FinalDistribution exact_final_distribution(std::uint64_t n,
                                           const InitialCondition& ic,
                                           const StiflingDistribution& dist,
                                           std::size_t max_states = 200'000'000);

double exact_mean_ignorants(std::uint64_t n, const InitialCondition& ic,
                            const StiflingDistribution& dist);

}  // namespace rumorlab

#endif  // RUMORLAB_ORACLE_HPP_
