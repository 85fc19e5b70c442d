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

#include "doctest.h"
#include "rumorlab/sim.hpp"
#include "test_util.hpp"

namespace ra = rumorlab;
using ra::InitialCondition;
using ra::StiflingDistribution;

TEST_CASE("forced path at n = 1") {
  const auto exact = ra::exact_final_distribution(
      1, InitialCondition::classical(), StiflingDistribution::constant(1));
  REQUIRE(exact.probabilities.size() == 1);
  CHECK(exact.probabilities.at(0) == 1.0);
  CHECK(exact.mean == 0.0);
}

TEST_CASE("three-state chain at n = 2") {
  // By hand: the chain (x, w) moves (2,1) -> (1,2); from (1,2) it either
  // converts the last ignorant (prob 1/2, final x = 0) or steps to (1,1);
  // from (1,1) it converts (1/2 -> final 0) or absorbs at x = 1.
  const auto exact = ra::exact_final_distribution(
      2, InitialCondition::classical(), StiflingDistribution::constant(1));
  REQUIRE(exact.probabilities.size() == 2);
  CHECK(exact.probabilities.at(0) == 0.75);  // dyadic arithmetic is exact
  CHECK(exact.probabilities.at(1) == 0.25);
  CHECK(exact.mean == 0.25);
  // jump-count bookkeeping from the same enumeration: 1 + 1 + (1/2)*3
  // + (1/2)*1 + (1/4)*2 = 9/2
  CHECK(exact.mean_transitions == 4.5);
}

TEST_CASE("mass conservation across configurations") {
  const std::vector<std::pair<std::uint64_t, StiflingDistribution>> configs = {
      {12, StiflingDistribution::constant(1)},
      {12, StiflingDistribution::constant(3)},
      {15, StiflingDistribution::geometric(0.5).truncate(6)},
      {10, StiflingDistribution::poisson(1.1).truncate(5)},
      {10, StiflingDistribution::explicit_pmf({{0, 0.25}, {1, 0.25}, {3, 0.5}})},
  };
  for (const auto& [n, dist] : configs) {
    const auto exact =
        ra::exact_final_distribution(n, InitialCondition::classical(), dist);
    double total = 0.0;
    for (const auto& [x, p] : exact.probabilities) {
      CHECK(p >= 0.0);
      CHECK(x <= n);
      total += p;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }

  // explicit macroscopic start conserves mass too
  const auto ic = InitialCondition::with_proportions(0.5, {{1, 0.25}, {2, 0.25}});
  const auto exact =
      ra::exact_final_distribution(19, ic, StiflingDistribution::constant(1));
  double total = 0.0;
  for (const auto& [x, p] : exact.probabilities) total += p;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("unbounded laws are rejected with truncation guidance") {
  try {
    ra::exact_final_distribution(5, InitialCondition::classical(),
                                 StiflingDistribution::geometric(0.5));
    FAIL("expected a rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("truncate") != std::string::npos);
  }
  CHECK_THROWS_AS(ra::exact_final_distribution(
                      5, InitialCondition::classical(),
                      StiflingDistribution::zeta_tail(1.5)),
                  std::invalid_argument);
  // state-space guard
  CHECK_THROWS_AS(ra::exact_final_distribution(
                      80, InitialCondition::classical(),
                      StiflingDistribution::constant(4), /*max_states=*/100),
                  std::invalid_argument);
}

TEST_CASE("oracle means match Monte Carlo at small n") {
  const auto ic = InitialCondition::classical();
  const std::uint64_t replicas = 200000;
  std::uint64_t stream = 1000;
  for (const auto& dist : {StiflingDistribution::constant(1),
                           StiflingDistribution::constant(2),
                           StiflingDistribution::geometric(0.5).truncate(6)}) {
    for (const std::uint64_t n : {std::uint64_t{5}, std::uint64_t{20}}) {
      const auto exact = ra::exact_final_distribution(n, ic, dist);
      std::vector<double> finals;
      finals.reserve(replicas);
      for (std::uint64_t r = 0; r < replicas; ++r)
        finals.push_back(static_cast<double>(
            ra::run_reduced(n, ic, dist, ra::substream_seed(stream, r))
                .final_ignorants));
      ++stream;
      const auto s = rumorlab::testutil::summarize(finals);
      CHECK(std::abs(s.mean - exact.mean) <= 4.0 * s.se);
    }
  }
}

TEST_CASE("oracle jump counts match Monte Carlo") {
  const auto ic = InitialCondition::classical();
  const auto c1 = StiflingDistribution::constant(1);
  const std::uint64_t replicas = 1000000;
  std::vector<double> jumps;
  jumps.reserve(replicas);
  for (std::uint64_t r = 0; r < replicas; ++r)
    jumps.push_back(static_cast<double>(
        ra::run_reduced(2, ic, c1, ra::substream_seed(55, r)).transitions));
  const auto s = rumorlab::testutil::summarize(jumps);
  CHECK(std::abs(s.mean - 4.5) <= 4.0 * s.se);
}

TEST_CASE("empirical law matches the oracle at n = 25") {
  const auto ic = InitialCondition::classical();
  const auto dist = StiflingDistribution::geometric(0.5).truncate(6);
  const auto exact = ra::exact_final_distribution(25, ic, dist).probabilities;
  const std::uint64_t replicas = 100000;
  std::map<std::uint64_t, double> empirical;
  for (std::uint64_t r = 0; r < replicas; ++r)
    empirical[ra::run_reduced(25, ic, dist, ra::substream_seed(66, r))
                  .final_ignorants] += 1.0 / replicas;
  CHECK(rumorlab::testutil::total_variation(empirical, exact) < 0.015);
}

TEST_CASE("finite-population mean approaches the limit from above") {
  const auto ic = InitialCondition::classical();
  const auto c1 = StiflingDistribution::constant(1);
  const double x_inf = 0.20318786997997995;

  const double v30 = ra::exact_mean_ignorants(30, ic, c1);
  CHECK(std::abs(v30 / 30.0 - 0.203) < 0.08);

  double previous_gap = 1.0;
  for (const std::uint64_t n :
       {std::uint64_t{10}, std::uint64_t{20}, std::uint64_t{40}, std::uint64_t{80}}) {
    const double mean = ra::exact_mean_ignorants(n, ic, c1);
    const double gap = std::abs(mean / static_cast<double>(n) - x_inf);
    CHECK(gap < previous_gap);
    previous_gap = gap;
  }
}

TEST_CASE("degenerate starts mix the seed type") {
  // Constant(2) at n = 2: forced first jump lands on (1, 4), then absorbing
  // at x = 1 needs four straight budget decays: P = (1/2)^4.
  const auto exact2 = ra::exact_final_distribution(
      2, InitialCondition::classical(), StiflingDistribution::constant(2));
  CHECK(exact2.probabilities.at(1) == 0.0625);
  CHECK(exact2.probabilities.at(0) == 0.9375);

  // Two-type law {1: 1/2, 2: 1/2}: mixing the seed with the mixed
  // conversion draws gives P(x=1) = 1/4 (1/4 + 1/8) + 1/4 (1/8 + 1/16),
  // all dyadic, so the DP is exact.
  const auto mixed = ra::exact_final_distribution(
      2, InitialCondition::classical(),
      StiflingDistribution::explicit_pmf({{1, 0.5}, {2, 0.5}}));
  CHECK(mixed.probabilities.at(1) == 0.140625);
}
