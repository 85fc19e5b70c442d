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

#ifndef RUMORLAB_STIFLING_HPP_
#define RUMORLAB_STIFLING_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rumorlab/rng.hpp"

namespace rumorlab {

enum class StiflingFamily { kConstant, kGeometric, kPoisson, kExplicit, kZetaTail };

// Law of the stifling-experience count R handed to every fresh spreader:
// pmf, moments (possibly infinite), exact sampling, and tail truncation.
// Instances are immutable after construction and safe to share across
// threads; sampling draws from an externally owned random stream.
class StiflingDistribution {
 public:
  // R == kappa with probability one, kappa >= 1.
  static StiflingDistribution constant(std::uint64_t kappa);
  // P(R=i) = p(1-p)^{i-1} for i >= 1, p in (0,1].
  static StiflingDistribution geometric(double p);
  // P(R=i) = e^{-lambda} lambda^i / i!, lambda > 0.
  static StiflingDistribution poisson(double lambda);
  // User-supplied finite pmf over nonnegative integers; normalized if the
  // values sum to within 1e-9 of one, rejected otherwise.
  static StiflingDistribution explicit_pmf(const std::map<std::uint64_t, double>& pmf);
  // P(R=i) proportional to i^{-s} for i >= 1, s > 1.  Infinite mean for
  // s <= 2, infinite variance for s <= 3.
  static StiflingDistribution zeta_tail(double s);

  // Spec strings: constant:K, geometric:P, poisson:L, zeta:S,
  // pmf:0=0.1,1=0.4,2=0.5
  static StiflingDistribution parse(std::string_view spec);

  StiflingFamily family() const { return family_; }
  std::string spec_string() const;

  double pmf(std::uint64_t i) const;
  // P(R >= i); exact closed forms (Euler-Maclaurin tail for the zeta family).
  double tail(std::uint64_t i) const;

  double mu() const { return mu_; }    // E[R], +inf possible
  double nu2() const { return nu2_; }  // Var[R], +inf possible
  bool has_infinite_mean() const;
  // Largest support point, or nullopt for unbounded laws.
  std::optional<std::uint64_t> max_support() const;

  std::uint64_t sample(SplitMix64& rng) const;
  // Draw from R conditioned on R >= 1 (used to type a seeded spreader).
  std::uint64_t sample_positive(SplitMix64& rng) const;

  // Fold all mass at or above k onto k: P(R_k=i)=r_i for i<k,
  // P(R_k=k)=sum_{j>=k} r_j.  The result is stochastically below *this.
  StiflingDistribution truncate(std::uint64_t k) const;

 private:
  StiflingDistribution() = default;

  void build_sampling_table();
  std::uint64_t sample_zeta(SplitMix64& rng) const;

  StiflingFamily family_ = StiflingFamily::kConstant;
  double param_ = 0.0;  // kappa / p / lambda / s, by family
  double mu_ = 0.0;
  double nu2_ = 0.0;

  // Explicit support/probabilities (kExplicit only), ascending by value.
  std::vector<std::uint64_t> values_;
  std::vector<double> probs_;

  // Inverse-transform table: cdf_[j] = P(R <= table_values_[j]).  Built at
  // construction out to 53-bit coverage so sampling never mutates shared
  // state.  Unused for kConstant and kZetaTail.
  std::vector<std::uint64_t> table_values_;
  std::vector<double> cdf_;

  // Rejection-inversion constants (kZetaTail only).
  double zeta_norm_ = 0.0;     // zeta(s)
  double hd_lower_bound_ = 0.0;  // H(1.5) - h(1)
};

// Riemann zeta on (1, inf); thin wrapper so callers avoid the <cmath>
// special-function spelling.
double riemann_zeta(double s);

}  // namespace rumorlab

#endif  // RUMORLAB_STIFLING_HPP_
