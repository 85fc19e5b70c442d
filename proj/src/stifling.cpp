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

#include "rumorlab/stifling.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rumorlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Inverse-transform tables run out to the 1 - 1e-13 quantile; the last atom
// absorbs what remains.  The accumulated cdf stalls a few ulps short of 1
// (each pmf term carries its own rounding), so a machine-epsilon cutoff
// would never close.
constexpr double kTableTailCutoff = 1e-13;
constexpr std::size_t kTableMaxEntries = 1u << 22;

double parse_number(std::string_view text, const char* what) {
  try {
    std::size_t used = 0;
    const std::string s(text);
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("invalid ") + what + ": '" +
                                std::string(text) + "'");
  }
}

// Shortest representation that round-trips.
std::string format_param(double v) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, result.ptr);
}

}  // namespace

double riemann_zeta(double s) {
  if (!(s > 1.0)) throw std::domain_error("riemann_zeta requires s > 1");
  return std::riemann_zeta(s);
}

StiflingDistribution StiflingDistribution::constant(std::uint64_t kappa) {
  if (kappa == 0) throw std::invalid_argument("constant stifling count must be >= 1");
  StiflingDistribution d;
  d.family_ = StiflingFamily::kConstant;
  d.param_ = static_cast<double>(kappa);
  d.mu_ = static_cast<double>(kappa);
  d.nu2_ = 0.0;
  return d;
}

StiflingDistribution StiflingDistribution::geometric(double p) {
  if (!(p > 0.0) || !(p <= 1.0) || !std::isfinite(p))
    throw std::invalid_argument("geometric parameter must lie in (0, 1]");
  StiflingDistribution d;
  d.family_ = StiflingFamily::kGeometric;
  d.param_ = p;
  d.mu_ = 1.0 / p;
  d.nu2_ = (1.0 - p) / (p * p);
  d.build_sampling_table();
  return d;
}

StiflingDistribution StiflingDistribution::poisson(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("poisson parameter must be a positive real");
  StiflingDistribution d;
  d.family_ = StiflingFamily::kPoisson;
  d.param_ = lambda;
  d.mu_ = lambda;
  d.nu2_ = lambda;
  d.build_sampling_table();
  return d;
}

StiflingDistribution StiflingDistribution::explicit_pmf(
    const std::map<std::uint64_t, double>& pmf) {
  if (pmf.empty()) throw std::invalid_argument("explicit pmf must be nonempty");
  double sum = 0.0;
  for (const auto& [value, prob] : pmf) {
    if (!(prob >= 0.0) || !std::isfinite(prob))
      throw std::invalid_argument("explicit pmf probabilities must be nonnegative");
    sum += prob;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("explicit pmf must sum to 1 (got " +
                                format_param(sum) + ")");
  StiflingDistribution d;
  d.family_ = StiflingFamily::kExplicit;
  double mean = 0.0, second = 0.0;
  for (const auto& [value, prob] : pmf) {
    if (prob <= 0.0) continue;
    const double q = prob / sum;
    d.values_.push_back(value);
    d.probs_.push_back(q);
    mean += static_cast<double>(value) * q;
    second += static_cast<double>(value) * static_cast<double>(value) * q;
  }
  if (!(mean > 0.0))
    throw std::invalid_argument("stifling law must have positive mean");
  d.mu_ = mean;
  d.nu2_ = std::max(0.0, second - mean * mean);
  d.build_sampling_table();
  return d;
}

StiflingDistribution StiflingDistribution::zeta_tail(double s) {
  if (!(s > 1.0) || !std::isfinite(s))
    throw std::invalid_argument("zeta tail exponent must satisfy s > 1");
  StiflingDistribution d;
  d.family_ = StiflingFamily::kZetaTail;
  d.param_ = s;
  d.zeta_norm_ = riemann_zeta(s);
  d.mu_ = s > 2.0 ? riemann_zeta(s - 1.0) / d.zeta_norm_ : kInf;
  if (s > 3.0) {
    const double second = riemann_zeta(s - 2.0) / d.zeta_norm_;
    d.nu2_ = second - d.mu_ * d.mu_;
  } else {
    d.nu2_ = kInf;
  }
  // H(x) = x^{1-s}/(1-s); lower bound of the inversion range is H(1.5)-h(1).
  d.hd_lower_bound_ = std::pow(1.5, 1.0 - s) / (1.0 - s) - 1.0;
  return d;
}

StiflingDistribution StiflingDistribution::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument(
        "distribution spec must look like 'family:params' (got '" +
        std::string(spec) + "')");
  const std::string_view family = spec.substr(0, colon);
  const std::string_view rest = spec.substr(colon + 1);
  if (family == "constant") {
    const double k = parse_number(rest, "constant parameter");
    if (!(k >= 1.0) || k != std::floor(k) || k > 1e18)
      throw std::invalid_argument("constant:K requires a positive integer K");
    return constant(static_cast<std::uint64_t>(k));
  }
  if (family == "geometric") return geometric(parse_number(rest, "geometric parameter"));
  if (family == "poisson") return poisson(parse_number(rest, "poisson parameter"));
  if (family == "zeta") return zeta_tail(parse_number(rest, "zeta parameter"));
  if (family == "pmf") {
    std::map<std::uint64_t, double> pmf;
    std::string_view remaining = rest;
    while (!remaining.empty()) {
      const auto comma = remaining.find(',');
      const std::string_view item = remaining.substr(0, comma);
      remaining = comma == std::string_view::npos ? std::string_view{}
                                                  : remaining.substr(comma + 1);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos)
        throw std::invalid_argument("pmf entries must look like i=p (got '" +
                                    std::string(item) + "')");
      const double value = parse_number(item.substr(0, eq), "pmf support point");
      if (!(value >= 0.0) || value != std::floor(value))
        throw std::invalid_argument("pmf support points must be nonnegative integers");
      pmf[static_cast<std::uint64_t>(value)] =
          parse_number(item.substr(eq + 1), "pmf probability");
    }
    return explicit_pmf(pmf);
  }
  throw std::invalid_argument("unknown distribution family '" + std::string(family) +
                              "' (expected constant/geometric/poisson/zeta/pmf)");
}

std::string StiflingDistribution::spec_string() const {
  switch (family_) {
    case StiflingFamily::kConstant:
      return "constant:" + std::to_string(static_cast<std::uint64_t>(param_));
    case StiflingFamily::kGeometric:
      return "geometric:" + format_param(param_);
    case StiflingFamily::kPoisson:
      return "poisson:" + format_param(param_);
    case StiflingFamily::kZetaTail:
      return "zeta:" + format_param(param_);
    case StiflingFamily::kExplicit: {
      std::string out = "pmf:";
      for (std::size_t j = 0; j < values_.size(); ++j) {
        if (j) out += ',';
        out += std::to_string(values_[j]) + "=" + format_param(probs_[j]);
      }
      return out;
    }
  }
  return {};
}

double StiflingDistribution::pmf(std::uint64_t i) const {
  switch (family_) {
    case StiflingFamily::kConstant:
      return i == static_cast<std::uint64_t>(param_) ? 1.0 : 0.0;
    case StiflingFamily::kGeometric: {
      if (i == 0) return 0.0;
      if (i == 1) return param_;
      return param_ * std::exp(static_cast<double>(i - 1) * std::log1p(-param_));
    }
    case StiflingFamily::kPoisson: {
      const double k = static_cast<double>(i);
      return std::exp(-param_ + k * std::log(param_) - std::lgamma(k + 1.0));
    }
    case StiflingFamily::kZetaTail:
      return i == 0 ? 0.0 : std::pow(static_cast<double>(i), -param_) / zeta_norm_;
    case StiflingFamily::kExplicit: {
      const auto it = std::lower_bound(values_.begin(), values_.end(), i);
      if (it == values_.end() || *it != i) return 0.0;
      return probs_[static_cast<std::size_t>(it - values_.begin())];
    }
  }
  return 0.0;
}

double StiflingDistribution::tail(std::uint64_t i) const {
  if (i == 0) return 1.0;
  switch (family_) {
    case StiflingFamily::kConstant:
      return i <= static_cast<std::uint64_t>(param_) ? 1.0 : 0.0;
    case StiflingFamily::kGeometric:
      if (i <= 1) return 1.0;
      return std::exp(static_cast<double>(i - 1) * std::log1p(-param_));
    case StiflingFamily::kPoisson: {
      // Sum whichever side of the split is smaller.
      if (static_cast<double>(i) <= param_) {
        double below = 0.0;
        for (std::uint64_t j = 0; j < i; ++j) below += pmf(j);
        return std::max(0.0, 1.0 - below);
      }
      double acc = 0.0;
      double term = pmf(i);
      std::uint64_t j = i;
      while (term > 0.0 && (acc == 0.0 || term > acc * 1e-18)) {
        acc += term;
        ++j;
        term *= param_ / static_cast<double>(j);
      }
      return acc;
    }
    case StiflingFamily::kZetaTail: {
      // Direct sum up to a pivot, Euler-Maclaurin for the remainder:
      // sum_{j>=m} j^{-s} = m^{1-s}/(s-1) + m^{-s}/2 + s m^{-s-1}/12
      //                     - s(s+1)(s+2) m^{-s-3}/720 + ...
      // The first dropped term is O(m^{-s-5}), so a pivot of 256 keeps the
      // remainder far below 1e-15.
      const double s = param_;
      const std::uint64_t pivot = std::max<std::uint64_t>(i, 256);
      double head = 0.0;
      for (std::uint64_t j = i; j < pivot; ++j)
        head += std::pow(static_cast<double>(j), -s);
      const double m = static_cast<double>(pivot);
      const double rem = std::pow(m, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(m, -s) +
                         s * std::pow(m, -s - 1.0) / 12.0 -
                         s * (s + 1.0) * (s + 2.0) * std::pow(m, -s - 3.0) / 720.0;
      return (head + rem) / zeta_norm_;
    }
    case StiflingFamily::kExplicit: {
      double acc = 0.0;
      for (std::size_t j = values_.size(); j-- > 0;) {
        if (values_[j] < i) break;
        acc += probs_[j];
      }
      return acc;
    }
  }
  return 0.0;
}

bool StiflingDistribution::has_infinite_mean() const { return std::isinf(mu_); }

std::optional<std::uint64_t> StiflingDistribution::max_support() const {
  switch (family_) {
    case StiflingFamily::kConstant:
      return static_cast<std::uint64_t>(param_);
    case StiflingFamily::kExplicit:
      return values_.back();
    default:
      return std::nullopt;
  }
}

void StiflingDistribution::build_sampling_table() {
  table_values_.clear();
  cdf_.clear();
  double acc = 0.0;
  if (family_ == StiflingFamily::kExplicit) {
    for (std::size_t j = 0; j < values_.size(); ++j) {
      acc += probs_[j];
      table_values_.push_back(values_[j]);
      cdf_.push_back(acc);
    }
  } else {
    for (std::uint64_t i = 0; table_values_.size() < kTableMaxEntries; ++i) {
      const double p = pmf(i);
      if (p > 0.0 || !table_values_.empty() || family_ == StiflingFamily::kPoisson) {
        acc += p;
        table_values_.push_back(i);
        cdf_.push_back(acc);
      }
      if (!table_values_.empty() && 1.0 - acc < kTableTailCutoff) break;
    }
    if (1.0 - acc >= kTableTailCutoff)
      throw std::invalid_argument(
          "parameter too extreme for table sampling (tail will not close)");
  }
  cdf_.back() = 1.0;  // every 53-bit uniform lands inside the table
}

std::uint64_t StiflingDistribution::sample_zeta(SplitMix64& rng) const {
  // Rejection-inversion for monotone discrete laws (Hormann-Derflinger),
  // specialized to unbounded support: H(x) = x^{1-s}/(1-s) increases to 0.
  const double s = param_;
  const double one_minus_s = 1.0 - s;
  for (;;) {
    const double u = hd_lower_bound_ * rng.next_open_double();  // (hd_lower, 0)
    const double x = std::pow(one_minus_s * u, 1.0 / one_minus_s);
    double k = std::floor(x + 0.5);
    if (k < 1.0) k = 1.0;
    // Saturate astronomically rare huge draws so they stay representable;
    // anything this size already exceeds any consumable budget.
    if (k >= 0x1.0p62) return std::uint64_t{1} << 62;
    const double hk = std::pow(k + 0.5, one_minus_s) / one_minus_s;
    if (u >= hk - std::pow(k, -s)) return static_cast<std::uint64_t>(k);
  }
}

std::uint64_t StiflingDistribution::sample(SplitMix64& rng) const {
  switch (family_) {
    case StiflingFamily::kConstant:
      return static_cast<std::uint64_t>(param_);
    case StiflingFamily::kZetaTail:
      return sample_zeta(rng);
    default: {
      const double u = rng.next_double();
      const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
      return table_values_[static_cast<std::size_t>(it - cdf_.begin())];
    }
  }
}

std::uint64_t StiflingDistribution::sample_positive(SplitMix64& rng) const {
  const double p0 = pmf(0);
  if (p0 == 0.0) return sample(rng);
  // Map the uniform into the conditional cdf given R >= 1.
  const double u = p0 + rng.next_double() * (1.0 - p0);
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const std::size_t j =
      std::min(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
  return std::max<std::uint64_t>(table_values_[j], 1);
}

StiflingDistribution StiflingDistribution::truncate(std::uint64_t k) const {
  if (k == 0) throw std::invalid_argument("truncation point must be >= 1");
  std::map<std::uint64_t, double> folded;
  for (std::uint64_t i = 0; i < k; ++i) {
    const double p = pmf(i);
    if (p > 0.0) folded[i] = p;
  }
  const double mass_above = tail(k);
  if (mass_above > 0.0) folded[k] += mass_above;
  return explicit_pmf(folded);
}

}  // namespace rumorlab
