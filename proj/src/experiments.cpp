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

#include "rumorlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <thread>

namespace rumorlab {

namespace {

std::string format_rule(const char* fmt, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), fmt, a, b);
  return buf;
}

// Run fn(replica) for every replica index, striped across threads.  Callers
// write results into replica-indexed slots, so the aggregate never depends
// on the thread layout.
template <typename Fn>
void for_each_replica(std::uint64_t replicas, int threads, const Fn& fn) {
  if (replicas == 0) throw std::invalid_argument("replica count must be >= 1");
  const auto workers = static_cast<std::uint64_t>(std::max(threads, 1));
  if (workers <= 1) {
    for (std::uint64_t r = 0; r < replicas; ++r) fn(r);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::uint64_t t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      for (std::uint64_t r = t; r < replicas; r += workers) fn(r);
    });
  }
  for (auto& th : pool) th.join();
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
  double variance = 0.0;  // unbiased sample variance
};

MeanSe summarize(const std::vector<double>& values) {
  const auto m = static_cast<double>(values.size());
  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= m;
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  const double variance = values.size() > 1 ? ss / (m - 1.0) : 0.0;
  return {mean, std::sqrt(variance / m), variance};
}

}  // namespace

double standard_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double ks_distance_to_normal(std::vector<double> samples, double sigma2) {
  if (samples.empty()) throw std::invalid_argument("ks distance needs samples");
  if (!(sigma2 > 0.0)) throw std::invalid_argument("ks distance needs sigma2 > 0");
  std::sort(samples.begin(), samples.end());
  const double sigma = std::sqrt(sigma2);
  const auto m = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const double cdf = standard_normal_cdf(samples[j] / sigma);
    d = std::max(d, std::abs(cdf - static_cast<double>(j) / m));
    d = std::max(d, std::abs(static_cast<double>(j + 1) / m - cdf));
  }
  return d;
}

MonteCarloReport mc_lln(std::uint64_t n, std::uint64_t replicas,
                        const InitialCondition& ic, const StiflingDistribution& dist,
                        std::uint64_t seed, int threads, const PassBands& bands) {
  if (dist.has_infinite_mean())
    throw std::invalid_argument("mc_lln requires a finite-mean stifling law");
  std::vector<double> fractions(replicas);
  for_each_replica(replicas, threads, [&](std::uint64_t r) {
    const auto outcome = run_reduced(n, ic, dist, substream_seed(seed, r));
    fractions[r] =
        static_cast<double>(outcome.final_ignorants) / static_cast<double>(n);
  });

  const auto stats = summarize(fractions);
  const double target = limit_fraction(dist.mu(), ic.x0, ic.w0);
  const double band = std::max(3.0 * stats.se,
                               bands.lln_floor_c / std::sqrt(static_cast<double>(n)));

  MonteCarloReport report;
  report.name = "lln";
  report.n = n;
  report.replicas = replicas;
  report.target = target;
  report.estimate = stats.mean;
  report.std_error = stats.se;
  report.pass = std::abs(stats.mean - target) <= band;
  report.criterion =
      format_rule("|estimate - x_inf| <= max(3*se, %g/sqrt(n)) = %g",
                  bands.lln_floor_c, band);
  return report;
}

MonteCarloReport mc_clt(std::uint64_t n, std::uint64_t replicas,
                        const InitialCondition& ic, const StiflingDistribution& dist,
                        std::uint64_t seed, int threads, bool keep_samples,
                        const PassBands& bands) {
  if (std::isinf(dist.nu2()))
    throw std::invalid_argument("mc_clt requires a finite-variance stifling law");
  const auto sigma2 = clt_variance(dist.mu(), dist.nu2(), ic.x0, ic.w0);
  if (!sigma2)
    throw std::invalid_argument(
        "fluctuation hypotheses fail here (w0 == 0 and x0 <= 1/(1+mu))");

  const double x_inf = limit_fraction(dist.mu(), ic.x0, ic.w0);
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  std::vector<double> standardized(replicas);
  for_each_replica(replicas, threads, [&](std::uint64_t r) {
    const auto outcome = run_reduced(n, ic, dist, substream_seed(seed, r));
    const double fraction =
        static_cast<double>(outcome.final_ignorants) / static_cast<double>(n);
    standardized[r] = sqrt_n * (fraction - x_inf);
  });

  const auto stats = summarize(standardized);
  const double ks = ks_distance_to_normal(standardized, *sigma2);
  const double ks_band =
      bands.ks_mult * 1.63 / std::sqrt(static_cast<double>(replicas));

  MonteCarloReport report;
  report.name = "clt";
  report.n = n;
  report.replicas = replicas;
  report.target = *sigma2;
  report.estimate = stats.variance;
  // Standard error of a sample variance under approximate normality.
  report.std_error = stats.variance * std::sqrt(2.0 / static_cast<double>(replicas));
  report.ks_distance = ks;
  report.pass = std::abs(stats.variance - *sigma2) <= bands.clt_var_rel * *sigma2 &&
                ks < ks_band;
  report.criterion = format_rule(
      "|sample var - sigma2| <= %g*sigma2 and ks < %g", bands.clt_var_rel, ks_band);
  if (keep_samples) report.standardized_samples = std::move(standardized);
  return report;
}

MonteCarloReport mc_transitions(std::uint64_t n, std::uint64_t replicas,
                                const InitialCondition& ic,
                                const StiflingDistribution& dist, std::uint64_t seed,
                                int threads, const PassBands& bands) {
  if (std::isinf(dist.nu2()))
    throw std::invalid_argument(
        "mc_transitions requires a finite-variance stifling law");
  std::vector<double> per_capita(replicas);
  for_each_replica(replicas, threads, [&](std::uint64_t r) {
    const auto outcome = run_reduced(n, ic, dist, substream_seed(seed, r));
    per_capita[r] =
        static_cast<double>(outcome.transitions) / static_cast<double>(n);
  });

  const auto stats = summarize(per_capita);
  const double target = stop_time(dist.mu(), ic.x0, ic.w0);
  const double band = std::max(3.0 * stats.se, bands.transitions_abs);

  MonteCarloReport report;
  report.name = "transitions";
  report.n = n;
  report.replicas = replicas;
  report.target = target;
  report.estimate = stats.mean;
  report.std_error = stats.se;
  report.pass = std::abs(stats.mean - target) <= band;
  report.criterion =
      format_rule("|mean transitions/n - t_inf| <= max(3*se, %g) = %g",
                  bands.transitions_abs, band);
  return report;
}

std::vector<MonteCarloReport> mc_mu_infinity(const std::vector<std::uint64_t>& n_grid,
                                             std::uint64_t replicas,
                                             const StiflingDistribution& dist,
                                             std::uint64_t seed, int threads,
                                             const PassBands& bands) {
  if (!dist.has_infinite_mean())
    throw std::invalid_argument(
        "mc_mu_infinity requires an infinite-mean stifling law");
  if (n_grid.empty()) throw std::invalid_argument("population grid is empty");

  const InitialCondition ic = InitialCondition::classical();
  std::vector<MonteCarloReport> reports;
  reports.reserve(n_grid.size());
  std::uint64_t stream_offset = 0;
  double previous = std::numeric_limits<double>::infinity();
  for (const std::uint64_t n : n_grid) {
    std::vector<double> fractions(replicas);
    for_each_replica(replicas, threads, [&](std::uint64_t r) {
      const auto outcome =
          run_reduced(n, ic, dist, substream_seed(seed, stream_offset + r));
      fractions[r] =
          static_cast<double>(outcome.final_ignorants) / static_cast<double>(n);
    });
    stream_offset += replicas;

    const auto stats = summarize(fractions);
    MonteCarloReport report;
    report.name = "muinf";
    report.n = n;
    report.replicas = replicas;
    report.target = 0.0;
    report.estimate = stats.mean;
    report.std_error = stats.se;
    const bool last = n == n_grid.back();
    report.pass = stats.mean < previous &&
                  (!last || stats.mean < bands.muinf_final);
    report.criterion = "estimate strictly below the previous one";
    if (last)
      report.criterion +=
          format_rule("; final < %g", bands.muinf_final, 0.0);
    previous = stats.mean;
    reports.push_back(std::move(report));
  }
  return reports;
}

MonotoneReport mc_monotone(std::uint64_t n, std::uint64_t replicas,
                           const StiflingDistribution& dist_low,
                           const StiflingDistribution& dist_high, std::uint64_t seed,
                           int threads, const PassBands& bands) {
  // Verify the stochastic order on the pmfs: P(low >= i) <= P(high >= i).
  for (std::uint64_t i = 1; i <= 1u << 20; ++i) {
    const double tl = dist_low.tail(i);
    const double th = dist_high.tail(i);
    if (tl > th + 1e-12)
      throw std::invalid_argument(
          "stochastic-order precondition violated: first law is not "
          "dominated by the second");
    if (tl < 1e-14 && th < 1e-14) break;
  }

  const InitialCondition ic = InitialCondition::classical();
  std::vector<double> low(replicas), high(replicas);
  for_each_replica(replicas, threads, [&](std::uint64_t r) {
    low[r] = static_cast<double>(
        run_reduced(n, ic, dist_low, substream_seed(seed, r)).final_ignorants);
    high[r] = static_cast<double>(
        run_reduced(n, ic, dist_high, substream_seed(seed, replicas + r))
            .final_ignorants);
  });

  const auto stats_low = summarize(low);
  const auto stats_high = summarize(high);
  const double pooled =
      std::sqrt(stats_low.se * stats_low.se + stats_high.se * stats_high.se);

  MonotoneReport report;
  report.dist_low = dist_low.spec_string();
  report.dist_high = dist_high.spec_string();
  report.n = n;
  report.replicas = replicas;
  report.mean_low = stats_low.mean;
  report.mean_high = stats_high.mean;
  report.pooled_se = pooled;
  report.pass =
      stats_high.mean <= stats_low.mean + bands.monotone_se_mult * pooled;
  report.criterion = format_rule("mean(high) <= mean(low) + %g * pooled se (%g)",
                                 bands.monotone_se_mult, pooled);
  return report;
}

}  // namespace rumorlab
