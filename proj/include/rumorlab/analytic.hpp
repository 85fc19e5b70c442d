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

#ifndef RUMORLAB_ANALYTIC_HPP_
#define RUMORLAB_ANALYTIC_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rumorlab {

// Limiting initial proportions: x0 ignorants, per-type spreader proportions
// y0 (optional detail needed only by the simulator), z0 stiflers, and the
// weighted spreader mass w0 = sum_i i*y0[i].  An empty y0 with w0 == 0 marks
// the degenerate start where a single seeded spreader carries a vanishing
// proportion.
struct InitialCondition {
  double x0 = 1.0;
  double w0 = 0.0;
  std::map<std::uint64_t, double> y0;
  double z0 = 0.0;

  // One seeded spreader among otherwise all-ignorant population.
  static InitialCondition classical() { return InitialCondition{}; }
  // One seeded spreader, ignorant proportion x0, stiflers fill the rest.
  static InitialCondition degenerate(double x0);
  // Macroscopic spreader proportions; w0 and z0 derived from y0.
  static InitialCondition with_proportions(double x0,
                                           std::map<std::uint64_t, double> y0);

  bool degenerate_start() const { return y0.empty(); }
  void validate() const;  // throws std::invalid_argument on violation
};

enum class CaseLabel { kW0Positive, kW0ZeroSupercritical, kW0ZeroCriticalOrSub };
const char* to_string(CaseLabel label);

// Principal branch of the Lambert W function (w e^w = v, w >= -1) on
// [-1/e, inf), accurate to ~1e-13 relative.  Halley iteration from a
// branch-aware initial guess.  Throws std::domain_error below -1/e - 1e-15.
double lambert_w0(double v);

// f(x) = w0 + (1+mu)(x0 - x) + log(x/x0) on (0, x0].
double f_eval(double x, double mu, double x0, double w0);
// f'(x) = -(1+mu) + 1/x.
double f_derivative(double x, double mu);

// The two independent routes to the limiting ignorant fraction; exposed so
// their agreement can be checked externally.
double limit_fraction_lambert(double mu, double x0, double w0);
double limit_fraction_bisection(double mu, double x0, double w0);

// Limiting fraction of never-informed individuals: the f' >= 0 root of f on
// (0, x0].  Computes both routes, requires agreement within 1e-10, and
// returns the Lambert value.  mu == +inf degenerates to 0.
double limit_fraction(double mu, double x0, double w0);

// Asymptotic variance of sqrt(N)(X/N - x_inf); nullopt when the fluctuation
// hypotheses fail (w0 == 0 and x0 <= 1/(1+mu)).  Throws for nu2 == +inf.
std::optional<double> clt_variance(double mu, double nu2, double x0, double w0);

// Deterministic stopping time t_inf = w0 + (1+mu)(x0 - x_inf); also the
// large-N limit of transitions per capita.
double stop_time(double mu, double x0, double w0);

// Fluid trajectory (x(t), w(t)) = (x0 e^{-t}, w0 + (1+mu)(x0 - x(t)) - t).
std::pair<double, double> trajectory(double mu, double x0, double w0, double t);

// Covariance of the limiting Gaussian pair (U_x, U_w) at t_inf, plus the
// variance reassembled from the linear-combination weights (nullopt when the
// fluctuation hypotheses fail; the assembled value is cross-checked against
// clt_variance to 1e-9).
struct CovarianceResult {
  double var_ux = 0.0;
  double var_uw = 0.0;
  double cov_uxuw = 0.0;
  std::optional<double> sigma2_assembled;
};
CovarianceResult covariance_at_stop(double mu, double nu2, double x0, double w0);

// Which regime (w0, x0) sits in, with an f profile for plotting.
struct CaseProfile {
  CaseLabel label = CaseLabel::kW0ZeroSupercritical;
  bool supercritical = false;  // x0 > 1/(1+mu)
  double x_inf = 0.0;
  std::vector<std::pair<double, double>> profile;  // (x, f(x)) over (0, x0]
};
CaseProfile classify_case(double mu, double x0, double w0, std::size_t grid_size = 256);

// Bundle emitted by the analytic CLI command.
struct AnalyticResult {
  double mu = 0.0;
  double nu2 = 0.0;
  double x0 = 1.0;
  double w0 = 0.0;
  double x_inf = 0.0;
  std::optional<double> sigma2;
  double t_inf = 0.0;
  CaseLabel case_label = CaseLabel::kW0ZeroSupercritical;
};
AnalyticResult analyze(double mu, double nu2, double x0, double w0);

}  // namespace rumorlab

#endif  // RUMORLAB_ANALYTIC_HPP_
