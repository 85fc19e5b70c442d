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

#include "rumorlab/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace rumorlab {

namespace {

constexpr double kReciprocalE = 0.36787944117144233;  // 1/e

void require_parameters(double mu, double x0, double w0) {
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
  if (!(x0 > 0.0) || !(x0 <= 1.0))
    throw std::invalid_argument("x0 must lie in (0, 1]");
  if (!(w0 >= 0.0) || !std::isfinite(w0))
    throw std::invalid_argument("w0 must be a finite nonnegative real");
}

double lambert_initial_guess(double v) {
  if (v < -0.3235) {
    // Square-root expansion about the branch point.
    const double r = 2.0 * (1.0 + std::exp(1.0) * v);
    return -1.0 + std::sqrt(r > 0.0 ? r : 0.0);
  }
  if (v < 0.5) {
    // Short Taylor series around 0.
    return v * (1.0 + v * (-1.0 + v * (1.5 - 8.0 / 3.0 * v)));
  }
  if (v < 4.0) return std::log1p(v) * 0.75;
  const double l1 = std::log(v);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

}  // namespace

double lambert_w0(double v) {
  if (v < -kReciprocalE - 1e-15)
    throw std::domain_error("lambert_w0 requires v >= -1/e");
  if (v <= -kReciprocalE) return -1.0;
  if (v == 0.0) return 0.0;

  double w = lambert_initial_guess(v);
  for (int iter = 0; iter < 50; ++iter) {
    const double ew = std::exp(w);
    const double resid = w * ew - v;
    const double d1 = ew * (w + 1.0);
    if (d1 == 0.0) break;  // at the branch point
    // Halley step.
    const double step = resid / (d1 - resid * (w + 2.0) / (2.0 * (w + 1.0)));
    w -= step;
    if (std::abs(step) <= 1e-13 * std::max(std::abs(w), 1e-300)) break;
  }
  return w;
}

double f_eval(double x, double mu, double x0, double w0) {
  require_parameters(mu, x0, w0);
  if (!(x > 0.0) || !(x <= x0))
    throw std::domain_error("f is defined on (0, x0]");
  return w0 + (1.0 + mu) * (x0 - x) + std::log(x / x0);
}

double f_derivative(double x, double mu) {
  if (!(x > 0.0)) throw std::domain_error("f' is defined for x > 0");
  return -(1.0 + mu) + 1.0 / x;
}

double limit_fraction_lambert(double mu, double x0, double w0) {
  require_parameters(mu, x0, w0);
  if (w0 == 0.0 && x0 <= 1.0 / (1.0 + mu)) return x0;
  const double a = x0 * (1.0 + mu);
  const double v = -a * std::exp(-a - w0);
  return -lambert_w0(v) / (1.0 + mu);
}

double limit_fraction_bisection(double mu, double x0, double w0) {
  require_parameters(mu, x0, w0);
  if (w0 == 0.0 && x0 <= 1.0 / (1.0 + mu)) return x0;

  const auto f = [&](double x) {
    return w0 + (1.0 + mu) * (x0 - x) + std::log(x / x0);
  };

  // f is strictly increasing below 1/(1+mu) and f(hi) >= 0 there.
  double hi = std::min(x0, 1.0 / (1.0 + mu));
  if (f(hi) == 0.0) return hi;
  double lo = hi * 0.5;
  while (f(lo) > 0.0) {
    lo *= 0.25;
    if (lo < 1e-300) return lo;  // root underflows doubles
  }

  for (int iter = 0; iter < 200; ++iter) {
    // Geometric midpoint while the bracket spans orders of magnitude.
    const double mid = hi > 16.0 * lo ? std::sqrt(lo) * std::sqrt(hi)
                                      : 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    (fm < 0.0 ? lo : hi) = mid;
  }

  // Newton polish, clamped to the bracket.
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 4; ++iter) {
    const double deriv = 1.0 / x - (1.0 + mu);
    if (!(deriv > 0.0)) break;
    double next = x - f(x) / deriv;
    if (next <= lo || next >= hi) break;
    if (next == x) break;
    x = next;
  }
  return x;
}

double limit_fraction(double mu, double x0, double w0) {
  if (std::isinf(mu) && mu > 0.0) return 0.0;  // infinite-mean degeneracy
  const double via_lambert = limit_fraction_lambert(mu, x0, w0);
  const double via_f = limit_fraction_bisection(mu, x0, w0);
  if (std::abs(via_lambert - via_f) > 1e-10)
    throw std::runtime_error("limit_fraction: root routes disagree");
  return via_lambert;
}

std::optional<double> clt_variance(double mu, double nu2, double x0, double w0) {
  require_parameters(mu, x0, w0);
  if (std::isinf(nu2))
    throw std::invalid_argument("clt_variance requires a finite variance");
  if (!(nu2 >= 0.0)) throw std::invalid_argument("nu2 must be nonnegative");
  if (w0 == 0.0 && x0 <= 1.0 / (1.0 + mu)) return std::nullopt;
  const double x = limit_fraction(mu, x0, w0);
  const double numer =
      x * (1.0 - (1.0 / x0 + w0 + (x0 - x) * (1.0 + mu - nu2)) * x);
  const double denom = 1.0 - (1.0 + mu) * x;
  return numer / (denom * denom);
}

double stop_time(double mu, double x0, double w0) {
  require_parameters(mu, x0, w0);
  if (std::isinf(mu)) throw std::invalid_argument("stop_time requires finite mu");
  return w0 + (1.0 + mu) * (x0 - limit_fraction(mu, x0, w0));
}

std::pair<double, double> trajectory(double mu, double x0, double w0, double t) {
  require_parameters(mu, x0, w0);
  if (!(t >= 0.0)) throw std::domain_error("trajectory requires t >= 0");
  const double x = x0 * std::exp(-t);
  const double w = w0 + (1.0 + mu) * (x0 - x) - t;
  return {x, w};
}

CovarianceResult covariance_at_stop(double mu, double nu2, double x0, double w0) {
  require_parameters(mu, x0, w0);
  if (std::isinf(nu2))
    throw std::invalid_argument("covariance_at_stop requires a finite variance");
  const double x = limit_fraction(mu, x0, w0);
  const double t = w0 + (1.0 + mu) * (x0 - x);

  CovarianceResult out;
  out.var_ux = (x0 - x) * x / x0;
  out.var_uw = (mu + 1.0) * (mu + 1.0) * (x0 - x) * x / x0 + nu2 * (x0 - x) +
               (1.0 - 2.0 * (mu + 1.0) * x) * t;
  out.cov_uxuw = t * x - (mu + 1.0) * (x0 - x) * x / x0;

  if (const auto direct = clt_variance(mu, nu2, x0, w0)) {
    const double c = x / ((mu + 1.0) * x - 1.0);
    const double assembled =
        out.var_ux + 2.0 * c * out.cov_uxuw + c * c * out.var_uw;
    if (std::abs(assembled - *direct) > 1e-9)
      throw std::runtime_error(
          "covariance_at_stop: assembled variance disagrees with closed form");
    out.sigma2_assembled = assembled;
  }
  return out;
}

CaseProfile classify_case(double mu, double x0, double w0, std::size_t grid_size) {
  require_parameters(mu, x0, w0);
  if (grid_size < 2) throw std::invalid_argument("grid_size must be >= 2");

  CaseProfile out;
  out.supercritical = x0 > 1.0 / (1.0 + mu);
  if (w0 > 0.0)
    out.label = CaseLabel::kW0Positive;
  else
    out.label = out.supercritical ? CaseLabel::kW0ZeroSupercritical
                                  : CaseLabel::kW0ZeroCriticalOrSub;
  out.x_inf = limit_fraction(mu, x0, w0);

  const double lo = x0 * 1e-4;
  out.profile.reserve(grid_size);
  for (std::size_t j = 0; j < grid_size; ++j) {
    const double x =
        lo + (x0 - lo) * static_cast<double>(j) / static_cast<double>(grid_size - 1);
    out.profile.emplace_back(x, f_eval(x, mu, x0, w0));
  }
  return out;
}

AnalyticResult analyze(double mu, double nu2, double x0, double w0) {
  AnalyticResult out;
  out.mu = mu;
  out.nu2 = nu2;
  out.x0 = x0;
  out.w0 = w0;
  out.x_inf = limit_fraction(mu, x0, w0);
  out.sigma2 = std::isinf(nu2) ? std::nullopt : clt_variance(mu, nu2, x0, w0);
  out.t_inf = stop_time(mu, x0, w0);
  out.case_label = classify_case(mu, x0, w0).label;
  return out;
}

const char* to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::kW0Positive:
      return "W0_POSITIVE";
    case CaseLabel::kW0ZeroSupercritical:
      return "W0_ZERO_SUPERCRITICAL";
    case CaseLabel::kW0ZeroCriticalOrSub:
      return "W0_ZERO_CRITICAL_OR_SUB";
  }
  return "UNKNOWN";
}

InitialCondition InitialCondition::degenerate(double x0) {
  InitialCondition ic;
  ic.x0 = x0;
  ic.w0 = 0.0;
  ic.z0 = std::max(0.0, 1.0 - x0);
  ic.validate();
  return ic;
}

InitialCondition InitialCondition::with_proportions(
    double x0, std::map<std::uint64_t, double> y0) {
  InitialCondition ic;
  ic.x0 = x0;
  ic.y0 = std::move(y0);
  double y_sum = 0.0, weighted = 0.0;
  for (const auto& [type, prop] : ic.y0) {
    y_sum += prop;
    weighted += static_cast<double>(type) * prop;
  }
  ic.w0 = weighted;
  ic.z0 = 1.0 - x0 - y_sum;
  if (ic.z0 < 0.0 && ic.z0 > -1e-12) ic.z0 = 0.0;
  ic.validate();
  return ic;
}

void InitialCondition::validate() const {
  if (!(x0 > 0.0) || !(x0 <= 1.0))
    throw std::invalid_argument("initial ignorant proportion must lie in (0, 1]");
  if (!(w0 >= 0.0) || !std::isfinite(w0))
    throw std::invalid_argument("w0 must be finite and nonnegative");
  if (!(z0 >= 0.0))
    throw std::invalid_argument("stifler proportion must be nonnegative");
  if (y0.empty()) return;

  double y_sum = 0.0, weighted = 0.0;
  for (const auto& [type, prop] : y0) {
    if (type == 0)
      throw std::invalid_argument("spreader types start at 1");
    if (!(prop >= 0.0) || !std::isfinite(prop))
      throw std::invalid_argument("spreader proportions must be nonnegative");
    y_sum += prop;
    weighted += static_cast<double>(type) * prop;
  }
  if (!(y_sum > 0.0))
    throw std::invalid_argument("given y0 must carry positive spreader mass");
  if (std::abs(x0 + y_sum + z0 - 1.0) > 1e-12)
    throw std::invalid_argument("proportions must sum to 1");
  if (std::abs(weighted - w0) > 1e-12)
    throw std::invalid_argument("w0 must equal sum_i i*y0[i]");
}

}  // namespace rumorlab
