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

#include "rumorlab/tables.hpp"

#include <cstdio>
#include <stdexcept>

namespace rumorlab {

std::vector<TableRow> reference_table_rows() {
  std::vector<TableRow> rows;
  rows.reserve(27);
  for (int kappa = 1; kappa <= 8; ++kappa) {
    const double mu = kappa;
    rows.push_back({"kappa", mu, limit_fraction(mu, 1.0, 0.0),
                    *clt_variance(mu, 0.0, 1.0, 0.0)});
  }
  for (int j = 1; j <= 9; ++j) {
    const double p = static_cast<double>(j) / 10.0;
    const double mu = 1.0 / p;
    const double nu2 = (1.0 - p) / (p * p);
    rows.push_back({"geometric", p, limit_fraction(mu, 1.0, 0.0),
                    *clt_variance(mu, nu2, 1.0, 0.0)});
  }
  for (int j = 1; j <= 19; j += 2) {
    const double lambda = static_cast<double>(j) / 10.0;
    rows.push_back({"poisson", lambda, limit_fraction(lambda, 1.0, 0.0),
                    *clt_variance(lambda, lambda, 1.0, 0.0)});
  }
  return rows;
}

std::vector<std::pair<double, double>> limit_curve(const std::vector<double>& mu_grid) {
  std::vector<std::pair<double, double>> curve;
  curve.reserve(mu_grid.size());
  for (const double mu : mu_grid)
    curve.emplace_back(mu, limit_fraction(mu, 1.0, 0.0));
  return curve;
}

std::string format_significant(double value, int digits) {
  if (digits < 1 || digits > 17)
    throw std::invalid_argument("digits must lie in [1, 17]");
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return buf;
}

void write_tables_csv(std::ostream& os, const std::vector<TableRow>& rows,
                      int digits) {
  os << "family,parameter,x_inf,sigma2\n";
  for (const auto& row : rows) {
    os << row.family << ',' << format_significant(row.parameter, digits) << ','
       << format_significant(row.x_inf, digits) << ','
       << format_significant(row.sigma2, digits) << '\n';
  }
}

void write_curve_csv(std::ostream& os,
                     const std::vector<std::pair<double, double>>& curve,
                     int digits) {
  os << "mu,x_inf\n";
  for (const auto& [mu, x] : curve)
    os << format_significant(mu, digits) << ',' << format_significant(x, digits)
       << '\n';
}

void write_fprofile_csv(std::ostream& os, const CaseProfile& profile, int digits) {
  os << "# case=" << to_string(profile.label) << '\n';
  os << "# supercritical=" << (profile.supercritical ? 1 : 0) << '\n';
  os << "# x_inf=" << format_significant(profile.x_inf, digits) << '\n';
  os << "x,f\n";
  for (const auto& [x, f] : profile.profile)
    os << format_significant(x, digits) << ',' << format_significant(f, digits)
       << '\n';
}

}  // namespace rumorlab
