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

#ifndef RUMORLAB_TABLES_HPP_
#define RUMORLAB_TABLES_HPP_

#include <ostream>
#include <string>
#include <vector>

#include "rumorlab/analytic.hpp"

namespace rumorlab {

struct TableRow {
  std::string family;  // "kappa", "geometric", "poisson"
  double parameter = 0.0;
  double x_inf = 0.0;
  double sigma2 = 0.0;
};

// The classical reference grid for the one-spreader start: constant stifling
// kappa = 1..8, geometric p = 0.1..0.9, Poisson lambda = 0.1, 0.3, ..., 1.9.
std::vector<TableRow> reference_table_rows();

// x_inf(mu, 1, 0) over a grid of means.
std::vector<std::pair<double, double>> limit_curve(const std::vector<double>& mu_grid);

// Format a double with the given number of significant digits, C locale.
std::string format_significant(double value, int digits);

void write_tables_csv(std::ostream& os, const std::vector<TableRow>& rows, int digits);
void write_curve_csv(std::ostream& os,
                     const std::vector<std::pair<double, double>>& curve, int digits);
// f profile with case metadata in '#' comment lines.
void write_fprofile_csv(std::ostream& os, const CaseProfile& profile, int digits);

}  // namespace rumorlab

#endif  // RUMORLAB_TABLES_HPP_
