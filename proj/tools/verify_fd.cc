// Copyright 2026 The pfgames Authors
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

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "experiment.h"
#include "pfg/facial_distance.h"

namespace pfg {

namespace {

constexpr double kClosedFormTol = 1e-6;

double SimplexClosedForm(int n) {
  const int lo = n / 2;
  const int hi = n - lo;
  return std::sqrt(1.0 / lo + 1.0 / hi);
}

FdRow TreeplexRow(const std::string& name, const Treeplex& polytope) {
  FdRow row;
  row.polytope = name;
  row.dimension = polytope.num_sequences();
  row.brute_force = FacialDistanceBruteForce(polytope);
  row.closed_form = std::numeric_limits<double>::quiet_NaN();
  row.lower_bound = FacialDistanceLowerBound(1.0, row.dimension);
  row.ok = row.brute_force >= row.lower_bound;
  return row;
}

}  // namespace

std::vector<FdRow> VerifyFacialDistance(int max_n) {
  if (max_n < 2 || max_n > kMaxBruteForceDimension) {
    throw std::invalid_argument("max-n must lie in [2, " +
                                std::to_string(kMaxBruteForceDimension) + "]");
  }
  std::vector<FdRow> rows;
  for (int n = 2; n <= max_n; ++n) {
    FdRow row;
    row.polytope = "simplex";
    row.dimension = n;
    row.brute_force = FacialDistanceBruteForce(Treeplex::Simplex(n));
    row.closed_form = SimplexClosedForm(n);
    row.lower_bound = FacialDistanceLowerBound(1.0, n);
    row.ok = std::abs(row.brute_force - row.closed_form) <= kClosedFormTol &&
             row.brute_force >= row.lower_bound;
    rows.push_back(row);
  }
  // Two decision points side by side (3 and 2 actions) and a two-level chain.
  rows.push_back(TreeplexRow(
      "parallel_3x2", Treeplex(6, {{0, {1, 2, 3}}, {0, {4, 5}}})));
  rows.push_back(TreeplexRow("chain_2_2", Treeplex(5, {{0, {1, 2}}, {1, {3, 4}}})));
  const SequenceFormGame kuhn = ToSequenceForm(BuildKuhn(2));
  rows.push_back(TreeplexRow("kuhn_p1", kuhn.treeplexes[0]));
  return rows;
}

std::string FormatFdTable(const std::vector<FdRow>& rows) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-14s %4s %12s %12s %12s  %s\n", "polytope", "n",
                "brute", "closed", "bound", "status");
  out += buf;
  for (const FdRow& r : rows) {
    char closed[32];
    if (std::isnan(r.closed_form)) {
      std::snprintf(closed, sizeof(closed), "%12s", "-");
    } else {
      std::snprintf(closed, sizeof(closed), "%12.6f", r.closed_form);
    }
    std::snprintf(buf, sizeof(buf), "%-14s %4d %12.6f %s %12.6f  %s\n",
                  r.polytope.c_str(), r.dimension, r.brute_force, closed,
                  r.lower_bound, r.ok ? "ok" : "VIOLATION");
    out += buf;
  }
  return out;
}

}  // namespace pfg
