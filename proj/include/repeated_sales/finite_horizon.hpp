// Copyright 2026 The Repeated Sales Authors
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

#ifndef REPEATED_SALES_FINITE_HORIZON_HPP_
#define REPEATED_SALES_FINITE_HORIZON_HPP_

#include <vector>

#include "repeated_sales/distributions.hpp"
#include "repeated_sales/strategy.hpp"

namespace rsales {

// Row of the partial-commitment recursion. Rows are indexed by the number of
// rounds remaining: row n describes the first round of an n-round game, row
// n-1 its second round (after a rejection), and so on down to row 1.
struct FiniteRecursionRow {
  int n = 0;
  double price = 0.0;
  double threshold = 0.0;
  double revenue = 0.0;
  // Utility of the buyer at the top of the support.
  double top_utility = 0.0;
};

// Closed-form optimum for uniform(0, 1); rows 1..n.
std::vector<FiniteRecursionRow> solve_partial_uniform(int n);

// Revenue alone via V_k = V_{k-1} + 1 / (4 V_{k-1}), V_1 = 5/4, R = V - 1.
// Entry k-1 holds R_k.
std::vector<double> scalar_revenue_recursion(int n);

// Power law with density (k+1) x^k on [0, 1]: each row maximises
// R_{m-1} t^{k+2} + (1 - t^{k+1}) m p(t) numerically over t.
std::vector<FiniteRecursionRow> solve_partial_power_law(int n, int k);

// V_n^2 - n/2 - ln(n)/8 with V_n = R_n + 1.
double asymptotic_gap(int n);
// Entry k-1 holds asymptotic_gap(k), computed in one pass.
std::vector<double> asymptotic_gaps(int n);

struct ThresholdExistenceReport {
  int n = 0;
  bool exists = false;
  // On-path prices. n = 1: the monopoly price. n = 2: the round-1 price and
  // the round-2 price after a rejection. n > 2: low repeated n-1 times, then
  // the monopoly price.
  std::vector<double> equilibrium_prices;
  double two_round_p1 = 0.0;  // NaN for n = 1
  // The lowest support point maximises the two-round objective but so does
  // some higher price; `exists` reports the smallest-maximiser selection.
  bool lower_support_tied = false;
};

// Whether an n-round no-commitment game has a pure threshold equilibrium.
ThresholdExistenceReport threshold_pbe_exists(const ValueDistribution& dist,
                                              int n);

// Partial-commitment equilibrium for power_law(k) over n rounds.
Game finite_partial_game(int n, int k);

// The n-round no-commitment equilibrium with prices low, ..., low, monopoly.
// Throws std::domain_error when threshold_pbe_exists reports no equilibrium.
Game finite_no_commitment_game(const ValueDistribution& dist, int n);

}  // namespace rsales

#endif  // REPEATED_SALES_FINITE_HORIZON_HPP_
