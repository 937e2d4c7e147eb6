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

#ifndef REPEATED_SALES_TWO_ROUND_HPP_
#define REPEATED_SALES_TWO_ROUND_HPP_

#include "repeated_sales/distributions.hpp"
#include "repeated_sales/numerics.hpp"
#include "repeated_sales/strategy.hpp"

namespace rsales {

// The two-round game without commitment. Round 1 posts p1; a buyer accepts
// iff v >= t(p1), where t(x) is the type whose conditional prior [low, t(x)]
// has monopoly price x. Round 2 prices at the monopoly price of whichever
// side of t(p1) the buyer revealed.
struct TwoRoundEquilibrium {
  double p1 = 0.0;
  double t1 = 0.0;
  double p20 = 0.0;  // round 2 price after a rejection
  double p21 = 0.0;  // round 2 price after an acceptance
  double revenue = 0.0;
  double monopoly_price = 0.0;
  double monopoly_revenue = 0.0;
  bool p1_equals_lower_support = false;
  // The lowest support point attains the round-1 objective maximum, possibly
  // alongside other prices.
  bool lower_support_in_argmax = false;
  // lower_support_in_argmax, and some price above the lowest support point
  // also attains the maximum.
  bool lower_support_tied = false;
  // t(p1) is one end of an interval of thresholds sharing the same monopoly
  // price; the smallest is reported.
  bool threshold_plateau = false;
};

// Smallest t in [low, high] whose restricted prior [low, t] has monopoly price
// `price`. Returns low for price <= low. Throws std::domain_error
// ("threshold inversion failed ...") for prices above the monopoly price.
double threshold_for_price(const ValueDistribution& dist, double price);

TwoRoundEquilibrium solve_two_round(const ValueDistribution& dist,
                                    int grid_points = kDefaultGridPoints);

// round is 1 or 2.
Decision buyer_decision_two_round(double value, int round, double price,
                                  const ValueDistribution& dist);

// Equilibrium strategies of the solved game. Off-path observations move the
// seller to a point mass at the top of the support, where it prices at high.
Game two_round_game(const ValueDistribution& dist);

}  // namespace rsales

#endif  // REPEATED_SALES_TWO_ROUND_HPP_
