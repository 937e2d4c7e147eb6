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

#ifndef REPEATED_SALES_INFINITE_HORIZON_HPP_
#define REPEATED_SALES_INFINITE_HORIZON_HPP_

#include "repeated_sales/strategy.hpp"

namespace rsales {

// Discounted infinite-horizon game with v ~ uniform(0, 1); each round is worth
// (1 - delta) times the previous one.

// Revenue of the stationary scheme with threshold fraction z:
// z (1 - z) / ((1 - (1 - delta) z) (1 - (1 - delta) z^2)).
double stationary_revenue(double delta, double z);

// Argmax of stationary_revenue over z in [0, 1].
double optimal_threshold(double delta);

// Price fraction whose indifferent type is the threshold fraction t.
double stationary_price(double delta, double t);

struct InfiniteEquilibrium {
  double delta = 1.0;
  double threshold = 0.5;
  double price = 0.5;
  double revenue = 0.25;
  double benchmark = 0.25;  // 1 / (4 delta)
  double ratio = 1.0;       // revenue / benchmark
  // |(1 - delta) u t - (t - p) / delta| with u = (1 - p) / delta.
  double indifference_residual = 0.0;
};

// Throws std::domain_error if the buyer indifference fails by more than 1e-9.
InfiniteEquilibrium infinite_equilibrium(double delta);

// 4 / (3 + 2 sqrt 2), the small-delta limit of the ratio.
double limiting_ratio();

// Partial commitment: the seller never raises the price above an accepted one.
Game infinite_partial_game(double delta);

// Zero commitment: price 0 until the buyer accepts a positive price or
// rejects a free one, then price 1. Throws std::domain_error for
// delta > 0.5.
Game infinite_zero_game(double delta);

// Price posted by the zero-commitment seller.
double seller_step_zero(bool accepted_positive_price, bool rejected_zero_price);

Decision buyer_decide_zero(double value, double price,
                           bool accepted_positive_price,
                           bool rejected_zero_price, double delta);

}  // namespace rsales

#endif  // REPEATED_SALES_INFINITE_HORIZON_HPP_
