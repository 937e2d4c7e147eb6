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

#ifndef REPEATED_SALES_STRATEGY_HPP_
#define REPEATED_SALES_STRATEGY_HPP_

#include <limits>
#include <memory>
#include <string>

#include "repeated_sales/distributions.hpp"

namespace rsales {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Decision { kReject, kAccept };

inline const char* decision_name(Decision d) {
  return d == Decision::kAccept ? "accept" : "reject";
}

// Everything a player remembers about the history. Sellers keep their belief
// here; buyers keep the belief they infer by running the seller's machine.
struct PlayState {
  int round = 0;  // rounds already played
  double belief_low = 0.0;
  double belief_high = 1.0;
  // Off-path posterior: a point mass at the top of the prior support.
  bool point_mass = false;
  bool ever_accepted = false;
  double min_accepted_price = kInfinity;
  bool accepted_positive_price = false;
  bool rejected_zero_price = false;
  double last_price = 0.0;

  // Compares everything except the round counter.
  bool same_position(const PlayState& o) const {
    return belief_low == o.belief_low && belief_high == o.belief_high &&
           point_mass == o.point_mass && ever_accepted == o.ever_accepted &&
           min_accepted_price == o.min_accepted_price &&
           accepted_positive_price == o.accepted_positive_price &&
           rejected_zero_price == o.rejected_zero_price &&
           last_price == o.last_price;
  }
  bool operator==(const PlayState& o) const {
    return round == o.round && same_position(o);
  }
};

class SellerStrategy {
 public:
  virtual ~SellerStrategy() = default;
  virtual std::string name() const = 0;
  virtual PlayState initial_state() const = 0;
  virtual double price(const PlayState& state) const = 0;
  virtual PlayState update(const PlayState& state, double price,
                           Decision decision) const = 0;
  // Highest price the seller may post (partial commitment caps prices at the
  // lowest accepted one).
  virtual double price_cap(const PlayState& state) const {
    (void)state;
    return kInfinity;
  }
  // Price and update ignore the round counter from round stationary_after()
  // (0-based) on.
  virtual bool stationary() const { return false; }
  virtual int stationary_after() const { return 0; }
};

// A threshold buyer: accepts `price` iff v >= threshold(inferred, price).
class BuyerStrategy {
 public:
  virtual ~BuyerStrategy() = default;
  virtual std::string name() const = 0;
  virtual PlayState initial_state() const = 0;
  virtual double threshold(const PlayState& inferred, double price) const = 0;
  virtual PlayState update(const PlayState& inferred, double price,
                           Decision decision) const = 0;
  virtual bool stationary() const { return false; }
  virtual int stationary_after() const { return 0; }

  Decision decide(double value, const PlayState& inferred,
                  double price) const {
    return value >= threshold(inferred, price) ? Decision::kAccept
                                               : Decision::kReject;
  }
};

// How rounds are counted and weighted.
class Regime {
 public:
  enum class Kind { kFixedHorizon, kDiscounted, kGeometricStopping };

  static Regime fixed_horizon(int rounds);
  // Discount factor 1 - delta per round, truncated after the smallest T with
  // (1 - delta)^T * high / delta <= tolerance / 10.
  static Regime discounted(double delta, double high = 1.0,
                           double tolerance = 1e-10);
  // Game ends after each round with probability delta. Expectation-based
  // evaluators treat it exactly like `discounted`.
  static Regime geometric_stopping(double delta, double high = 1.0,
                                   double tolerance = 1e-10);

  Kind kind() const { return kind_; }
  double delta() const { return delta_; }
  // Number of rounds played (fixed) or truncation length (discounted).
  int rounds() const { return rounds_; }
  bool infinite() const { return kind_ != Kind::kFixedHorizon; }
  // Weight of round index i (0-based).
  double weight(int i) const;
  // Sum of weights from round index i to infinity (untruncated).
  double remaining_weight(int i) const;
  // Upper bound on the revenue or utility lost by truncation.
  double tail_bound(double high) const;
  std::string describe() const;

 private:
  Kind kind_ = Kind::kFixedHorizon;
  double delta_ = 0.0;
  int rounds_ = 1;
};

struct Game {
  std::string name;
  std::shared_ptr<const SellerStrategy> seller;
  std::shared_ptr<const BuyerStrategy> buyer;
  ValueDistribution prior = ValueDistribution::uniform(0.0, 1.0);
  Regime regime = Regime::fixed_horizon(1);
  // Partial commitment: prices may never exceed the lowest accepted price.
  bool partial_commitment = false;

  // Whether both strategies ignore the round counter from `round` on.
  bool stationary_at(int round) const {
    return seller->stationary() && buyer->stationary() &&
           round >= seller->stationary_after() &&
           round >= buyer->stationary_after();
  }
};

}  // namespace rsales

#endif  // REPEATED_SALES_STRATEGY_HPP_
