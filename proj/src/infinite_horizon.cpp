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

#include "repeated_sales/infinite_horizon.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "repeated_sales/numerics.hpp"
#include "repeated_sales/partial_commitment.hpp"

namespace rsales {
namespace {

void check_delta(double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::domain_error("delta must lie in (0, 1], got " +
                            format_number(delta));
  }
}

class StationaryRules : public PartialCommitmentRules {
 public:
  explicit StationaryRules(double delta)
      : eq_(infinite_equilibrium(delta)),
        denominator_(delta + (1.0 - delta) * eq_.price) {}

  std::string name() const override {
    return "infinite partial delta=" + format_number(eq_.delta);
  }
  bool stationary() const override { return true; }
  double equilibrium_price(int, double belief_end) const override {
    return eq_.price * belief_end;
  }
  double indifference_threshold(int, double price) const override {
    return price / denominator_;
  }
  double overpriced_threshold(int, double price,
                              double belief_end) const override {
    return (price - (1.0 - eq_.delta) * eq_.price * belief_end) / eq_.delta;
  }

 private:
  InfiniteEquilibrium eq_;
  double denominator_;
};

// Zero commitment. A buyer who refuses a free good or buys at a positive price
// is "punished" with price 1 forever; both events are off-path.
class ZeroCommitmentMachine {
 public:
  PlayState initial() const { return PlayState{}; }

  static bool punished(const PlayState& s) {
    return s.accepted_positive_price || s.rejected_zero_price;
  }

  PlayState update(PlayState s, double price, Decision d) const {
    ++s.round;
    const bool accepted = d == Decision::kAccept;
    if (accepted && price > 0.0) s.accepted_positive_price = true;
    if (!accepted && price == 0.0) s.rejected_zero_price = true;
    if (!s.point_mass && punished(s)) {
      s.point_mass = true;
      s.belief_low = s.belief_high = 1.0;
    }
    return s;
  }
};

class ZeroCommitmentSeller : public SellerStrategy {
 public:
  std::string name() const override { return "zero-commitment seller"; }
  PlayState initial_state() const override { return machine_.initial(); }
  double price(const PlayState& s) const override {
    return seller_step_zero(s.accepted_positive_price, s.rejected_zero_price);
  }
  PlayState update(const PlayState& s, double price,
                   Decision d) const override {
    return machine_.update(s, price, d);
  }
  bool stationary() const override { return true; }

 private:
  ZeroCommitmentMachine machine_;
};

class ZeroCommitmentBuyer : public BuyerStrategy {
 public:
  std::string name() const override { return "zero-commitment buyer"; }
  PlayState initial_state() const override { return machine_.initial(); }
  double threshold(const PlayState& s, double price) const override {
    if (price <= 0.0) return 0.0;
    return ZeroCommitmentMachine::punished(s) ? price : kInfinity;
  }
  PlayState update(const PlayState& s, double price,
                   Decision d) const override {
    return machine_.update(s, price, d);
  }
  bool stationary() const override { return true; }

 private:
  ZeroCommitmentMachine machine_;
};

}  // namespace

double stationary_revenue(double delta, double z) {
  const double keep = 1.0 - delta;
  return z * (1.0 - z) / ((1.0 - keep * z) * (1.0 - keep * z * z));
}

double optimal_threshold(double delta) {
  check_delta(delta);
  // The peak sits near 1 - delta / sqrt(2) and narrows with delta.
  const double lo = delta <= 1e-3 ? 1.0 - 10.0 * delta : 0.0;
  const double keep = 1.0 - delta;
  // Sign of the derivative: the logarithmic derivative, since the objective
  // is positive inside (0, 1).
  auto slope = [keep](double z) {
    return 1.0 / z - 1.0 / (1.0 - z) + keep / (1.0 - keep * z) +
           2.0 * keep * z / (1.0 - keep * z * z);
  };
  return grid_derivative_argmax(
             [delta](double z) { return stationary_revenue(delta, z); }, slope,
             lo, 1.0)
      .x;
}

double stationary_price(double delta, double t) {
  return delta * t / (1.0 - (1.0 - delta) * t);
}

InfiniteEquilibrium infinite_equilibrium(double delta) {
  InfiniteEquilibrium eq;
  eq.delta = delta;
  eq.threshold = optimal_threshold(delta);
  eq.price = stationary_price(delta, eq.threshold);
  eq.revenue = stationary_revenue(delta, eq.threshold);
  eq.benchmark = 0.25 / delta;
  eq.ratio = eq.revenue / eq.benchmark;
  const double top_utility = (1.0 - eq.price) / delta;
  eq.indifference_residual =
      std::abs((1.0 - delta) * top_utility * eq.threshold -
               (eq.threshold - eq.price) / delta);
  if (eq.indifference_residual > 1e-9) {
    throw std::domain_error("buyer indifference fails at delta = " +
                            format_number(delta) + " (residual " +
                            format_number(eq.indifference_residual) + ")");
  }
  return eq;
}

double limiting_ratio() { return 4.0 / (3.0 + 2.0 * std::sqrt(2.0)); }

Game infinite_partial_game(double delta) {
  check_delta(delta);
  auto machine = std::make_shared<const PartialCommitmentMachine>(
      std::make_shared<const StationaryRules>(delta));
  Game g;
  g.name = "infinite-partial";
  g.seller = std::make_shared<PartialCommitmentSeller>(machine);
  g.buyer = std::make_shared<PartialCommitmentBuyer>(machine);
  g.prior = ValueDistribution::uniform(0.0, 1.0);
  g.regime = Regime::discounted(delta);
  g.partial_commitment = true;
  return g;
}

Game infinite_zero_game(double delta) {
  check_delta(delta);
  if (delta > 0.5) {
    throw std::domain_error(
        "zero-commitment equilibrium is only defined for delta in (0, 0.5], "
        "got " + format_number(delta));
  }
  Game g;
  g.name = "infinite-zero";
  g.seller = std::make_shared<ZeroCommitmentSeller>();
  g.buyer = std::make_shared<ZeroCommitmentBuyer>();
  g.prior = ValueDistribution::uniform(0.0, 1.0);
  g.regime = Regime::discounted(delta);
  return g;
}

double seller_step_zero(bool accepted_positive_price,
                        bool rejected_zero_price) {
  return accepted_positive_price || rejected_zero_price ? 1.0 : 0.0;
}

Decision buyer_decide_zero(double value, double price,
                           bool accepted_positive_price,
                           bool rejected_zero_price, double delta) {
  if (!(delta > 0.0 && delta <= 0.5)) {
    throw std::domain_error(
        "zero-commitment equilibrium is only defined for delta in (0, 0.5]");
  }
  if (price <= 0.0) return Decision::kAccept;
  const bool punished = accepted_positive_price || rejected_zero_price;
  return punished && value >= price ? Decision::kAccept : Decision::kReject;
}

}  // namespace rsales
