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

#include "repeated_sales/two_round.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

namespace rsales {
namespace {

class ThresholdInverter {
 public:
  ThresholdInverter(const ValueDistribution& dist, double monopoly)
      : dist_(dist),
        low_(dist.support_low()),
        high_(dist.support_high()),
        monopoly_(monopoly),
        match_tol_(1e-8 * std::max(1.0, high_)) {}

  double monopoly() const { return monopoly_; }

  // Monopoly price of the prior restricted to [low, t].
  double restricted_monopoly(double t) const {
    if (t <= low_) return low_;
    if (t >= high_) return monopoly_;
    try {
      return monopoly_price(dist_.restrict(low_, t)).price;
    } catch (const std::domain_error&) {
      return low_;
    }
  }

  double operator()(double x) const {
    if (x <= low_) return low_;
    if (x > monopoly_ + match_tol_) {
      throw std::domain_error(
          "threshold inversion failed: price " + format_number(x) +
          " is outside the achievable range [" + format_number(low_) + ", " +
          format_number(monopoly_) + "]");
    }
    x = std::min(x, monopoly_);
    // First-order condition of p (F(t) - F(p)) at p = x.
    const double target = dist_.cdf(x) + x * dist_.pdf(x);
    const double guess = target >= 1.0 ? high_ : dist_.quantile(target);
    if (guess > low_ &&
        std::abs(restricted_monopoly(guess) - x) <= match_tol_) {
      return guess;
    }
    return bisect(x);
  }

 private:
  double bisect(double x) const {
    double lo = low_;
    double hi = high_;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, high_);
         ++it) {
      const double mid = 0.5 * (lo + hi);
      (restricted_monopoly(mid) >= x - match_tol_ ? hi : lo) = mid;
    }
    const double reached = restricted_monopoly(hi);
    if (std::abs(reached - x) > 1e2 * match_tol_) {
      throw std::domain_error(
          "threshold inversion failed: no t in (" + format_number(low_) +
          ", " + format_number(high_) + "] has monopoly price " +
          format_number(x) + "; restricted monopoly prices jump from " +
          format_number(restricted_monopoly(lo)) + " to " +
          format_number(reached));
    }
    return hi;
  }

  const ValueDistribution& dist_;
  double low_;
  double high_;
  double monopoly_;
  double match_tol_;
};

double upper_monopoly(const ValueDistribution& dist, double t) {
  if (t >= dist.support_high()) return dist.support_high();
  try {
    return monopoly_price(dist.restrict(t, dist.support_high())).price;
  } catch (const std::domain_error&) {
    return dist.support_high();
  }
}

// Belief machine shared by both players.
class TwoRoundMachine {
 public:
  explicit TwoRoundMachine(const ValueDistribution& dist)
      : dist_(dist),
        eq_(solve_two_round(dist)),
        invert_(dist_, eq_.monopoly_price) {}

  const ValueDistribution& dist() const { return dist_; }
  const TwoRoundEquilibrium& eq() const { return eq_; }

  bool below_monopoly(double price) const {
    return price <= eq_.monopoly_price + 1e-12 * std::max(1.0, high());
  }
  double threshold(double price) const {
    if (price == eq_.p1) return eq_.t1;
    return invert_(price);
  }
  double accept_price(double p1) const {
    if (p1 == eq_.p1) return eq_.p21;
    return upper_monopoly(dist_, threshold(p1));
  }
  double low() const { return dist_.support_low(); }
  double high() const { return dist_.support_high(); }

  PlayState initial() const {
    PlayState s;
    s.belief_low = low();
    s.belief_high = high();
    return s;
  }

  PlayState update(PlayState s, double price, Decision d) const {
    const bool accepted = d == Decision::kAccept;
    if (s.round == 0) s.last_price = price;
    if (accepted) {
      s.ever_accepted = true;
      s.min_accepted_price = std::min(s.min_accepted_price, price);
    }
    const int round = s.round++;
    if (s.point_mass) return s;
    // Buyer types accept iff v >= cut.
    double cut = price;
    if (round == 0) cut = below_monopoly(price) ? threshold(price) : kInfinity;
    const double a = accepted ? std::max(s.belief_low, cut) : s.belief_low;
    const double b = accepted ? s.belief_high : std::min(s.belief_high, cut);
    if (!(b > a) || !(dist_.mass(a, b) > 0.0)) {
      s.point_mass = true;
      s.belief_low = s.belief_high = high();
      return s;
    }
    s.belief_low = a;
    s.belief_high = b;
    return s;
  }

 private:
  ValueDistribution dist_;
  TwoRoundEquilibrium eq_;
  ThresholdInverter invert_;
};

class TwoRoundSeller : public SellerStrategy {
 public:
  explicit TwoRoundSeller(std::shared_ptr<const TwoRoundMachine> m)
      : m_(std::move(m)) {}
  std::string name() const override { return "two-round seller"; }
  PlayState initial_state() const override { return m_->initial(); }
  double price(const PlayState& s) const override {
    if (s.round == 0) return m_->eq().p1;
    if (s.point_mass) return m_->high();
    const double p1 = s.last_price;
    if (m_->below_monopoly(p1)) {
      return s.ever_accepted ? m_->accept_price(p1) : p1;
    }
    return s.ever_accepted ? m_->high() : m_->eq().monopoly_price;
  }
  PlayState update(const PlayState& s, double price,
                   Decision d) const override {
    return m_->update(s, price, d);
  }

 private:
  std::shared_ptr<const TwoRoundMachine> m_;
};

class TwoRoundBuyer : public BuyerStrategy {
 public:
  explicit TwoRoundBuyer(std::shared_ptr<const TwoRoundMachine> m)
      : m_(std::move(m)) {}
  std::string name() const override { return "two-round buyer"; }
  PlayState initial_state() const override { return m_->initial(); }
  double threshold(const PlayState& s, double price) const override {
    if (s.round > 0) return price;
    return m_->below_monopoly(price) ? m_->threshold(price) : kInfinity;
  }
  PlayState update(const PlayState& s, double price,
                   Decision d) const override {
    return m_->update(s, price, d);
  }

 private:
  std::shared_ptr<const TwoRoundMachine> m_;
};

}  // namespace

double threshold_for_price(const ValueDistribution& dist, double price) {
  return ThresholdInverter(dist, monopoly_price(dist).price)(price);
}

TwoRoundEquilibrium solve_two_round(const ValueDistribution& dist,
                                    int grid_points) {
  const double low = dist.support_low();
  const double high = dist.support_high();
  const MonopolyPrice mono = monopoly_price(dist);
  const ThresholdInverter invert(dist, mono.price);

  // Round-1 objective: R(z) + R(monopoly price of [t(z), high]).
  auto objective = [&](double z) {
    const double t = invert(z);
    const double first = revenue_curve(dist, z);
    if (t >= high) return first;
    return first + revenue_curve(dist, upper_monopoly(dist, t));
  };

  TwoRoundEquilibrium eq;
  eq.monopoly_price = mono.price;
  eq.monopoly_revenue = mono.revenue;
  const ArgMax best =
      grid_golden_argmax(objective, low, mono.price, grid_points);
  eq.p1 = best.x;
  eq.t1 = invert(eq.p1);
  eq.p20 = eq.p1;
  eq.p21 = upper_monopoly(dist, eq.t1);
  eq.revenue = revenue_curve(dist, eq.p20) + revenue_curve(dist, eq.p21);
  const double scale = std::max(1.0, high);
  eq.p1_equals_lower_support = std::abs(eq.p1 - low) <= 1e-9 * scale;
  eq.lower_support_in_argmax = objective(low) >= best.value - 1e-12 * scale;
  if (eq.lower_support_in_argmax && mono.price > low) {
    const double next = low + (mono.price - low) / (grid_points - 1);
    const ArgMax above =
        grid_golden_argmax(objective, next, mono.price, grid_points);
    eq.lower_support_tied = above.value >= best.value - 1e-12 * scale;
  }
  const double step = 1e-6 * (high - low);
  eq.threshold_plateau =
      eq.t1 + step < high &&
      std::abs(invert.restricted_monopoly(eq.t1 + step) - eq.p1) <=
          1e-9 * scale;
  return eq;
}

Decision buyer_decision_two_round(double value, int round, double price,
                                  const ValueDistribution& dist) {
  if (round == 2) return value >= price ? Decision::kAccept : Decision::kReject;
  if (round != 1) throw std::invalid_argument("round must be 1 or 2");
  const MonopolyPrice mono = monopoly_price(dist);
  if (price > mono.price) return Decision::kReject;
  return value >= ThresholdInverter(dist, mono.price)(price)
             ? Decision::kAccept
             : Decision::kReject;
}

Game two_round_game(const ValueDistribution& dist) {
  auto machine = std::make_shared<const TwoRoundMachine>(dist);
  Game g;
  g.name = "two-round";
  g.seller = std::make_shared<TwoRoundSeller>(machine);
  g.buyer = std::make_shared<TwoRoundBuyer>(machine);
  g.prior = dist;
  g.regime = Regime::fixed_horizon(2);
  return g;
}

}  // namespace rsales
