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

#include "repeated_sales/finite_horizon.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "repeated_sales/numerics.hpp"
#include "repeated_sales/partial_commitment.hpp"
#include "repeated_sales/two_round.hpp"

namespace rsales {
namespace {

void check_rounds(int n) {
  if (n < 1) throw std::invalid_argument("number of rounds must be >= 1");
}

// m - u_{m-1} written as 1 + (m-1) p_{m-1}, which avoids cancelling two
// numbers of size m.
double waiting_discount(const std::vector<FiniteRecursionRow>& rows, int m) {
  if (m == 1) return 1.0;
  return 1.0 + (m - 1) * rows[m - 2].price;
}

class PowerLawRules : public PartialCommitmentRules {
 public:
  PowerLawRules(int n, int k)
      : n_(n), k_(k), rows_(solve_partial_power_law(n, k)) {}

  std::string name() const override {
    return "finite partial power_law(" + std::to_string(k_) +
           "), n=" + std::to_string(n_);
  }
  bool stationary() const override { return false; }

  double equilibrium_price(int round, double belief_end) const override {
    const int m = n_ - round;
    if (m < 1) return top();
    return rows_[m - 1].price * belief_end;
  }
  double indifference_threshold(int round, double price) const override {
    const int m = std::max(1, n_ - round);
    return m * price / waiting_discount(rows_, m);
  }
  double overpriced_threshold(int round, double price,
                              double belief_end) const override {
    const int m = std::max(1, n_ - round);
    const double next_price = m >= 2 ? rows_[m - 2].price : 0.0;
    return m * price - (m - 1) * next_price * belief_end;
  }

 private:
  int n_;
  int k_;
  std::vector<FiniteRecursionRow> rows_;
};

// Prices low until the last round, which posts the monopoly price. Any
// non-final price above low is refused by every type.
class LowPriceMachine {
 public:
  LowPriceMachine(const ValueDistribution& dist, int n)
      : dist_(dist), n_(n), monopoly_(monopoly_price(dist).price) {}

  int n() const { return n_; }
  double low() const { return dist_.support_low(); }
  double high() const { return dist_.support_high(); }
  double monopoly() const { return monopoly_; }

  PlayState initial() const {
    PlayState s;
    s.belief_low = low();
    s.belief_high = high();
    return s;
  }

  double cutoff(const PlayState& s, double price) const {
    if (s.point_mass || s.round >= n_ - 1) return price;
    return price <= low() ? low() : kInfinity;
  }

  PlayState update(PlayState s, double price, Decision d) const {
    const double cut = cutoff(s, price);
    ++s.round;
    if (s.point_mass) return s;
    const bool accepted = d == Decision::kAccept;
    const double a = accepted ? std::max(s.belief_low, cut) : s.belief_low;
    const double b = accepted ? s.belief_high : std::min(s.belief_high, cut);
    if (!(b > a) || !(dist_.mass(a, b) > 0.0)) {
      s.point_mass = true;
      s.belief_low = s.belief_high = high();
    } else {
      s.belief_low = a;
      s.belief_high = b;
    }
    return s;
  }

 private:
  ValueDistribution dist_;
  int n_;
  double monopoly_;
};

class LowPriceSeller : public SellerStrategy {
 public:
  explicit LowPriceSeller(std::shared_ptr<const LowPriceMachine> m)
      : m_(std::move(m)) {}
  std::string name() const override { return "low-price seller"; }
  PlayState initial_state() const override { return m_->initial(); }
  double price(const PlayState& s) const override {
    if (s.point_mass) return m_->high();
    return s.round >= m_->n() - 1 ? m_->monopoly() : m_->low();
  }
  PlayState update(const PlayState& s, double price,
                   Decision d) const override {
    return m_->update(s, price, d);
  }

 private:
  std::shared_ptr<const LowPriceMachine> m_;
};

class LowPriceBuyer : public BuyerStrategy {
 public:
  explicit LowPriceBuyer(std::shared_ptr<const LowPriceMachine> m)
      : m_(std::move(m)) {}
  std::string name() const override { return "low-price buyer"; }
  PlayState initial_state() const override { return m_->initial(); }
  double threshold(const PlayState& s, double price) const override {
    return m_->cutoff(s, price);
  }
  PlayState update(const PlayState& s, double price,
                   Decision d) const override {
    return m_->update(s, price, d);
  }

 private:
  std::shared_ptr<const LowPriceMachine> m_;
};

}  // namespace

std::vector<FiniteRecursionRow> solve_partial_uniform(int n) {
  check_rounds(n);
  std::vector<FiniteRecursionRow> rows;
  rows.reserve(static_cast<std::size_t>(n));
  rows.push_back({1, 0.5, 0.5, 0.25, 0.5});
  for (int k = 2; k <= n; ++k) {
    const double b = waiting_discount(rows, k);
    const double d = b - rows.back().revenue;
    FiniteRecursionRow row;
    row.n = k;
    row.threshold = b / (2.0 * d);
    row.price = b * b / (2.0 * k * d);
    row.revenue = b * b / (4.0 * d);
    row.top_utility = k * (1.0 - row.price);
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> scalar_revenue_recursion(int n) {
  check_rounds(n);
  std::vector<double> revenue(static_cast<std::size_t>(n));
  double v = 1.25;
  revenue[0] = v - 1.0;
  for (int k = 2; k <= n; ++k) {
    v += 1.0 / (4.0 * v);
    revenue[k - 1] = v - 1.0;
  }
  return revenue;
}

std::vector<FiniteRecursionRow> solve_partial_power_law(int n, int k) {
  check_rounds(n);
  if (k < 0) throw std::invalid_argument("power law exponent must be >= 0");
  std::vector<FiniteRecursionRow> rows;
  rows.reserve(static_cast<std::size_t>(n));
  const double kk = k;
  for (int m = 1; m <= n; ++m) {
    const double a = m == 1 ? 0.0 : rows.back().revenue;
    const double b = waiting_discount(rows, m);
    auto revenue = [&](double t) {
      const double tk1 = std::pow(t, kk + 1.0);
      return a * tk1 * t + (1.0 - tk1) * t * b;
    };
    auto slope = [&](double t) {
      return b + (kk + 2.0) * (a - b) * std::pow(t, kk + 1.0);
    };
    const ArgMax best = grid_derivative_argmax(revenue, slope, 0.0, 1.0);
    FiniteRecursionRow row;
    row.n = m;
    row.threshold = best.x;
    row.price = best.x * b / m;
    row.revenue = best.value;
    row.top_utility = m * (1.0 - row.price);
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> asymptotic_gaps(int n) {
  const std::vector<double> revenue = scalar_revenue_recursion(n);
  std::vector<double> gaps(revenue.size());
  for (std::size_t i = 0; i < revenue.size(); ++i) {
    const double m = static_cast<double>(i + 1);
    const double v = revenue[i] + 1.0;
    gaps[i] = v * v - m / 2.0 - std::log(m) / 8.0;
  }
  return gaps;
}

double asymptotic_gap(int n) { return asymptotic_gaps(n).back(); }

ThresholdExistenceReport threshold_pbe_exists(const ValueDistribution& dist,
                                              int n) {
  check_rounds(n);
  ThresholdExistenceReport report;
  report.n = n;
  if (n == 1) {
    report.exists = true;
    report.two_round_p1 = std::nan("");
    report.equilibrium_prices = {monopoly_price(dist).price};
    return report;
  }
  const TwoRoundEquilibrium two = solve_two_round(dist);
  report.two_round_p1 = two.p1;
  report.lower_support_tied = two.lower_support_tied;
  if (n == 2) {
    report.exists = true;
    report.equilibrium_prices = {two.p1, two.p20};
  } else {
    report.exists = two.p1_equals_lower_support;
    if (report.exists) {
      report.equilibrium_prices.assign(static_cast<std::size_t>(n - 1),
                                       dist.support_low());
      report.equilibrium_prices.push_back(two.monopoly_price);
    }
  }
  return report;
}

Game finite_partial_game(int n, int k) {
  check_rounds(n);
  auto machine = std::make_shared<const PartialCommitmentMachine>(
      std::make_shared<const PowerLawRules>(n, k));
  Game g;
  g.name = "finite-partial";
  g.seller = std::make_shared<PartialCommitmentSeller>(machine);
  g.buyer = std::make_shared<PartialCommitmentBuyer>(machine);
  g.prior = ValueDistribution::power_law(k);
  g.regime = Regime::fixed_horizon(n);
  g.partial_commitment = true;
  return g;
}

Game finite_no_commitment_game(const ValueDistribution& dist, int n) {
  const ThresholdExistenceReport report = threshold_pbe_exists(dist, n);
  if (n > 2 && !report.exists) {
    throw std::domain_error(
        "no pure threshold equilibrium: the two-round first price " +
        format_number(report.two_round_p1) + " exceeds the lowest value " +
        format_number(dist.support_low()));
  }
  if (n == 2) {
    throw std::domain_error("use the two-round game for n = 2");
  }
  auto machine = std::make_shared<const LowPriceMachine>(dist, n);
  Game g;
  g.name = "finite-no-commitment";
  g.seller = std::make_shared<LowPriceSeller>(machine);
  g.buyer = std::make_shared<LowPriceBuyer>(machine);
  g.prior = dist;
  g.regime = Regime::fixed_horizon(n);
  return g;
}

}  // namespace rsales
