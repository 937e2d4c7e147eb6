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


#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "repeated_sales/finite_horizon.hpp"
#include "repeated_sales/infinite_horizon.hpp"
#include "repeated_sales/philox.hpp"
#include "repeated_sales/simulator.hpp"
#include "repeated_sales/two_round.hpp"

using namespace rsales;

namespace {

class FixedSeller : public SellerStrategy {
 public:
  explicit FixedSeller(double price) : price_(price) {}
  std::string name() const override { return "fixed seller"; }
  PlayState initial_state() const override { return {}; }
  double price(const PlayState&) const override { return price_; }
  PlayState update(const PlayState& s, double, Decision) const override {
    PlayState n = s;
    ++n.round;
    return n;
  }

 private:
  double price_;
};

class MyopicBuyer : public BuyerStrategy {
 public:
  std::string name() const override { return "myopic buyer"; }
  PlayState initial_state() const override { return {}; }
  double threshold(const PlayState&, double price) const override {
    return price;
  }
  PlayState update(const PlayState& s, double, Decision) const override {
    PlayState n = s;
    ++n.round;
    return n;
  }
};

Game fixed_price_game(double price, Regime regime) {
  Game g;
  g.name = "fixed";
  g.seller = std::make_shared<FixedSeller>(price);
  g.buyer = std::make_shared<MyopicBuyer>();
  g.regime = regime;
  return g;
}

void check_transcript(const Transcript& t, const Regime& regime) {
  double revenue = 0.0, utility = 0.0;
  for (std::size_t i = 0; i < t.rounds.size(); ++i) {
    const auto& r = t.rounds[i];
    CHECK(r.round == static_cast<int>(i) + 1);
    const double w = regime.infinite()
                         ? std::pow(1.0 - regime.delta(), static_cast<double>(i))
                         : 1.0;
    CHECK(r.weight == doctest::Approx(w).epsilon(1e-12));
    if (r.decision == Decision::kAccept) {
      revenue += r.weight * r.price;
      utility += r.weight * (t.value - r.price);
    }
  }
  CHECK(t.revenue == doctest::Approx(revenue).epsilon(1e-12));
  CHECK(t.buyer_utility == doctest::Approx(utility).epsilon(1e-12));
  CHECK(t.buyer_utility >= -1e-12);
}

}  // namespace

TEST_CASE("playout examples") {
  const double delta = 0.5;
  const auto eq = infinite_equilibrium(delta);
  const Game g = infinite_partial_game(delta);

  auto t = playout(g, 1.0);
  REQUIRE_FALSE(t.rounds.empty());
  CHECK(t.rounds[0].decision == Decision::kAccept);
  CHECK(t.rounds[0].price == doctest::Approx(eq.price).epsilon(1e-12));
  CHECK(std::abs(t.revenue - eq.price / delta) <= g.regime.tail_bound(1.0));
  CHECK(t.rounds.size() == static_cast<std::size_t>(g.regime.rounds()));

  t = playout(g, 0.0);
  CHECK(t.revenue == 0.0);
  for (std::size_t i = 0; i < 20; ++i) {
    CHECK(t.rounds[i].decision == Decision::kReject);
    CHECK(t.rounds[i].price ==
          doctest::Approx(eq.price * std::pow(eq.threshold, i)).epsilon(1e-9));
  }

  const Game two = two_round_game(ValueDistribution::uniform(0.0, 1.0));
  t = playout(two, 0.7);
  REQUIRE(t.rounds.size() == 2);
  CHECK(t.rounds[0].decision == Decision::kAccept);
  CHECK(t.rounds[1].decision == Decision::kAccept);
  CHECK(t.revenue == doctest::Approx(0.9).epsilon(1e-6));
}

TEST_CASE("transcript invariants and monotone revenue") {
  std::vector<Game> games = {infinite_partial_game(0.3),
                             infinite_partial_game(0.05),
                             infinite_zero_game(0.4),
                             finite_partial_game(4, 1),
                             two_round_game(ValueDistribution::power_law(2))};
  for (const auto& g : games) {
    CAPTURE(g.name);
    double previous = -1.0;
    for (int i = 0; i <= 100; ++i) {
      const double v = i / 100.0;
      const auto t = playout(g, v);
      check_transcript(t, g.regime);
      CHECK(t.revenue >= previous - 1e-12);
      previous = t.revenue;
    }
  }
}

TEST_CASE("negative prices are rejected") {
  const Game g = fixed_price_game(-0.1, Regime::fixed_horizon(3));
  CHECK_THROWS_WITH_AS(playout(g, 0.5), doctest::Contains("invalid price"),
                       std::domain_error);
  SimulationConfig c;
  c.regime = g.regime;
  CHECK_THROWS_WITH_AS(expected_revenue(g, c), doctest::Contains("invalid price"),
                       std::domain_error);
}

TEST_CASE("seeded playouts are reproducible") {
  const Game g = infinite_partial_game(0.2);
  const Regime r = Regime::geometric_stopping(0.2);
  for (double v : {0.1, 0.5, 0.95}) {
    PhiloxStream a(42, 7), b(42, 7);
    const auto ta = playout(g, v, r, &a);
    const auto tb = playout(g, v, r, &b);
    REQUIRE(ta.rounds.size() == tb.rounds.size());
    for (std::size_t i = 0; i < ta.rounds.size(); ++i) {
      CHECK(ta.rounds[i].price == tb.rounds[i].price);
      CHECK(ta.rounds[i].decision == tb.rounds[i].decision);
    }
    CHECK(ta.revenue == tb.revenue);
  }
  SimulationConfig c;
  c.regime = Regime::geometric_stopping(0.2);
  c.method = Method::kMonteCarlo;
  c.samples = 20000;
  c.seed = 99;
  const auto e1 = expected_revenue(g, c);
  const auto e2 = expected_revenue(g, c);
  CHECK(e1.value == e2.value);
  CHECK(e1.error == e2.error);
  CHECK_THROWS_WITH_AS(playout(g, 0.5, r), "geometric stopping needs a random stream",
                       std::invalid_argument);
}

TEST_CASE("quadrature examples") {
  SimulationConfig c;
  c.regime = Regime::fixed_horizon(2);
  const auto two = expected_revenue(
      two_round_game(ValueDistribution::uniform(0.0, 1.0)), c);
  CHECK(std::abs(two.value - 0.45) <= 1e-6);

  for (double delta : {0.05, 0.1, 0.3, 0.5, 1.0}) {
    const Game g = infinite_partial_game(delta);
    c.regime = g.regime;
    const auto ev = expected_revenue(g, c);
    const auto eq = infinite_equilibrium(delta);
    CAPTURE(delta);
    CHECK(std::abs(ev.value - eq.revenue) <= 1e-9);
    CHECK(ev.error <= 1e-6);
    // R = (1 - delta) R t^2 + (1 - t) p / delta with R the computed value.
    const double t = eq.threshold, p = eq.price;
    CHECK(std::abs(ev.value - (1.0 - delta) * ev.value * t * t -
                   (1.0 - t) * p / delta) <= 1e-6);
  }

  // One fixed price over three rounds: 3 p (1 - p) for uniform(0, 1).
  const Game fixed = fixed_price_game(0.4, Regime::fixed_horizon(3));
  c.regime = fixed.regime;
  CHECK(expected_revenue(fixed, c).value ==
        doctest::Approx(3 * 0.4 * 0.6).epsilon(1e-12));
}

TEST_CASE("Monte Carlo agrees with the closed form") {
  const double delta = 0.1;
  const Game g = infinite_partial_game(delta);
  SimulationConfig c;
  c.regime = g.regime;
  c.method = Method::kMonteCarlo;
  c.samples = 200000;
  c.seed = 2026;
  const auto ev = expected_revenue(g, c);
  CHECK(ev.error > 0.0);
  CHECK(std::abs(ev.value - infinite_equilibrium(delta).revenue) <=
        3.0 * ev.error);
}

TEST_CASE("zero-commitment revenue is exactly zero") {
  const Game g = infinite_zero_game(0.4);
  SimulationConfig c;
  c.regime = g.regime;
  CHECK(expected_revenue(g, c).value == 0.0);
  const auto report = geometric_equivalence_check(infinite_zero_game(0.5), 0.5,
                                                  10000, 1);
  CHECK(report.monte_carlo == 0.0);
  CHECK(report.discounted == 0.0);
  CHECK(report.pass);
}

TEST_CASE("geometric stopping matches discounting") {
  const auto report =
      geometric_equivalence_check(infinite_partial_game(0.2), 0.2, 200000, 7);
  CHECK(report.standard_error > 0.0);
  CHECK(report.difference <= 4.0 * report.standard_error);
  CHECK(report.pass);
  CHECK(report.discounted ==
        doctest::Approx(infinite_equilibrium(0.2).revenue).epsilon(1e-9));

  // delta = 1 stops after the first round.
  const auto one =
      geometric_equivalence_check(infinite_partial_game(1.0), 1.0, 20000, 3);
  CHECK(one.discounted == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(std::abs(one.monte_carlo - 0.25) <= 4.0 * one.standard_error);
}

TEST_CASE("truncation length is the smallest meeting the tolerance") {
  for (double delta : {0.01, 0.1, 0.3, 0.5, 0.9}) {
    for (double tol : {1e-6, 1e-10}) {
      const Regime r = Regime::discounted(delta, 1.0, tol);
      const int n = r.rounds();
      CAPTURE(delta);
      CHECK(std::pow(1.0 - delta, n) / delta <= tol / 10.0 * (1.0 + 1e-12));
      CHECK(std::pow(1.0 - delta, n - 1) / delta > tol / 10.0);
      CHECK(r.tail_bound(1.0) == doctest::Approx(std::pow(1.0 - delta, n) / delta));
    }
  }
  CHECK(Regime::discounted(1.0).rounds() == 1);
  CHECK_THROWS_AS(Regime::discounted(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Regime::fixed_horizon(0), std::invalid_argument);
}

TEST_CASE("exact expectation walk agrees with quadrature") {
  for (double delta : {0.1, 0.5}) {
    const Game g = infinite_partial_game(delta);
    const auto tree = expected_revenue_tree(g, g.regime, initial_node(g),
                                            {0.0, 1.0, false});
    CHECK(std::abs(tree.revenue - infinite_equilibrium(delta).revenue) <=
          1e-9 + tree.dropped);
  }
  const Game two = two_round_game(ValueDistribution::uniform(0.0, 1.0));
  const auto tree = expected_revenue_tree(two, two.regime, initial_node(two),
                                          {0.0, 1.0, false});
  CHECK(tree.revenue == doctest::Approx(0.45).epsilon(1e-9));
  CHECK(tree.dropped == 0.0);
}
