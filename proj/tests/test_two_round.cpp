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
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "repeated_sales/simulator.hpp"
#include "repeated_sales/two_round.hpp"

using namespace rsales;

namespace {

std::vector<ValueDistribution> test_distributions() {
  return {ValueDistribution::uniform(0.0, 1.0),
          ValueDistribution::uniform(0.2, 1.0),
          ValueDistribution::uniform(0.0, 2.0),
          ValueDistribution::power_law(1),
          ValueDistribution::power_law(3),
          ValueDistribution::piecewise_linear_cdf(
              {{0.1, 0.0}, {0.5, 0.2}, {0.8, 0.9}, {1.0, 1.0}})};
}

}  // namespace

TEST_CASE("threshold_for_price examples") {
  const auto u = ValueDistribution::uniform(0.0, 1.0);
  CHECK(threshold_for_price(u, 0.3) == doctest::Approx(0.6).epsilon(1e-9));
  CHECK(threshold_for_price(u, 0.0) == 0.0);
  const auto p = ValueDistribution::power_law(1);
  const double t = threshold_for_price(p, 0.3);
  CHECK(t == doctest::Approx(0.3 * std::sqrt(3.0)).epsilon(1e-8));
  // Independent bisection on monopoly_price(restrict(F, 0, t)) = 0.3.
  double a = 0.3, b = 1.0;
  for (int i = 0; i < 60; ++i) {
    const double m = 0.5 * (a + b);
    (monopoly_price(p.restrict(0.0, m)).price < 0.3 ? a : b) = m;
  }
  CHECK(std::abs(t - 0.5 * (a + b)) < 1e-8);
  CHECK_THROWS_WITH_AS(threshold_for_price(u, 0.7),
                       doctest::Contains("threshold inversion failed"),
                       std::domain_error);
}

TEST_CASE("solve_two_round examples") {
  auto eq = solve_two_round(ValueDistribution::uniform(0.0, 1.0));
  CHECK(eq.p1 == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(eq.t1 == doctest::Approx(0.6).epsilon(1e-6));
  CHECK(eq.p20 == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(eq.p21 == doctest::Approx(0.6).epsilon(1e-6));
  CHECK(eq.revenue == doctest::Approx(0.45).epsilon(1e-9));
  CHECK_FALSE(eq.p1_equals_lower_support);

  eq = solve_two_round(ValueDistribution::uniform(0.0, 2.0));
  CHECK(eq.p1 == doctest::Approx(0.6).epsilon(1e-6));
  CHECK(eq.t1 == doctest::Approx(1.2).epsilon(1e-6));
  CHECK(eq.revenue == doctest::Approx(0.9).epsilon(1e-9));

  eq = solve_two_round(ValueDistribution::uniform(0.5, 1.0));
  CHECK(eq.p1 == 0.5);
  CHECK(eq.p1_equals_lower_support);
  CHECK(eq.revenue == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("uniform(0, 1) objective matches a brute-force grid") {
  // With t(z) = 2z and p21 = max(2z, 1/2): R(z) + R(p21) on [0, 1/2].
  double best = -1.0, best_z = 0.0;
  for (int i = 0; i <= 1000000; ++i) {
    const double z = 0.5 * i / 1000000.0;
    const double q = std::max(2.0 * z, 0.5);
    const double r = z * (1.0 - z) + q * (1.0 - q);
    if (r > best) {
      best = r;
      best_z = z;
    }
  }
  const auto eq = solve_two_round(ValueDistribution::uniform(0.0, 1.0));
  CHECK(std::abs(eq.p1 - best_z) < 1e-6);
  CHECK(std::abs(eq.revenue - best) < 1e-12);
}

TEST_CASE("uniform(1/2, 1) objective matches a brute-force grid") {
  // Every z <= 1/2 sells to all types in round 1; above 1/2 the seller is
  // above the monopoly price, which the solver excludes.
  const auto d = ValueDistribution::uniform(0.5, 1.0);
  double best = -1.0;
  for (int i = 0; i <= 100000; ++i) {
    const double z = 0.5 * i / 100000.0;
    best = std::max(best, z + monopoly_price(d).revenue);
  }
  CHECK(solve_two_round(d).revenue == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("unreachable round-1 prices propagate the inversion failure") {
  // Irregular prior: R peaks at 4/11 on the lower segment and higher at 1/2 on
  // the upper one, so restricted monopoly prices jump over part of [0, 1/2].
  const auto irregular = ValueDistribution::piecewise_linear_cdf(
      {{0.0, 0.0}, {0.4, 0.55}, {1.0, 1.0}});
  CHECK(monopoly_price(irregular).price == doctest::Approx(0.5));
  CHECK_THROWS_WITH_AS(solve_two_round(irregular),
                       doctest::Contains("threshold inversion failed"),
                       std::domain_error);
}

TEST_CASE("buyer_decision_two_round examples") {
  const auto u = ValueDistribution::uniform(0.0, 1.0);
  CHECK(buyer_decision_two_round(0.7, 1, 0.3, u) == Decision::kAccept);
  CHECK(buyer_decision_two_round(0.59, 1, 0.3, u) == Decision::kReject);
  CHECK(buyer_decision_two_round(1.0, 1, 0.6, u) == Decision::kReject);
  CHECK(buyer_decision_two_round(0.25, 2, 0.25, u) == Decision::kAccept);
  CHECK(buyer_decision_two_round(0.2499, 2, 0.25, u) == Decision::kReject);
}

TEST_CASE("two-round invariants across distributions") {
  for (const auto& d : test_distributions()) {
    CAPTURE(d.to_json());
    const auto eq = solve_two_round(d);
    const auto mono = monopoly_price(d);
    CHECK(eq.p20 <= eq.p1 + 1e-12);
    CHECK(eq.p1 <= eq.p21 + 1e-12);
    CHECK(eq.t1 < d.support_high());
    CHECK(eq.revenue ==
          doctest::Approx(revenue_curve(d, eq.p20) + revenue_curve(d, eq.p21))
              .epsilon(1e-12));
    CHECK(eq.revenue >= mono.revenue - 1e-12);
    CHECK(eq.revenue <= 2.0 * mono.revenue + 1e-12);

    // The threshold type is indifferent between buying twice and waiting.
    const double v = eq.t1;
    const double accept = (v - eq.p1) + std::max(0.0, v - eq.p21);
    const double reject = std::max(0.0, v - eq.p20);
    if (eq.t1 > d.support_low()) CHECK(std::abs(accept - reject) < 1e-8);

    // Replaying the strategies reproduces the revenue.
    SimulationConfig c;
    c.regime = Regime::fixed_horizon(2);
    const auto ev = expected_revenue(two_round_game(d), c);
    CHECK(std::abs(ev.value - eq.revenue) < 1e-6);
  }
}

TEST_CASE("two-round game strategies follow the solution") {
  const auto d = ValueDistribution::uniform(0.0, 1.0);
  const Game g = two_round_game(d);
  auto t = playout(g, 0.7);
  REQUIRE(t.rounds.size() == 2);
  CHECK(t.rounds[0].price == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(t.rounds[0].decision == Decision::kAccept);
  CHECK(t.rounds[1].price == doctest::Approx(0.6).epsilon(1e-6));
  CHECK(t.rounds[1].decision == Decision::kAccept);
  CHECK(t.revenue == doctest::Approx(0.9).epsilon(1e-6));

  t = playout(g, 0.4);
  CHECK(t.rounds[0].decision == Decision::kReject);
  CHECK(t.rounds[1].price == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(t.rounds[1].decision == Decision::kAccept);

  // Round-1 price above the monopoly price: everyone waits for p*.
  GameNode n = advance(g, initial_node(g), 0.7, Decision::kReject);
  CHECK(posted_price(g, n) == doctest::Approx(0.5));
  CHECK(g.buyer->threshold(initial_node(g).buyer, 0.7) == kInfinity);
  // Zero-probability acceptance above p*: point mass at the top.
  n = advance(g, initial_node(g), 0.7, Decision::kAccept);
  CHECK(n.seller.point_mass);
  CHECK(posted_price(g, n) == 1.0);
}
