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

#ifndef REPEATED_SALES_SIMULATOR_HPP_
#define REPEATED_SALES_SIMULATOR_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "repeated_sales/philox.hpp"
#include "repeated_sales/strategy.hpp"

namespace rsales {

// Both players' memories at the start of a round.
struct GameNode {
  PlayState seller;
  PlayState buyer;
  int round = 0;
};

GameNode initial_node(const Game& game);
// The seller's price at `node`; throws "invalid price" if negative or NaN.
double posted_price(const Game& game, const GameNode& node);
// Both players observe (price, decision) and update.
GameNode advance(const Game& game, const GameNode& node, double price,
                 Decision decision);

struct RoundRecord {
  int round = 1;  // 1-based
  double price = 0.0;
  Decision decision = Decision::kReject;
  double weight = 1.0;
};

struct Transcript {
  double value = 0.0;
  std::vector<RoundRecord> rounds;
  double revenue = 0.0;
  double buyer_utility = 0.0;
};

// Plays the equilibrium from the start. Discounted regimes stop after the
// truncation length; geometric stopping draws survival coins from `rng`
// (required in that regime) and gives every played round weight 1.
Transcript playout(const Game& game, double value, const Regime& regime,
                   PhiloxStream* rng = nullptr);
inline Transcript playout(const Game& game, double value) {
  return playout(game, value, game.regime);
}

struct Payoff {
  double revenue = 0.0;
  double utility = 0.0;
};

// Discounted payoff of a buyer with `value` from `node` on, following the
// equilibrium. Stationary profiles stop as soon as a round leaves both
// memories unchanged and sum the repeating tail exactly; otherwise play stops
// at the regime's horizon.
Payoff continuation_payoff(const Game& game, const Regime& regime,
                           const GameNode& node, double value);

// A set of buyer values: the prior restricted to [low, high], or a point mass
// at `low`.
struct ValueSet {
  double low = 0.0;
  double high = 1.0;
  bool point_mass = false;
};

struct TreeExpectation {
  double revenue = 0.0;
  // Mass-weighted revenue bound of branches dropped as negligible or cut by
  // truncation.
  double dropped = 0.0;
  // Buyer thresholds met along the way, in (low, high).
  std::vector<double> breakpoints;
  std::size_t nodes = 0;
};

// Expected seller revenue from `node` when v ~ `values`, computed exactly by
// splitting the value interval at each round's acceptance threshold. The first
// price may be overridden.
TreeExpectation expected_revenue_tree(const Game& game, const Regime& regime,
                                      const GameNode& node,
                                      const ValueSet& values,
                                      const double* first_price = nullptr,
                                      bool collect_breakpoints = false);

enum class Method { kQuadrature, kMonteCarlo };

struct SimulationConfig {
  Regime regime = Regime::fixed_horizon(1);
  Method method = Method::kQuadrature;
  int panels = 10000;  // quadrature
  std::int64_t samples = 100000;  // Monte Carlo
  std::uint64_t seed = 0;
};

struct ExpectedValue {
  double value = 0.0;
  // Quadrature: rule-difference estimate plus truncation tail. Monte Carlo:
  // one standard error.
  double error = 0.0;
  double truncation_tail = 0.0;
  std::int64_t evaluations = 0;
};

ExpectedValue expected_revenue(const Game& game,
                               const SimulationConfig& config);

struct EquivalenceReport {
  double delta = 0.0;
  double monte_carlo = 0.0;
  double standard_error = 0.0;
  double discounted = 0.0;
  double discounted_error = 0.0;
  double difference = 0.0;
  bool pass = false;
};

// Monte Carlo under geometric stopping vs quadrature under discounting; pass
// iff the two agree within 4 standard errors.
EquivalenceReport geometric_equivalence_check(const Game& game, double delta,
                                              std::int64_t samples,
                                              std::uint64_t seed);

}  // namespace rsales

#endif  // REPEATED_SALES_SIMULATOR_HPP_
