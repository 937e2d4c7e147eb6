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

#ifndef REPEATED_SALES_VERIFIER_HPP_
#define REPEATED_SALES_VERIFIER_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "repeated_sales/simulator.hpp"
#include "repeated_sales/strategy.hpp"

namespace rsales {

// Numerical epsilon-equilibrium certificates for a strategy profile.
//
// Histories are visited through the players' memories: every node reachable
// from the root in at most `depth` rounds by equilibrium prices, plus one
// round of probe prices (0, 0.1, 0.25, 0.5, 0.75 and 1 times the top of the
// support, half and 1.1 times the equilibrium price) posted at those nodes.
// Under partial commitment probes never exceed the lowest accepted price.

struct HistoryStep {
  double price = 0.0;
  Decision decision = Decision::kReject;
};

using History = std::vector<HistoryStep>;

std::string describe_history(const History& history);

// Replays `history` from the root.
GameNode replay_history(const Game& game, const History& history);

enum class CheckRole { kBuyer, kSeller, kBelief };

const char* role_name(CheckRole role);

// Data needed to reproduce the best deviation found.
struct Witness {
  History history;  // path to the node where the deviation starts
  // Buyer: price posted at that node, the buyer's value and the forced
  // decisions for the next rounds. Seller: the deviation price.
  double price = 0.0;
  double value = 0.0;
  std::vector<Decision> decisions;
  // Belief: the consistent value range found on the grid (empty if none) and
  // the seller's belief after the history.
  bool consistent_set_empty = false;
  double consistent_low = 0.0;
  double consistent_high = 0.0;
  double belief_low = 0.0;
  double belief_high = 0.0;
  bool belief_point_mass = false;
};

struct DeviationReport {
  CheckRole role = CheckRole::kBuyer;
  std::string history_class;
  std::string deviation;
  // Largest gain found (belief: largest distance between the seller's belief
  // and the consistent set).
  double gain = 0.0;
  double epsilon = 0.0;
  // Error budget added to epsilon before judging: grid resolution bound plus
  // truncation tail plus branches dropped by the expectation walk.
  double budget = 0.0;
  bool pass = true;
  std::size_t cases = 0;  // deviations or histories evaluated
  Witness witness;
};

// Buyer best response. For every tested history, every price posted there,
// every value on a grid of `value_grid` points and every accept/reject pattern
// for the next `lookahead` rounds (then equilibrium play), compares the
// buyer's discounted utility with the equilibrium one.
DeviationReport check_buyer_best_response(const Game& game,
                                          const Regime& regime,
                                          int value_grid = 1000,
                                          int lookahead = 3,
                                          double epsilon = 1e-4,
                                          int depth = 3);

// Seller best response. At every tested belief state, replaces the next price
// by each of `price_grid` prices in [0, min(top, price cap)] and continues with
// equilibrium play, comparing expected revenue under the seller's belief.
// Deviations in later rounds are one-shot deviations at the descendant states,
// which are tested too, down to `depth` rounds.
DeviationReport check_seller_best_response(const Game& game,
                                           const Regime& regime,
                                           int price_grid = 2000,
                                           int depth = 3,
                                           double epsilon = 1e-4);

// Bayes consistency. After every tested history of at most `trace_length`
// rounds that still has a round to play, the set of grid values whose
// strategy reproduces the history must match the seller's belief interval to
// within one grid spacing; an empty set must map to the point mass at the
// top of the support.
DeviationReport check_belief_consistency(const Game& game,
                                         const Regime& regime,
                                         int trace_length = 3,
                                         int value_grid = 10000);

// Recomputes the gain of a report's witness from scratch.
double replay_witness(const Game& game, const Regime& regime,
                      const DeviationReport& report, int value_grid = 10000);

struct BoundCheck {
  double revenue = 0.0;
  double benchmark = 0.0;
  bool pass = false;
};

// Revenue never exceeds the full-commitment benchmark: rounds * R(p*) for a
// fixed horizon, R(p*) / delta when discounted.
BoundCheck check_revenue_upper_bound(double revenue,
                                     const ValueDistribution& dist,
                                     const Regime& regime);

struct VerifyOptions {
  int value_grid = 1000;
  int lookahead = 3;
  int price_grid = 2000;
  int depth = 3;
  int trace_length = 3;
  int belief_grid = 10000;
  double epsilon = 1e-4;
};

// Buyer, seller and belief checks in that order.
std::vector<DeviationReport> verify_all(const Game& game, const Regime& regime,
                                        const VerifyOptions& options = {});

}  // namespace rsales

#endif  // REPEATED_SALES_VERIFIER_HPP_
