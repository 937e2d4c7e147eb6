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

#include "repeated_sales/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "repeated_sales/numerics.hpp"

namespace rsales {
namespace {

struct TestNode {
  History history;
  GameNode node;
};

// Nodes reachable by equilibrium prices in at most `depth` rounds, in
// breadth-first order with accept before reject.
std::vector<TestNode> on_path_nodes(const Game& game, const Regime& regime,
                                    int depth) {
  std::vector<TestNode> out{{{}, initial_node(game)}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    const TestNode parent = out[i];
    const int round = parent.node.round;
    if (round >= depth || round >= regime.rounds()) continue;
    const double price = posted_price(game, parent.node);
    for (const Decision d : {Decision::kAccept, Decision::kReject}) {
      TestNode child{parent.history, advance(game, parent.node, price, d)};
      child.history.push_back({price, d});
      out.push_back(std::move(child));
    }
  }
  return out;
}

// The equilibrium price followed by the probe prices, capped and deduplicated.
std::vector<double> tested_prices(const Game& game, const GameNode& node) {
  const double top = game.prior.support_high();
  const double cap = game.seller->price_cap(node.seller);
  const double eq = posted_price(game, node);
  std::vector<double> raw{eq,         0.0,       0.1 * top, 0.25 * top,
                          0.5 * top,  0.75 * top, top,      0.5 * eq,
                          1.1 * eq};
  std::vector<double> out;
  for (double p : raw) {
    p = std::min(p, cap);
    const bool seen = std::any_of(out.begin(), out.end(), [p](double q) {
      return std::abs(p - q) <= 1e-15;
    });
    if (!seen) out.push_back(p);
  }
  return out;
}

// On-path nodes above `depth` followed by the children of their probe prices
// that still have a round to play.
std::vector<TestNode> tested_nodes(const Game& game, const Regime& regime,
                                   int depth) {
  std::vector<TestNode> on_path = on_path_nodes(game, regime, depth);
  std::vector<TestNode> out;
  for (const auto& t : on_path) {
    if (t.node.round < regime.rounds()) out.push_back(t);
  }
  for (const auto& t : on_path) {
    if (t.node.round >= depth || t.node.round >= regime.rounds()) continue;
    const std::vector<double> prices = tested_prices(game, t.node);
    for (std::size_t k = 1; k < prices.size(); ++k) {
      for (const Decision d : {Decision::kAccept, Decision::kReject}) {
        TestNode child{t.history, advance(game, t.node, prices[k], d)};
        child.history.push_back({prices[k], d});
        if (child.node.round < regime.rounds()) out.push_back(std::move(child));
      }
    }
  }
  return out;
}

// Total weight of the rounds from index `round` on.
double weight_from(const Regime& regime, int round) {
  if (regime.infinite()) return regime.remaining_weight(round);
  double w = 0.0;
  for (int i = round; i < regime.rounds(); ++i) w += regime.weight(i);
  return w;
}

double truncation_tail(const Game& game, const Regime& regime) {
  return regime.infinite() ? regime.tail_bound(game.prior.support_high()) : 0.0;
}

// Buyer utility from `node` when `first_price` is posted there: the forced
// `decisions` are played first (equilibrium play if empty), then equilibrium
// continuation.
double buyer_utility(const Game& game, const Regime& regime,
                     const GameNode& node, double first_price, double value,
                     const std::vector<Decision>& decisions) {
  if (node.round >= regime.rounds()) return 0.0;
  double utility = 0.0;
  GameNode cur = node;
  const std::size_t forced = std::max<std::size_t>(decisions.size(), 1);
  for (std::size_t j = 0; j < forced && cur.round < regime.rounds(); ++j) {
    const double price = j == 0 ? first_price : posted_price(game, cur);
    const Decision d = decisions.empty()
                           ? game.buyer->decide(value, cur.buyer, price)
                           : decisions[j];
    if (d == Decision::kAccept) {
      utility += regime.weight(cur.round) * (value - price);
    }
    cur = advance(game, cur, price, d);
  }
  return utility + continuation_payoff(game, regime, cur, value).utility;
}

ValueSet seller_belief(const Game& game, const PlayState& s) {
  const double top = game.prior.support_high();
  if (s.point_mass) return {top, top, true};
  if (!(game.prior.mass(s.belief_low, s.belief_high) > 0.0)) {
    return {s.belief_high, s.belief_high, true};
  }
  return {s.belief_low, s.belief_high, false};
}

double seller_revenue(const Game& game, const Regime& regime,
                      const GameNode& node, const double* price,
                      double* dropped = nullptr) {
  const TreeExpectation t = expected_revenue_tree(
      game, regime, node, seller_belief(game, node.seller), price);
  if (dropped != nullptr) *dropped = t.dropped;
  return t.revenue;
}

std::vector<Decision> pattern_decisions(std::size_t bits, int length) {
  std::vector<Decision> out(static_cast<std::size_t>(length));
  for (int j = 0; j < length; ++j) {
    out[static_cast<std::size_t>(j)] =
        (bits >> j) & 1U ? Decision::kAccept : Decision::kReject;
  }
  return out;
}

std::string describe_decisions(const std::vector<Decision>& ds) {
  std::string out;
  for (const Decision d : ds) {
    if (!out.empty()) out += ",";
    out += decision_name(d);
  }
  return out;
}

struct BeliefMismatch {
  double distance = 0.0;
  bool empty = true;
  double low = 0.0;
  double high = 0.0;
};

BeliefMismatch belief_mismatch(const Game& game, const TestNode& t,
                               const std::vector<double>& values) {
  const double top = game.prior.support_high();
  std::vector<char> consistent(values.size(), 0);
  parallel_for(values.size(), [&](std::size_t i) {
    PlayState s = game.buyer->initial_state();
    for (const HistoryStep& step : t.history) {
      if (game.buyer->decide(values[i], s, step.price) != step.decision) return;
      s = game.buyer->update(s, step.price, step.decision);
    }
    consistent[i] = 1;
  });
  BeliefMismatch m;
  const PlayState& belief = t.node.seller;
  const double bl = belief.point_mass ? top : belief.belief_low;
  const double bh = belief.point_mass ? top : belief.belief_high;
  std::size_t first = values.size();
  std::size_t last = 0;
  double gap = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!consistent[i]) continue;
    if (first == values.size()) {
      first = i;
    } else if (i != last + 1) {
      gap = std::max(gap, values[i] - values[last]);
    }
    last = i;
  }
  if (first == values.size()) {
    m.distance = std::max(std::abs(bl - top), std::abs(bh - top));
    return m;
  }
  m.empty = false;
  m.low = values[first];
  m.high = values[last];
  m.distance = std::max({std::abs(bl - m.low), std::abs(bh - m.high), gap});
  return m;
}

std::string describe_interval(double a, double b) {
  return "[" + format_number(a) + ", " + format_number(b) + "]";
}

}  // namespace

std::string describe_history(const History& history) {
  if (history.empty()) return "root";
  std::ostringstream out;
  for (std::size_t i = 0; i < history.size(); ++i) {
    if (i > 0) out << "; ";
    out << "round " << i + 1 << ' ' << decision_name(history[i].decision)
        << ' ' << format_number(history[i].price);
  }
  return out.str();
}

GameNode replay_history(const Game& game, const History& history) {
  GameNode node = initial_node(game);
  for (const HistoryStep& step : history) {
    node = advance(game, node, step.price, step.decision);
  }
  return node;
}

const char* role_name(CheckRole role) {
  switch (role) {
    case CheckRole::kBuyer:
      return "buyer";
    case CheckRole::kSeller:
      return "seller";
    case CheckRole::kBelief:
      return "belief";
  }
  return "unknown";
}

DeviationReport check_buyer_best_response(const Game& game,
                                          const Regime& regime, int value_grid,
                                          int lookahead, double epsilon,
                                          int depth) {
  if (value_grid < 2 || lookahead < 1 || depth < 1) {
    throw ConfigError("buyer check needs value_grid >= 2, lookahead >= 1, "
                      "depth >= 1");
  }
  const double low = game.prior.support_low();
  const double high = game.prior.support_high();
  const std::vector<double> values =
      linspace(low, high, static_cast<std::size_t>(value_grid));
  const double spacing = values[1] - values[0];

  DeviationReport report;
  report.role = CheckRole::kBuyer;
  report.epsilon = epsilon;
  report.gain = -kInfinity;
  double resolution = 0.0;

  for (const TestNode& t : on_path_nodes(game, regime, depth)) {
    const int round = t.node.round;
    if (round >= depth || round >= regime.rounds()) continue;
    const int length = std::min(lookahead, regime.rounds() - round);
    const std::size_t patterns = std::size_t{1} << length;
    resolution = std::max(resolution, weight_from(regime, round) * spacing);
    for (const double price : tested_prices(game, t.node)) {
      std::vector<double> gains(values.size());
      std::vector<std::size_t> best(values.size());
      parallel_for(values.size(), [&](std::size_t i) {
        const double v = values[i];
        const double eq = buyer_utility(game, regime, t.node, price, v, {});
        gains[i] = -kInfinity;
        for (std::size_t bits = 0; bits < patterns; ++bits) {
          const double u = buyer_utility(game, regime, t.node, price, v,
                                         pattern_decisions(bits, length));
          if (u - eq > gains[i]) {
            gains[i] = u - eq;
            best[i] = bits;
          }
        }
      });
      report.cases += values.size() * patterns;
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (gains[i] <= report.gain) continue;
        report.gain = gains[i];
        report.history_class =
            describe_history(t.history) + " | price " + format_number(price);
        report.witness = Witness{};
        report.witness.history = t.history;
        report.witness.price = price;
        report.witness.value = values[i];
        report.witness.decisions = pattern_decisions(best[i], length);
        report.deviation = "value " + format_number(values[i]) + " plays " +
                           describe_decisions(report.witness.decisions);
      }
    }
  }
  report.budget = resolution + 2.0 * truncation_tail(game, regime);
  report.pass = report.gain <= epsilon + report.budget;
  return report;
}

DeviationReport check_seller_best_response(const Game& game,
                                           const Regime& regime,
                                           int price_grid, int depth,
                                           double epsilon) {
  if (price_grid < 3 || depth < 1) {
    throw ConfigError("seller check needs price_grid >= 3 and depth >= 1");
  }
  const double top = game.prior.support_high();
  DeviationReport report;
  report.role = CheckRole::kSeller;
  report.epsilon = epsilon;
  report.gain = -kInfinity;
  double budget = 0.0;

  for (const TestNode& t : tested_nodes(game, regime, depth)) {
    double dropped_eq = 0.0;
    const double eq = seller_revenue(game, regime, t.node, nullptr, &dropped_eq);
    const double cap = std::min(top, game.seller->price_cap(t.node.seller));
    const std::vector<double> prices =
        linspace(0.0, cap, static_cast<std::size_t>(price_grid));
    std::vector<double> revenue(prices.size());
    std::vector<double> dropped(prices.size());
    parallel_for(prices.size(), [&](std::size_t k) {
      revenue[k] = seller_revenue(game, regime, t.node, &prices[k], &dropped[k]);
    });
    report.cases += prices.size();
    const auto best = static_cast<std::size_t>(
        std::max_element(revenue.begin(), revenue.end()) - revenue.begin());
    // The maximum between grid points: half the rise to the best point's
    // neighbours.
    double rise = 0.0;
    if (best > 0) rise = std::max(rise, std::abs(revenue[best] - revenue[best - 1]));
    if (best + 1 < prices.size()) {
      rise = std::max(rise, std::abs(revenue[best + 1] - revenue[best]));
    }
    const double state_budget =
        0.5 * rise + dropped_eq +
        *std::max_element(dropped.begin(), dropped.end()) +
        2.0 * truncation_tail(game, regime);
    budget = std::max(budget, state_budget);
    const double gain = revenue[best] - eq;
    if (gain > report.gain) {
      report.gain = gain;
      report.history_class = describe_history(t.history);
      report.witness = Witness{};
      report.witness.history = t.history;
      report.witness.price = prices[best];
      report.deviation = "price " + format_number(prices[best]) +
                         " instead of " +
                         format_number(posted_price(game, t.node));
    }
  }
  report.budget = budget;
  report.pass = report.gain <= epsilon + report.budget;
  return report;
}

DeviationReport check_belief_consistency(const Game& game,
                                         const Regime& regime,
                                         int trace_length, int value_grid) {
  if (trace_length < 1 || value_grid < 2) {
    throw ConfigError("belief check needs trace_length >= 1 and "
                      "value_grid >= 2");
  }
  const std::vector<double> values =
      linspace(game.prior.support_low(), game.prior.support_high(),
               static_cast<std::size_t>(value_grid));
  const double spacing = values[1] - values[0];
  DeviationReport report;
  report.role = CheckRole::kBelief;
  report.epsilon = spacing;
  report.gain = -kInfinity;
  for (const TestNode& t : tested_nodes(game, regime, trace_length)) {
    if (t.history.empty()) continue;
    const BeliefMismatch m = belief_mismatch(game, t, values);
    ++report.cases;
    if (m.distance <= report.gain) continue;
    const PlayState& b = t.node.seller;
    report.gain = m.distance;
    report.history_class = describe_history(t.history);
    report.witness = Witness{};
    report.witness.history = t.history;
    report.witness.consistent_set_empty = m.empty;
    report.witness.consistent_low = m.low;
    report.witness.consistent_high = m.high;
    report.witness.belief_low = b.belief_low;
    report.witness.belief_high = b.belief_high;
    report.witness.belief_point_mass = b.point_mass;
    report.deviation =
        std::string("consistent values ") +
        (m.empty ? std::string("none") : describe_interval(m.low, m.high)) +
        ", seller belief " +
        (b.point_mass ? std::string("point mass at top")
                      : describe_interval(b.belief_low, b.belief_high));
  }
  if (report.cases == 0) report.gain = 0.0;
  report.pass = report.gain <= report.epsilon * (1.0 + 1e-9);
  return report;
}

double replay_witness(const Game& game, const Regime& regime,
                      const DeviationReport& report, int value_grid) {
  const Witness& w = report.witness;
  const GameNode node = replay_history(game, w.history);
  switch (report.role) {
    case CheckRole::kBuyer:
      return buyer_utility(game, regime, node, w.price, w.value, w.decisions) -
             buyer_utility(game, regime, node, w.price, w.value, {});
    case CheckRole::kSeller:
      return seller_revenue(game, regime, node, &w.price) -
             seller_revenue(game, regime, node, nullptr);
    case CheckRole::kBelief: {
      const std::vector<double> values =
          linspace(game.prior.support_low(), game.prior.support_high(),
                   static_cast<std::size_t>(value_grid));
      return belief_mismatch(game, {w.history, node}, values).distance;
    }
  }
  return 0.0;
}

BoundCheck check_revenue_upper_bound(double revenue,
                                     const ValueDistribution& dist,
                                     const Regime& regime) {
  const double one_round = monopoly_price(dist).revenue;
  BoundCheck c;
  c.revenue = revenue;
  c.benchmark = regime.infinite() ? one_round / regime.delta()
                                  : regime.rounds() * one_round;
  c.pass = revenue <= c.benchmark + 1e-9;
  return c;
}

std::vector<DeviationReport> verify_all(const Game& game, const Regime& regime,
                                        const VerifyOptions& options) {
  return {check_buyer_best_response(game, regime, options.value_grid,
                                    options.lookahead, options.epsilon,
                                    options.depth),
          check_seller_best_response(game, regime, options.price_grid,
                                     options.depth, options.epsilon),
          check_belief_consistency(game, regime, options.trace_length,
                                   options.belief_grid)};
}

}  // namespace rsales
