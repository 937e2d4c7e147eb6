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

#include "repeated_sales/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "repeated_sales/numerics.hpp"

namespace rsales {
namespace {

// Branches whose whole remaining revenue is below this are not expanded.
constexpr double kNegligibleRevenue = 1e-15;
// Hard stop for geometric-stopping playouts that never reach a fixed point.
constexpr int kMaxGeometricRounds = 10'000'000;

bool unchanged(const GameNode& before, const GameNode& after) {
  return after.seller.same_position(before.seller) &&
         after.buyer.same_position(before.buyer);
}

struct GaussRule {
  std::array<double, 4> nodes;
  std::array<double, 4> weights;
};

// 4-point Gauss-Legendre on [-1, 1].
const GaussRule& gauss4() {
  static const GaussRule rule = [] {
    const double a = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
    const double b = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
    const double wa = (18.0 + std::sqrt(30.0)) / 36.0;
    const double wb = (18.0 - std::sqrt(30.0)) / 36.0;
    return GaussRule{{-b, -a, a, b}, {wb, wa, wa, wb}};
  }();
  return rule;
}

double geometric_revenue(const Game& game, const Regime& regime, double value,
                         PhiloxStream& rng) {
  const double stop = regime.delta();
  GameNode node = initial_node(game);
  double revenue = 0.0;
  for (int i = 0; i < kMaxGeometricRounds; ++i) {
    const double price = posted_price(game, node);
    const Decision d = game.buyer->decide(value, node.buyer, price);
    const double gain = d == Decision::kAccept ? price : 0.0;
    revenue += gain;
    GameNode next = advance(game, node, price, d);
    if (game.stationary_at(i) && unchanged(node, next)) {
      // Rounds still to come: P(N >= k) = (1 - delta)^k.
      if (stop < 1.0 && gain > 0.0) {
        const double u = rng.next_open_closed();
        revenue += gain * std::floor(std::log(u) / std::log1p(-stop));
      }
      return revenue;
    }
    if (rng.next_double() < stop) return revenue;
    node = std::move(next);
  }
  return revenue;
}

}  // namespace

GameNode initial_node(const Game& game) {
  return {game.seller->initial_state(), game.buyer->initial_state(), 0};
}

double posted_price(const Game& game, const GameNode& node) {
  const double price = game.seller->price(node.seller);
  if (!(price >= 0.0) || !std::isfinite(price)) {
    throw std::domain_error("invalid price " + format_number(price) +
                            " posted by " + game.seller->name() +
                            " in round " + std::to_string(node.round + 1));
  }
  return price;
}

GameNode advance(const Game& game, const GameNode& node, double price,
                 Decision decision) {
  return {game.seller->update(node.seller, price, decision),
          game.buyer->update(node.buyer, price, decision), node.round + 1};
}

Transcript playout(const Game& game, double value, const Regime& regime,
                   PhiloxStream* rng) {
  const bool geometric = regime.kind() == Regime::Kind::kGeometricStopping;
  if (geometric && rng == nullptr) {
    throw std::invalid_argument("geometric stopping needs a random stream");
  }
  Transcript t;
  t.value = value;
  GameNode node = initial_node(game);
  const int horizon = geometric ? kMaxGeometricRounds : regime.rounds();
  for (int i = 0; i < horizon; ++i) {
    const double price = posted_price(game, node);
    const Decision d = game.buyer->decide(value, node.buyer, price);
    const double w = geometric ? 1.0 : regime.weight(i);
    t.rounds.push_back({i + 1, price, d, w});
    if (d == Decision::kAccept) {
      t.revenue += w * price;
      t.buyer_utility += w * (value - price);
    }
    node = advance(game, node, price, d);
    if (geometric && rng->next_double() < regime.delta()) break;
  }
  return t;
}

Payoff continuation_payoff(const Game& game, const Regime& regime,
                           const GameNode& start, double value) {
  Payoff out;
  GameNode node = start;
  for (int i = node.round; i < regime.rounds(); ++i) {
    const double price = posted_price(game, node);
    const Decision d = game.buyer->decide(value, node.buyer, price);
    const bool accepted = d == Decision::kAccept;
    GameNode next = advance(game, node, price, d);
    double w = regime.weight(i);
    const bool repeats = game.stationary_at(i) && unchanged(node, next);
    if (repeats) w = regime.remaining_weight(i);
    if (accepted) {
      out.revenue += w * price;
      out.utility += w * (value - price);
    }
    if (repeats) break;
    node = std::move(next);
  }
  return out;
}

TreeExpectation expected_revenue_tree(const Game& game, const Regime& regime,
                                      const GameNode& start,
                                      const ValueSet& values,
                                      const double* first_price,
                                      bool collect_breakpoints) {
  TreeExpectation out;
  const double top = game.prior.support_high();
  if (values.point_mass) {
    const double v = values.low;
    GameNode node = start;
    if (first_price != nullptr) {
      const double price = *first_price;
      const Decision d = game.buyer->decide(v, node.buyer, price);
      if (d == Decision::kAccept) out.revenue += regime.weight(node.round) * price;
      node = advance(game, node, price, d);
    }
    if (node.round < regime.rounds()) {
      out.revenue += continuation_payoff(game, regime, node, v).revenue;
    }
    out.nodes = 1;
    return out;
  }

  const ValueDistribution& prior = game.prior;
  const double total = prior.mass(values.low, values.high);
  if (!(total > 0.0)) {
    throw std::domain_error("degenerate restriction: value set has no mass");
  }
  struct Item {
    GameNode node;
    double a;
    double b;
    bool overridden;
  };
  std::vector<Item> stack;
  stack.push_back({start, values.low, values.high, first_price != nullptr});
  while (!stack.empty()) {
    Item item = std::move(stack.back());
    stack.pop_back();
    ++out.nodes;
    const int i = item.node.round;
    if (i >= regime.rounds()) {
      if (regime.infinite()) {
        out.dropped += prior.mass(item.a, item.b) / total * top *
                       regime.remaining_weight(i);
      }
      continue;
    }
    const double price =
        item.overridden ? *first_price : posted_price(game, item.node);
    const double cut = game.buyer->threshold(item.node.buyer, price);
    if (collect_breakpoints && cut > item.a && cut < item.b) {
      out.breakpoints.push_back(cut);
    }
    const double split = std::clamp(cut, item.a, item.b);
    const double p_accept = prior.mass(split, item.b) / total;
    const double p_reject = prior.mass(item.a, split) / total;
    out.revenue += regime.weight(i) * price * p_accept;

    for (const Decision d : {Decision::kAccept, Decision::kReject}) {
      const bool accepted = d == Decision::kAccept;
      const double p = accepted ? p_accept : p_reject;
      if (!(p > 0.0)) continue;
      GameNode child = advance(game, item.node, price, d);
      if (!item.overridden && game.stationary_at(i) &&
          unchanged(item.node, child)) {
        if (accepted) out.revenue += price * p * regime.remaining_weight(i + 1);
        continue;
      }
      const double bound = p * top * regime.remaining_weight(i + 1);
      if (bound < kNegligibleRevenue) {
        out.dropped += bound;
        continue;
      }
      if (accepted) {
        stack.push_back({std::move(child), split, item.b, false});
      } else {
        stack.push_back({std::move(child), item.a, split, false});
      }
    }
  }
  return out;
}

ExpectedValue expected_revenue(const Game& game,
                               const SimulationConfig& config) {
  const Regime& regime = config.regime;
  const ValueDistribution& prior = game.prior;
  const double low = prior.support_low();
  const double high = prior.support_high();
  ExpectedValue out;
  out.truncation_tail = regime.infinite() ? regime.tail_bound(high) : 0.0;

  if (config.method == Method::kMonteCarlo) {
    if (config.samples < 2) throw std::invalid_argument("need >= 2 samples");
    const auto n = static_cast<std::size_t>(config.samples);
    std::vector<double> revenue(n);
    const bool geometric = regime.kind() == Regime::Kind::kGeometricStopping;
    const GameNode root = initial_node(game);
    parallel_for(n, [&](std::size_t i) {
      PhiloxStream rng(config.seed, i);
      const double v = prior.quantile(rng.next_double());
      revenue[i] = geometric
                       ? geometric_revenue(game, regime, v, rng)
                       : continuation_payoff(game, regime, root, v).revenue;
    });
    const double mean = pairwise_sum(revenue) / static_cast<double>(n);
    std::vector<double> squares(n);
    for (std::size_t i = 0; i < n; ++i) {
      squares[i] = (revenue[i] - mean) * (revenue[i] - mean);
    }
    const double var = pairwise_sum(squares) / static_cast<double>(n - 1);
    out.value = mean;
    out.error = std::sqrt(var / static_cast<double>(n));
    out.evaluations = config.samples;
    return out;
  }

  if (config.panels < 1) throw std::invalid_argument("need >= 1 panel");
  const GameNode root = initial_node(game);
  const TreeExpectation tree = expected_revenue_tree(
      game, regime, root, {low, high, false}, nullptr, true);
  std::vector<double> edges =
      linspace(low, high, static_cast<std::size_t>(config.panels) + 1);
  edges.insert(edges.end(), tree.breakpoints.begin(), tree.breakpoints.end());
  for (const auto& knot : prior.knots()) edges.push_back(knot.first);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  const std::size_t panels = edges.size() - 1;
  std::vector<double> fine(panels);
  std::vector<double> coarse(panels);
  const GaussRule& rule = gauss4();
  const double g2 = 1.0 / std::sqrt(3.0);
  parallel_for(panels, [&](std::size_t k) {
    const double a = edges[k];
    const double b = edges[k + 1];
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    auto integrand = [&](double v) {
      return continuation_payoff(game, regime, root, v).revenue * prior.pdf(v);
    };
    double s4 = 0.0;
    for (int j = 0; j < 4; ++j) {
      s4 += rule.weights[j] * integrand(mid + half * rule.nodes[j]);
    }
    const double s2 = integrand(mid - half * g2) + integrand(mid + half * g2);
    fine[k] = half * s4;
    coarse[k] = half * s2;
  });
  std::vector<double> gaps(panels);
  for (std::size_t k = 0; k < panels; ++k) {
    gaps[k] = std::abs(fine[k] - coarse[k]);
  }
  out.value = pairwise_sum(fine);
  out.error = pairwise_sum(gaps) + out.truncation_tail + tree.dropped;
  out.evaluations = static_cast<std::int64_t>(panels) * 6;
  return out;
}

EquivalenceReport geometric_equivalence_check(const Game& game, double delta,
                                              std::int64_t samples,
                                              std::uint64_t seed) {
  const double high = game.prior.support_high();
  SimulationConfig mc;
  mc.regime = Regime::geometric_stopping(delta, high);
  mc.method = Method::kMonteCarlo;
  mc.samples = samples;
  mc.seed = seed;
  SimulationConfig quad;
  quad.regime = Regime::discounted(delta, high);
  quad.method = Method::kQuadrature;

  const ExpectedValue sampled = expected_revenue(game, mc);
  const ExpectedValue exact = expected_revenue(game, quad);
  EquivalenceReport r;
  r.delta = delta;
  r.monte_carlo = sampled.value;
  r.standard_error = sampled.error;
  r.discounted = exact.value;
  r.discounted_error = exact.error;
  r.difference = std::abs(sampled.value - exact.value);
  r.pass =
      r.difference <= 4.0 * sampled.error + exact.error + 1e-12;
  return r;
}

}  // namespace rsales
