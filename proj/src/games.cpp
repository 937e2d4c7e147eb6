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

#include "repeated_sales/games.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <utility>

#include "repeated_sales/finite_horizon.hpp"
#include "repeated_sales/infinite_horizon.hpp"
#include "repeated_sales/numerics.hpp"
#include "repeated_sales/two_round.hpp"

namespace rsales {
namespace {

class ShiftedRootBuyer : public BuyerStrategy {
 public:
  ShiftedRootBuyer(std::shared_ptr<const BuyerStrategy> base, double shift)
      : base_(std::move(base)), shift_(shift) {}
  std::string name() const override { return base_->name() + " (shifted)"; }
  PlayState initial_state() const override { return base_->initial_state(); }
  double threshold(const PlayState& s, double price) const override {
    const double t = base_->threshold(s, price);
    return s.round == 0 ? t + shift_ : t;
  }
  PlayState update(const PlayState& s, double price,
                   Decision d) const override {
    return base_->update(s, price, d);
  }
  bool stationary() const override { return base_->stationary(); }
  int stationary_after() const override {
    return std::max(1, base_->stationary_after());
  }

 private:
  std::shared_ptr<const BuyerStrategy> base_;
  double shift_;
};

// Shared by the seller-side perturbations.
class WrappedSeller : public SellerStrategy {
 public:
  explicit WrappedSeller(std::shared_ptr<const SellerStrategy> base)
      : base_(std::move(base)) {}
  PlayState initial_state() const override { return base_->initial_state(); }
  double price(const PlayState& s) const override { return base_->price(s); }
  PlayState update(const PlayState& s, double price,
                   Decision d) const override {
    return base_->update(s, price, d);
  }
  double price_cap(const PlayState& s) const override {
    return base_->price_cap(s);
  }
  bool stationary() const override { return base_->stationary(); }
  int stationary_after() const override {
    return std::max(1, base_->stationary_after());
  }

 protected:
  std::shared_ptr<const SellerStrategy> base_;
};

class ShiftedRootSeller : public WrappedSeller {
 public:
  ShiftedRootSeller(std::shared_ptr<const SellerStrategy> base, double shift)
      : WrappedSeller(std::move(base)), shift_(shift) {}
  std::string name() const override { return base_->name() + " (shifted)"; }
  double price(const PlayState& s) const override {
    const double p = base_->price(s);
    return s.round == 0 ? p + shift_ : p;
  }

 private:
  double shift_;
};

class ForgetfulSeller : public WrappedSeller {
 public:
  using WrappedSeller::WrappedSeller;
  std::string name() const override {
    return base_->name() + " (skips first update)";
  }
  PlayState update(const PlayState& s, double price,
                   Decision d) const override {
    if (s.round == 0 && d == Decision::kReject) {
      PlayState next = s;
      ++next.round;
      return next;
    }
    return base_->update(s, price, d);
  }
};

double parse_amount(const std::string& amount, const std::string& text) {
  char* end = nullptr;
  const double x = std::strtod(amount.c_str(), &end);
  if (amount.empty() || *end != '\0' || !std::isfinite(x)) {
    throw ConfigError("bad perturbation amount in '" + text + "'");
  }
  return x;
}

}  // namespace

const std::vector<std::string>& game_names() {
  static const std::vector<std::string> names{
      "two-round",      "finite-partial", "finite-no-commitment",
      "infinite-partial", "infinite-zero"};
  return names;
}

Game make_game(const GameOptions& o) {
  auto need_dist = [&o]() -> const ValueDistribution& {
    if (!o.dist) throw ConfigError("game " + o.name + " needs --dist");
    return *o.dist;
  };
  if (o.name == "two-round") return two_round_game(need_dist());
  if (o.name == "finite-partial") {
    if (o.rounds < 1) throw ConfigError("--n must be >= 1");
    if (o.power < 0) throw ConfigError("--k must be >= 0");
    return finite_partial_game(o.rounds, o.power);
  }
  if (o.name == "finite-no-commitment") {
    if (o.rounds < 1) throw ConfigError("--n must be >= 1");
    return finite_no_commitment_game(need_dist(), o.rounds);
  }
  if (o.name == "infinite-partial") return infinite_partial_game(o.delta);
  if (o.name == "infinite-zero") return infinite_zero_game(o.delta);
  throw ConfigError("unknown game '" + o.name + "'");
}

Perturbation Perturbation::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string tail =
      colon == std::string::npos ? std::string() : text.substr(colon + 1);
  Perturbation p;
  if (head == "skip-belief-update" && colon == std::string::npos) {
    p.kind = Kind::kSkipBeliefUpdate;
    return p;
  }
  if (head == "buyer-threshold") {
    p.kind = Kind::kBuyerThreshold;
  } else if (head == "root-price") {
    p.kind = Kind::kRootPrice;
  } else {
    throw ConfigError("unknown perturbation '" + text + "'");
  }
  p.amount = parse_amount(tail, text);
  return p;
}

std::string Perturbation::describe() const {
  switch (kind) {
    case Kind::kBuyerThreshold:
      return "buyer-threshold:" + format_number(amount);
    case Kind::kRootPrice:
      return "root-price:" + format_number(amount);
    case Kind::kSkipBeliefUpdate:
      return "skip-belief-update";
  }
  return "unknown";
}

Game perturb(const Game& game, const Perturbation& p) {
  Game g = game;
  g.name = game.name + "+" + p.describe();
  switch (p.kind) {
    case Perturbation::Kind::kBuyerThreshold:
      g.buyer = std::make_shared<ShiftedRootBuyer>(game.buyer, p.amount);
      break;
    case Perturbation::Kind::kRootPrice:
      g.seller = std::make_shared<ShiftedRootSeller>(game.seller, p.amount);
      break;
    case Perturbation::Kind::kSkipBeliefUpdate:
      g.seller = std::make_shared<ForgetfulSeller>(game.seller);
      break;
  }
  return g;
}

}  // namespace rsales
