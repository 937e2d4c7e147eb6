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

#ifndef REPEATED_SALES_GAMES_HPP_
#define REPEATED_SALES_GAMES_HPP_

#include <optional>
#include <string>
#include <vector>

#include "repeated_sales/distributions.hpp"
#include "repeated_sales/strategy.hpp"

namespace rsales {

// Game names accepted by make_game.
const std::vector<std::string>& game_names();

struct GameOptions {
  std::string name;
  std::optional<ValueDistribution> dist;  // two-round, finite-no-commitment
  double delta = 0.3;                     // infinite games
  int rounds = 2;                         // finite games
  int power = 0;                          // finite-partial: power_law(k)
};

// Throws ConfigError for unknown names or missing parameters; solver errors
// propagate as std::domain_error.
Game make_game(const GameOptions& options);

// Deviations from an equilibrium profile, all confined to the first round.
struct Perturbation {
  enum class Kind { kBuyerThreshold, kRootPrice, kSkipBeliefUpdate };
  Kind kind = Kind::kBuyerThreshold;
  double amount = 0.0;

  // "buyer-threshold:-0.05", "root-price:+0.05" or "skip-belief-update".
  // Throws ConfigError on anything else.
  static Perturbation parse(const std::string& text);
  std::string describe() const;
};

// - kBuyerThreshold shifts the buyer's first-round acceptance cutoff.
// - kRootPrice shifts the seller's first price.
// - kSkipBeliefUpdate makes the seller ignore a first-round rejection.
Game perturb(const Game& game, const Perturbation& perturbation);

}  // namespace rsales

#endif  // REPEATED_SALES_GAMES_HPP_
