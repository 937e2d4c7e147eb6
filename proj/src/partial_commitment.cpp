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

#include "repeated_sales/partial_commitment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rsales {
namespace {

void absorb(PlayState& s, double top) {
  s.point_mass = true;
  s.belief_low = top;
  s.belief_high = top;
}

void record_acceptance(PlayState& s, double price) {
  s.ever_accepted = true;
  s.min_accepted_price = std::min(s.min_accepted_price, price);
}

}  // namespace

PlayState PartialCommitmentMachine::initial() const {
  PlayState s;
  s.belief_low = 0.0;
  s.belief_high = rules_->top();
  return s;
}

void PartialCommitmentMachine::validate(const PlayState& s) const {
  const bool bad_min =
      s.ever_accepted ? !std::isfinite(s.min_accepted_price)
                      : s.min_accepted_price != kInfinity;
  if (bad_min || !(s.belief_low <= s.belief_high) || s.belief_low < 0.0) {
    throw std::logic_error("corrupt belief state");
  }
}

PlayState PartialCommitmentMachine::update(PlayState s, double price,
                                           Decision d) const {
  validate(s);
  const int round = s.round++;
  const bool accepted = d == Decision::kAccept;
  if (s.point_mass) {
    // Recording here keeps "price = lowest accepted price" well defined after
    // an acceptance in the absorbing state.
    if (accepted) record_acceptance(s, price);
    return s;
  }
  if (s.ever_accepted) {
    if (accepted) {
      record_acceptance(s, price);
    } else {
      absorb(s, rules_->top());
    }
    return s;
  }
  const double t = rules_->indifference_threshold(round, price);
  if (!accepted) {
    if (price == 0.0) {
      absorb(s, rules_->top());
    } else if (t <= s.belief_high) {
      s.belief_high = t;
    }
    return s;
  }
  record_acceptance(s, price);
  if (t > s.belief_high) {
    absorb(s, rules_->top());
  } else {
    s.belief_low = t;
  }
  return s;
}

double PartialCommitmentMachine::price(const PlayState& s) const {
  validate(s);
  if (s.ever_accepted) return s.min_accepted_price;
  if (s.point_mass) return rules_->top();
  return rules_->equilibrium_price(s.round, s.belief_high);
}

double PartialCommitmentMachine::buyer_threshold(const PlayState& s,
                                                 double price) const {
  validate(s);
  if (s.ever_accepted || s.point_mass) return price;
  const double t = rules_->indifference_threshold(s.round, price);
  if (t <= s.belief_high) return t;
  return rules_->overpriced_threshold(s.round, price, s.belief_high);
}

std::string PartialCommitmentSeller::name() const {
  return machine_->rules().name() + " seller";
}

std::string PartialCommitmentBuyer::name() const {
  return machine_->rules().name() + " buyer";
}

}  // namespace rsales
