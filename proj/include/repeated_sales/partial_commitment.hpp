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

#ifndef REPEATED_SALES_PARTIAL_COMMITMENT_HPP_
#define REPEATED_SALES_PARTIAL_COMMITMENT_HPP_

#include <memory>
#include <string>

#include "repeated_sales/strategy.hpp"

namespace rsales {

// Scale-invariant pricing rules for a seller who has seen only rejections and
// believes v ~ prior restricted to [0, belief_end].
class PartialCommitmentRules {
 public:
  virtual ~PartialCommitmentRules() = default;
  virtual std::string name() const = 0;
  virtual bool stationary() const = 0;
  virtual double top() const { return 1.0; }
  // Price posted on the all-reject path.
  virtual double equilibrium_price(int round, double belief_end) const = 0;
  // Type indifferent between buying at `price` now and waiting, when waiting
  // moves the seller's belief to [0, that type].
  virtual double indifference_threshold(int round, double price) const = 0;
  // Acceptance cutoff when the indifference threshold exceeds belief_end, so a
  // rejection leaves the belief unchanged.
  virtual double overpriced_threshold(int round, double price,
                                      double belief_end) const = 0;
};

// The belief update shared by seller and buyer. Branch order: an absorbing
// point mass stays absorbing; after any acceptance a rejection is off-path and
// an acceptance lowers the recorded minimum; on the all-reject path the
// belief end moves to the indifference threshold of the posted price.
class PartialCommitmentMachine {
 public:
  explicit PartialCommitmentMachine(
      std::shared_ptr<const PartialCommitmentRules> rules)
      : rules_(std::move(rules)) {}

  const PartialCommitmentRules& rules() const { return *rules_; }

  PlayState initial() const;
  PlayState update(PlayState state, double price, Decision decision) const;
  double price(const PlayState& state) const;
  double buyer_threshold(const PlayState& state, double price) const;

  // Throws "corrupt belief state" when the state violates its invariants.
  void validate(const PlayState& state) const;

 private:
  std::shared_ptr<const PartialCommitmentRules> rules_;
};

class PartialCommitmentSeller : public SellerStrategy {
 public:
  explicit PartialCommitmentSeller(
      std::shared_ptr<const PartialCommitmentMachine> machine)
      : machine_(std::move(machine)) {}
  std::string name() const override;
  PlayState initial_state() const override { return machine_->initial(); }
  double price(const PlayState& s) const override {
    return machine_->price(s);
  }
  PlayState update(const PlayState& s, double price,
                   Decision d) const override {
    return machine_->update(s, price, d);
  }
  double price_cap(const PlayState& s) const override {
    return s.ever_accepted ? s.min_accepted_price : kInfinity;
  }
  bool stationary() const override {
    return machine_->rules().stationary();
  }

 private:
  std::shared_ptr<const PartialCommitmentMachine> machine_;
};

class PartialCommitmentBuyer : public BuyerStrategy {
 public:
  explicit PartialCommitmentBuyer(
      std::shared_ptr<const PartialCommitmentMachine> machine)
      : machine_(std::move(machine)) {}
  std::string name() const override;
  PlayState initial_state() const override { return machine_->initial(); }
  double threshold(const PlayState& s, double price) const override {
    return machine_->buyer_threshold(s, price);
  }
  PlayState update(const PlayState& s, double price,
                   Decision d) const override {
    return machine_->update(s, price, d);
  }
  bool stationary() const override {
    return machine_->rules().stationary();
  }

 private:
  std::shared_ptr<const PartialCommitmentMachine> machine_;
};

}  // namespace rsales

#endif  // REPEATED_SALES_PARTIAL_COMMITMENT_HPP_
