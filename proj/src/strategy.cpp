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

#include "repeated_sales/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "repeated_sales/numerics.hpp"

namespace rsales {
namespace {

int truncation_length(double delta, double high, double tolerance) {
  if (delta >= 1.0) return 1;
  const double target = tolerance / 10.0 * delta / high;
  const double t = std::ceil(std::log(target) / std::log1p(-delta));
  return std::max(1, static_cast<int>(t));
}

void check_delta(double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1], got " +
                                format_number(delta));
  }
}

}  // namespace

Regime Regime::fixed_horizon(int rounds) {
  if (rounds < 1) throw std::invalid_argument("horizon must be >= 1");
  Regime r;
  r.kind_ = Kind::kFixedHorizon;
  r.rounds_ = rounds;
  return r;
}

Regime Regime::discounted(double delta, double high, double tolerance) {
  check_delta(delta);
  Regime r;
  r.kind_ = Kind::kDiscounted;
  r.delta_ = delta;
  r.rounds_ = truncation_length(delta, high, tolerance);
  return r;
}

Regime Regime::geometric_stopping(double delta, double high,
                                  double tolerance) {
  Regime r = discounted(delta, high, tolerance);
  r.kind_ = Kind::kGeometricStopping;
  return r;
}

double Regime::weight(int i) const {
  if (kind_ == Kind::kFixedHorizon) return 1.0;
  return std::pow(1.0 - delta_, i);
}

double Regime::remaining_weight(int i) const {
  if (kind_ == Kind::kFixedHorizon) return std::max(0, rounds_ - i);
  return std::pow(1.0 - delta_, i) / delta_;
}

double Regime::tail_bound(double high) const {
  if (kind_ == Kind::kFixedHorizon) return 0.0;
  return std::pow(1.0 - delta_, rounds_) * high / delta_;
}

std::string Regime::describe() const {
  switch (kind_) {
    case Kind::kFixedHorizon:
      return "fixed_horizon(n=" + std::to_string(rounds_) + ")";
    case Kind::kDiscounted:
      return "discounted(delta=" + format_number(delta_) +
             ", T=" + std::to_string(rounds_) + ")";
    case Kind::kGeometricStopping:
      return "geometric_stopping(delta=" + format_number(delta_) + ")";
  }
  return "";
}

}  // namespace rsales
