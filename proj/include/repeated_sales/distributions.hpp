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

#ifndef REPEATED_SALES_DISTRIBUTIONS_HPP_
#define REPEATED_SALES_DISTRIBUTIONS_HPP_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rsales {

// Raised for malformed distribution configs; the CLI maps it to exit code 3.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class DistributionKind { kUniform, kPowerLaw, kPiecewiseLinear };

using CdfKnot = std::pair<double, double>;

struct MonopolyPrice {
  double price = 0.0;
  double revenue = 0.0;
};

// An atomless buyer value prior F on [support_low, support_high].
//
// Three families are representable: uniform(a, b); power_law(k) with density
// (k+1) x^k on [0, 1], optionally stretched to [0, scale]; and a continuous
// piecewise-linear CDF. Restrictions stay in closed form where the family is
// closed under conditioning (uniform, power law on [0, t], piecewise linear);
// otherwise the base CDF is renormalised over a window.
class ValueDistribution {
 public:
  static ValueDistribution uniform(double low, double high);
  static ValueDistribution power_law(int k, double scale = 1.0);
  static ValueDistribution piecewise_linear_cdf(std::vector<CdfKnot> knots);

  // Parses {"type":"uniform","low":..,"high":..}, {"type":"power_law","k":..}
  // or {"type":"piecewise_linear_cdf","knots":[[v,F],..]}. Throws ConfigError.
  static ValueDistribution from_json(const std::string& text);
  std::string to_json() const;

  DistributionKind kind() const { return kind_; }
  double support_low() const { return low_; }
  double support_high() const { return high_; }
  int power() const { return power_; }
  double scale() const { return scale_; }
  const std::vector<CdfKnot>& knots() const { return knots_; }
  // True when the CDF is a renormalised window of a wider base distribution.
  bool windowed() const { return windowed_; }

  // F(x), clamped to 0 below the support and 1 above it.
  double cdf(double x) const;
  // Density; right derivative at piecewise knots, last segment at the top.
  double pdf(double x) const;
  // Inverse CDF for u in [0, 1].
  double quantile(double u) const;
  // Probability mass of [a, b].
  double mass(double a, double b) const { return cdf(b) - cdf(a); }

  // F conditioned on [a, b]. Throws "degenerate restriction" on zero mass.
  ValueDistribution restrict(double a, double b) const;
  // The law of c * v.
  ValueDistribution scaled(double factor) const;

 private:
  ValueDistribution() = default;
  double base_cdf(double x) const;
  double base_pdf(double x) const;
  double base_quantile(double u) const;

  DistributionKind kind_ = DistributionKind::kUniform;
  double low_ = 0.0;
  double high_ = 1.0;
  int power_ = 0;
  double scale_ = 1.0;
  std::vector<CdfKnot> knots_;
  bool windowed_ = false;
  double base_cdf_low_ = 0.0;
  double base_cdf_high_ = 1.0;
};

// p (1 - F(p)): expected revenue of one posted price.
double revenue_curve(const ValueDistribution& dist, double price);

// Revenue-maximising posted price over [low, high], smallest one on ties.
MonopolyPrice monopoly_price(const ValueDistribution& dist);

// x - (1 - F(x)) / f(x). Throws "density vanishes" where f(x) = 0.
double virtual_value(const ValueDistribution& dist, double x);

}  // namespace rsales

#endif  // REPEATED_SALES_DISTRIBUTIONS_HPP_
