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

#include "repeated_sales/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "repeated_sales/numerics.hpp"

namespace rsales {
namespace {

using nlohmann::json;

double finite_number(const json& j, const char* field) {
  if (!j.contains(field) || !j.at(field).is_number()) {
    throw ConfigError(std::string("distribution field '") + field +
                      "' must be a number");
  }
  const double x = j.at(field).get<double>();
  if (!std::isfinite(x)) {
    throw ConfigError(std::string("distribution field '") + field +
                      "' must be finite");
  }
  return x;
}

}  // namespace

ValueDistribution ValueDistribution::uniform(double low, double high) {
  if (!std::isfinite(low) || !std::isfinite(high) || low < 0.0 ||
      !(high > low)) {
    throw ConfigError("uniform distribution needs 0 <= low < high");
  }
  ValueDistribution d;
  d.kind_ = DistributionKind::kUniform;
  d.low_ = low;
  d.high_ = high;
  return d;
}

ValueDistribution ValueDistribution::power_law(int k, double scale) {
  if (k < 0) throw ConfigError("power_law exponent k must be >= 0");
  if (!std::isfinite(scale) || !(scale > 0.0)) {
    throw ConfigError("power_law scale must be positive");
  }
  ValueDistribution d;
  d.kind_ = DistributionKind::kPowerLaw;
  d.power_ = k;
  d.scale_ = scale;
  d.low_ = 0.0;
  d.high_ = scale;
  return d;
}

ValueDistribution ValueDistribution::piecewise_linear_cdf(
    std::vector<CdfKnot> knots) {
  if (knots.size() < 2) {
    throw ConfigError("piecewise_linear_cdf needs at least two knots");
  }
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i].first) || !std::isfinite(knots[i].second)) {
      throw ConfigError("piecewise_linear_cdf knots must be finite");
    }
    if (i > 0 && !(knots[i].first > knots[i - 1].first &&
                   knots[i].second > knots[i - 1].second)) {
      throw ConfigError(
          "piecewise_linear_cdf knots must be strictly increasing in value "
          "and CDF (atoms and flat segments are not allowed)");
    }
  }
  if (knots.front().first < 0.0) {
    throw ConfigError("piecewise_linear_cdf support must be nonnegative");
  }
  if (knots.front().second != 0.0 || knots.back().second != 1.0) {
    throw ConfigError("piecewise_linear_cdf must start at CDF 0 and end at 1");
  }
  ValueDistribution d;
  d.kind_ = DistributionKind::kPiecewiseLinear;
  d.low_ = knots.front().first;
  d.high_ = knots.back().first;
  d.knots_ = std::move(knots);
  return d;
}

ValueDistribution ValueDistribution::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("distribution JSON does not parse: ") +
                      e.what());
  }
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    throw ConfigError("distribution JSON needs a string field 'type'");
  }
  const std::string type = j.at("type").get<std::string>();
  ValueDistribution d;
  if (type == "uniform") {
    d = uniform(finite_number(j, "low"), finite_number(j, "high"));
  } else if (type == "power_law") {
    const double k = finite_number(j, "k");
    if (k < 0.0 || k != std::floor(k) || k > 1000.0) {
      throw ConfigError("power_law k must be a nonnegative integer");
    }
    const double scale = j.contains("scale") ? finite_number(j, "scale") : 1.0;
    d = power_law(static_cast<int>(k), scale);
  } else if (type == "piecewise_linear_cdf") {
    if (!j.contains("knots") || !j.at("knots").is_array()) {
      throw ConfigError("piecewise_linear_cdf needs an array field 'knots'");
    }
    std::vector<CdfKnot> knots;
    for (const auto& knot : j.at("knots")) {
      if (!knot.is_array() || knot.size() != 2 || !knot[0].is_number() ||
          !knot[1].is_number()) {
        throw ConfigError("each knot must be a [value, cdf] pair");
      }
      knots.emplace_back(knot[0].get<double>(), knot[1].get<double>());
    }
    d = piecewise_linear_cdf(std::move(knots));
  } else {
    throw ConfigError("unknown distribution type '" + type + "'");
  }
  if (j.contains("window")) {
    const auto& w = j.at("window");
    if (!w.is_array() || w.size() != 2 || !w[0].is_number() ||
        !w[1].is_number()) {
      throw ConfigError("'window' must be a [low, high] pair");
    }
    try {
      d = d.restrict(w[0].get<double>(), w[1].get<double>());
    } catch (const std::domain_error& e) {
      throw ConfigError(e.what());
    }
  }
  return d;
}

std::string ValueDistribution::to_json() const {
  json j;
  switch (kind_) {
    case DistributionKind::kUniform:
      j = {{"type", "uniform"}, {"low", low_}, {"high", high_}};
      break;
    case DistributionKind::kPowerLaw:
      j = {{"type", "power_law"}, {"k", power_}};
      if (scale_ != 1.0) j["scale"] = scale_;
      if (windowed_) j["window"] = {low_, high_};
      break;
    case DistributionKind::kPiecewiseLinear: {
      json arr = json::array();
      for (const auto& [v, f] : knots_) arr.push_back({v, f});
      j = {{"type", "piecewise_linear_cdf"}, {"knots", arr}};
      break;
    }
  }
  return j.dump();
}

double ValueDistribution::base_cdf(double x) const {
  switch (kind_) {
    case DistributionKind::kUniform:
      return std::clamp((x - low_) / (high_ - low_), 0.0, 1.0);
    case DistributionKind::kPowerLaw:
      if (x <= 0.0) return 0.0;
      if (x >= scale_) return 1.0;
      return std::pow(x / scale_, power_ + 1);
    case DistributionKind::kPiecewiseLinear: {
      if (x <= knots_.front().first) return 0.0;
      if (x >= knots_.back().first) return 1.0;
      const auto it = std::upper_bound(
          knots_.begin(), knots_.end(), x,
          [](double value, const CdfKnot& k) { return value < k.first; });
      const CdfKnot& hi = *it;
      const CdfKnot& lo = *(it - 1);
      const double w = (x - lo.first) / (hi.first - lo.first);
      return lo.second + w * (hi.second - lo.second);
    }
  }
  return 0.0;
}

double ValueDistribution::base_pdf(double x) const {
  switch (kind_) {
    case DistributionKind::kUniform:
      return 1.0 / (high_ - low_);
    case DistributionKind::kPowerLaw:
      if (x < 0.0 || x > scale_) return 0.0;
      return (power_ + 1) * std::pow(x / scale_, power_) / scale_;
    case DistributionKind::kPiecewiseLinear: {
      if (x < knots_.front().first || x > knots_.back().first) return 0.0;
      auto it = std::upper_bound(
          knots_.begin(), knots_.end(), x,
          [](double value, const CdfKnot& k) { return value < k.first; });
      if (it == knots_.end()) --it;
      const CdfKnot& hi = *it;
      const CdfKnot& lo = *(it - 1);
      return (hi.second - lo.second) / (hi.first - lo.first);
    }
  }
  return 0.0;
}

double ValueDistribution::base_quantile(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  switch (kind_) {
    case DistributionKind::kUniform:
      return low_ + u * (high_ - low_);
    case DistributionKind::kPowerLaw:
      return scale_ * std::pow(u, 1.0 / (power_ + 1));
    case DistributionKind::kPiecewiseLinear: {
      if (u <= 0.0) return knots_.front().first;
      if (u >= 1.0) return knots_.back().first;
      const auto it = std::upper_bound(
          knots_.begin(), knots_.end(), u,
          [](double p, const CdfKnot& k) { return p < k.second; });
      const CdfKnot& hi = *it;
      const CdfKnot& lo = *(it - 1);
      const double w = (u - lo.second) / (hi.second - lo.second);
      return lo.first + w * (hi.first - lo.first);
    }
  }
  return 0.0;
}

double ValueDistribution::cdf(double x) const {
  if (x <= low_) return 0.0;
  if (x >= high_) return 1.0;
  if (!windowed_) return base_cdf(x);
  const double f = (base_cdf(x) - base_cdf_low_) /
                   (base_cdf_high_ - base_cdf_low_);
  return std::clamp(f, 0.0, 1.0);
}

double ValueDistribution::pdf(double x) const {
  if (x < low_ || x > high_) return 0.0;
  if (!windowed_) return base_pdf(x);
  return base_pdf(x) / (base_cdf_high_ - base_cdf_low_);
}

double ValueDistribution::quantile(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  if (!windowed_) return base_quantile(u);
  const double x =
      base_quantile(base_cdf_low_ + u * (base_cdf_high_ - base_cdf_low_));
  return std::clamp(x, low_, high_);
}

ValueDistribution ValueDistribution::restrict(double a, double b) const {
  a = std::max(a, low_);
  b = std::min(b, high_);
  if (!(b > a) || !(cdf(b) - cdf(a) > 0.0)) {
    throw std::domain_error("degenerate restriction: [" + format_number(a) +
                            ", " + format_number(b) + "] has zero mass");
  }
  switch (kind_) {
    case DistributionKind::kUniform:
      return uniform(a, b);
    case DistributionKind::kPiecewiseLinear: {
      const double fa = cdf(a);
      const double fb = cdf(b);
      std::vector<CdfKnot> knots{{a, 0.0}};
      for (const auto& [v, f] : knots_) {
        if (v > a && v < b) knots.emplace_back(v, (f - fa) / (fb - fa));
      }
      knots.emplace_back(b, 1.0);
      return piecewise_linear_cdf(std::move(knots));
    }
    case DistributionKind::kPowerLaw: {
      if (a == 0.0) return power_law(power_, b);
      ValueDistribution d = power_law(power_, scale_);
      d.windowed_ = true;
      d.low_ = a;
      d.high_ = b;
      d.base_cdf_low_ = d.base_cdf(a);
      d.base_cdf_high_ = d.base_cdf(b);
      return d;
    }
  }
  return *this;
}

ValueDistribution ValueDistribution::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw std::invalid_argument("scale factor must be positive");
  }
  switch (kind_) {
    case DistributionKind::kUniform:
      return uniform(low_ * factor, high_ * factor);
    case DistributionKind::kPiecewiseLinear: {
      std::vector<CdfKnot> knots = knots_;
      for (auto& k : knots) k.first *= factor;
      return piecewise_linear_cdf(std::move(knots));
    }
    case DistributionKind::kPowerLaw: {
      ValueDistribution d = power_law(power_, scale_ * factor);
      if (windowed_) return d.restrict(low_ * factor, high_ * factor);
      return d;
    }
  }
  return *this;
}

double revenue_curve(const ValueDistribution& dist, double price) {
  if (price <= dist.support_low()) return std::max(price, 0.0);
  if (price >= dist.support_high()) return 0.0;
  return price * (1.0 - dist.cdf(price));
}

MonopolyPrice monopoly_price(const ValueDistribution& dist) {
  const double lo = dist.support_low();
  const double hi = dist.support_high();
  if (dist.kind() == DistributionKind::kUniform) {
    const double p = std::max(lo, 0.5 * hi);
    return {p, p * (hi - p) / (hi - lo)};
  }
  if (dist.kind() == DistributionKind::kPowerLaw && !dist.windowed()) {
    const double k = dist.power();
    const double p = dist.scale() * std::pow(k + 2.0, -1.0 / (k + 1.0));
    return {p, p * (k + 1.0) / (k + 2.0)};
  }
  if (dist.kind() == DistributionKind::kPiecewiseLinear) {
    // Revenue is quadratic between knots: check knots and segment vertices.
    std::vector<double> edges{lo, hi};
    for (const auto& knot : dist.knots()) {
      if (knot.first > lo && knot.first < hi) edges.push_back(knot.first);
    }
    std::sort(edges.begin(), edges.end());
    MonopolyPrice best{lo, revenue_curve(dist, lo)};
    auto consider = [&](double x) {
      const double r = revenue_curve(dist, x);
      if (r > best.revenue || (r == best.revenue && x < best.price)) {
        best = {x, r};
      }
    };
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      const double a = edges[i];
      const double b = edges[i + 1];
      const double fa = dist.cdf(a);
      const double slope = (dist.cdf(b) - fa) / (b - a);
      consider(b);
      if (slope > 0.0) {
        consider(std::clamp((1.0 - fa + slope * a) / (2.0 * slope), a, b));
      }
    }
    return best;
  }
  const ArgMax best = grid_golden_argmax(
      [&dist](double p) { return revenue_curve(dist, p); }, lo, hi);
  return {best.x, best.value};
}

double virtual_value(const ValueDistribution& dist, double x) {
  const double f = dist.pdf(x);
  if (!(f > 0.0)) {
    throw std::domain_error("density vanishes at x = " + format_number(x));
  }
  return x - (1.0 - dist.cdf(x)) / f;
}

}  // namespace rsales
