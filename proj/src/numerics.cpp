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

#include "repeated_sales/numerics.hpp"

#include <algorithm>
#include <exception>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

namespace rsales {
namespace {

struct GridBest {
  std::size_t index = 0;
  std::vector<double> xs;
  std::vector<double> values;
};

GridBest scan_grid(const std::function<double(double)>& f, double a, double b,
                   int grid_points) {
  if (grid_points < 2) throw std::invalid_argument("grid needs >= 2 points");
  GridBest best;
  best.xs = linspace(a, b, static_cast<std::size_t>(grid_points));
  best.values.resize(best.xs.size());
  for (std::size_t i = 0; i < best.xs.size(); ++i) {
    best.values[i] = f(best.xs[i]);
    // Strict comparison keeps the first (smallest) maximizer.
    if (best.values[i] > best.values[best.index]) best.index = i;
  }
  return best;
}

}  // namespace

double golden_section_argmax(const std::function<double(double)>& f, double a,
                             double b, double tol, int max_iterations) {
  static const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < max_iterations && (b - a) > tol; ++it) {
    // Ties keep the left part so plateaus resolve toward the infimum.
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

ArgMax grid_golden_argmax(const std::function<double(double)>& f, double a,
                          double b, int grid_points, double tol) {
  if (!(b > a)) return {a, f(a)};
  const GridBest grid = scan_grid(f, a, b, grid_points);
  const std::size_t i = grid.index;
  const std::size_t lo = i == 0 ? 0 : i - 1;
  const std::size_t hi = std::min(i + 1, grid.xs.size() - 1);
  const double x = golden_section_argmax(f, grid.xs[lo], grid.xs[hi], tol);
  ArgMax best{x, f(x)};
  if (grid.values[i] > best.value ||
      (grid.values[i] == best.value && grid.xs[i] < best.x)) {
    best = {grid.xs[i], grid.values[i]};
  }
  // Exact endpoints win ties against interior refinements.
  if (grid.values.front() >= best.value) best = {a, grid.values.front()};
  else if (grid.values.back() > best.value) best = {b, grid.values.back()};
  return best;
}

ArgMax grid_derivative_argmax(const std::function<double(double)>& f,
                              const std::function<double(double)>& df,
                              double a, double b, int grid_points) {
  if (!(b > a)) return {a, f(a)};
  const GridBest grid = scan_grid(f, a, b, grid_points);
  const std::size_t i = grid.index;
  double lo = grid.xs[i == 0 ? 0 : i - 1];
  double hi = grid.xs[std::min(i + 1, grid.xs.size() - 1)];
  ArgMax best{grid.xs[i], grid.values[i]};
  if (df(lo) > 0.0 && df(hi) < 0.0) {
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (df(mid) > 0.0 ? lo : hi) = mid;
    }
    const double x = 0.5 * (lo + hi);
    const double fx = f(x);
    if (fx >= best.value) best = {x, fx};
  } else {
    const double x = golden_section_argmax(f, lo, hi, 1e-15);
    const double fx = f(x);
    if (fx > best.value) best = {x, fx};
  }
  return best;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> xs(n);
  if (n == 1) {
    xs[0] = a;
    return xs;
  }
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  xs.back() = b;
  return xs;
}

std::vector<double> logspace(double a, double b, std::size_t n) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("logspace needs positive endpoints");
  }
  std::vector<double> xs = linspace(std::log(a), std::log(b), n);
  for (double& x : xs) x = std::exp(x);
  if (n > 0) {
    xs.front() = a;
    xs.back() = b;
  }
  return xs;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.subspan(0, half)) +
         pairwise_sum(values.subspan(half));
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin >= end) break;
      workers.emplace_back([&fn, &errors, w, begin, end] {
        try {
          for (std::size_t i = begin; i < end; ++i) fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string format_number(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

}  // namespace rsales
