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

#ifndef REPEATED_SALES_NUMERICS_HPP_
#define REPEATED_SALES_NUMERICS_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace rsales {

// Grid size and price tolerance used by every one-dimensional argmax in the
// solvers.
inline constexpr int kDefaultGridPoints = 4097;
inline constexpr double kDefaultArgmaxTolerance = 1e-10;

struct ArgMax {
  double x = 0.0;
  double value = 0.0;
};

// Maximizes `f` over [a, b]: evaluates a uniform grid of `grid_points`
// points, then runs golden-section search on the two grid cells around the
// best grid point. Ties resolve to the smallest argument, so a plateau of
// maximizers reports its infimum (up to `tol`). The endpoints a and b are
// returned exactly whenever they are at least as good as the refined point.
ArgMax grid_golden_argmax(const std::function<double(double)>& f, double a,
                          double b, int grid_points = kDefaultGridPoints,
                          double tol = kDefaultArgmaxTolerance);

// Same grid bracketing, but the bracket is refined by bisection on the sign of
// the derivative `df`. Reaches full double precision on smooth objectives
// where golden section stalls near sqrt(machine epsilon).
ArgMax grid_derivative_argmax(const std::function<double(double)>& f,
                              const std::function<double(double)>& df,
                              double a, double b,
                              int grid_points = kDefaultGridPoints);

// Golden-section maximization of a unimodal function on [a, b].
double golden_section_argmax(const std::function<double(double)>& f, double a,
                             double b, double tol, int max_iterations = 400);

std::vector<double> linspace(double a, double b, std::size_t n);
std::vector<double> logspace(double a, double b, std::size_t n);

// Fixed-order pairwise summation; the result depends only on the input order.
double pairwise_sum(std::span<const double> values);

// Runs fn(i) for i in [0, n) on up to `threads` worker threads (0 picks the
// hardware concurrency). fn must only write to per-index storage.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  unsigned threads = 0);

// Formats a double with 12 significant digits.
std::string format_number(double x);

}  // namespace rsales

#endif  // REPEATED_SALES_NUMERICS_HPP_
