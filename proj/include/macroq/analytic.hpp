// Copyright 2026 The macroq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Exact combinatorics of the uniform product state (|0>+|1>)/sqrt(2) per spin
 * measured against total magnetization. All matrix elements are equal, so
 * P(d) reduces to counting ordered basis pairs whose excitation numbers
 * differ by d.
 *
 * Distances are in units of one spin flip (|up - down| of the spin
 * convention; 1 for the default +-1/2).
 */

#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "macroq/measure.hpp"
#include "macroq/states.hpp"

namespace macroq {

using BigInt = boost::multiprecision::cpp_int;

/// Reduced fraction with arbitrary-precision numerator and denominator.
class ExactRational {
 public:
  ExactRational() = default;
  ExactRational(BigInt numerator, BigInt denominator = 1)
      : value_(boost::multiprecision::cpp_rational(std::move(numerator), std::move(denominator))) {}
  ExactRational(long long numerator, long long denominator = 1)
      : ExactRational(BigInt(numerator), BigInt(denominator)) {}

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }
  double to_double() const { return value_.convert_to<double>(); }
  std::string str() const { return value_.str(); }

  friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.value_ == b.value_; }
  friend ExactRational operator+(const ExactRational& a, const ExactRational& b) {
    return ExactRational(FromRational{}, a.value_ + b.value_);
  }
  friend ExactRational operator*(const ExactRational& a, const ExactRational& b) {
    return ExactRational(FromRational{}, a.value_ * b.value_);
  }

 private:
  struct FromRational {};
  ExactRational(FromRational, boost::multiprecision::cpp_rational v) : value_(std::move(v)) {}
  boost::multiprecision::cpp_rational value_;
};

/// Row n of Pascal's triangle.
inline std::vector<BigInt> binomial_row(int n) {
  if (n < 0) fail(ErrorKind::OutOfRange, "binomial row needs n >= 0");
  std::vector<BigInt> row(static_cast<std::size_t>(n) + 1);
  row[0] = 1;
  for (int k = 1; k <= n; ++k) {
    row[static_cast<std::size_t>(k)] = row[static_cast<std::size_t>(k - 1)] * (n - k + 1) / k;
  }
  return row;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  return binomial_row(n)[static_cast<std::size_t>(k)];
}

namespace detail {

inline BigInt overlap_sum(const std::vector<BigInt>& row, int n, int d) {
  BigInt s = 0;
  for (int m = 0; m + d <= n; ++m) {
    s += row[static_cast<std::size_t>(m)] * row[static_cast<std::size_t>(m + d)];
  }
  return s;
}

inline void require_uniform_n(int n) {
  if (n < 1) fail(ErrorKind::OutOfRange, "uniform analytics need n >= 1");
}

}  // namespace detail

/**
 * Number of ordered basis pairs (i, j) whose excitation counts differ by d.
 * For d > 0 both signs of the difference contribute, hence the factor 2;
 * the d = 0 class is counted once, so the counts over d sum to 4^n.
 */
inline ExactRational uniform_pair_count(int n, int d) {
  detail::require_uniform_n(n);
  if (d < 0 || d > n) {
    fail(ErrorKind::OutOfRange, "distance " + std::to_string(d) + " outside [0, " +
                                    std::to_string(n) + "]");
  }
  const auto row = binomial_row(n);
  const BigInt s = detail::overlap_sum(row, n, d);
  return ExactRational(d == 0 ? s : 2 * s);
}

/// Exact M of the uniform state in flip units: sum_d d N_d / 4^n.
inline ExactRational uniform_measure_sum(int n) {
  detail::require_uniform_n(n);
  const auto row = binomial_row(n);
  BigInt numerator = 0;
  for (int d = 1; d <= n; ++d) numerator += 2 * d * detail::overlap_sum(row, n, d);
  return ExactRational(numerator, BigInt(1) << (2 * n));
}

inline DistanceDistribution uniform_distribution(int n, SpinBasisConvention conv = {}) {
  detail::require_uniform_n(n);
  const double flip = std::abs(conv.up - conv.down);
  const auto row = binomial_row(n);
  const BigInt total = BigInt(1) << (2 * n);
  DistanceDistribution dist;
  for (int d = 0; d <= n; ++d) {
    const BigInt s = detail::overlap_sum(row, n, d);
    const ExactRational p(d == 0 ? s : 2 * s, total);
    dist.points.push_back({d * flip, p.to_double()});
  }
  return dist;
}

/// Measure report for the uniform state at any n, from exact counting.
inline MeasureReport uniform_measure_report(int n, SpinBasisConvention conv = {},
                                            double unit_mmqs_value = kSpinUnitMmqs) {
  MeasureReport report;
  report.m = uniform_measure_sum(n).to_double() * std::abs(conv.up - conv.down);
  report.distribution = uniform_distribution(n, conv);
  report.n_eff = effective_size(report.m, unit_mmqs_value);
  report.path = ComputationPath::analytic;
  return report;
}

/// The simplified closed form (n+1)!(2n+1)! / (n!(n+2)! 2^{2n}), evaluated
/// literally, as a reference series. It agrees with uniform_measure_sum only at n = 1.
inline double uniform_measure_closed(int n) {
  detail::require_uniform_n(n);
  // (n+1)!/n! = n+1 and (2n+1)!/(n+2)! = (n+3)(n+4)...(2n+1).
  BigInt num = n + 1;
  for (int k = n + 3; k <= 2 * n + 1; ++k) num *= k;
  return ExactRational(num, BigInt(1) << (2 * n)).to_double();
}

/// exp(n ln((n + 1/2)^2 / ((n - 1)(n + 2)))), a reference approximation kept for comparison.
/// Singular at n = 1, where NaN is returned.
inline double uniform_measure_asymptotic(int n) {
  detail::require_uniform_n(n);
  if (n == 1) return std::numeric_limits<double>::quiet_NaN();
  const double x = n;
  return std::exp(x * std::log((x + 0.5) * (x + 0.5) / ((x - 1.0) * (x + 2.0))));
}

}  // namespace macroq
