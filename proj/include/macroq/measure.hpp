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
 * The macroscopic-coherence measure: the |rho_ij|-weighted mean of the
 * eigenvalue distance |a_i - a_j| over all ordered matrix-element pairs,
 * diagonal included, together with its distance distribution P(delta).
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "macroq/core.hpp"

namespace macroq {

struct DistancePoint {
  double delta = 0.0;
  double probability = 0.0;
};

/// P(delta), sorted by delta ascending, deltas distinct after merging.
struct DistanceDistribution {
  std::vector<DistancePoint> points;
};

struct BinSpec {
  double width = 0.1;
  double origin = 0.0;
};

enum class ComputationPath { grouped, dense, analytic };

constexpr const char* to_string(ComputationPath path) noexcept {
  switch (path) {
    case ComputationPath::grouped: return "grouped";
    case ComputationPath::dense: return "dense";
    case ComputationPath::analytic: return "analytic";
  }
  return "unknown";
}

struct MeasureReport {
  double m = 0.0;
  std::uint64_t n_eff = 0;
  DistanceDistribution distribution;
  ComputationPath path = ComputationPath::dense;
};

/// Measure of a one-particle MMQS in spin-1/2 magnetization units.
inline constexpr double kSpinUnitMmqs = 0.5;

inline double distance(const Observable& obs, Index i, Index j) {
  return std::abs(obs.eigenvalue(i) - obs.eigenvalue(j));
}

/// Sum of |rho_ij| over i != j.
inline double l1_coherence(const DensityMatrix& rho) {
  double s = 0.0;
  for (const auto& e : rho.entries()) {
    if (e.row != e.col) s += 2.0 * std::abs(e.value);
  }
  return s;
}

/// Sum of d(i,j) |rho_ij| over all ordered pairs.
inline double raw_weighted_sum(const DensityMatrix& rho, const Observable& obs) {
  validate_pair(rho, obs);
  double s = 0.0;
  for (const auto& e : rho.entries()) {
    if (e.row != e.col) s += 2.0 * distance(obs, e.row, e.col) * std::abs(e.value);
  }
  return s;
}

inline std::uint64_t effective_size(double m, double unit_mmqs_value) {
  if (!(unit_mmqs_value > 0.0) || !std::isfinite(unit_mmqs_value)) {
    fail(ErrorKind::NonPositiveUnit, "one-particle MMQS value must be positive");
  }
  if (!(m >= 0.0) || !std::isfinite(m)) fail(ErrorKind::InvalidArgument, "measure must be finite and >= 0");
  if (m == 0.0) return 0;
  const double q = m / unit_mmqs_value;
  // Ratios that land on an integer up to rounding count as that integer.
  const double r = std::round(q);
  if (std::abs(q - r) <= 1e-9 * std::max(1.0, q)) return static_cast<std::uint64_t>(r);
  return static_cast<std::uint64_t>(std::ceil(q));
}

inline double mean_of_distribution(const DistanceDistribution& dist) {
  double total = 0.0;
  double mean = 0.0;
  for (const auto& p : dist.points) {
    if (!(p.delta >= 0.0) || !(p.probability >= 0.0) || p.probability > 1.0 + kNormTolerance) {
      fail(ErrorKind::InvalidArgument, "distribution point out of range");
    }
    total += p.probability;
    mean += p.delta * p.probability;
  }
  if (std::abs(total - 1.0) > kNormTolerance) {
    fail(ErrorKind::NonNormalized, "distribution sums to " + std::to_string(total));
  }
  return mean;
}

namespace detail {

struct MergePoints {
  DistancePoint operator()(DistancePoint a, const DistancePoint& b) const {
    a.probability += b.probability;
    return a;
  }
  DistancePoint with_key(DistancePoint a, double key) const {
    a.delta = key;
    return a;
  }
};

/// Merges (delta, raw weight) pairs into a normalized distribution.
inline DistanceDistribution normalize_points(std::vector<DistancePoint> raw, double total) {
  auto merged = coalesce(
      std::move(raw), [](const DistancePoint& p) { return p.delta; },
      [](const DistancePoint& p) { return p.probability; }, MergePoints{});
  for (auto& p : merged) p.probability /= total;
  return DistanceDistribution{std::move(merged)};
}

}  // namespace detail

/// Sum over ordered pairs of w_a w_b |a - b| / (sum w)^2, evaluated on the
/// eigenvalue classes of a pure state.
inline MeasureReport measure_grouped(const SpectralWeights& weights,
                                     double unit_mmqs_value = kSpinUnitMmqs) {
  const auto& cls = weights.classes;
  if (cls.empty()) fail(ErrorKind::AllZeroWeights, "no eigenvalue class carries weight");
  // Rescale by the largest weight: the ratio is degree-0 homogeneous, and
  // equal-weight superpositions then evaluate without rounding.
  double wmax = 0.0;
  for (const auto& c : cls) wmax = std::max(wmax, c.weight);
  std::vector<double> w(cls.size());
  double total = 0.0;
  for (std::size_t a = 0; a < cls.size(); ++a) {
    w[a] = cls[a].weight / wmax;
    total += w[a];
  }
  std::vector<DistancePoint> raw;
  raw.reserve(cls.size() * (cls.size() + 1) / 2);
  double numerator = 0.0;
  for (std::size_t a = 0; a < cls.size(); ++a) {
    raw.push_back({0.0, w[a] * w[a]});
    for (std::size_t b = a + 1; b < cls.size(); ++b) {
      const double d = std::abs(cls[b].eigenvalue - cls[a].eigenvalue);
      const double pair = 2.0 * w[a] * w[b];
      numerator += pair * d;
      raw.push_back({d, pair});
    }
  }
  const double denom = total * total;
  MeasureReport report;
  report.m = numerator / denom;
  report.distribution = detail::normalize_points(std::move(raw), denom);
  report.n_eff = effective_size(report.m, unit_mmqs_value);
  report.path = ComputationPath::grouped;
  return report;
}

inline MeasureReport measure_m_pure(const PureState& psi, const Observable& obs,
                                    double unit_mmqs_value = kSpinUnitMmqs) {
  return measure_grouped(group_by_eigenvalue(psi, obs), unit_mmqs_value);
}

inline DistanceDistribution distance_distribution(const DensityMatrix& rho, const Observable& obs) {
  validate_pair(rho, obs);
  std::vector<DistancePoint> raw;
  raw.reserve(rho.entries().size());
  double total = 0.0;
  for (const auto& e : rho.entries()) {
    const double mag = std::abs(e.value) * (e.row == e.col ? 1.0 : 2.0);
    total += mag;
    raw.push_back({distance(obs, e.row, e.col), mag});
  }
  return detail::normalize_points(std::move(raw), total);
}

inline DistanceDistribution distance_distribution(const PureState& psi, const Observable& obs) {
  return measure_m_pure(psi, obs).distribution;
}

inline MeasureReport measure_m(const DensityMatrix& rho, const Observable& obs,
                               double unit_mmqs_value = kSpinUnitMmqs) {
  validate_pair(rho, obs);
  double numerator = 0.0;
  double total = 0.0;
  std::vector<DistancePoint> raw;
  raw.reserve(rho.entries().size());
  for (const auto& e : rho.entries()) {
    const double mag = std::abs(e.value) * (e.row == e.col ? 1.0 : 2.0);
    const double d = e.row == e.col ? 0.0 : distance(obs, e.row, e.col);
    total += mag;
    numerator += d * mag;
    raw.push_back({d, mag});
  }
  MeasureReport report;
  report.m = numerator / total;
  report.distribution = detail::normalize_points(std::move(raw), total);
  report.n_eff = effective_size(report.m, unit_mmqs_value);
  report.path = ComputationPath::dense;
  return report;
}

inline MeasureReport measure(const State& state, const Observable& obs,
                             double unit_mmqs_value = kSpinUnitMmqs) {
  if (const auto* psi = std::get_if<PureState>(&state)) return measure_m_pure(*psi, obs, unit_mmqs_value);
  return measure_m(std::get<DensityMatrix>(state), obs, unit_mmqs_value);
}

inline double bin_center(double a, const BinSpec& bins) {
  return bins.origin + (std::floor((a - bins.origin) / bins.width) + 0.5) * bins.width;
}

namespace detail {

inline void check_bins(const BinSpec& bins) {
  if (!(bins.width > 0.0) || !std::isfinite(bins.width) || !std::isfinite(bins.origin)) {
    fail(ErrorKind::InvalidArgument, "bin width must be finite and positive");
  }
}

}  // namespace detail

/// Replaces every eigenvalue by the center of its bin.
inline Observable bin_observable(const Observable& obs, const BinSpec& bins) {
  detail::check_bins(bins);
  return obs.transformed(obs.name() + " (binned)", [bins](double a) { return bin_center(a, bins); });
}

/// Binning applied after grouping; classes sharing a bin merge.
inline SpectralWeights bin_classes(const SpectralWeights& weights, const BinSpec& bins) {
  detail::check_bins(bins);
  auto classes = weights.classes;
  for (auto& c : classes) c.eigenvalue = bin_center(c.eigenvalue, bins);
  return make_spectral_weights(std::move(classes));
}

}  // namespace macroq
