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
 * Maximum Macroscopic Quantum States: the equal superposition of the
 * extreme eigenvectors of the observable, and a numerical check that no
 * state, pure or mixed, exceeds its measure (a_max - a_min) / 2.
 *
 * For pure states M depends only on the class weights w_a = sum |c_i|, so the
 * search runs over the nonnegative orthant of class weights. On the simplex
 * the objective w^T D w with D_ab = |a - b| is concave (|a - b| is a
 * conditionally negative definite kernel), so projected ascent from any
 * start reaches the global maximum; restarts guard against stalls.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "macroq/core.hpp"
#include "macroq/measure.hpp"
#include "macroq/oracle.hpp"
#include "macroq/random.hpp"

namespace macroq {

inline constexpr std::size_t kMaxOptimizerClasses = 64;
inline constexpr Index kMaxTheoremDimension = 8;

struct SpectrumExtremes {
  double min_value = 0.0;
  double max_value = 0.0;
  Index min_index = 0;  // lowest basis index attaining the minimum class
  Index max_index = 0;  // lowest basis index attaining the maximum class
  double half_span() const noexcept { return 0.5 * (max_value - min_value); }
};

inline SpectrumExtremes spectrum_extremes(const Observable& obs) {
  SpectrumExtremes ex;
  ex.min_value = ex.max_value = obs.eigenvalue(0);
  for (Index i = 1; i < obs.dimension(); ++i) {
    const double a = obs.eigenvalue(i);
    if (a < ex.min_value) ex.min_value = a;
    if (a > ex.max_value) ex.max_value = a;
  }
  bool have_min = false;
  bool have_max = false;
  for (Index i = 0; i < obs.dimension() && !(have_min && have_max); ++i) {
    const double a = obs.eigenvalue(i);
    if (!have_min && same_value(a, ex.min_value)) {
      ex.min_index = i;
      have_min = true;
    }
    if (!have_max && same_value(a, ex.max_value)) {
      ex.max_index = i;
      have_max = true;
    }
  }
  return ex;
}

/// (|i_max> + e^{i phi} |i_min>)/sqrt(2). Ties within a degenerate extreme
/// class resolve to the lowest basis index.
inline PureState construct_mmqs(const Observable& obs, double phi) {
  const auto ex = spectrum_extremes(obs);
  if (same_value(ex.max_value, ex.min_value)) {
    fail(ErrorKind::FlatSpectrum, "observable '" + obs.name() + "' has a single eigenvalue");
  }
  const double h = std::sqrt(0.5);
  return PureState(obs.dimension(),
                   {{ex.max_index, Complex(h, 0.0)}, {ex.min_index, std::polar(h, phi)}});
}

/// sum_ab w_a w_b |a - b| / (sum w)^2.
inline double pure_objective(std::span<const double> weights, std::span<const double> eigenvalues) {
  if (weights.size() != eigenvalues.size()) {
    fail(ErrorKind::DimensionMismatch, "weights and eigenvalues differ in length");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) fail(ErrorKind::InvalidArgument, "weights must be nonnegative");
    total += w;
  }
  if (!(total > 0.0)) fail(ErrorKind::AllZeroWeights, "all weights are zero");
  double s = 0.0;
  for (std::size_t a = 0; a < weights.size(); ++a) {
    for (std::size_t b = a + 1; b < weights.size(); ++b) {
      s += 2.0 * weights[a] * weights[b] * std::abs(eigenvalues[a] - eigenvalues[b]);
    }
  }
  return s / (total * total);
}

struct OptimizationResult {
  double best_m = 0.0;
  /// Class weights on the simplex, aligned with `class_eigenvalues`.
  std::vector<double> weights;
  std::vector<double> class_eigenvalues;
  int restarts_used = 0;
  bool converged = false;

  /// Fraction of the weight carried by the lowest and highest classes.
  double extreme_mass() const {
    if (weights.empty()) return 0.0;
    double total = 0.0;
    for (double w : weights) total += w;
    const double ends = weights.size() == 1 ? weights.front() : weights.front() + weights.back();
    return ends / total;
  }
};

/// Distinct eigenvalues of the observable, ascending, merged by tolerance.
inline std::vector<double> distinct_eigenvalues(const Observable& obs) {
  std::vector<SpectralClass> classes;
  for (double a : obs.eigenvalues()) classes.push_back({a, 1.0, 1.0});
  std::vector<double> out;
  for (const auto& c : detail::coalesce_classes(std::move(classes)).classes) out.push_back(c.eigenvalue);
  return out;
}

namespace detail {

inline constexpr int kMaxAscentIterations = 10000;
inline constexpr double kProjectedGradientTolerance = 1e-9;

struct AscentOutcome {
  std::vector<double> w;
  double value = 0.0;
  bool converged = false;
};

/// Euclidean projection onto the probability simplex (sort-and-threshold).
inline void project_to_simplex(std::vector<double>& v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) tau = t;
  }
  for (auto& x : v) x = std::max(0.0, x - tau);
}

inline constexpr double kArmijo = 1e-4;

/// Projected gradient ascent on the simplex. The step halves from 1 until
/// the Armijo condition holds; a plain "no decrease" test lets the iterate
/// bounce between mirror images of the optimum. When no step size passes,
/// the point is stationary to working precision and counts as converged.
inline AscentOutcome ascend(const std::vector<double>& e, std::vector<double> w) {
  const std::size_t k = e.size();
  std::vector<double> g(k);
  std::vector<double> cand(k);
  auto objective = [&](const std::vector<double>& v) { return pure_objective(v, e); };
  double f = objective(w);
  AscentOutcome out;
  for (int iter = 0; iter < kMaxAscentIterations; ++iter) {
    // With sum w = 1 the gradient of w^T D w / (sum w)^2 is 2 (D w - f 1).
    for (std::size_t a = 0; a < k; ++a) {
      double s = 0.0;
      for (std::size_t b = 0; b < k; ++b) s += std::abs(e[a] - e[b]) * w[b];
      g[a] = 2.0 * (s - f);
    }
    // Norm of the gradient mapping at unit step measures stationarity.
    cand = w;
    for (std::size_t a = 0; a < k; ++a) cand[a] += g[a];
    project_to_simplex(cand);
    double pg2 = 0.0;
    for (std::size_t a = 0; a < k; ++a) pg2 += (cand[a] - w[a]) * (cand[a] - w[a]);
    if (std::sqrt(pg2) < kProjectedGradientTolerance) {
      out.converged = true;
      break;
    }
    bool moved = false;
    for (double t = 1.0; t > 1e-30; t *= 0.5) {
      for (std::size_t a = 0; a < k; ++a) cand[a] = w[a] + t * g[a];
      project_to_simplex(cand);
      double ascent = 0.0;
      for (std::size_t a = 0; a < k; ++a) ascent += g[a] * (cand[a] - w[a]);
      const double fc = objective(cand);
      if (fc > f && fc - f >= kArmijo * ascent) {
        w = cand;
        f = fc;
        moved = true;
        break;
      }
    }
    if (!moved) {
      out.converged = true;
      break;
    }
  }
  out.w = std::move(w);
  out.value = f;
  return out;
}

}  // namespace detail

/// Maximizes M over pure states of `obs` from Dirichlet(1, ..., 1) starts
/// over the eigenvalue classes. Non-convergence is reported, not thrown.
inline OptimizationResult maximize_measure(const Observable& obs, int restarts, std::uint64_t seed) {
  if (restarts < 1) fail(ErrorKind::InvalidArgument, "restarts must be >= 1");
  const auto e = distinct_eigenvalues(obs);
  if (e.size() > kMaxOptimizerClasses) {
    fail(ErrorKind::TooLarge, "optimizer supports at most 64 distinct eigenvalues");
  }
  OptimizationResult best;
  best.class_eigenvalues = e;
  best.best_m = -1.0;
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    std::vector<double> w(e.size());
    double total = 0.0;
    for (auto& x : w) total += (x = rng.exponential());
    for (auto& x : w) x /= total;
    auto run = detail::ascend(e, std::move(w));
    if (run.value > best.best_m) {
      best.best_m = run.value;
      best.weights = std::move(run.w);
      best.converged = run.converged;
    }
  }
  best.restarts_used = restarts;
  return best;
}

struct TheoremReport {
  double d_max_over_2 = 0.0;
  double best_m = 0.0;
  double max_sampled_m = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t bound_violations = 0;
  bool converged = false;
  bool degenerate = false;
  /// |best_m - d_max/2| <= 1e-6.
  bool optimum_attained = false;
  /// Optimizer weight fraction on the two extreme classes.
  double extreme_mass = 0.0;
  /// Whether the mass on the extremes demonstrates uniqueness; only
  /// meaningful without degeneracy.
  bool unique_support = false;

  bool holds() const noexcept { return bound_violations == 0 && optimum_attained; }
};

inline constexpr double kBoundSlack = 1e-9;
inline constexpr double kOptimumTolerance = 1e-6;
inline constexpr double kExtremeMassTolerance = 1e-4;
inline constexpr int kTheoremRestarts = 20;

/**
 * Samples `trials` Hilbert-Schmidt random density matrices and `trials`
 * random pure states, counting any measure above (a_max - a_min)/2 + 1e-9,
 * and checks that the optimizer reaches the bound within 1e-6.
 */
inline TheoremReport scan_theorem(const Observable& obs, int trials, std::uint64_t seed) {
  if (obs.dimension() > kMaxTheoremDimension) {
    fail(ErrorKind::TooLarge, "theorem scan supports dimension <= 8");
  }
  if (trials < 0) fail(ErrorKind::InvalidArgument, "trials must be >= 0");
  TheoremReport report;
  const auto ex = spectrum_extremes(obs);
  report.d_max_over_2 = ex.half_span();
  report.degenerate = distinct_eigenvalues(obs).size() < obs.dimension();
  const double bound = report.d_max_over_2 + kBoundSlack;
  const Index dim = obs.dimension();
  for (int t = 0; t < trials; ++t) {
    const auto stream = static_cast<std::uint64_t>(t);
    const double m_mixed =
        measure_m(random_density(dim, derive_seed(seed, 2 * stream)).to_density(), obs).m;
    const double m_pure = measure_m_pure(random_pure(dim, derive_seed(seed, 2 * stream + 1)), obs).m;
    for (double m : {m_mixed, m_pure}) {
      report.max_sampled_m = std::max(report.max_sampled_m, m);
      if (m > bound) ++report.bound_violations;
      ++report.samples;
    }
  }
  const auto opt = maximize_measure(obs, kTheoremRestarts, derive_seed(seed, 0xfeedULL));
  report.best_m = opt.best_m;
  report.converged = opt.converged;
  report.optimum_attained = std::abs(opt.best_m - report.d_max_over_2) <= kOptimumTolerance;
  report.extreme_mass = opt.extreme_mass();
  report.unique_support = !report.degenerate && report.extreme_mass >= 1.0 - kExtremeMassTolerance;
  return report;
}

/// As scan_theorem, but a bound violation or a missed optimum throws
/// CounterexampleFound.
inline TheoremReport verify_theorem(const Observable& obs, int trials, std::uint64_t seed) {
  auto report = scan_theorem(obs, trials, seed);
  if (!report.holds()) {
    fail(ErrorKind::CounterexampleFound,
         std::to_string(report.bound_violations) + " samples above the bound; optimizer reached " +
             std::to_string(report.best_m) + " vs " + std::to_string(report.d_max_over_2));
  }
  return report;
}

}  // namespace macroq
