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
 * The field quadrature X_theta = (a e^{-i theta} + a^dagger e^{i theta}) / 2 on a
 * truncated Fock space, its eigendecomposition, and the cat-state measure in
 * the quadrature eigenbasis.
 *
 * With the gauge U = diag(e^{i n theta}), X_theta = U X_0 U^dagger, so the
 * tridiagonal matrix is real and theta-independent; theta re-enters when a
 * Fock-basis state is rotated into the eigenbasis.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "macroq/core.hpp"
#include "macroq/measure.hpp"
#include "macroq/states.hpp"

namespace macroq {

struct SymmetricTridiagonal {
  std::vector<double> diagonal;
  /// off_diagonal[k] is the (k, k+1) entry; one shorter than `diagonal`.
  std::vector<double> off_diagonal;

  std::size_t size() const noexcept { return diagonal.size(); }
};

/// Ascending eigenvalues with orthonormal eigenvectors stored column by
/// column: vector k occupies [k * n, (k + 1) * n).
struct TridiagonalSpectrum {
  std::vector<double> eigenvalues;
  std::vector<double> eigenvectors;

  std::size_t size() const noexcept { return eigenvalues.size(); }
  std::span<const double> vector(std::size_t k) const {
    return std::span<const double>(eigenvectors).subspan(k * size(), size());
  }
};

/// Matrix of X_theta on Fock levels 0..levels-1 in the real gauge.
inline SymmetricTridiagonal quadrature_matrix(double theta, int levels) {
  if (levels < 2) fail(ErrorKind::CutoffTooSmall, "quadrature needs at least 2 Fock levels");
  if (!std::isfinite(theta)) fail(ErrorKind::InvalidArgument, "theta must be finite");
  SymmetricTridiagonal t;
  t.diagonal.assign(static_cast<std::size_t>(levels), 0.0);
  t.off_diagonal.resize(static_cast<std::size_t>(levels) - 1);
  for (std::size_t n = 0; n + 1 < t.diagonal.size(); ++n) {
    t.off_diagonal[n] = 0.5 * std::sqrt(static_cast<double>(n + 1));
  }
  return t;
}

/**
 * Implicit-shift QL iteration (the EISPACK tql2 scheme), accumulating the
 * rotations into the eigenvector matrix. Throws NoConvergence after 30 * n
 * iterations in total.
 */
inline TridiagonalSpectrum eigendecompose(const SymmetricTridiagonal& tri) {
  const int n = static_cast<int>(tri.size());
  if (n == 0) fail(ErrorKind::InvalidArgument, "empty matrix");
  if (tri.off_diagonal.size() + 1 != tri.diagonal.size()) {
    fail(ErrorKind::DimensionMismatch, "off-diagonal length must be n - 1");
  }
  for (double x : tri.diagonal) {
    if (!std::isfinite(x)) fail(ErrorKind::InvalidArgument, "non-finite matrix entry");
  }
  for (double x : tri.off_diagonal) {
    if (!std::isfinite(x)) fail(ErrorKind::InvalidArgument, "non-finite matrix entry");
  }
  const auto un = static_cast<std::size_t>(n);
  std::vector<double> d = tri.diagonal;
  std::vector<double> e(un, 0.0);
  std::copy(tri.off_diagonal.begin(), tri.off_diagonal.end(), e.begin());
  // z is row-major; column k converges to eigenvector k.
  std::vector<double> z(un * un, 0.0);
  for (std::size_t i = 0; i < un; ++i) z[i * un + i] = 1.0;

  const double eps = std::numeric_limits<double>::epsilon();
  const long max_iterations = 30L * n;
  long iterations = 0;
  double f = 0.0;
  double tst1 = 0.0;
  for (int l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    int m = l;
    while (m < n - 1 && std::abs(e[m]) > eps * tst1) ++m;
    if (m > l) {
      do {
        if (++iterations > max_iterations) {
          fail(ErrorKind::NoConvergence, "QL iteration did not converge");
        }
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (int i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0;
        double c2 = c;
        double c3 = c;
        const double el1 = e[l + 1];
        double s = 0.0;
        double s2 = 0.0;
        for (int i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          for (std::size_t k = 0; k < un; ++k) {
            double& zi = z[k * un + static_cast<std::size_t>(i)];
            double& zi1 = z[k * un + static_cast<std::size_t>(i) + 1];
            h = zi1;
            zi1 = s * zi + c * h;
            zi = c * zi - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }

  std::vector<std::size_t> order(un);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  TridiagonalSpectrum out;
  out.eigenvalues.resize(un);
  out.eigenvectors.resize(un * un);
  for (std::size_t k = 0; k < un; ++k) {
    out.eigenvalues[k] = d[order[k]];
    for (std::size_t r = 0; r < un; ++r) out.eigenvectors[k * un + r] = z[r * un + order[k]];
  }
  return out;
}

/// Eigenbasis of X_theta on `levels` Fock levels.
class QuadratureBasis {
 public:
  QuadratureBasis(double theta, int levels)
      : theta_(theta), spectrum_(eigendecompose(quadrature_matrix(theta, levels))) {}

  double theta() const noexcept { return theta_; }
  const TridiagonalSpectrum& spectrum() const noexcept { return spectrum_; }

  Observable observable() const {
    return Observable("quadrature(theta=" + std::to_string(theta_) + ")", spectrum_.eigenvalues);
  }

  /// Components <v_k| U^dagger |psi> = sum_n v_k(n) e^{-i n theta} psi_n.
  /// States on fewer levels than the basis are zero-padded.
  std::vector<Complex> rotate(const PureState& fock) const {
    validate_levels(fock.dimension());
    const std::size_t n = spectrum_.size();
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n; ++k) {
      const auto v = spectrum_.vector(k);
      Complex s;
      for (const auto& a : fock.amplitudes()) {
        s += v[a.index] * std::polar(1.0, -static_cast<double>(a.index) * theta_) * a.value;
      }
      out[k] = s;
    }
    return out;
  }

  PureState to_eigenbasis(const PureState& fock) const {
    const auto comps = rotate(fock);
    std::vector<Amplitude> amps(comps.size());
    for (std::size_t k = 0; k < comps.size(); ++k) amps[k] = {k, comps[k]};
    return PureState(comps.size(), std::move(amps));
  }

 private:
  void validate_levels(Index dim) const {
    if (dim > spectrum_.size()) {
      fail(ErrorKind::DimensionMismatch, "Fock state has " + std::to_string(dim) +
                                             " levels, basis only " + std::to_string(spectrum_.size()));
    }
  }

  double theta_;
  TridiagonalSpectrum spectrum_;
};

inline constexpr double kMaxScsBinWidth = 0.25;

/// Levels used to represent X_theta when measuring Fock states. Fixed
/// rather than tied to the state's cutoff: the eigenbasis of the truncated
/// quadrature is a grid whose spacing shrinks with its size, and a grid that
/// moved with the state's truncation would shift every binned eigenvalue.
inline constexpr int kQuadratureLevels = 160;

inline int quadrature_levels(int cutoff) { return std::max(cutoff + 1, kQuadratureLevels); }

namespace detail {

inline void check_scs_bins(const BinSpec& bins) {
  if (!(bins.width > 0.0) || bins.width > kMaxScsBinWidth) {
    fail(ErrorKind::InvalidArgument, "SCS bin width must be in (0, 0.25]");
  }
}

}  // namespace detail

/// A state already expressed in the eigenbasis of the observable it is
/// measured against.
struct QuadratureProblem {
  State state;
  Observable observable;
};

/// Cat state (|alpha> + |-alpha>)/z rotated into the eigenbasis of X_theta,
/// theta = arg(alpha), against the binned quadrature spectrum.
inline QuadratureProblem scs_quadrature_problem(Complex alpha, int cutoff, const BinSpec& bins = {}) {
  detail::check_scs_bins(bins);
  const PureState cat = scs(alpha, cutoff);
  const QuadratureBasis basis(std::arg(alpha), quadrature_levels(cutoff));
  return {basis.to_eigenbasis(cat), bin_observable(basis.observable(), bins)};
}

/// (|alpha><alpha| + |-alpha><-alpha|)/2 in the same basis.
inline QuadratureProblem mixed_scs_quadrature_problem(Complex alpha, int cutoff,
                                                      const BinSpec& bins = {}) {
  detail::check_scs_bins(bins);
  const QuadratureBasis basis(std::arg(alpha), quadrature_levels(cutoff));
  const auto u = basis.rotate(coherent(alpha, cutoff));
  const auto v = basis.rotate(coherent(-alpha, cutoff));
  std::vector<MatrixEntry> entries;
  double tr = 0.0;
  for (Index i = 0; i < u.size(); ++i) {
    for (Index j = i; j < u.size(); ++j) {
      Complex value = 0.5 * (u[i] * std::conj(u[j]) + v[i] * std::conj(v[j]));
      if (i == j) {
        value = Complex(value.real(), 0.0);
        tr += value.real();
      }
      entries.push_back({i, j, value});
    }
  }
  // Absorb rounding from the rotation.
  for (auto& e : entries) e.value /= tr;
  return {DensityMatrix(u.size(), std::move(entries)), bin_observable(basis.observable(), bins)};
}

inline MeasureReport scs_full_report(Complex alpha, int cutoff, const BinSpec& bins = {},
                                     double unit_mmqs_value = kSpinUnitMmqs) {
  const auto problem = scs_quadrature_problem(alpha, cutoff, bins);
  return measure(problem.state, problem.observable, unit_mmqs_value);
}

/// M of the cat state in the binned quadrature basis. Approaches |alpha|
/// from above as the packets separate; the excess is the spread within
/// each packet.
inline double scs_full_measure(Complex alpha, int cutoff, const BinSpec& bins = {}) {
  return scs_full_report(alpha, cutoff, bins).m;
}

inline MeasureReport mixed_scs_full_report(Complex alpha, int cutoff, const BinSpec& bins = {},
                                           double unit_mmqs_value = kSpinUnitMmqs) {
  const auto problem = mixed_scs_quadrature_problem(alpha, cutoff, bins);
  return measure(problem.state, problem.observable, unit_mmqs_value);
}

}  // namespace macroq
