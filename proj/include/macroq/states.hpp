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
 * Spin-ensemble and photonic states, and the observables they are measured
 * against.
 *
 * Spin basis: index b encodes a bitstring with spin 1 as the most
 * significant bit, so |10...0> is 1 << (n-1). Bit value 0 is |0>.
 *
 * Photonic bases are truncated at a cutoff, the highest retained Fock level;
 * a single mode therefore has cutoff + 1 levels and two modes have
 * (cutoff + 1)^2 basis states indexed by n1 * (cutoff + 1) + n2.
 */

#pragma once

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "macroq/core.hpp"

namespace macroq {

/// Eigenvalue each spin contributes to the magnetization for |0> and |1>.
struct SpinBasisConvention {
  double up = 0.5;
  double down = -0.5;
};

inline constexpr int kMaxSpins = 30;
inline constexpr int kMaxUniformSpins = 12;
inline constexpr int kMaxGeneralizedGhzSpins = 20;

namespace detail {

inline void require_spins(int n, int limit, const char* what) {
  if (n < 1) fail(ErrorKind::InvalidArgument, std::string(what) + " needs n >= 1");
  if (n > limit) {
    fail(ErrorKind::TooLarge, std::string(what) + " supports n <= " + std::to_string(limit) +
                                  ", got " + std::to_string(n));
  }
}

inline double spin_eigenvalue(int n, int ones, const SpinBasisConvention& conv) {
  return (n - ones) * conv.up + ones * conv.down;
}

inline Index all_ones(int n) { return (Index{1} << n) - 1; }

}  // namespace detail

inline std::string bitstring(Index b, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int k = 0; k < n; ++k) {
    if ((b >> (n - 1 - k)) & 1U) s[static_cast<std::size_t>(k)] = '1';
  }
  return s;
}

/// Total z magnetization of n spins.
inline Observable magnetization_z(int n, SpinBasisConvention conv = {}) {
  detail::require_spins(n, kMaxSpins, "magnetization_z");
  if (conv.up == conv.down) fail(ErrorKind::InvalidArgument, "spin convention values must differ");
  return Observable::from_function(
      "magnetization_z(" + std::to_string(n) + ")", Index{1} << n,
      [n, conv](Index b) { return detail::spin_eigenvalue(n, std::popcount(b), conv); },
      [n](Index b) { return bitstring(b, n); });
}

inline PureState ghz(int n) {
  detail::require_spins(n, kMaxSpins, "ghz");
  const double h = std::sqrt(0.5);
  return PureState(Index{1} << n, {{0, h}, {detail::all_ones(n), h}});
}

/// (|0> + |1>)/sqrt(2) on spin 1, all other spins |0>.
inline PureState single_excitation(int n) {
  detail::require_spins(n, kMaxSpins, "single_excitation");
  const double h = std::sqrt(0.5);
  return PureState(Index{1} << n, {{0, h}, {Index{1} << (n - 1), h}});
}

/// Product of per-spin equal superpositions.
inline PureState uniform(int n) {
  detail::require_spins(n, kMaxUniformSpins, "uniform");
  const Index dim = Index{1} << n;
  const double amp = std::pow(2.0, -0.5 * n);
  std::vector<Amplitude> amps(dim);
  for (Index b = 0; b < dim; ++b) amps[b] = {b, amp};
  return PureState(dim, std::move(amps));
}

inline PureState w_state(int n) {
  detail::require_spins(n, kMaxSpins, "w_state");
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<Amplitude> amps;
  for (int k = 0; k < n; ++k) amps.push_back({Index{1} << k, amp});
  return PureState(Index{1} << n, std::move(amps));
}

/// |0...0> + (cos eps |0> + sin eps |1>)^{(x) n}, normalized numerically.
inline PureState generalized_ghz(int n, double eps) {
  detail::require_spins(n, kMaxGeneralizedGhzSpins, "generalized_ghz");
  if (!std::isfinite(eps)) fail(ErrorKind::InvalidArgument, "eps must be finite");
  const Index dim = Index{1} << n;
  const double c = std::cos(eps);
  const double s = std::sin(eps);
  std::vector<Amplitude> amps;
  amps.reserve(dim);
  for (Index b = 0; b < dim; ++b) {
    const int ones = std::popcount(b);
    double v = std::pow(c, n - ones) * std::pow(s, ones);
    if (b == 0) v += 1.0;
    amps.push_back({b, v});
  }
  return PureState::normalized(dim, std::move(amps));
}

// Class-level forms of the spin families: eigenvalue classes of the
// magnetization with their aggregated weights, valid for any n.

inline SpectralWeights ghz_classes(int n, SpinBasisConvention conv = {}) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "ghz needs n >= 1");
  const double h = std::sqrt(0.5);
  return make_spectral_weights({{detail::spin_eigenvalue(n, 0, conv), h, 0.5},
                                {detail::spin_eigenvalue(n, n, conv), h, 0.5}});
}

inline SpectralWeights single_excitation_classes(int n, SpinBasisConvention conv = {}) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "single_excitation needs n >= 1");
  const double h = std::sqrt(0.5);
  return make_spectral_weights({{detail::spin_eigenvalue(n, 0, conv), h, 0.5},
                                {detail::spin_eigenvalue(n, 1, conv), h, 0.5}});
}

inline SpectralWeights w_classes(int n, SpinBasisConvention conv = {}) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "w_state needs n >= 1");
  return make_spectral_weights(
      {{detail::spin_eigenvalue(n, 1, conv), std::sqrt(static_cast<double>(n)), 1.0}});
}

inline SpectralWeights generalized_ghz_classes(int n, double eps, SpinBasisConvention conv = {}) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "generalized_ghz needs n >= 1");
  const double c = std::cos(eps);
  const double s = std::sin(eps);
  std::vector<SpectralClass> classes;
  double norm2 = 0.0;
  for (int k = 0; k <= n; ++k) {
    // log C(n, k) keeps the binomial finite for large n.
    const double log_binom = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    const double amp = std::pow(c, n - k) * std::pow(s, k) + (k == 0 ? 1.0 : 0.0);
    const double count = std::exp(log_binom);
    const double weight = count * std::abs(amp);
    const double prob = count * amp * amp;
    norm2 += prob;
    classes.push_back({detail::spin_eigenvalue(n, k, conv), weight, prob});
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& cl : classes) {
    cl.weight *= scale;
    cl.probability /= norm2;
  }
  return make_spectral_weights(std::move(classes));
}

// ---------------------------------------------------------------------------
// Photonic states.

namespace detail {

inline Index two_mode_dimension(int cutoff) {
  if (cutoff < 0) fail(ErrorKind::CutoffTooSmall, "cutoff must be >= 0");
  const auto levels = static_cast<Index>(cutoff) + 1;
  return levels * levels;
}

inline Observable two_mode_observable(std::string name, int cutoff, bool include_mode2) {
  const Index dim = two_mode_dimension(cutoff);
  const auto levels = static_cast<Index>(cutoff) + 1;
  return Observable::from_function(
      std::move(name), dim,
      [levels, include_mode2](Index i) {
        const double n1 = static_cast<double>(i / levels);
        return include_mode2 ? n1 + static_cast<double>(i % levels) : n1;
      },
      [levels](Index i) {
        return "n1=" + std::to_string(i / levels) + ",n2=" + std::to_string(i % levels);
      });
}

/// log |<n|alpha>| for the untruncated coherent state.
inline double coherent_log_magnitude(double r, int n) {
  if (r == 0.0) return n == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  return -0.5 * r * r + n * std::log(r) - 0.5 * std::lgamma(n + 1.0);
}

}  // namespace detail

/// Photon number of mode 1 of a two-mode system.
inline Observable mode_photon_number(int cutoff) {
  return detail::two_mode_observable("mode_photon_number(" + std::to_string(cutoff) + ")", cutoff,
                                     false);
}

inline Observable total_photon_number(int cutoff) {
  return detail::two_mode_observable("total_photon_number(" + std::to_string(cutoff) + ")", cutoff,
                                     true);
}

/// Single-mode photon number on levels 0..cutoff.
inline Observable number_operator(int cutoff) {
  if (cutoff < 0) fail(ErrorKind::CutoffTooSmall, "cutoff must be >= 0");
  std::vector<double> levels(static_cast<std::size_t>(cutoff) + 1);
  std::vector<std::string> tags(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) {
    levels[k] = static_cast<double>(k);
    tags[k] = "n=" + std::to_string(k);
  }
  return Observable("number(" + std::to_string(cutoff) + ")", std::move(levels), std::move(tags));
}

/// (|n,0> + |0,n>)/sqrt(2).
inline PureState noon(int n, int cutoff) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "noon needs n >= 1");
  if (n > cutoff) {
    fail(ErrorKind::CutoffTooSmall,
         "noon(" + std::to_string(n) + ") needs cutoff >= n, got " + std::to_string(cutoff));
  }
  const auto levels = static_cast<Index>(cutoff) + 1;
  const auto un = static_cast<Index>(n);
  const double h = std::sqrt(0.5);
  return PureState(levels * levels, {{un * levels, h}, {un, h}});
}

/// Norm squared of the coherent-state amplitudes above `cutoff`.
inline double coherent_tail(Complex alpha, int cutoff) {
  const double r = std::abs(alpha);
  if (r == 0.0) return 0.0;
  double tail = 0.0;
  // Past the Poisson mean the terms decay monotonically.
  const int stop = std::max(cutoff + 1, static_cast<int>(std::ceil(r * r))) + 2000;
  for (int n = cutoff + 1; n <= stop; ++n) {
    const double term = std::exp(2.0 * detail::coherent_log_magnitude(r, n));
    tail += term;
    if (n > r * r && term < 1e-30 * std::max(tail, 1e-300)) break;
  }
  return tail;
}

/// Truncation level for coherent-state constructions: at least
/// max(20, ceil(|alpha|^2 + 8|alpha|)), raised until the discarded tail norm
/// is below 1e-12.
inline int coherent_cutoff(Complex alpha) {
  const double r = std::abs(alpha);
  int cutoff = std::max(20, static_cast<int>(std::ceil(r * r + 8.0 * r)));
  while (coherent_tail(alpha, cutoff) >= 1e-12) ++cutoff;
  return cutoff;
}

/// e^{-|alpha|^2/2} alpha^n / sqrt(n!) for n <= cutoff, renormalized.
inline PureState coherent(Complex alpha, int cutoff) {
  if (cutoff < 0) fail(ErrorKind::CutoffTooSmall, "cutoff must be >= 0");
  const double tail = coherent_tail(alpha, cutoff);
  if (tail >= 1e-10) {
    fail(ErrorKind::CutoffTooSmall, "coherent tail norm " + std::to_string(tail) +
                                        " at cutoff " + std::to_string(cutoff));
  }
  const double r = std::abs(alpha);
  const double theta = std::arg(alpha);
  std::vector<Amplitude> amps;
  for (int n = 0; n <= cutoff; ++n) {
    const double mag = std::exp(detail::coherent_log_magnitude(r, n));
    amps.push_back({static_cast<Index>(n), std::polar(mag, n * theta)});
  }
  return PureState::normalized(static_cast<Index>(cutoff) + 1, std::move(amps));
}

/// (|alpha> + |-alpha>)/z with z = sqrt(2 + 2 Re<alpha|-alpha>); only even
/// Fock levels survive. Renormalized after truncation.
inline PureState scs(Complex alpha, int cutoff) {
  const PureState plus = coherent(alpha, cutoff);
  const double r = std::abs(alpha);
  const double z = std::sqrt(2.0 + 2.0 * std::exp(-2.0 * r * r));
  std::vector<Amplitude> amps;
  for (const auto& a : plus.amplitudes()) {
    if (a.index % 2 == 0) amps.push_back({a.index, 2.0 * a.value / z});
  }
  return PureState::normalized(plus.dimension(), std::move(amps));
}

/// Two-level cat state in the large-|alpha| limit: equal superposition of
/// the two quadrature packets; pair with idealized_quadrature(alpha).
inline PureState scs_idealized(Complex /*alpha*/) {
  const double h = std::sqrt(0.5);
  return PureState(2, {{0, h}, {1, h}});
}

/// Quadrature restricted to the two packet centers, eigenvalues +|alpha|
/// and -|alpha|.
inline Observable idealized_quadrature(Complex alpha) {
  const double r = std::abs(alpha);
  return Observable("idealized_quadrature", {r, -r}, {"+alpha", "-alpha"});
}

/// Incoherent mixture of |alpha> and |-alpha> in the two-level limit.
inline DensityMatrix mixed_scs(Complex /*alpha*/) { return DensityMatrix::diagonal({0.5, 0.5}); }

/// (|alpha><alpha| + |-alpha><-alpha|)/2 in the truncated Fock basis.
inline DensityMatrix mixed_scs_fock(Complex alpha, int cutoff) {
  const PureState plus = coherent(alpha, cutoff);
  const PureState minus = coherent(-alpha, cutoff);
  const auto dim = plus.dimension();
  std::vector<MatrixEntry> entries;
  double tr = 0.0;
  for (Index i = 0; i < dim; ++i) {
    for (Index j = i; j < dim; ++j) {
      Complex v = 0.5 * (plus.amplitude(i) * std::conj(plus.amplitude(j)) +
                         minus.amplitude(i) * std::conj(minus.amplitude(j)));
      if (i == j) {
        v = Complex(v.real(), 0.0);
        tr += v.real();
      }
      entries.push_back({i, j, v});
    }
  }
  for (auto& e : entries) e.value /= tr;
  return DensityMatrix(dim, std::move(entries));
}

/// Boltzmann mixture of Fock levels 0..cutoff.
inline DensityMatrix thermal(double beta, int cutoff) {
  if (!(beta > 0.0) || !std::isfinite(beta)) fail(ErrorKind::InvalidArgument, "beta must be > 0");
  if (cutoff < 0) fail(ErrorKind::CutoffTooSmall, "cutoff must be >= 0");
  std::vector<double> p(static_cast<std::size_t>(cutoff) + 1);
  for (std::size_t n = 0; n < p.size(); ++n) p[n] = std::exp(-beta * static_cast<double>(n));
  return DensityMatrix::diagonal(p);
}

}  // namespace macroq
