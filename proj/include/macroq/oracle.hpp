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
 * Reference implementation: dense matrices and the literal double loop over
 * all ordered pairs, with no sparsity and no grouping. Used to arbitrate
 * every fast path, together with random-instance generators.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "macroq/core.hpp"
#include "macroq/random.hpp"

namespace macroq {

inline constexpr Index kMaxDenseDimension = 4096;
/// The pure-state oracle never stores rho, so it can afford a larger basis.
inline constexpr Index kMaxDensePureDimension = Index{1} << 14;

namespace detail {

/// Neumaier-compensated running sum. The oracle adds up to 2^28 terms, and
/// plain accumulation drifts by more than the 1e-10 agreement tolerance.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace detail

/// Row-major complex square matrix.
class DenseMatrix {
 public:
  explicit DenseMatrix(Index dimension) : dimension_(dimension), data_(check(dimension) * dimension) {}

  Index dimension() const noexcept { return dimension_; }
  Complex& operator()(Index i, Index j) { return data_[i * dimension_ + j]; }
  const Complex& operator()(Index i, Index j) const { return data_[i * dimension_ + j]; }

  Complex trace() const {
    Complex t;
    for (Index i = 0; i < dimension_; ++i) t += (*this)(i, i);
    return t;
  }

  static DenseMatrix from(const DensityMatrix& rho) {
    DenseMatrix out(rho.dimension());
    for (const auto& e : rho.entries()) {
      out(e.row, e.col) = e.value;
      out(e.col, e.row) = std::conj(e.value);
    }
    return out;
  }

  static DenseMatrix from(const PureState& psi) {
    DenseMatrix out(psi.dimension());
    for (const auto& a : psi.amplitudes()) {
      for (const auto& b : psi.amplitudes()) out(a.index, b.index) = a.value * std::conj(b.value);
    }
    return out;
  }

  /// Back to the sparse type; validation of the result applies.
  DensityMatrix to_density() const {
    std::vector<MatrixEntry> entries;
    for (Index i = 0; i < dimension_; ++i) {
      for (Index j = i; j < dimension_; ++j) {
        const Complex v = (*this)(i, j);
        if (std::abs(v - std::conj((*this)(j, i))) > 1e-12) {
          fail(ErrorKind::NonHermitian, "dense matrix is not Hermitian");
        }
        if (v != Complex{}) entries.push_back({i, j, v});
      }
    }
    return DensityMatrix(dimension_, std::move(entries));
  }

 private:
  static Index check(Index dimension) {
    if (dimension == 0) fail(ErrorKind::InvalidArgument, "dense matrix dimension must be positive");
    if (dimension > kMaxDenseDimension) fail(ErrorKind::TooLarge, "dense matrix dimension exceeds 4096");
    return dimension;
  }

  Index dimension_;
  std::vector<Complex> data_;
};

/// Full amplitude vector of a pure state, zeros included.
inline std::vector<Complex> dense_amplitudes(const PureState& psi) {
  if (psi.dimension() > kMaxDensePureDimension) fail(ErrorKind::TooLarge, "state dimension exceeds 16384");
  std::vector<Complex> out(psi.dimension());
  for (const auto& a : psi.amplitudes()) out[a.index] = a.value;
  return out;
}

inline double dense_measure(const DenseMatrix& rho, const Observable& obs) {
  validate_pair(rho.dimension(), obs);
  const auto a = obs.eigenvalues();
  const Index dim = rho.dimension();
  detail::CompensatedSum numerator;
  detail::CompensatedSum denominator;
  for (Index i = 0; i < dim; ++i) {
    detail::CompensatedSum row_num;
    detail::CompensatedSum row_den;
    for (Index j = 0; j < dim; ++j) {
      const double mag = std::abs(rho(i, j));
      row_num.add(std::abs(a[i] - a[j]) * mag);
      row_den.add(mag);
    }
    numerator.add(row_num.value());
    denominator.add(row_den.value());
  }
  return numerator.value() / denominator.value();
}

/// Same double loop over rho_ij = c_i conj(c_j), without storing rho.
inline double dense_measure(std::span<const Complex> amplitudes, const Observable& obs) {
  validate_pair(amplitudes.size(), obs);
  if (amplitudes.size() > kMaxDensePureDimension) {
    fail(ErrorKind::TooLarge, "state dimension exceeds 16384");
  }
  const auto a = obs.eigenvalues();
  const std::size_t dim = amplitudes.size();
  detail::CompensatedSum numerator;
  detail::CompensatedSum denominator;
  for (std::size_t i = 0; i < dim; ++i) {
    // A zero row contributes nothing; skipping it only saves time.
    if (amplitudes[i] == Complex{}) continue;
    detail::CompensatedSum row_num;
    detail::CompensatedSum row_den;
    for (std::size_t j = 0; j < dim; ++j) {
      const double mag = std::abs(amplitudes[i] * std::conj(amplitudes[j]));
      row_num.add(std::abs(a[i] - a[j]) * mag);
      row_den.add(mag);
    }
    numerator.add(row_num.value());
    denominator.add(row_den.value());
  }
  return numerator.value() / denominator.value();
}

inline double dense_measure(const PureState& psi, const Observable& obs) {
  const auto amps = dense_amplitudes(psi);
  return dense_measure(std::span<const Complex>(amps), obs);
}

/// Hilbert-Schmidt random density matrix: G G^dagger / tr with complex
/// Gaussian G.
inline DenseMatrix random_density(Index dim, std::uint64_t seed) {
  if (dim == 0) fail(ErrorKind::InvalidArgument, "dimension must be positive");
  Rng rng(seed);
  DenseMatrix g(dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
  }
  DenseMatrix rho(dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = i; j < dim; ++j) {
      Complex s;
      for (Index k = 0; k < dim; ++k) s += g(i, k) * std::conj(g(j, k));
      rho(i, j) = s;
      rho(j, i) = std::conj(s);
    }
    rho(i, i) = Complex(rho(i, i).real(), 0.0);
  }
  const double tr = rho.trace().real();
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) rho(i, j) /= tr;
  }
  return rho;
}

inline PureState random_pure(Index dim, std::uint64_t seed) {
  if (dim == 0) fail(ErrorKind::InvalidArgument, "dimension must be positive");
  Rng rng(seed);
  std::vector<Amplitude> amps(dim);
  for (Index i = 0; i < dim; ++i) amps[i] = {i, rng.complex_normal()};
  return PureState::normalized(dim, std::move(amps));
}

/// Sorted uniform draws on [-1, 1]. With `non_degenerate`, draws are
/// repeated until every adjacent gap is at least 1e-3.
inline Observable random_spectrum(Index dim, std::uint64_t seed, bool non_degenerate) {
  if (dim == 0) fail(ErrorKind::InvalidArgument, "dimension must be positive");
  if (non_degenerate && dim > 2000) fail(ErrorKind::TooLarge, "cannot keep 1e-3 gaps on [-1, 1]");
  Rng rng(seed);
  std::vector<double> values(dim);
  for (;;) {
    for (auto& v : values) v = rng.uniform(-1.0, 1.0);
    std::sort(values.begin(), values.end());
    if (!non_degenerate) break;
    bool ok = true;
    for (std::size_t k = 1; k < values.size(); ++k) ok = ok && values[k] - values[k - 1] >= 1e-3;
    if (ok) break;
  }
  return Observable("random_spectrum", std::move(values));
}

}  // namespace macroq
