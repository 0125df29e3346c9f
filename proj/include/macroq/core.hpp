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
 * Shared domain types: observables given in their own eigenbasis, sparse pure
 * states, sparse Hermitian density matrices, and the per-eigenvalue grouping
 * of pure-state amplitudes used by every fast evaluation path.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "macroq/error.hpp"

namespace macroq {

using Index = std::uint64_t;
using Complex = std::complex<double>;

/// Entries with magnitude at or below this are never stored.
inline constexpr double kSparsityFloor = 1e-12;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kMergeRelative = 1e-9;
inline constexpr double kMergeAbsolute = 1e-12;
/// Density matrices up to this dimension get an explicit PSD check.
inline constexpr Index kPsdCheckLimit = 64;

/// Eigenvalues (and eigenvalue gaps) closer than this are the same class.
inline bool same_value(double a, double b) noexcept {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= std::max(kMergeRelative * scale, kMergeAbsolute);
}

namespace detail {

/// Sorts (key, weight) items and merges runs whose keys match the first key
/// of the run under `same_value`. The merged key is the weight-averaged key,
/// which keeps weighted means exact across the merge.
template <typename Item, typename KeyFn, typename WeightFn, typename MergeFn>
std::vector<Item> coalesce(std::vector<Item> items, KeyFn key, WeightFn weight,
                           MergeFn merge) {
  std::sort(items.begin(), items.end(),
            [&](const Item& x, const Item& y) { return key(x) < key(y); });
  std::vector<Item> out;
  out.reserve(items.size());
  std::size_t start = 0;
  while (start < items.size()) {
    const double anchor = key(items[start]);
    std::size_t stop = start + 1;
    while (stop < items.size() && same_value(anchor, key(items[stop]))) ++stop;
    if (stop == start + 1) {
      out.push_back(items[start]);
    } else {
      double total = 0.0;
      double moment = 0.0;
      for (std::size_t k = start; k < stop; ++k) {
        total += weight(items[k]);
        moment += weight(items[k]) * key(items[k]);
      }
      Item merged = items[start];
      for (std::size_t k = start + 1; k < stop; ++k) merged = merge(merged, items[k]);
      const double rep = total > 0.0 ? moment / total : anchor;
      out.push_back(merge.with_key(merged, rep));
    }
    start = stop;
  }
  return out;
}

}  // namespace detail

struct BasisLabel {
  Index index = 0;
  std::optional<std::string> tag;
};

/**
 * A measured observable A = sum_i a_i |i><i|, given by its real spectrum in
 * its own eigenbasis. The spectrum is either stored explicitly or generated
 * on demand, which lets 2^n-dimensional spin observables exist without being
 * materialized.
 */
class Observable {
 public:
  using EigenvalueFn = std::function<double(Index)>;
  using TagFn = std::function<std::string(Index)>;

  Observable(std::string name, std::vector<double> eigenvalues,
             std::vector<std::string> tags = {})
      : name_(std::move(name)) {
    if (eigenvalues.empty()) fail(ErrorKind::InvalidArgument, "observable has no eigenvalues");
    for (double a : eigenvalues) {
      if (!std::isfinite(a)) fail(ErrorKind::InvalidArgument, "non-finite eigenvalue");
    }
    if (!tags.empty()) {
      if (tags.size() != eigenvalues.size()) {
        fail(ErrorKind::DimensionMismatch, "tag count differs from eigenvalue count");
      }
      std::unordered_set<std::string> seen;
      for (const auto& t : tags) {
        if (!seen.insert(t).second) fail(ErrorKind::InvalidArgument, "duplicate basis tag '" + t + "'");
      }
      tags_ = std::make_shared<const std::vector<std::string>>(std::move(tags));
    }
    dimension_ = eigenvalues.size();
    values_ = std::make_shared<const std::vector<double>>(std::move(eigenvalues));
  }

  /// Spectrum generated on demand. `eigenvalue` must return finite values
  /// for every index below `dimension`; `tag` must be injective.
  static Observable from_function(std::string name, Index dimension, EigenvalueFn eigenvalue,
                                  TagFn tag = {}) {
    if (dimension == 0) fail(ErrorKind::InvalidArgument, "observable has no eigenvalues");
    Observable obs;
    obs.name_ = std::move(name);
    obs.dimension_ = dimension;
    obs.fn_ = std::move(eigenvalue);
    obs.tag_fn_ = std::move(tag);
    return obs;
  }

  const std::string& name() const noexcept { return name_; }
  Index dimension() const noexcept { return dimension_; }
  bool is_explicit() const noexcept { return values_ != nullptr; }

  double eigenvalue(Index i) const {
    if (i >= dimension_) {
      fail(ErrorKind::IndexOutOfRange,
           "basis index " + std::to_string(i) + " >= dimension " + std::to_string(dimension_));
    }
    return values_ ? (*values_)[i] : fn_(i);
  }

  BasisLabel label(Index i) const {
    if (i >= dimension_) fail(ErrorKind::IndexOutOfRange, "basis index out of range");
    if (tags_) return {i, (*tags_)[i]};
    if (tag_fn_) return {i, tag_fn_(i)};
    return {i, std::nullopt};
  }

  /// Materialized spectrum; refuses dimensions that would not fit in memory.
  std::vector<double> eigenvalues() const {
    if (values_) return *values_;
    if (dimension_ > (Index{1} << 26)) fail(ErrorKind::TooLarge, "spectrum too large to materialize");
    std::vector<double> out(dimension_);
    for (Index i = 0; i < dimension_; ++i) out[i] = fn_(i);
    return out;
  }

  /// Same basis, eigenvalues mapped through `f`.
  Observable transformed(std::string name, std::function<double(double)> f) const {
    if (values_) {
      std::vector<double> mapped(values_->size());
      std::transform(values_->begin(), values_->end(), mapped.begin(), f);
      Observable out(std::move(name), std::move(mapped));
      out.tags_ = tags_;
      return out;
    }
    auto inner = fn_;
    Observable out = from_function(std::move(name), dimension_,
                                   [inner, f](Index i) { return f(inner(i)); }, tag_fn_);
    return out;
  }

 private:
  Observable() = default;

  std::string name_;
  Index dimension_ = 0;
  std::shared_ptr<const std::vector<double>> values_;
  std::shared_ptr<const std::vector<std::string>> tags_;
  EigenvalueFn fn_;
  TagFn tag_fn_;
};

struct Amplitude {
  Index index = 0;
  Complex value;
};

/// Sparse normalized state vector; amplitudes sorted by basis index.
class PureState {
 public:
  PureState(Index dimension, std::vector<Amplitude> amplitudes)
      : dimension_(dimension), amplitudes_(prepare(dimension, std::move(amplitudes))) {
    const double n2 = norm_squared();
    if (std::abs(n2 - 1.0) > kNormTolerance) {
      fail(ErrorKind::NonNormalized, "squared norm is " + std::to_string(n2));
    }
  }

  /// Rescales the given amplitudes to unit norm before validation.
  static PureState normalized(Index dimension, std::vector<Amplitude> amplitudes) {
    double n2 = 0.0;
    for (const auto& a : amplitudes) n2 += std::norm(a.value);
    if (!(n2 > 0.0) || !std::isfinite(n2)) fail(ErrorKind::NonNormalized, "zero or non-finite norm");
    const double scale = 1.0 / std::sqrt(n2);
    for (auto& a : amplitudes) a.value *= scale;
    return PureState(dimension, std::move(amplitudes));
  }

  Index dimension() const noexcept { return dimension_; }
  std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }

  Complex amplitude(Index i) const {
    auto it = std::lower_bound(amplitudes_.begin(), amplitudes_.end(), i,
                               [](const Amplitude& a, Index k) { return a.index < k; });
    return (it != amplitudes_.end() && it->index == i) ? it->value : Complex{};
  }

  double norm_squared() const noexcept {
    double s = 0.0;
    for (const auto& a : amplitudes_) s += std::norm(a.value);
    return s;
  }

 private:
  static std::vector<Amplitude> prepare(Index dimension, std::vector<Amplitude> in) {
    if (dimension == 0) fail(ErrorKind::InvalidArgument, "state dimension must be positive");
    std::vector<Amplitude> out;
    out.reserve(in.size());
    for (const auto& a : in) {
      if (a.index >= dimension) {
        fail(ErrorKind::IndexOutOfRange, "amplitude index " + std::to_string(a.index) +
                                             " >= dimension " + std::to_string(dimension));
      }
      if (!std::isfinite(a.value.real()) || !std::isfinite(a.value.imag())) {
        fail(ErrorKind::InvalidArgument, "non-finite amplitude");
      }
      if (std::abs(a.value) > kSparsityFloor) out.push_back(a);
    }
    std::sort(out.begin(), out.end(),
              [](const Amplitude& x, const Amplitude& y) { return x.index < y.index; });
    for (std::size_t k = 1; k < out.size(); ++k) {
      if (out[k].index == out[k - 1].index) {
        fail(ErrorKind::InvalidArgument, "duplicate amplitude index " + std::to_string(out[k].index));
      }
    }
    return out;
  }

  Index dimension_;
  std::vector<Amplitude> amplitudes_;
};

struct MatrixEntry {
  Index row = 0;
  Index col = 0;
  Complex value;
};

/**
 * Sparse density matrix. Only the upper triangle (row <= col) is stored;
 * the lower triangle is its conjugate. Input entries may come from either
 * triangle, and an entry given in both must agree with its conjugate.
 */
class DensityMatrix {
 public:
  DensityMatrix(Index dimension, std::vector<MatrixEntry> entries)
      : dimension_(dimension), entries_(prepare(dimension, std::move(entries))) {
    const double tr = trace();
    if (std::abs(tr - 1.0) > kNormTolerance) {
      fail(ErrorKind::NonNormalized, "trace is " + std::to_string(tr));
    }
    if (dimension_ <= kPsdCheckLimit) check_positive();
  }

  static DensityMatrix from_pure(const PureState& psi) {
    const auto amps = psi.amplitudes();
    std::vector<MatrixEntry> entries;
    entries.reserve(amps.size() * (amps.size() + 1) / 2);
    for (std::size_t a = 0; a < amps.size(); ++a) {
      for (std::size_t b = a; b < amps.size(); ++b) {
        Complex v = amps[a].value * std::conj(amps[b].value);
        if (a == b) v = Complex(v.real(), 0.0);
        entries.push_back({amps[a].index, amps[b].index, v});
      }
    }
    return DensityMatrix(psi.dimension(), std::move(entries));
  }

  /// Diagonal matrix from a probability vector (renormalized to unit trace).
  static DensityMatrix diagonal(const std::vector<double>& probabilities) {
    const double total = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
    if (!(total > 0.0)) fail(ErrorKind::NonNormalized, "probabilities sum to zero");
    std::vector<MatrixEntry> entries;
    for (Index i = 0; i < probabilities.size(); ++i) {
      if (probabilities[i] < 0.0) fail(ErrorKind::NotPositiveSemidefinite, "negative probability");
      entries.push_back({i, i, Complex(probabilities[i] / total, 0.0)});
    }
    return DensityMatrix(probabilities.size(), std::move(entries));
  }

  Index dimension() const noexcept { return dimension_; }
  /// Upper-triangle entries, sorted by (row, col).
  std::span<const MatrixEntry> entries() const noexcept { return entries_; }

  Complex at(Index i, Index j) const {
    if (i >= dimension_ || j >= dimension_) fail(ErrorKind::IndexOutOfRange, "matrix index out of range");
    const bool swap = i > j;
    const Index r = swap ? j : i;
    const Index c = swap ? i : j;
    auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{r, c},
                               [](const MatrixEntry& e, const std::pair<Index, Index>& k) {
                                 return std::pair{e.row, e.col} < k;
                               });
    if (it == entries_.end() || it->row != r || it->col != c) return {};
    return swap ? std::conj(it->value) : it->value;
  }

  double trace() const noexcept {
    double t = 0.0;
    for (const auto& e : entries_) {
      if (e.row == e.col) t += e.value.real();
    }
    return t;
  }

 private:
  static std::vector<MatrixEntry> prepare(Index dimension, std::vector<MatrixEntry> in) {
    if (dimension == 0) fail(ErrorKind::InvalidArgument, "matrix dimension must be positive");
    for (auto& e : in) {
      if (e.row >= dimension || e.col >= dimension) {
        fail(ErrorKind::IndexOutOfRange, "entry (" + std::to_string(e.row) + "," +
                                             std::to_string(e.col) + ") outside dimension " +
                                             std::to_string(dimension));
      }
      if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag())) {
        fail(ErrorKind::InvalidArgument, "non-finite matrix entry");
      }
      if (e.row == e.col && std::abs(e.value.imag()) > kSparsityFloor) {
        fail(ErrorKind::NonHermitian, "diagonal entry " + std::to_string(e.row) + " is not real");
      }
      if (e.row > e.col) {
        std::swap(e.row, e.col);
        e.value = std::conj(e.value);
      }
      if (e.row == e.col) e.value = Complex(e.value.real(), 0.0);
    }
    std::sort(in.begin(), in.end(), [](const MatrixEntry& x, const MatrixEntry& y) {
      return std::pair{x.row, x.col} < std::pair{y.row, y.col};
    });
    std::vector<MatrixEntry> out;
    out.reserve(in.size());
    for (const auto& e : in) {
      if (!out.empty() && out.back().row == e.row && out.back().col == e.col) {
        if (std::abs(out.back().value - e.value) > kSparsityFloor) {
          fail(ErrorKind::NonHermitian, "entry (" + std::to_string(e.row) + "," +
                                            std::to_string(e.col) +
                                            ") disagrees with its conjugate transpose");
        }
        continue;
      }
      out.push_back(e);
    }
    std::erase_if(out, [](const MatrixEntry& e) { return std::abs(e.value) <= kSparsityFloor; });
    return out;
  }

  // Cholesky factorization of rho + tol*I succeeds iff the smallest
  // eigenvalue exceeds -tol.
  void check_positive() const {
    const auto n = static_cast<std::size_t>(dimension_);
    std::vector<Complex> a(n * n);
    for (const auto& e : entries_) {
      a[e.row * n + e.col] = e.value;
      a[e.col * n + e.row] = std::conj(e.value);
    }
    for (std::size_t i = 0; i < n; ++i) a[i * n + i] += kNormTolerance;
    for (std::size_t j = 0; j < n; ++j) {
      double pivot = a[j * n + j].real();
      for (std::size_t k = 0; k < j; ++k) pivot -= std::norm(a[j * n + k]);
      if (!(pivot > 0.0)) {
        fail(ErrorKind::NotPositiveSemidefinite, "density matrix has a negative eigenvalue");
      }
      const double root = std::sqrt(pivot);
      a[j * n + j] = root;
      for (std::size_t i = j + 1; i < n; ++i) {
        Complex s = a[i * n + j];
        for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * std::conj(a[j * n + k]);
        a[i * n + j] = s / root;
      }
    }
  }

  Index dimension_;
  std::vector<MatrixEntry> entries_;
};

using State = std::variant<PureState, DensityMatrix>;

/// One eigenvalue class of a pure state: w = sum |c_i| and p = sum |c_i|^2
/// over the basis indices whose eigenvalue falls in the class.
struct SpectralClass {
  double eigenvalue = 0.0;
  double weight = 0.0;
  double probability = 0.0;
};

/// Pure-state amplitude magnitudes aggregated per distinct eigenvalue,
/// sorted by eigenvalue.
struct SpectralWeights {
  std::vector<SpectralClass> classes;

  double total_weight() const noexcept {
    double s = 0.0;
    for (const auto& c : classes) s += c.weight;
    return s;
  }
  double total_probability() const noexcept {
    double s = 0.0;
    for (const auto& c : classes) s += c.probability;
    return s;
  }
};

inline Index dimension_of(const State& state) {
  return std::visit([](const auto& s) { return s.dimension(); }, state);
}

inline void validate_pair(Index state_dimension, const Observable& obs) {
  if (state_dimension != obs.dimension()) {
    fail(ErrorKind::DimensionMismatch, "state dimension " + std::to_string(state_dimension) +
                                           " != observable dimension " +
                                           std::to_string(obs.dimension()));
  }
}

/// State invariants are enforced at construction, so only the pairing
/// remains to be checked here.
inline void validate_pair(const PureState& psi, const Observable& obs) {
  validate_pair(psi.dimension(), obs);
}
inline void validate_pair(const DensityMatrix& rho, const Observable& obs) {
  validate_pair(rho.dimension(), obs);
}
inline void validate_pair(const State& state, const Observable& obs) {
  validate_pair(dimension_of(state), obs);
}

namespace detail {

struct MergeClasses {
  SpectralClass operator()(SpectralClass a, const SpectralClass& b) const {
    a.weight += b.weight;
    a.probability += b.probability;
    return a;
  }
  SpectralClass with_key(SpectralClass a, double key) const {
    a.eigenvalue = key;
    return a;
  }
};

inline SpectralWeights coalesce_classes(std::vector<SpectralClass> classes) {
  std::erase_if(classes, [](const SpectralClass& c) { return !(c.weight > 0.0); });
  auto merged = coalesce(
      std::move(classes), [](const SpectralClass& c) { return c.eigenvalue; },
      [](const SpectralClass& c) { return c.weight; }, MergeClasses{});
  return SpectralWeights{std::move(merged)};
}

}  // namespace detail

inline SpectralWeights group_by_eigenvalue(const PureState& psi, const Observable& obs) {
  validate_pair(psi, obs);
  std::vector<SpectralClass> classes;
  classes.reserve(psi.amplitudes().size());
  for (const auto& a : psi.amplitudes()) {
    const double mag = std::abs(a.value);
    classes.push_back({obs.eigenvalue(a.index), mag, mag * mag});
  }
  return detail::coalesce_classes(std::move(classes));
}

/// Builds class weights directly, for families whose grouping is known in
/// closed form (and whose basis is too large to enumerate).
inline SpectralWeights make_spectral_weights(std::vector<SpectralClass> classes) {
  for (const auto& c : classes) {
    if (!std::isfinite(c.eigenvalue) || !(c.weight >= 0.0) || !(c.probability >= 0.0)) {
      fail(ErrorKind::InvalidArgument, "invalid spectral class");
    }
  }
  auto out = detail::coalesce_classes(std::move(classes));
  if (out.classes.empty()) fail(ErrorKind::AllZeroWeights, "no class carries weight");
  return out;
}

}  // namespace macroq
