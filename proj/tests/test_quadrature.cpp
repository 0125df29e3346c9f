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

#include <gtest/gtest.h>

#include <cmath>

#include "macroq/quadrature.hpp"
#include "macroq/states.hpp"

using namespace macroq;

TEST(Tridiagonal, TwoByTwo) {
  const auto s = eigendecompose(quadrature_matrix(0.0, 2));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_NEAR(s.eigenvalues[0], -0.5, 1e-15);
  EXPECT_NEAR(s.eigenvalues[1], 0.5, 1e-15);
}

TEST(Tridiagonal, ThreeByThree) {
  // Off-diagonals 1/2 and sqrt(2)/2 give eigenvalues 0 and +-sqrt(3)/2.
  const auto s = eigendecompose(quadrature_matrix(0.0, 3));
  EXPECT_NEAR(s.eigenvalues[0], -std::sqrt(3.0) / 2, 1e-14);
  EXPECT_NEAR(s.eigenvalues[1], 0.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues[2], std::sqrt(3.0) / 2, 1e-14);
}

TEST(Tridiagonal, DiagonalInput) {
  SymmetricTridiagonal t{{3.0, -1.0, 2.0}, {0.0, 0.0}};
  const auto s = eigendecompose(t);
  EXPECT_EQ(s.eigenvalues, (std::vector<double>{-1.0, 2.0, 3.0}));
  EXPECT_NEAR(std::abs(s.vector(0)[1]), 1.0, 1e-15);
}

TEST(Tridiagonal, RejectsBadInput) {
  EXPECT_THROW(quadrature_matrix(0.0, 1), Error);
  EXPECT_THROW(eigendecompose(SymmetricTridiagonal{{1.0, 2.0}, {}}), Error);
}

TEST(Tridiagonal, SpectrumIndependentOfAngle) {
  const auto a = eigendecompose(quadrature_matrix(0.0, 30));
  const auto b = eigendecompose(quadrature_matrix(1.1, 30));
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a.eigenvalues[k], b.eigenvalues[k], 1e-12);
}

TEST(Tridiagonal, ResidualOrthonormalityAndParity) {
  const auto t = quadrature_matrix(0.0, 41);
  const auto s = eigendecompose(t);
  const std::size_t n = s.size();
  for (std::size_t k = 0; k < n; ++k) {
    EXPECT_NEAR(s.eigenvalues[k], -s.eigenvalues[n - 1 - k], 1e-11);
    const auto v = s.vector(k);
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double tv = t.diagonal[i] * v[i];
      if (i > 0) tv += t.off_diagonal[i - 1] * v[i - 1];
      if (i + 1 < n) tv += t.off_diagonal[i] * v[i + 1];
      res = std::max(res, std::abs(tv - s.eigenvalues[k] * v[i]));
    }
    EXPECT_LT(res, 1e-11);
    for (std::size_t l = k; l < n; ++l) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += v[i] * s.vector(l)[i];
      EXPECT_NEAR(dot, k == l ? 1.0 : 0.0, 1e-12);
    }
  }
  for (std::size_t k = 1; k < n; ++k) EXPECT_LT(s.eigenvalues[k - 1], s.eigenvalues[k]);
}

TEST(QuadratureBasis, CoherentStateMoments) {
  // <X_theta> = |alpha| and Var = 1/4 when theta = arg(alpha).
  for (Complex alpha : {Complex(2.0, 0.0), Complex(1.0, 2.0), Complex(-1.5, -0.5)}) {
    const int cutoff = coherent_cutoff(alpha);
    const QuadratureBasis basis(std::arg(alpha), quadrature_levels(cutoff));
    const auto c = basis.rotate(coherent(alpha, cutoff));
    double norm = 0.0, mean = 0.0, second = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double p = std::norm(c[k]);
      const double x = basis.spectrum().eigenvalues[k];
      norm += p;
      mean += p * x;
      second += p * x * x;
    }
    EXPECT_NEAR(norm, 1.0, 1e-12);
    EXPECT_NEAR(mean, std::abs(alpha), 1e-9);
    EXPECT_NEAR(second - mean * mean, 0.25, 1e-9);
  }
}

TEST(QuadratureBasis, RejectsOversizedState) {
  const QuadratureBasis basis(0.0, 10);
  EXPECT_THROW(basis.rotate(coherent(0.5, 20)), Error);
}

TEST(Scs, FullMeasureAtFour) {
  const double m = scs_full_measure(4.0, coherent_cutoff(4.0), {0.1, 0.0});
  EXPECT_GE(m, 4.0);
  EXPECT_LE(m, 4.6);
}

TEST(Scs, SmallAmplitudeStaysBelowOne) {
  EXPECT_LT(scs_full_measure(0.0, coherent_cutoff(0.0)), 1.0);
  EXPECT_LT(scs_full_measure(0.3, coherent_cutoff(0.3)), 1.0);
}

TEST(Scs, RatioDecreasesTowardOne) {
  double prev = 1e9;
  for (double a : {2.0, 3.0, 4.0, 5.0}) {
    const double ratio = scs_full_measure(a, coherent_cutoff(a)) / a;
    EXPECT_LT(ratio, prev);
    EXPECT_GT(ratio, 1.0);
    prev = ratio;
  }
}

TEST(Scs, PhaseOfAlphaDoesNotMatter) {
  const double a = scs_full_measure(3.0, coherent_cutoff(3.0));
  const Complex rotated = std::polar(3.0, 0.7);
  EXPECT_NEAR(scs_full_measure(rotated, coherent_cutoff(rotated)), a, 1e-9);
}

TEST(Scs, ConvergedInCutoff) {
  const int c = coherent_cutoff(4.0);
  EXPECT_LT(std::abs(scs_full_measure(4.0, c) - scs_full_measure(4.0, c + 10)), 1e-3);
}

TEST(Scs, MixedIsFarBelowPure) {
  const int c = coherent_cutoff(4.0);
  const double mixed = mixed_scs_full_report(4.0, c).m;
  EXPECT_LT(mixed, 1.0);
  EXPECT_LT(mixed, 0.5 * scs_full_measure(4.0, c));
}

TEST(Scs, BinWidthLimits) {
  EXPECT_THROW(scs_full_measure(2.0, coherent_cutoff(2.0), {0.3, 0.0}), Error);
  EXPECT_THROW(scs_full_measure(2.0, coherent_cutoff(2.0), {0.0, 0.0}), Error);
  EXPECT_NO_THROW(scs_full_measure(2.0, coherent_cutoff(2.0), {0.25, 0.0}));
}
