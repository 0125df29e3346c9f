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

#include <bit>
#include <cmath>

#include "macroq/measure.hpp"
#include "macroq/states.hpp"

using namespace macroq;

namespace {

// Literal evaluation over all 4^n ordered pairs of the uniform state with
// +-1/2 per spin; every |rho_ij| equals 2^-n.
double brute_force_uniform(int n) {
  const Index dim = Index{1} << n;
  double num = 0.0;
  double den = 0.0;
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) {
      const double ai = 0.5 * (n - 2 * std::popcount(i));
      const double aj = 0.5 * (n - 2 * std::popcount(j));
      num += std::abs(ai - aj) / static_cast<double>(dim);
      den += 1.0 / static_cast<double>(dim);
    }
  }
  return num / den;
}

}  // namespace

TEST(BruteForceOracle, FrozenUniformValues) {
  // Values frozen into the tests below.
  EXPECT_NEAR(brute_force_uniform(1), 0.5, 1e-15);
  EXPECT_NEAR(brute_force_uniform(2), 0.75, 1e-15);
}

TEST(Distance, SpinExamples) {
  const auto obs = magnetization_z(3);
  EXPECT_DOUBLE_EQ(distance(obs, 0b000, 0b111), 3.0);
  EXPECT_DOUBLE_EQ(distance(obs, 0b000, 0b100), 1.0);
  EXPECT_DOUBLE_EQ(distance(obs, 5, 5), 0.0);
  EXPECT_DOUBLE_EQ(distance(obs, 0b011, 0b110), distance(obs, 0b110, 0b011));
}

TEST(Distance, RejectsOutOfRange) {
  EXPECT_THROW(distance(magnetization_z(2), 0, 4), Error);
}

TEST(L1Coherence, Examples) {
  EXPECT_NEAR(l1_coherence(DensityMatrix::from_pure(ghz(5))), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(l1_coherence(DensityMatrix::diagonal({0.2, 0.3, 0.5})), 0.0);
  EXPECT_NEAR(l1_coherence(DensityMatrix::from_pure(uniform(2))), 3.0, 1e-15);
}

TEST(RawWeightedSum, Examples) {
  EXPECT_NEAR(raw_weighted_sum(DensityMatrix::from_pure(ghz(10)), magnetization_z(10)), 10.0, 1e-12);
  EXPECT_DOUBLE_EQ(raw_weighted_sum(DensityMatrix::diagonal({0.5, 0.5}), magnetization_z(1)), 0.0);
  EXPECT_NEAR(raw_weighted_sum(DensityMatrix::from_pure(single_excitation(5)), magnetization_z(5)),
              1.0, 1e-12);
  EXPECT_THROW(raw_weighted_sum(DensityMatrix::from_pure(ghz(2)), magnetization_z(3)), Error);
}

TEST(MeasureM, DenseExamples) {
  const auto ghz_report = measure_m(DensityMatrix::from_pure(ghz(10)), magnetization_z(10));
  EXPECT_NEAR(ghz_report.m, 5.0, 1e-12);
  EXPECT_EQ(ghz_report.path, ComputationPath::dense);
  EXPECT_EQ(ghz_report.n_eff, 10u);
  for (int n = 1; n <= 8; ++n) {
    EXPECT_NEAR(measure_m(DensityMatrix::from_pure(single_excitation(n)), magnetization_z(n)).m, 0.5,
                1e-12);
  }
  EXPECT_DOUBLE_EQ(measure_m(DensityMatrix::from_pure(w_state(5)), magnetization_z(5)).m, 0.0);
  EXPECT_NEAR(measure_m(DensityMatrix::from_pure(uniform(2)), magnetization_z(2)).m, 0.75, 1e-12);
}

TEST(MeasureM, DiagonalIncludedInDenominator) {
  // Off-diagonal only would give 1 for psi1; the diagonal halves it.
  const auto rho = DensityMatrix::from_pure(single_excitation(2));
  const double raw = raw_weighted_sum(rho, magnetization_z(2));
  const double off_only = raw / l1_coherence(rho);
  EXPECT_NEAR(off_only, 1.0, 1e-12);
  EXPECT_NEAR(measure_m(rho, magnetization_z(2)).m, 0.5, 1e-12);
}

TEST(MeasureMPure, GroupedExamples) {
  const auto r = measure_m_pure(ghz(30), magnetization_z(30));
  EXPECT_EQ(r.m, 15.0);
  EXPECT_EQ(r.path, ComputationPath::grouped);
  EXPECT_EQ(measure_m_pure(noon(4, 4), mode_photon_number(4)).m, 2.0);
  EXPECT_EQ(measure_m_pure(PureState(8, {{5, 1.0}}), magnetization_z(3)).m, 0.0);
}

TEST(DistanceDistribution, Examples) {
  for (int n : {1, 4, 10}) {
    const auto d = distance_distribution(DensityMatrix::from_pure(ghz(n)), magnetization_z(n));
    ASSERT_EQ(d.points.size(), 2u);
    EXPECT_DOUBLE_EQ(d.points[0].delta, 0.0);
    EXPECT_NEAR(d.points[0].probability, 0.5, 1e-15);
    EXPECT_DOUBLE_EQ(d.points[1].delta, n);
    EXPECT_NEAR(d.points[1].probability, 0.5, 1e-15);
  }
  const auto diag = distance_distribution(DensityMatrix::diagonal({0.1, 0.9}), magnetization_z(1));
  ASSERT_EQ(diag.points.size(), 1u);
  EXPECT_DOUBLE_EQ(diag.points[0].probability, 1.0);

  const auto psi1 = distance_distribution(single_excitation(6), magnetization_z(6));
  ASSERT_EQ(psi1.points.size(), 2u);
  EXPECT_DOUBLE_EQ(psi1.points[1].delta, 1.0);
  EXPECT_NEAR(psi1.points[1].probability, 0.5, 1e-15);
}

TEST(MeanOfDistribution, Examples) {
  EXPECT_DOUBLE_EQ(mean_of_distribution({{{0, 0.5}, {10, 0.5}}}), 5.0);
  EXPECT_DOUBLE_EQ(mean_of_distribution({{{0, 1.0}}}), 0.0);
  EXPECT_DOUBLE_EQ(mean_of_distribution({{{0, 0.5}, {1, 0.5}}}), 0.5);
  EXPECT_THROW(mean_of_distribution({{{0, 0.5}}}), Error);
}

TEST(EffectiveSize, Examples) {
  EXPECT_EQ(effective_size(5.0, 0.5), 10u);
  EXPECT_EQ(effective_size(0.0, 0.5), 0u);
  EXPECT_EQ(effective_size(0.75, 0.5), 2u);
  EXPECT_EQ(effective_size(0.5, 0.5), 1u);
  // Rounding noise just above an integer ratio does not bump the size.
  EXPECT_EQ(effective_size(5.000000000000001, 0.5), 10u);
  try {
    effective_size(1.0, 0.0);
    FAIL();
  } catch (const Error& ex) {
    EXPECT_EQ(ex.kind(), ErrorKind::NonPositiveUnit);
  }
}

TEST(BinObservable, Examples) {
  const auto binned = bin_observable(Observable("x", {0.1, 0.15, 3.0}), {0.5, 0.0});
  EXPECT_DOUBLE_EQ(binned.eigenvalue(0), 0.25);
  EXPECT_DOUBLE_EQ(binned.eigenvalue(1), 0.25);
  EXPECT_DOUBLE_EQ(binned.eigenvalue(2), 3.25);

  const Observable ints("ints", {-2.0, 0.0, 1.0, 5.0});
  const auto same = bin_observable(ints, {1.0, -0.5});
  for (Index i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(same.eigenvalue(i), ints.eigenvalue(i));

  const auto wide = bin_observable(magnetization_z(6), {100.0, -50.0});
  EXPECT_EQ(measure_m_pure(ghz(6), wide).m, 0.0);
  EXPECT_THROW(bin_observable(ints, {0.0, 0.0}), Error);
}

TEST(BinClasses, MergesClassesSharingABin) {
  const auto w = bin_classes(ghz_classes(4), {10.0, -5.0});
  ASSERT_EQ(w.classes.size(), 1u);
  EXPECT_EQ(measure_grouped(w).m, 0.0);
}

TEST(MeasureReport, MeanOfDistributionEqualsM) {
  const auto r = measure_m_pure(generalized_ghz(9, 0.4), magnetization_z(9));
  EXPECT_NEAR(mean_of_distribution(r.distribution), r.m, 1e-12);
  const auto d = measure_m(DensityMatrix::from_pure(uniform(5)), magnetization_z(5));
  EXPECT_NEAR(mean_of_distribution(d.distribution), d.m, 1e-12);
}
