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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "macroq/cli.hpp"
#include "macroq/macroq.hpp"

using namespace macroq;

namespace {

/// Collects failed checks for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++count_;
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": got " << got << ", want " << want << " +- " << tol;
    expect(std::abs(got - want) <= tol, msg.str());
  }
  bool ok() const { return count_ == 0; }
  const std::vector<std::string>& failures() const { return failures_; }
  int count() const { return count_; }

 private:
  std::vector<std::string> failures_;
  int count_ = 0;
};

using Clock = std::chrono::steady_clock;

bool run_criterion(int id, const char* title, double time_limit_s, const std::function<void(Check&)>& body) {
  Check check;
  const auto start = Clock::now();
  try {
    body(check);
  } catch (const std::exception& ex) {
    check.expect(false, std::string("exception: ") + ex.what());
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (time_limit_s > 0.0) {
    check.expect(seconds < time_limit_s, "runtime " + std::to_string(seconds) + " s exceeds limit");
  }
  std::printf("[%s] %d. %s (%.3f s)\n", check.ok() ? "PASS" : "FAIL", id, title, seconds);
  for (const auto& f : check.failures()) std::printf("       %s\n", f.c_str());
  if (check.count() > static_cast<int>(check.failures().size())) {
    std::printf("       ... %d failures in total\n", check.count());
  }
  std::fflush(stdout);
  return check.ok();
}

void table_one(Check& c) {
  for (int n = 2; n <= 12; ++n) {
    const auto sz = magnetization_z(n);
    c.near(measure_m_pure(ghz(n), sz).m, n / 2.0, 1e-10, "GHZ n=" + std::to_string(n));
    c.near(measure_m_pure(noon(n, n), mode_photon_number(n)).m, n / 2.0, 1e-10,
           "NOON n=" + std::to_string(n));
    c.expect(measure_m_pure(w_state(n), sz).m == 0.0, "W n=" + std::to_string(n));
  }
  for (double beta : {0.1, 1.0, 5.0}) {
    c.expect(measure_m(thermal(beta, 50), number_operator(50)).m == 0.0, "thermal beta=" + std::to_string(beta));
  }
}

void psi1_constancy(Check& c) {
  for (int n = 1; n <= 25; ++n) {
    const auto r = measure_m_pure(single_excitation(n), magnetization_z(n));
    c.expect(r.path == ComputationPath::grouped, "grouped path");
    c.near(r.m, 0.5, 1e-12, "psi1 n=" + std::to_string(n));
  }
}

void oracle_equivalence(Check& c) {
  auto pure_case = [&](const PureState& psi, const Observable& obs, const std::string& what) {
    c.near(measure_m_pure(psi, obs).m, dense_measure(psi, obs), 1e-10, what);
  };
  auto mixed_case = [&](const DensityMatrix& rho, const Observable& obs, const std::string& what) {
    c.near(measure_m(rho, obs).m, dense_measure(DenseMatrix::from(rho), obs), 1e-10, what);
  };
  for (int n = 1; n <= 12; ++n) {
    const auto sz = magnetization_z(n);
    const auto tag = " n=" + std::to_string(n);
    pure_case(ghz(n), sz, "ghz" + tag);
    pure_case(single_excitation(n), sz, "psi1" + tag);
    pure_case(w_state(n), sz, "w" + tag);
    pure_case(uniform(n), sz, "uniform" + tag);
    pure_case(generalized_ghz(n, 0.4), sz, "gghz" + tag);
  }
  for (int n = 1; n <= 20; ++n) {
    pure_case(noon(n, n), mode_photon_number(n), "noon n=" + std::to_string(n));
  }
  for (double r : {0.0, 1.0, 2.5, 4.0}) {
    const int cutoff = coherent_cutoff(r);
    pure_case(coherent(r, cutoff), number_operator(cutoff), "coherent");
    pure_case(scs(r, cutoff), number_operator(cutoff), "scs in Fock basis");
    mixed_case(thermal(0.3 + r, 40), number_operator(40), "thermal");
  }
  pure_case(scs_idealized(3.0), idealized_quadrature(3.0), "idealized scs");
  mixed_case(mixed_scs(3.0), idealized_quadrature(3.0), "idealized mixed scs");
  {
    const auto problem = scs_quadrature_problem(2.0, coherent_cutoff(2.0));
    pure_case(std::get<PureState>(problem.state), problem.observable, "scs quadrature");
  }
  for (Index dim = 2; dim <= 32; ++dim) {
    for (int t = 0; t < 500; ++t) {
      const auto seed = derive_seed(dim, static_cast<std::uint64_t>(t));
      const auto obs = random_spectrum(dim, derive_seed(seed, 0), false);
      const auto what = "random dim=" + std::to_string(dim) + " t=" + std::to_string(t);
      pure_case(random_pure(dim, derive_seed(seed, 1)), obs, what + " pure");
      mixed_case(random_density(dim, derive_seed(seed, 2)).to_density(), obs, what + " density");
    }
  }
}

void uniform_combinatorics(Check& c) {
  for (int n = 1; n <= 10; ++n) {
    c.near(uniform_measure_sum(n).to_double(), dense_measure(uniform(n), magnetization_z(n, {1.0, 0.0})),
           1e-12, "uniform n=" + std::to_string(n));
  }
  for (int n = 1; n <= 64; ++n) {
    const auto row = binomial_row(n);
    for (int d = 0; d <= n; ++d) {
      BigInt s = 0;
      for (int m = 0; m + d <= n; ++m) s += row[m] * row[m + d];
      c.expect(s == binomial(2 * n, n + d), "Vandermonde n=" + std::to_string(n) + " d=" + std::to_string(d));
    }
  }
  c.expect(std::abs(uniform_measure_closed(2) - uniform_measure_sum(2).to_double()) > 0.1,
           "closed form should diverge from the oracle at n=2");
  std::ostringstream out, err;
  const int code = cli::run({"macroq", "sweep", "--state", "uniform", "--n-min", "1", "--n-max", "20"}, out, err);
  c.expect(code == 0, "uniform sweep exit code");
  c.expect(out.str().rfind("n,M,N_eff,path,M_paper_closed\n", 0) == 0, "uniform sweep header");
}

void mmqs_theorem(Check& c) {
  for (int s = 0; s < 50; ++s) {
    const Index dim = 3 + static_cast<Index>(s % 6);
    const auto seed = derive_seed(777, static_cast<std::uint64_t>(s));
    const auto obs = random_spectrum(dim, seed, true);
    const auto r = scan_theorem(obs, 1000, seed);
    const auto what = "spectrum " + std::to_string(s) + " dim=" + std::to_string(dim);
    c.near(r.best_m, r.d_max_over_2, 1e-6, what + " optimum");
    c.expect(r.extreme_mass >= 1.0 - 1e-4, what + " extreme mass " + std::to_string(r.extreme_mass));
    c.expect(r.bound_violations == 0, what + " bound violations");
  }
}

void generalized_ghz_check(Check& c) {
  for (int n = 1; n <= 14; ++n) {
    const auto sz = magnetization_z(n);
    for (double eps : {0.01, 0.05, 0.2, std::numbers::pi / 2}) {
      const auto psi = generalized_ghz(n, eps);
      c.near(measure_m_pure(psi, sz).m, dense_measure(psi, sz), 1e-10,
             "gghz n=" + std::to_string(n) + " eps=" + std::to_string(eps));
    }
    c.expect(measure_m_pure(generalized_ghz(n, std::numbers::pi / 2), sz).m == n / 2.0,
             "gghz pi/2 n=" + std::to_string(n));
  }
  const auto sz10 = magnetization_z(10);
  double prev = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double eps = k * (std::numbers::pi / 2) / 200.0;
    const double m = measure_m_pure(generalized_ghz(10, eps), sz10).m;
    c.expect(m > prev, "gghz not increasing at eps=" + std::to_string(eps));
    prev = m;
  }
}

void scs_numerics(Check& c) {
  const BinSpec bins{0.1, 0.0};
  const double m4 = scs_full_measure(4.0, coherent_cutoff(4.0), bins);
  c.expect(m4 >= 4.0 && m4 <= 4.6, "M(alpha=4) = " + std::to_string(m4));
  double prev = 1e9;
  for (double a : {2.0, 3.0, 4.0, 5.0}) {
    const double ratio = scs_full_measure(a, coherent_cutoff(a), bins) / a;
    c.expect(ratio < prev && ratio > 1.0, "ratio at alpha=" + std::to_string(a) + " is " + std::to_string(ratio));
    prev = ratio;
  }
  for (double a : {0.5, 2.0, 4.0}) {
    c.expect(measure_m_pure(scs_idealized(a), idealized_quadrature(a)).m == a, "idealized scs");
    c.expect(measure_m(mixed_scs(a), idealized_quadrature(a)).m == 0.0, "idealized mixed scs");
  }
}

void property_suite(Check& c) {
  int cases = 0;
  for (int t = 0; t < 1200; ++t) {
    const auto seed = derive_seed(4242, static_cast<std::uint64_t>(t));
    Rng rng(seed);
    const Index dim = 2 + static_cast<Index>(rng.uniform() * 12.0);
    const auto obs = random_spectrum(dim, derive_seed(seed, 1), false);
    const auto psi = random_pure(dim, derive_seed(seed, 2));
    const auto rho = random_density(dim, derive_seed(seed, 3)).to_density();
    const auto base = measure_m(rho, obs);
    const std::string what = "case " + std::to_string(t);

    const double shift = rng.uniform(-5.0, 5.0);
    const auto shifted = measure_m(rho, obs.transformed("shift", [&](double a) { return a + shift; }));
    c.near(shifted.m, base.m, 1e-11, what + " shift");
    c.expect(shifted.distribution.points.size() == base.distribution.points.size(), what + " shift dist");

    const double s = rng.uniform(0.2, 3.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
    const auto scaled = measure_m(rho, obs.transformed("scale", [&](double a) { return s * a; }));
    c.near(scaled.m, std::abs(s) * base.m, 1e-11, what + " scale");

    double total = 0.0;
    for (const auto& p : base.distribution.points) total += p.probability;
    c.near(total, 1.0, 1e-10, what + " normalization");

    const BinSpec wide{10.0, -3.0};
    c.expect(measure_m(rho, bin_observable(obs, wide)).m == 0.0, what + " wide bins");

    c.near(measure_m_pure(psi, obs).m, measure_m(DensityMatrix::from_pure(psi), obs).m, 1e-10, what + " paths");
    c.near(mean_of_distribution(base.distribution), base.m, 1e-10, what + " mean");
    cases += 6;
  }
  c.expect(cases >= 1000, "too few property cases");
}

void sweep_performance(Check& c) {
  std::ostringstream out, err;
  const int code = cli::run({"macroq", "sweep", "--state", "ghz", "--n-min", "2", "--n-max", "100"}, out, err);
  c.expect(code == 0, "sweep exit code " + std::to_string(code) + ": " + err.str());
  const std::string text = out.str();
  c.expect(text.find("\n100,50,100,grouped\n") != std::string::npos, "row for n=100");
  c.expect(text.find("dense") == std::string::npos, "every row uses the grouped path");
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run_criterion(1, "Reference value regression", 1.0, table_one);
  ok &= run_criterion(2, "psi1 constancy", 0.0, psi1_constancy);
  ok &= run_criterion(3, "Oracle equivalence", 0.0, oracle_equivalence);
  ok &= run_criterion(4, "Uniform-state combinatorics", 0.0, uniform_combinatorics);
  ok &= run_criterion(5, "MMQS theorem", 30.0, mmqs_theorem);
  ok &= run_criterion(6, "Generalized GHZ", 0.0, generalized_ghz_check);
  ok &= run_criterion(7, "SCS quadrature numerics", 10.0, scs_numerics);
  ok &= run_criterion(8, "Property suite", 0.0, property_suite);
  ok &= run_criterion(9, "Sweep performance", 1.0, sweep_performance);
  std::printf("%s\n", ok ? "ALL ACCEPTANCE CRITERIA PASSED" : "ACCEPTANCE FAILURES PRESENT");
  return ok ? 0 : 1;
}
