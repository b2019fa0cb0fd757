// Copyright 2026 The swipt-capacity Authors.
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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "swipt/errors.hpp"
#include "swipt/solver.hpp"
#include "swipt/verify.hpp"

namespace {

using namespace swipt;

const EhModel kEh{0.5, 1.0};

std::vector<oracle::Letter> letters(const std::vector<double>& grid, const HpaModel& h = {}) {
  std::vector<oracle::Letter> out;
  for (double x : grid) out.push_back(oracle::single(output_scale(x, h)));
  return out;
}

TEST(BuildGrid, Examples) {
  EXPECT_EQ(build_grid(1.0, 0.5), (std::vector<double>{0.0, 0.5, 1.0}));
  const auto g = build_grid(1.0, 0.4);
  ASSERT_EQ(g.size(), 4u);
  EXPECT_DOUBLE_EQ(g[2], 0.8);
  EXPECT_EQ(g[3], 1.0);
  const auto big = build_grid(5.0, 0.05);
  EXPECT_EQ(big.size(), 101u);
  EXPECT_EQ(big.back(), 5.0);
  EXPECT_THROW(build_grid(1.0, 0.0), ContractError);
}

TEST(SolveWeights, LowPeakBinary) {
  const auto c = ConstraintSet::static_peak(2.0, 1.0, 1.0);
  SolveOptions o;
  o.dx = 0.02;
  const auto r = prune_support(solve_weights(build_grid(2.0, o.dx), c, {}, kEh, o), c, {}, kEh, o);
  ASSERT_EQ(r.distribution.size(), 2u);
  EXPECT_NEAR(r.distribution.points[0].x, 0.0, 1e-12);
  EXPECT_NEAR(r.distribution.points[1].x, 2.0, 1e-12);
  EXPECT_NEAR(r.distribution.points[0].q, 0.75, 1e-3);
  EXPECT_NEAR(r.distribution.points[1].q, 0.25, 1e-3);
  EXPECT_LE(r.power, 1.0 + 1e-9);
  EXPECT_NEAR(r.rate, mutual_information(r.distribution, {}), 1e-9);
}

TEST(SolveWeights, MaxEnergyConcentratesOnPeak) {
  const auto grid = build_grid(2.0, 0.05);
  const double emax = max_energy_on_grid(grid, ConstraintSet::static_peak(2.0, 1.0), {}, kEh);
  EXPECT_NEAR(emax, 0.75 + 0.25 * harvested_energy(2.0, {}, kEh), 1e-12);
  const auto c = ConstraintSet::static_peak(2.0, 1.0, emax - 1e-9);
  const auto r = solve_weights(grid, c, {}, kEh, {});
  EXPECT_NEAR(r.weights.front(), 0.75, 1e-4);
  EXPECT_NEAR(r.weights.back(), 0.25, 1e-4);
  EXPECT_GE(r.energy, c.e_req - 1e-9);
}

TEST(SolveWeights, MatchesBlahutArimotoWithoutCostConstraints) {
  for (double a : {1.0, 2.0}) {
    const auto grid = build_grid(a, 0.05);
    const auto c = ConstraintSet::static_peak(a, 1e6, 1.0);
    const auto r = solve_weights(grid, c, {}, kEh, {});
    const auto ba = oracle::blahut_arimoto(letters(grid), 1e-7);
    EXPECT_LE(ba.upper - ba.capacity, 1e-6);
    EXPECT_NEAR(r.rate, ba.capacity, 1e-5) << "A=" << a;
  }
}

TEST(SolveWeights, NotBeatenByExhaustiveTwoPointSearch) {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 3; ++i) {
    const double a = 1.0 + 3.0 * u(rng), p = 0.3 + 1.5 * u(rng);
    const auto hpa = (i % 2) ? HpaModel::sspa(0.7 * a, 1.0) : HpaModel::linear();
    const auto grid = build_grid(a, 0.05);
    std::vector<double> scales, energies;
    for (double x : grid) {
      scales.push_back(output_scale(x, hpa));
      energies.push_back(harvested_energy(x, hpa, kEh));
    }
    const double emax = max_energy_on_grid(grid, ConstraintSet::static_peak(a, p), hpa, kEh);
    const double e_req = 1.0 + u(rng) * 0.8 * (emax - 1.0);
    const auto r = solve_weights(grid, ConstraintSet::static_peak(a, p, e_req), hpa, kEh, {});
    const auto two = oracle::exhaustive_two_point(grid, scales, energies, p, e_req);
    EXPECT_LE(two.rate, r.rate + 1e-3) << "A=" << a << " P=" << p;
  }
}

TEST(SolveWeights, BeatsRandomFeasibleLaws) {
  const double a = 3.0, p = 1.5;
  const auto grid = build_grid(a, 0.1);
  const auto c = ConstraintSet::static_peak(a, p, 1.2);
  const auto r = solve_weights(grid, c, {}, kEh, {});
  std::mt19937_64 rng(5);
  std::exponential_distribution<double> e(1.0);
  int tried = 0;
  while (tried < 20) {
    MassPointDistribution d;
    d.peak = a;
    double s = 0.0;
    std::vector<double> w(grid.size());
    for (auto& v : w) s += (v = e(rng));
    for (std::size_t i = 0; i < grid.size(); ++i) d.points.push_back({grid[i], w[i] / s});
    if (average_power(d) > p || average_energy(d, {}, kEh) < c.e_req) continue;
    ++tried;
    EXPECT_GE(r.rate, mutual_information(d, {}) - 1e-9);
  }
}

TEST(SolveWeights, SatisfiesConstraints) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 6; ++i) {
    const double a = 1.0 + 4.0 * u(rng), p = 0.2 + 2.0 * u(rng);
    const auto grid = build_grid(a, 0.1);
    const double emax = max_energy_on_grid(grid, ConstraintSet::static_peak(a, p), {}, kEh);
    const auto c = ConstraintSet::static_peak(a, p, 1.0 + u(rng) * (emax - 1.0));
    const auto r = solve_weights(grid, c, {}, kEh, {});
    double total = 0.0;
    for (double w : r.weights) {
      EXPECT_GE(w, 0.0);
      total += w;
    }
    EXPECT_NEAR(total, 1.0, 1e-10);
    EXPECT_LE(r.power, p * (1 + 1e-9));
    EXPECT_GE(r.energy, c.e_req - 1e-9);
    EXPECT_LE(r.gap, 1e-8 * 10);
  }
}

TEST(SolveWeights, InfeasibleEnergyThrows) {
  const auto grid = build_grid(2.0, 0.1);
  try {
    solve_weights(grid, ConstraintSet::static_peak(2.0, 1.0, 5.0), {}, kEh, {});
    FAIL() << "expected InfeasibleError";
  } catch (const InfeasibleError& e) {
    EXPECT_EQ(e.constraint(), "energy");
  }
}

TEST(SolveWeights, OptionsValidated) {
  const auto grid = build_grid(2.0, 0.1);
  SolveOptions o;
  o.tol = 0.0;
  EXPECT_THROW(solve_weights(grid, ConstraintSet::static_peak(2.0, 1.0), {}, kEh, o), ContractError);
  o = {};
  o.dx = 1.0;
  EXPECT_THROW(o.validate(2.0), ContractError);
}

TEST(SolveWeights, WarmStartAgreesWithCold) {
  const auto grid = build_grid(3.0, 0.05);
  const auto c1 = ConstraintSet::static_peak(3.0, 1.0, 1.05);
  const auto c2 = ConstraintSet::static_peak(3.0, 1.0, 1.15);
  const auto first = solve_weights(grid, c1, {}, kEh, {});
  const auto warm = solve_weights(grid, c2, {}, kEh, {}, first.weights);
  const auto cold = solve_weights(grid, c2, {}, kEh, {});
  EXPECT_NEAR(warm.rate, cold.rate, 1e-7);
}

TEST(SolveWeights, RefinementOnlyImproves) {
  const auto grid = build_grid(5.0, 0.05);
  const auto c = ConstraintSet::static_peak(5.0, 1.0, 1.09);
  const auto h = HpaModel::sspa(2.5, 1.0);
  SolveOptions o;
  const auto plain = solve_weights(grid, c, h, kEh, o);
  o.refine = 1;
  const auto fine = solve_weights(grid, c, h, kEh, o);
  EXPECT_GE(fine.rate, plain.rate - 1e-9);
  EXPECT_GT(fine.grid.size(), grid.size());
}

TEST(Prune, Examples) {
  const auto c = ConstraintSet::static_peak(2.0, 10.0, 1.0);
  SolveOptions o;
  SolveResult r;
  r.distribution = {{{0.0, 0.5}, {1.0, 1e-12}, {2.0, 0.5}}, 2.0};
  const auto p = prune_support(r, c, {}, kEh, o);
  EXPECT_EQ(p.distribution.size(), 2u);
  EXPECT_FALSE(p.prune_warning);

  SolveResult adj;
  adj.distribution = {{{0.0, 0.4}, {1.0, 0.3}, {1.05, 0.3}}, 2.0};
  o.merge_radius = 0.1;
  const auto m = prune_support(adj, c, {}, kEh, o);
  ASSERT_EQ(m.distribution.size(), 2u);
  EXPECT_NEAR(m.distribution.points[1].x, 1.025, 1e-12);
  EXPECT_NEAR(m.distribution.points[1].q, 0.6, 1e-12);

  const auto again = prune_support(m, c, {}, kEh, o);
  EXPECT_EQ(again.distribution, m.distribution);
}

TEST(Prune, KeepsUnprunedWhenMergeBreaksFeasibility) {
  // Merging 0.9 and 1.1 to 1.0 lowers the energy below the requirement.
  const double e = 0.5 * harvested_energy(0.9, {}, kEh) + 0.5 * harvested_energy(1.1, {}, kEh);
  const auto c = ConstraintSet::static_peak(2.0, 10.0, e);
  SolveResult r;
  r.distribution = {{{0.9, 0.5}, {1.1, 0.5}}, 2.0};
  SolveOptions o;
  o.merge_radius = 0.25;
  const auto p = prune_support(r, c, {}, kEh, o);
  EXPECT_TRUE(p.prune_warning);
  EXPECT_EQ(p.distribution.size(), 2u);
}

TEST(Ask, BinaryAtLowPeakEqualsUnconstrained) {
  const auto grid = build_grid(2.0, 0.05);
  const auto c = ConstraintSet::static_peak(2.0, 1.0, 1.0);
  SolveOptions o;
  const auto full = solve_weights(grid, c, {}, kEh, o);
  const auto two = solve_ask(grid, c, {}, kEh, 2, o);
  EXPECT_LE(two.distribution.size(), 2u);
  EXPECT_NEAR(two.rate, full.rate, 1e-6);
}

TEST(Ask, NondecreasingInAlphabetAndCapped) {
  const auto grid = build_grid(5.0, 0.05);
  const auto c = ConstraintSet::static_peak(5.0, 1.0, 1.05);
  SolveOptions o;
  double prev = 0.0;
  std::vector<double> seed;
  for (int n : {2, 4, 8}) {
    const auto r = solve_ask(grid, c, {}, kEh, n, o, seed);
    EXPECT_LE(r.distribution.size(), static_cast<std::size_t>(n));
    EXPECT_GE(r.rate, prev - 1e-9) << n;
    EXPECT_LE(r.power, 1.0 + 1e-9);
    EXPECT_GE(r.energy, c.e_req - 1e-9);
    prev = r.rate;
    seed = r.distribution.locations();
  }
  const auto full = solve_weights(grid, c, {}, kEh, o);
  const auto all = solve_ask(grid, c, {}, kEh, static_cast<int>(grid.size()), o);
  EXPECT_NEAR(all.rate, full.rate, 1e-9);
}

}  // namespace
