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

#include <cmath>
#include <vector>

#include "swipt/errors.hpp"
#include "swipt/shannon.hpp"
#include "swipt/solver.hpp"
#include "swipt/verify.hpp"

namespace {

using namespace swipt;

const EhModel kEh{0.5, 1.0};

KktOptions check_opts(double dx) {
  KktOptions k;
  k.check_step = dx / 10.0;
  return k;
}

SolveResult solved(const ConstraintSet& c, const HpaModel& h, double dx, int refine = 0) {
  SolveOptions o;
  o.dx = dx;
  o.refine = refine;
  return prune_support(solve_weights(build_grid(c.max_peak(), dx), c, h, kEh, o), c, h, kEh, o);
}

TEST(KktCheck, CertifiesSolverOutput) {
  const auto c = ConstraintSet::static_peak(2.0, 1.0, 1.0);
  const auto rep = kkt_check(solved(c, {}, 0.05), c, {}, kEh, check_opts(0.05));
  EXPECT_TRUE(rep.verdict) << rep.max_violation << " " << rep.max_support_residual;
  EXPECT_GT(rep.lambda1, 0.0);
  EXPECT_EQ(rep.lambda2, 0.0);
}

TEST(KktCheck, CertifiesTradeOffPoint) {
  const auto c = ConstraintSet::static_peak(4.0, 1.0, 1.1);
  const auto rep = kkt_check(solved(c, HpaModel::sspa(3.0, 1.0), 0.05, 1), c, HpaModel::sspa(3.0, 1.0), kEh,
                             check_opts(0.05));
  EXPECT_TRUE(rep.verdict) << rep.max_violation << " " << rep.max_support_residual;
}

TEST(KktCheck, PerturbedWeightsFail) {
  const auto c = ConstraintSet::static_peak(5.0, 1.0, 1.0);
  auto r = solved(c, {}, 0.05, 1);
  ASSERT_TRUE(kkt_check(r, c, {}, kEh, check_opts(0.05)).verdict);
  ASSERT_GE(r.distribution.size(), 3u);
  r.distribution.points[0].q -= 0.05;
  r.distribution.points[1].q += 0.05;
  const auto rep = kkt_check(as_result(r.distribution, {}, kEh), c, {}, kEh, check_opts(0.05));
  EXPECT_FALSE(rep.verdict);
}

TEST(KktCheck, UniformLawFails) {
  const auto grid = build_grid(3.0, 0.5);
  MassPointDistribution d;
  d.peak = 3.0;
  for (double x : grid) d.points.push_back({x, 1.0 / grid.size()});
  const auto c = ConstraintSet::static_peak(3.0, 10.0, 1.0);
  EXPECT_FALSE(kkt_check(as_result(d, {}, kEh), c, {}, kEh).verdict);
}

TEST(KktCheck, ResidualsInSAgreeWithTable) {
  const auto c = ConstraintSet::static_peak(3.0, 1.0, 1.1);
  const auto h = HpaModel::sspa(2.0, 1.0);
  const auto r = solved(c, h, 0.05);
  KktOptions k = check_opts(0.5);
  const auto rep = kkt_check(r, c, h, kEh, k);
  std::vector<double> s;
  std::vector<double> g;
  for (const auto& row : rep.table) {
    const double xh = hpa_distort(row.x[0], h);
    s.push_back(1.0 / (1.0 + xh * xh));
    g.push_back(row.g);
  }
  const auto res = kkt_residuals_s(s, r.distribution, c, h, kEh, rep, k.rule);
  ASSERT_EQ(res.size(), g.size());
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(res[i], g[i], 1e-8) << i;
  EXPECT_THROW(kkt_residuals_s({0.0}, r.distribution, c, h, kEh, rep), DomainError);
}

TEST(KktCheck, RejectsBadOptions) {
  const auto c = ConstraintSet::static_peak(2.0, 1.0, 1.0);
  KktOptions k;
  k.check_step = 0.0;
  EXPECT_THROW(kkt_check(solved(c, {}, 0.1), c, {}, kEh, k), ContractError);
  const ConstraintSet two{1.0, {{0.0, 0.5}, {2.0, 0.5}}, 1.0};
  EXPECT_THROW(kkt_check(solved(c, {}, 0.1), two, {}, kEh), ContractError);
}

TEST(KktCheckExtended, DegenerateStateMatchesStatic) {
  const double a = 2.0;
  const auto c = ConstraintSet::static_peak(a, 1.0, 1.05);
  const auto r = solved(c, {}, 0.05);
  const auto ext = onoff_as_extended(r, a, 1.0);
  const auto oc = onoff_constraints(a, 1.0, c);
  const auto k = check_opts(0.05);
  const auto s = kkt_check(r, c, {}, kEh, k);
  const auto e = kkt_check_extended(ext, oc, {}, kEh, k);
  EXPECT_EQ(s.verdict, e.verdict);
  EXPECT_NEAR(s.max_violation, e.max_violation, 1e-9);
  EXPECT_NEAR(s.max_support_residual, e.max_support_residual, 1e-9);
}

TEST(KktCheckExtended, OnOffSolverOutputCertifies) {
  const auto base = ConstraintSet::static_peak(3.0, 1.0, 1.05);
  SolveOptions o;
  const auto r = solve_onoff(3.0, 0.5, base, {}, kEh, o);
  const auto rep = kkt_check_extended(onoff_as_extended(r, 3.0, 0.5), onoff_constraints(3.0, 0.5, base), {},
                                      kEh, check_opts(o.dx));
  EXPECT_TRUE(rep.verdict) << rep.max_violation << " " << rep.max_support_residual;
}

TEST(KktCheckExtended, UniformProductLawFails) {
  const ConstraintSet c{10.0, {{1.0, 0.4}, {2.0, 0.6}}, 1.0};
  ExtendedDistribution d;
  d.states = c.states;
  const auto grid = build_extended_grid(c.states, 0.5);
  for (const auto& x : grid) d.points.push_back({x, 1.0 / grid.size()});
  EXPECT_FALSE(kkt_check_extended(as_result(d, {}, kEh), c, {}, kEh).verdict);
}

TEST(LowPeakBinary, ClosedForm) {
  const auto d = low_pp_binary(1.0, 2.0, {}, kEh);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.points[0].x, 0.0);
  EXPECT_EQ(d.points[1].x, 2.0);
  EXPECT_NEAR(d.points[0].q, 0.75, 1e-12);
  EXPECT_NEAR(d.points[1].q, 0.25, 1e-12);
}

TEST(LowPeakBinary, PowerSlackMatchesSolver) {
  const auto d = low_pp_binary(4.0, 2.0, {}, kEh);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_LT(d.points[1].q, 1.0);
  const std::vector<double> grid{0.0, 2.0};
  const auto r = solve_weights(grid, ConstraintSet::static_peak(2.0, 4.0, 1.0), {}, kEh, {});
  EXPECT_NEAR(d.points[1].q, r.weights[1], 1e-3);
}

TEST(LowPeakBinary, RejectsNonpositive) {
  EXPECT_THROW(low_pp_binary(0.0, 2.0, {}, kEh), DomainError);
  EXPECT_THROW(low_pp_binary(1.0, -1.0, {}, kEh), DomainError);
}

TEST(Transition, BracketsTheBinaryRegime) {
  const double t = find_transition(1.0, {}, kEh, 1.0, 4.0);
  EXPECT_GT(t, 2.0);
  EXPECT_LT(t, 3.0);
  const double below = t - 0.1;
  const auto c = ConstraintSet::static_peak(below, 1.0, 1.0);
  KktOptions k;
  k.check_step = below / 500.0;
  EXPECT_TRUE(kkt_check(as_result(low_pp_binary(1.0, below, {}, kEh), {}, kEh), c, {}, kEh, k).verdict);

  // Above the transition the binary law at the peak is beaten by the solver.
  const double above = t + 0.1;
  const auto ca = ConstraintSet::static_peak(above, 1.0, 1.0);
  const auto bin = as_result(low_pp_binary(1.0, above, {}, kEh), {}, kEh);
  EXPECT_FALSE(kkt_check(bin, ca, {}, kEh, k).verdict);
  EXPECT_GT(solved(ca, {}, 0.01).rate, bin.rate + 1e-7);
}

TEST(Transition, RejectsBadBracket) {
  EXPECT_THROW(find_transition(1.0, {}, kEh, 3.0, 4.0), SearchError);
  EXPECT_THROW(find_transition(1.0, {}, kEh, 2.0, 1.0), ContractError);
}

}  // namespace
