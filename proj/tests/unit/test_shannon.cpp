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

#include <vector>

#include "swipt/errors.hpp"
#include "swipt/shannon.hpp"
#include "swipt/solver.hpp"
#include "swipt/verify.hpp"

namespace {

using namespace swipt;

const EhModel kEh{0.5, 1.0};

double static_rate(double peak, double p, double e_req, const SolveOptions& o = {}) {
  return solve_weights(build_grid(peak, o.dx), ConstraintSet::static_peak(peak, p, e_req), {}, kEh, o).rate;
}

TEST(ExtendedGrid, Examples) {
  EXPECT_EQ(build_extended_grid(std::vector<PeakState>{{1.0, 0.5}, {1.0, 0.5}}, 0.5).size(), 9u);
  const auto g = build_extended_grid(std::vector<PeakState>{{0.0, 0.5}, {2.0, 0.5}}, 1.0);
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g[0], (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(g[2], (std::vector<double>{0.0, 2.0}));
  EXPECT_EQ(build_extended_grid(std::vector<PeakState>{{1.0, 0.5}, {2.0, 0.5}}, 1.0).size(), 6u);
  EXPECT_THROW(build_extended_grid(std::vector<PeakState>{{1.0, 0.2}, {2.0, 0.3}, {3.0, 0.5}}, 1.0),
               ContractError);
}

TEST(SolveExtended, DegenerateStateReducesToStatic) {
  const ConstraintSet c{1.0, {{1.0, 0.0}, {2.0, 1.0}}, 1.05};
  const auto r = solve_extended(c, {}, kEh, {});
  EXPECT_NEAR(r.rate, static_rate(2.0, 1.0, 1.05), 1e-5);
}

TEST(SolveExtended, SandwichedByStaticPeaks) {
  const ConstraintSet c{1.0, {{1.5, 0.4}, {3.0, 0.6}}, 1.0};
  SolveOptions o;
  o.dx = 0.1;
  const auto r = solve_extended(c, {}, kEh, o);
  EXPECT_GE(r.rate, static_rate(1.5, 1.0, 1.0, o) - 1e-7);
  EXPECT_LE(r.rate, static_rate(3.0, 1.0, 1.0, o) + 1e-7);
  EXPECT_LE(r.power, 1.0 + 1e-9);
}

TEST(SolveExtended, RequiresTwoStates) {
  EXPECT_THROW(solve_extended(ConstraintSet::static_peak(2.0, 1.0), {}, kEh, {}), ContractError);
}

TEST(SolveOnOff, AlwaysOnReducesToStatic) {
  const auto base = ConstraintSet::static_peak(2.5, 1.0, 1.1);
  const auto r = solve_onoff(2.5, 1.0, base, {}, kEh, {});
  EXPECT_NEAR(r.rate, static_rate(2.5, 1.0, 1.1), 1e-5);
}

TEST(SolveOnOff, NeverOnCarriesNothing) {
  const auto base = ConstraintSet::static_peak(2.0, 1.0, 1.0);
  EXPECT_NEAR(solve_onoff(2.0, 0.0, base, {}, kEh, {}).rate, 0.0, 1e-12);
  EXPECT_THROW(solve_onoff(2.0, 0.0, ConstraintSet::static_peak(2.0, 1.0, 1.01), {}, kEh, {}), InfeasibleError);
}

TEST(SolveOnOff, NondecreasingInOnProbability) {
  const auto base = ConstraintSet::static_peak(3.0, 1.0, 1.02);
  double prev = 0.0;
  for (double p2 : {0.3, 0.6, 0.9}) {
    const double r = solve_onoff(3.0, p2, base, {}, kEh, {}).rate;
    EXPECT_GE(r, prev - 1e-9) << p2;
    prev = r;
  }
}

TEST(SolveOnOff, RefinementCertifiesInteriorOptimum) {
  const auto base = ConstraintSet::static_peak(3.0, 1.0, 1.0);
  SolveOptions o;
  o.dx = 0.1;
  const auto plain = solve_onoff(3.0, 1.0, base, {}, kEh, o);
  o.refine = 1;
  const auto fine = solve_onoff(3.0, 1.0, base, {}, kEh, o);
  EXPECT_GE(fine.rate, plain.rate - 1e-9);
  EXPECT_GT(fine.grid.size(), plain.grid.size());
  KktOptions k;
  k.check_step = 0.01;
  const auto c = onoff_constraints(3.0, 1.0, base);
  EXPECT_TRUE(kkt_check_extended(onoff_as_extended(fine, 3.0, 1.0), c, {}, kEh, k).verdict);
}

TEST(Escalation, CertifiesOnOff) {
  const ConstraintSet c{1.0, {{0.0, 0.5}, {3.0, 0.5}}, 1.02};
  SolveOptions o;
  o.dx = 0.1;
  const auto r = escalate_support(c, {}, kEh, o);
  KktOptions k;
  k.check_step = 0.01;
  EXPECT_TRUE(kkt_check_extended(r, c, {}, kEh, k).verdict);
  EXPECT_GE(r.distribution.size(), 2u);
  const auto full = solve_extended(c, {}, kEh, o);
  EXPECT_GE(r.rate, full.rate - 1e-4);
}

TEST(Escalation, LargeStartStillCertifies) {
  const ConstraintSet c{1.0, {{1.0, 0.5}, {2.0, 0.5}}, 1.0};
  SolveOptions o;
  o.dx = 0.1;
  EscalationOptions e;
  e.n_start = 6;
  e.kkt.check_step = 0.01;
  const auto r = escalate_support(c, {}, kEh, o, e);
  EXPECT_TRUE(kkt_check_extended(r, c, {}, kEh, e.kkt).verdict);
  for (const auto& p : r.distribution.points) EXPECT_GE(p.q, o.prune_threshold);
  EXPECT_THROW(escalate_support(c, {}, kEh, o, EscalationOptions{.n_start = 1}), ContractError);
}

}  // namespace
