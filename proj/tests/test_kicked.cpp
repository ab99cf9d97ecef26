// Copyright 2026 The optholo Authors
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


#include <cmath>

#include "optholo/kicked.hpp"
#include "support.hpp"

namespace optholo {
namespace {

using testing::frob;

KickSchedule schedule_for(const LoopSpec& loop, int kicks, int cutoff = 40) {
  KickSchedule s{loop};
  s.kick_count = kicks;
  s.cutoff = cutoff;
  return s;
}

TEST(Kicked, DegenerateLoopIsIdentity) {
  for (const auto& loop : {LoopSpec::rect(Plane::I, {0, 0, 0, 0}),
                           LoopSpec::rect(Plane::II, {0.3, 0.3, 0.2, 0.2})}) {
    for (double dt : {0.1, kPi / 4, 2.0}) {
      KickSchedule s = schedule_for(loop, 64);
      s.delta_t = dt;
      s.chi = 0.7;
      const auto r = run_kicked(s);
      EXPECT_LT(frob(r.code_map, CMatrix::Identity(2, 2)), 1e-12);
      EXPECT_LT(r.leakage, 1e-12);
      ASSERT_EQ(r.profile.size(), 64u);
      for (double l : r.profile) EXPECT_LT(l, 1e-12);
    }
  }
}

TEST(Kicked, BackAndForthApproachesIdentity) {
  const auto loop = LoopSpec::rect(Plane::II, {0.1, 0.3, 0.2, 0.2});
  const double coarse = frob(run_kicked(schedule_for(loop, 64)).code_map, CMatrix::Identity(2, 2));
  const double fine = frob(run_kicked(schedule_for(loop, 1024)).code_map, CMatrix::Identity(2, 2));
  EXPECT_LT(fine, coarse);
  EXPECT_LT(fine, 1e-2);
}

TEST(Kicked, ZeroControlTwoMode) {
  const auto r = run_kicked(schedule_for(LoopSpec::rect(Plane::III, {0, 0, 0, 0}), 32, 6));
  EXPECT_LT(frob(r.code_map, CMatrix::Identity(4, 4)), 1e-12);
}

TEST(Kicked, FidelityTrendAndLeakage) {
  const auto loop = calibration_loop(Plane::I);
  double last_infidelity = INFINITY;
  double first_leakage = 0.0, last_leakage = 0.0;
  for (int k : {256, 512, 1024}) {
    const auto r = run_kicked(schedule_for(loop, k));
    const double infidelity = 1.0 - r.fidelity_to_prediction;
    EXPECT_LE(infidelity, last_infidelity) << k;
    last_infidelity = infidelity;
    if (k == 256) first_leakage = r.leakage;
    last_leakage = r.leakage;
    EXPECT_LT(unitarity_defect(r.code_map), 1e-10);
    EXPECT_FALSE(r.adiabaticity_failure);
    EXPECT_TRUE(r.truncation.trusted);
  }
  EXPECT_LT(last_leakage, first_leakage);
}

TEST(Kicked, AgreesWithConnectionOracle) {
  const auto loop = calibration_loop(Plane::I);
  const auto kicked = run_kicked(schedule_for(loop, 1024));
  const auto oracle = holonomy_path_ordered(loop, 60, 2000);
  EXPECT_LT(frob(kicked.code_map, oracle.gate.matrix), 5e-2);
  EXPECT_EQ(as_gate(kicked).provenance, Provenance::kicked_oracle);
}

TEST(Kicked, TwoModeAgreesWithConnectionOracle) {
  const auto loop = LoopSpec::rect(Plane::III, {0.1, 0.2, 0.0, 0.1});
  const auto kicked = run_kicked(schedule_for(loop, 256, 10));
  const auto oracle = holonomy_path_ordered(loop, 10, 400);
  EXPECT_LT(frob(kicked.code_map, oracle.gate.matrix), 5e-2);
}

TEST(Kicked, ReversedScheduleGivesAdjoint) {
  const auto loop = calibration_loop(Plane::I);
  const auto fwd = run_kicked(schedule_for(loop, 1024));
  const auto back = run_kicked(schedule_for(loop.reversed(), 1024));
  EXPECT_LT(frob(back.code_map, fwd.code_map.adjoint()), 5e-3);
}

TEST(Kicked, LeakageProfile) {
  const auto loop = calibration_loop(Plane::I);
  const auto profile = leakage_profile(schedule_for(loop, 256));
  ASSERT_EQ(profile.size(), 256u);
  for (std::size_t k = 0; k < profile.size(); ++k) {
    EXPECT_EQ(profile[k].first, static_cast<int>(k));
    EXPECT_GE(profile[k].second, 0.0);
  }
}

TEST(Kicked, ScheduleValidation) {
  const auto loop = calibration_loop(Plane::I);
  EXPECT_THROW(run_kicked(schedule_for(loop, 8)), std::invalid_argument);
  KickSchedule s = schedule_for(loop, 64);
  s.delta_t = 0.0;
  EXPECT_THROW(run_kicked(s), std::invalid_argument);
  s.delta_t = 1.0;
  s.chi = -1.0;
  EXPECT_THROW(run_kicked(s), std::invalid_argument);
  EXPECT_THROW(run_kicked(schedule_for(LoopSpec::rect(Plane::I, {0, 2, 0, 2}), 16)),
               std::invalid_argument);
}

}  // namespace
}  // namespace optholo
