// Copyright 2026 The mconv Authors.
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
#include <set>

#include "mconv/instances.hpp"
#include "mconv/unconstrained.hpp"
#include "mconv/verify.hpp"

namespace mconv {
namespace {

const IntPoint kX0{0, 2, 0, 1};
const IntPoint kOpt{2, 0, 1, 0};

std::vector<IntPoint> visited(const IntPoint& x0, const SolveTrace& t) {
  std::vector<IntPoint> out{x0};
  for (const auto& s : t.steps) out.push_back(out.back().moved(s.direction, s.length));
  return out;
}

TEST(MSd, Z4ExampleRunsInHalfTau) {
  const MOracle f = remark_z4_instance();
  const SolveResult r = m_sd(f, kX0);
  EXPECT_EQ(r.minimizer, kOpt);
  EXPECT_EQ(r.value, ExtValue(-3));
  ASSERT_EQ(r.trace.steps.size(), 3u);
  EXPECT_EQ(2 * static_cast<std::int64_t>(r.trace.steps.size()), tau(f, kX0));
  // Lexicographic choices at each tie.
  EXPECT_EQ(r.trace.steps[0].direction, (Direction{0, 1}));
  EXPECT_EQ(r.trace.steps[1].direction, (Direction{0, 3}));
  EXPECT_EQ(r.trace.steps[2].direction, (Direction{2, 1}));
  for (const auto& s : r.trace.steps) EXPECT_EQ(s.slope, ExtValue(-1));
}

TEST(MSd, OtherTieBreakTrajectoryIsSteepestAtEveryStep) {
  // (0,2,0,1) -> (1,1,0,1) -> (1,1,1,0) -> (2,0,1,0): replay and check that
  // each move is a steepest direction of the point it leaves.
  const MOracle f = remark_z4_instance();
  Evaluator ev(f);
  const std::vector<IntPoint> path = {kX0, {1, 1, 0, 1}, {1, 1, 1, 0}, kOpt};
  const std::vector<Direction> dirs = {{0, 1}, {2, 3}, {0, 1}};
  for (std::size_t t = 0; t < dirs.size(); ++t) {
    EXPECT_EQ(path[t].moved(dirs[t]), path[t + 1]);
    EXPECT_EQ(slope(ev, path[t], dirs[t]), phi(ev, path[t]));
    EXPECT_EQ(step_reach(ev, path[t], dirs[t]), 1);
  }
  // The same direction twice with the same slope.
  EXPECT_EQ(slope(ev, path[0], dirs[0]), slope(ev, path[2], dirs[2]));
  EXPECT_EQ(phi(ev, kOpt), ExtValue(0));
}

TEST(MSd, StartAtMinimizer) {
  const SolveResult r = m_sd(remark_z4_instance(), kOpt);
  EXPECT_TRUE(r.trace.steps.empty());
  EXPECT_EQ(r.minimizer, kOpt);
}

TEST(MSd, StartOutsideDomain) {
  try {
    m_sd(remark_z4_instance(), {0, 2, 1, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kStartOutsideDomain);
  }
}

TEST(MSdPrime, Z4ExampleValue) {
  const SolveResult r = m_sd_prime(remark_z4_instance(), kX0);
  EXPECT_EQ(r.value, ExtValue(-3));
  EXPECT_TRUE(m_sd_prime(remark_z4_instance(), kOpt).trace.steps.empty());
}

TEST(MLsd, Z4ExampleStepsHaveLengthOne) {
  const MOracle f = remark_z4_instance();
  const SolveResult r = m_lsd(f, kX0);
  EXPECT_EQ(r.minimizer, kOpt);
  ASSERT_EQ(r.trace.steps.size(), 3u);
  for (const auto& s : r.trace.steps) EXPECT_EQ(s.length, 1);
  EXPECT_EQ(2 * r.trace.total_length(), tau(f, kX0));
}

TEST(MLsd, LinearSegmentIsOneStep) {
  const std::int64_t w = 37;
  const MOracle f(2, Box({0, 0}, {w, w}), Rational(w), [](const IntPoint& x) -> ExtValue {
    if (x[0] + x[1] != 37) return ExtValue::infinity();
    return ExtValue(-2 * x[0]);
  });
  const SolveResult r = m_lsd(f, {0, w});
  ASSERT_EQ(r.trace.steps.size(), 1u);
  EXPECT_EQ(r.trace.steps[0].length, w);
  EXPECT_EQ(r.minimizer, (IntPoint{w, 0}));
  EXPECT_LE(r.trace.reach_evals_max,
            static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(w) + 1))) + 1);
}

TEST(MIncSlope, Z4ExampleTrajectory) {
  const MOracle f = remark_z4_instance();
  Evaluator ev(f);
  SolveTrace trace;
  const IntPoint y = m_inc_slope(ev, kX0, false, {}, {&trace, nullptr, 1});
  EXPECT_EQ(y, kOpt);
  const auto path = visited(kX0, trace);
  const std::vector<IntPoint> expected = {kX0, {1, 1, 0, 1}, {2, 1, 0, 0}, kOpt};
  EXPECT_EQ(path, expected);
  EXPECT_EQ(phi(ev, y), ExtValue(0));
}

TEST(MIncSlope, ZeroPhiIsRejected) {
  try {
    m_inc_slope(remark_z4_instance(), kOpt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotDescending);
  }
}

TEST(MIncSlope, PrimeReachesAMinimizer) {
  const MOracle f = remark_z4_instance();
  const IntPoint y = m_inc_slope_prime(f, kX0);
  EXPECT_EQ(phi(f, y), ExtValue(0));
}

TEST(MLsd2, Z4ExampleOneOuterIteration) {
  const MOracle f = remark_z4_instance();
  const SolveResult r = m_lsd2(f, kX0);
  EXPECT_EQ(r.minimizer, kOpt);
  EXPECT_EQ(r.trace.outer_iterations, 1u);
  ASSERT_EQ(r.phi_history.size(), 2u);
  EXPECT_EQ(r.phi_history[0], ExtValue(-1));
  EXPECT_EQ(r.phi_history[1], ExtValue(0));
  EXPECT_EQ(m_lsd2(f, kOpt).trace.outer_iterations, 0u);
}

// Enumeration-backed checks on a seeded random corpus.
struct Corpus {
  Family family;
  std::uint64_t seed;
};

class RandomCorpus : public ::testing::TestWithParam<Corpus> {};

TEST_P(RandomCorpus, SolversAgreeWithTheReferee) {
  RandomParams p;
  p.n = 4;
  p.width = 4;
  const RandomInstance inst = random_instance(GetParam().seed, GetParam().family, p);
  if (inst.oracle.is_natural()) GTEST_SKIP() << "unconstrained solvers take M-convex input";
  const MOracle& f = inst.oracle;
  const MinimumReport best = brute_min(inst.domain);
  SolverOptions opts;
  opts.verify_reach = true;
  for (const IntPoint& x0 : inst.domain.points()) {
    const std::int64_t t = tau(best, x0);
    const SolveResult sd = m_sd(f, x0, opts);
    EXPECT_EQ(sd.value, best.value);
    EXPECT_EQ(2 * static_cast<std::int64_t>(sd.trace.steps.size()), t) << x0;
    EXPECT_EQ(l1_distance(x0, sd.minimizer), t);
    // No coordinate goes both up and down.
    std::vector<int> sign(f.dim(), 0);
    for (const auto& s : sd.trace.steps) {
      EXPECT_NE(sign[s.direction.inc], -1);
      EXPECT_NE(sign[s.direction.dec], +1);
      sign[s.direction.inc] = 1;
      sign[s.direction.dec] = -1;
    }
    const SolveResult lsd = m_lsd(f, x0, opts);
    EXPECT_EQ(lsd.value, best.value);
    EXPECT_EQ(2 * lsd.trace.total_length(), t) << x0;
    for (std::size_t s = 1; s < lsd.trace.steps.size(); ++s) {
      EXPECT_LE(lsd.trace.steps[s - 1].slope, lsd.trace.steps[s].slope);
    }
    EXPECT_EQ(m_sd_prime(f, x0).value, best.value);

    const SolveResult l2 = m_lsd2(f, x0, opts);
    EXPECT_EQ(l2.value, best.value);
    const ExtValue phi0 = l2.phi_history.front();
    for (std::size_t s = 1; s < l2.phi_history.size(); ++s) {
      EXPECT_LT(l2.phi_history[s - 1], l2.phi_history[s]);
    }
    EXPECT_EQ(l2.phi_history.back(), ExtValue(0));
    const auto outer = static_cast<std::int64_t>(l2.trace.outer_iterations);
    EXPECT_LE(Rational(outer), -phi0.value());
    EXPECT_LE(2 * outer, t);
    const Rational drop = f(x0).value() - best.value.value();
    EXPECT_LE(Rational(outer * outer), 2 * drop);
    // Each step of LSD2 is steepest where it is taken, so the lengths add
    // up to half the distance as well.
    EXPECT_EQ(2 * l2.trace.total_length(), t);
    // Per outer iteration, every direction is applied at most once.
    std::set<std::pair<std::size_t, Direction>> seen;
    for (const auto& s : l2.trace.steps) {
      EXPECT_TRUE(seen.emplace(s.outer, s.direction).second);
    }
  }
}

std::vector<Corpus> corpus() {
  std::vector<Corpus> out;
  for (Family fam : {Family::kRap, Family::kMcf, Family::kTabulated}) {
    for (std::uint64_t s = 1; s <= 6; ++s) out.push_back({fam, s});
  }
  return out;
}

INSTANTIATE_TEST_SUITE_P(Seeded, RandomCorpus, ::testing::ValuesIn(corpus()),
                         [](const auto& info) {
                           std::string name = family_name(info.param.family) + "_" +
                                              std::to_string(info.param.seed);
                           for (auto& c : name) {
                             if (c == '-') c = '_';
                           }
                           return name;
                         });

}  // namespace
}  // namespace mconv
