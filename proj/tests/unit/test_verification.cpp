#include <gtest/gtest.h>

#include <cmath>

#include "pairs.hpp"
#include "spinorflow/verification.hpp"

namespace spinorflow {
namespace {

const LapseProfile kUnit = LapseProfile::constant(1.0);

TEST(Window, FiniteAndInfiniteLifespans) {
  const auto a = sample_window({-1.0, 3.0, false, false}, kUnit);
  EXPECT_NEAR(a.first, -0.8, 1e-15);
  EXPECT_NEAR(a.second, 2.8, 1e-15);
  const auto b = sample_window({-INFINITY, 1.0, false, false}, kUnit);
  EXPECT_NEAR(b.first, -0.9, 1e-15);
  EXPECT_NEAR(b.second, 0.9, 1e-15);
  const auto c = sample_window({-2.0, INFINITY, false, false}, kUnit);
  EXPECT_NEAR(c.first, -1.8, 1e-15);
  EXPECT_NEAR(c.second, 1.8, 1e-15);
  const auto d = sample_window({-INFINITY, INFINITY, true, true}, kUnit);
  EXPECT_EQ(d.first, -2.0);
  EXPECT_EQ(d.second, 2.0);
}

TEST(Window, UnknownBoundUsesTable) {
  const auto beta = LapseProfile::tabulated({-1.0, 0.0, 0.5}, {1.0, 1.0, 1.0});
  const auto w = sample_window({std::nullopt, INFINITY, false, std::nullopt}, beta);
  EXPECT_GE(w.first, -1.0);
  EXPECT_LE(w.second, 0.5);
  EXPECT_LT(w.first, 0.0);
}

TEST(Window, SampleTimesIncludeEnds) {
  const auto t = sample_times({-1.0, 1.0}, 5);
  ASSERT_EQ(t.size(), 5u);
  EXPECT_EQ(t.front(), -1.0);
  EXPECT_EQ(t.back(), 1.0);
  EXPECT_EQ(t[2], 0.0);
}

TEST(Suites, ParseNames) {
  EXPECT_EQ(parse_suite("ricci4"), Suite::Ricci4);
  EXPECT_EQ(parse_suite("all"), Suite::All);
  EXPECT_FALSE(parse_suite("bogus"));
  EXPECT_EQ(to_string(Suite::Cosymplectic), "cosymplectic");
}

TEST(Suites, AllPassOnRepresentativePairs) {
  VerifyOptions o;
  o.samples = 12;
  for (const auto& p : testing::representative_pairs()) {
    for (const auto& s : run_suite(p.pair, kUnit, Suite::All, o)) {
      for (const auto& a : s.assertions)
        EXPECT_TRUE(a.passed()) << p.name << " " << to_string(s.suite) << " " << a.name << " " << a.max_residual;
    }
  }
}

TEST(Suites, ConstrainedRicciFlatPairs) {
  VerifyOptions o;
  o.samples = 12;
  for (const auto& p : testing::constrained_ricci_flat_pairs()) {
    const auto res = run_suite(p.pair, kUnit, Suite::Ricci4, o);
    ASSERT_EQ(res.size(), 1u);
    for (const auto& a : res[0].assertions) {
      if (a.name == "ricci4_flat") {
        EXPECT_TRUE(a.applicable);
      }
      EXPECT_TRUE(a.passed()) << p.name << " " << a.name;
    }
  }
}

TEST(Suites, CosymplecticOnlyForOffDiagonal) {
  const auto r3 = run_suite({Sym3(1, 0, 0, 0, 0, 0)}, kUnit, Suite::Cosymplectic);
  for (const auto& a : r3[0].assertions) EXPECT_FALSE(a.applicable);
  const auto off = run_suite({Sym3(0, 0.6, 0.8, 0, 0, 0)}, kUnit, Suite::Cosymplectic);
  for (const auto& a : off[0].assertions) {
    EXPECT_TRUE(a.applicable);
    EXPECT_TRUE(a.passed());
  }
}

TEST(Suites, InvalidPairThrows) {
  EXPECT_THROW(run_suite({Sym3(0, 1, 0, 1, 0, 0)}, kUnit, Suite::All), InvalidPair);
}

TEST(Curvature, SnapshotAtInitialTime) {
  ExactFlow flow({Sym3(0, 0, 0, 1, 0, -1)}, kUnit);
  const auto s = curvature_at(flow, 0.0);
  EXPECT_NEAR(s.scalar, -2.0, 1e-14);
  EXPECT_NEAR(s.hamiltonian, -4.0, 1e-14);
  EXPECT_NEAR(s.momentum[kU], 2.0, 1e-14);
  EXPECT_LE(momentum_codazzi_residual(flow, 1.5), 1e-12);
}

}  // namespace
}  // namespace spinorflow
