#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pairs.hpp"
#include "spinorflow/cauchy_pair.hpp"

namespace spinorflow {
namespace {

using testing::all_rows;
using testing::random_pair;
using testing::representative_pairs;

CauchyPair make(double uu, double ul, double un, double ll, double ln, double nn) {
  return {Sym3(uu, ul, un, ll, ln, nn)};
}

TEST(Invariants, Examples) {
  const auto a = invariants(make(0, 3, 4, 0, 0, 0));
  EXPECT_DOUBLE_EQ(a.lambda, 5.0);
  EXPECT_DOUBLE_EQ(a.trace, 0.0);
  EXPECT_DOUBLE_EQ(a.delta, 0.0);
  const auto b = invariants(make(0, 0, 0, 2, 0, 1));
  EXPECT_DOUBLE_EQ(b.trace, 3.0);
  EXPECT_DOUBLE_EQ(b.delta, 2.0);
  EXPECT_DOUBLE_EQ(b.lambda, 0.0);
  const auto z = invariants(CauchyPair{});
  EXPECT_EQ(z.lambda, 0.0);
  EXPECT_EQ(z.trace, 0.0);
  EXPECT_EQ(z.delta, 0.0);
}

TEST(Validate, R3) {
  const auto r = validate(make(5, 0, 0, 0, 0, 0));
  EXPECT_TRUE(r.valid);
  EXPECT_EQ(r.row, TableRow::R3);
}

TEST(Validate, MixedRow) {
  const auto r = validate(make(-2, 1, 1, 1, 1, 1));
  EXPECT_TRUE(r.valid);
  EXPECT_EQ(r.row, TableRow::Tau2Mixed);
}

TEST(Validate, RejectsAlgebraicViolation) {
  const auto pair = make(0, 1, 0, 1, 0, 0);
  const auto r = check(pair);
  EXPECT_FALSE(r.valid);
  EXPECT_NE(std::find(r.violated.begin(), r.violated.end(), "ln*un + ul*(ll + uu) = 0"), r.violated.end());
  EXPECT_THROW(validate(pair), InvalidPair);
  try {
    validate(pair);
  } catch (const InvalidPair& e) {
    EXPECT_FALSE(e.violations().empty());
  }
}

TEST(Validate, ZeroPairIsMinkowski) {
  const auto r = validate(CauchyPair{});
  EXPECT_EQ(r.row, TableRow::R3);
  EXPECT_EQ(classify(CauchyPair{}).tag, GroupTag::R3);
  EXPECT_TRUE(is_constrained_ricci_flat(CauchyPair{}));
}

TEST(Validate, RejectsNonFinite) {
  EXPECT_FALSE(check(make(NAN, 0, 0, 0, 0, 0)).valid);
  EXPECT_FALSE(check(make(INFINITY, 0, 0, 0, 0, 0)).valid);
}

TEST(Validate, RepresentativePairsMatchTheirRows) {
  for (const auto& p : representative_pairs()) {
    const auto r = check(p.pair);
    EXPECT_TRUE(r.valid) << p.name;
    EXPECT_EQ(r.row, p.row) << p.name;
  }
}

TEST(Validate, RandomPairsAccepted) {
  std::mt19937_64 rng(101);
  for (TableRow row : all_rows())
    for (int i = 0; i < 200; ++i) {
      const auto pair = random_pair(row, rng);
      const auto r = check(pair);
      ASSERT_TRUE(r.valid) << to_string(row);
      EXPECT_EQ(r.row, row) << to_string(row);
    }
}

// Components that move a pair along its row's constraint surface.
std::vector<std::size_t> free_components(TableRow row) {
  switch (row) {
    case TableRow::R3: return {0};
    case TableRow::E11: return {0, 4};
    case TableRow::Tau2OffDiagonal: return {1, 2};
    case TableRow::Tau2QuasiDiagonal: return {0};
    case TableRow::Tau2UlLl: return {1};
    case TableRow::Tau2UnNn: return {2};
    case TableRow::Tau2Mixed: return {};
    case TableRow::Tau3Mu: return {0, 3, 4, 5};
  }
  return {};
}

TEST(Validate, PerturbationOffSurfaceIsRejected) {
  std::mt19937_64 rng(202);
  for (TableRow row : all_rows()) {
    const auto free = free_components(row);
    for (int i = 0; i < 50; ++i) {
      const auto pair = random_pair(row, rng);
      for (std::size_t k = 0; k < 6; ++k) {
        if (std::find(free.begin(), free.end(), k) != free.end()) continue;
        for (double eps : {1e-3, -1e-3}) {
          auto c = pair.theta.components();
          c[k] += eps;
          const auto r = check({Sym3(c[0], c[1], c[2], c[3], c[4], c[5])});
          EXPECT_TRUE(!r.valid || r.row != row) << to_string(row) << " component " << k;
        }
      }
    }
  }
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(make(1, 0, 0, 0, 0, 0)).tag, GroupTag::R3);
  EXPECT_EQ(classify(make(0, 0, 0, 1, 0, -1)).tag, GroupTag::E11);
  const auto g = classify(make(3, 0, 0, 2, 0, 1));
  EXPECT_EQ(g.tag, GroupTag::Tau3Mu);
  ASSERT_TRUE(g.mu);
  EXPECT_DOUBLE_EQ(*g.mu, 0.5);
}

TEST(Classify, SmallerOverLargerWhenDiagonal) {
  EXPECT_DOUBLE_EQ(*classify(make(0, 0, 0, 1, 0, 4)).mu, 0.25);
  EXPECT_DOUBLE_EQ(*classify(make(0, 0, 0, -4, 0, -2)).mu, 0.5);
}

TEST(Classify, ThrowsForInvalid) { EXPECT_THROW(classify(make(0, 1, 0, 1, 0, 0)), InvalidPair); }

std::string oracle_name(GroupTag tag) {
  switch (tag) {
    case GroupTag::R3: return "r3";
    case GroupTag::E11: return "e11";
    case GroupTag::Tau2PlusR: return "tau2_plus_r";
    case GroupTag::Tau3Mu: return "tau3";
  }
  return "";
}

TEST(Classify, AgreesWithBracketOracle) {
  std::mt19937_64 rng(303);
  for (TableRow row : all_rows())
    for (int i = 0; i < 200; ++i) {
      const auto pair = random_pair(row, rng);
      const auto g = classify(pair);
      const auto o = testing::classify_brackets(structure_constants(pair));
      ASSERT_EQ(oracle_name(g.tag), o.name) << to_string(row);
      if (g.tag == GroupTag::Tau3Mu) {
        ASSERT_TRUE(g.mu && o.mu);
        EXPECT_NEAR(*g.mu, *o.mu, 1e-10);
        EXPECT_LE(std::abs(*g.mu), 1.0);
      }
    }
}

TEST(Constraints, R3HamiltonianVanishes) {
  for (double a : {-3.0, -0.1, 0.0, 0.7, 10.0}) {
    const auto c = constraints(make(a, 0, 0, 0, 0, 0));
    EXPECT_EQ(c.hamiltonian, 0.0);
    EXPECT_EQ(max_abs(c.momentum_residual), 0.0);
    EXPECT_TRUE(c.is_vacuum_admissible);
  }
}

TEST(Constraints, E11HamiltonianIsMinusFour) {
  for (double uu : {-2.0, 0.0, 0.5, 3.0}) {
    const auto c = constraints(make(uu, 0, 0, 1, 0, -1));
    EXPECT_NEAR(c.hamiltonian, -4.0, 1e-13);
    EXPECT_NEAR(c.scalar_curvature, -2.0, 1e-13);
    EXPECT_FALSE(c.is_vacuum_admissible);
  }
}

TEST(Constraints, E11MomentumSatisfiesCodazzi) {
  // div theta - d tr theta = -(H/2) e_u, nonzero because H = -4
  const auto c = constraints(make(0, 0, 0, 1, 0, -1));
  EXPECT_NEAR(c.momentum_residual[kU], 2.0, 1e-13);
  EXPECT_NEAR(c.momentum_residual[kL], 0.0, 1e-13);
  EXPECT_NEAR(c.momentum_residual[kN], 0.0, 1e-13);
}

TEST(Constraints, MomentumCodazziForAllValidPairs) {
  std::mt19937_64 rng(404);
  for (TableRow row : all_rows())
    for (int i = 0; i < 100; ++i) {
      const auto c = constraints(random_pair(row, rng));
      EXPECT_NEAR(c.momentum_residual[kU], -0.5 * c.hamiltonian, 1e-12 * std::max(1.0, std::abs(c.hamiltonian)));
      EXPECT_NEAR(c.momentum_residual[kL], 0.0, 1e-12);
      EXPECT_NEAR(c.momentum_residual[kN], 0.0, 1e-12);
    }
}

TEST(Constraints, Tau3ConstrainedRicciFlat) {
  std::mt19937_64 rng(505);
  for (int i = 0; i < 100; ++i) {
    auto p = random_pair(TableRow::Tau3Mu, rng);
    const auto inv = invariants(p);
    p.theta = Sym3((inv.trace * inv.trace - 2.0 * inv.delta) / inv.trace, 0, 0, p.theta.ll(), p.theta.ln(),
                   p.theta.nn());
    const auto c = constraints(p);
    EXPECT_NEAR(c.hamiltonian, 0.0, 1e-10 * std::max(1.0, p.theta.norm_squared()));
    EXPECT_LE(max_abs(c.momentum_residual), 1e-12 * std::max(1.0, p.theta.norm_squared()));
    EXPECT_TRUE(is_constrained_ricci_flat(p));
  }
}

TEST(Constraints, ConstrainedRicciFlatPredicate) {
  EXPECT_TRUE(is_constrained_ricci_flat(make(1, 0, 0, 1, 0, 0)));
  EXPECT_FALSE(is_constrained_ricci_flat(make(0.5, 0, 0, 1, 0, 0)));
  std::mt19937_64 rng(606);
  for (TableRow row : {TableRow::Tau2OffDiagonal, TableRow::Tau2UlLl, TableRow::Tau2UnNn, TableRow::Tau2Mixed})
    for (int i = 0; i < 50; ++i) EXPECT_FALSE(is_constrained_ricci_flat(random_pair(row, rng)));
  for (const auto& p : testing::constrained_ricci_flat_pairs()) EXPECT_TRUE(is_constrained_ricci_flat(p.pair)) << p.name;
}

TEST(Constraints, RicciClosedFormsForHamiltonian) {
  std::mt19937_64 rng(707);
  for (TableRow row : all_rows())
    for (int i = 0; i < 50; ++i) {
      const auto pair = random_pair(row, rng);
      const auto inv = invariants(pair);
      const auto c = structure_constants(pair);
      const auto ric = ricci3(c);
      const double h = hamiltonian_function(c, pair.theta);
      const Mat3 th = pair.theta.to_matrix();
      if (inv.lambda == 0.0) {
        // Ric = -T theta + (H/2) e_u (x) e_u
        const Sym3 expect = Sym3::from_matrix((-inv.trace) * th) + Sym3(0.5 * h, 0, 0, 0, 0, 0);
        EXPECT_LE((ric.ricci - expect).max_abs(), 1e-12 * std::max(1.0, pair.theta.norm_squared()));
      } else {
        // Ric = -theta o theta
        const Sym3 expect = Sym3::from_matrix((-1.0) * (th * th));
        EXPECT_LE((ric.ricci - expect).max_abs(), 1e-12 * std::max(1.0, pair.theta.norm_squared()));
        EXPECT_NEAR(h, -2.0 * pair.theta.norm_squared(), 1e-12 * std::max(1.0, pair.theta.norm_squared()));
      }
    }
}

TEST(Names, RowStrings) {
  EXPECT_EQ(to_string(TableRow::Tau2Mixed), "Tau2PlusR/mixed");
  EXPECT_EQ(to_string(GroupTag::E11), "E11");
}

}  // namespace
}  // namespace spinorflow
