#include <gtest/gtest.h>

#include "mink/solvers.hpp"
#include "mink/minkowski.hpp"
#include "support.hpp"

namespace mink {
namespace {

using testing::existent;
using testing::fixture;
using testing::random_rank;

TEST(AxbD, IdentityGivesUniqueSolution) {
  const Matrix d = Rng(1).gaussian(3, 3);
  const auto s = solve_axb_d(identity(3), identity(3), d, zeros(3, 3), zeros(3, 3));
  ASSERT_TRUE(s.has_value());
  EXPECT_LT(fro(s->particular - d), 1e-14);
  EXPECT_LT(fro(s->left_free), 1e-14);
  EXPECT_LT(fro(s->right_free), 1e-14);
}

TEST(AxbD, RangeViolationIsInconsistent) {
  const Matrix a = random_rank(5, 4, 2, 2);
  const Matrix b = Rng(3).gaussian(3, 3);
  Matrix d = a * Rng(4).gaussian(4, 3) * b;
  d.col(0) += null_basis(a.adjoint()).col(0);
  EXPECT_FALSE(solve_axb_d(a, b, d, zeros(4, 5), zeros(3, 3)).has_value());
}

TEST(AxbD, ConsistentFamily) {
  Rng rng(5);
  const Matrix a = random_rank(5, 4, 2, 6);
  const Matrix b = random_rank(3, 6, 2, 7);
  const Matrix d = a * rng.gaussian(4, 3) * b;
  const auto s = solve_axb_d(a, b, d, rng.gaussian(4, 5), rng.gaussian(6, 3));
  ASSERT_TRUE(s.has_value());
  for (int i = 0; i < 50; ++i) {
    const Matrix x = s->produce(rng.gaussian(4, 3), rng.gaussian(4, 3));
    EXPECT_LT(fro(a * x * b - d) / fro(d), 1e-9);
  }
}

TEST(AxbD, ShapeMismatch) {
  EXPECT_THROW(solve_axb_d(identity(3), identity(2), zeros(2, 2), zeros(3, 3), zeros(2, 2)),
               Error);
}

TEST(XayB, Identity) {
  const XaySolution s = solve_xay_b(identity(3), identity(3), identity(3));
  EXPECT_LT(fro(s.X * s.Y - identity(3)), 1e-13);
}

TEST(XayB, SameMatrix) {
  const Matrix a = random_rank(4, 5, 3, 8);
  const XaySolution s = solve_xay_b(a, a, identity(3));
  EXPECT_LT(fro(s.X * a * s.Y - a) / fro(a), 1e-10);
}

TEST(XayB, RandomWithFreeParameters) {
  Rng rng(9);
  const Matrix a = random_rank(4, 5, 2, 10);
  const Matrix b = random_rank(3, 6, 2, 11);
  for (int i = 0; i < 50; ++i) {
    XayFreeParams p;
    p.X2 = rng.gaussian(2, 2);
    p.X4 = rng.gaussian(1, 2);
    p.Y3 = rng.gaussian(3, 2);
    p.Y4 = rng.gaussian(3, 4);
    const XaySolution s = solve_xay_b(a, b, rng.gaussian(2, 2) + 2.0 * identity(2), p);
    EXPECT_LT(fro(s.X * a * s.Y - b) / fro(b), 1e-9);
  }
}

TEST(XayB, Errors) {
  try {
    solve_xay_b(random_rank(4, 4, 2, 1), random_rank(4, 4, 3, 2), identity(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankMismatch);
  }
  try {
    solve_xay_b(random_rank(4, 4, 2, 1), random_rank(4, 4, 2, 2), zeros(2, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularParam);
  }
}

TEST(RankEquation, SquareSelf) {
  const Matrix a = random_rank(4, 4, 2, 12);
  const auto x = rank_equation_solve({a, a, a});
  ASSERT_TRUE(x.has_value());
  EXPECT_LT(fro(*x - a) / fro(a), 1e-10);
}

TEST(RankEquation, Infeasible) {
  const Matrix a = random_rank(4, 3, 2, 13);
  Matrix b = a * Rng(14).gaussian(3, 4);
  b.col(1) += null_basis(a.adjoint()).col(0);
  EXPECT_FALSE(rank_equation_solve({a, b, Rng(15).gaussian(3, 3) * 0.0}).has_value());
}

TEST(RankEquation, CharacterizationInstanceRecoversInverse) {
  const Matrix a = existent(6, 5, 3, 16);
  const Matrix am = mink_inverse(a);
  const Matrix x = identity(5) - am * a;
  const Matrix y = identity(6) - a * am;
  const auto z = rank_equation_solve({a, identity(6) - y, identity(5) - x});
  ASSERT_TRUE(z.has_value());
  EXPECT_LT(relative_gap(*z, am), 1e-9);
}

TEST(RankCharacterization, IdentityAndMetric) {
  const RankCharacterization i = mink_rank_characterization(identity(3));
  EXPECT_LT(fro(i.X), 1e-14);
  EXPECT_LT(fro(i.Y), 1e-14);
  EXPECT_LT(fro(i.Z - identity(3)), 1e-14);
  const Matrix g = MinkowskiMetric(3).dense();
  const RankCharacterization m = mink_rank_characterization(g);
  EXPECT_LT(fro(m.Z - g), 1e-14);
}

TEST(RankCharacterization, ReferenceMatrix) {
  const Matrix a = fixture("rank3_5x5");
  const RankCharacterization rc = mink_rank_characterization(a);
  EXPECT_LT(fro(rc.Z - fixture("rank3_5x5_inverse")), 1e-10);
  EXPECT_EQ(rc.bordered_rank, 3);
  EXPECT_TRUE(rc.x_rank_ok);
  EXPECT_TRUE(rc.y_rank_ok);
  EXPECT_LT(std::max({rc.x_annihilates, rc.x_self_adjoint, rc.x_idempotent}), 1e-12);
  EXPECT_LT(std::max({rc.y_annihilates, rc.y_self_adjoint, rc.y_idempotent}), 1e-12);
}

TEST(RankCharacterization, PerturbationRaisesRank) {
  const Matrix a = existent(6, 5, 3, 17);
  const RankCharacterization rc = mink_rank_characterization(a);
  ASSERT_EQ(rc.bordered_rank, 3);
  Matrix e = Rng(18).gaussian(5, 6);
  e *= 1e-3 / fro(e);
  EXPECT_GT(bordered_rank(a, identity(6) - rc.Y, identity(5) - rc.X, rc.Z + e), 3);
}

TEST(RankCharacterization, RefusesNonExistent) {
  EXPECT_THROW(mink_rank_characterization(fixture("nonexistent_5x4")), Error);
}

TEST(BcParameterization, Identity) {
  const BcPair bc = bc_parameterization(identity(3), Matrix(), Matrix());
  const auto x = rank_equation_solve({identity(3), bc.B, bc.C});
  ASSERT_TRUE(x.has_value());
  EXPECT_LT(fro(*x - identity(3)), 1e-12);
}

TEST(BcParameterization, ReferenceMatrix) {
  const Matrix a = fixture("rank3_5x5");
  const BcPair bc = bc_parameterization(a, Matrix(), Matrix());
  const auto x = rank_equation_solve({a, bc.B, bc.C});
  ASSERT_TRUE(x.has_value());
  EXPECT_LT(fro(*x - fixture("rank3_5x5_inverse")), 1e-9);
}

TEST(BcParameterization, FreeParameterInvariance) {
  const Matrix a = existent(6, 6, 3, 19);
  const Matrix am = mink_inverse(a);
  Rng rng(13);
  for (int i = 0; i < 20; ++i) {
    const BcPair bc = bc_parameterization(a, rng.gaussian(6, 3), rng.gaussian(6, 3));
    const auto x = rank_equation_solve({a, bc.B, bc.C});
    ASSERT_TRUE(x.has_value());
    EXPECT_LT(relative_gap(*x, am), 1e-8);
    EXPECT_EQ(bordered_rank(a, bc.B, bc.C, am), 3);
    Matrix e = rng.gaussian(6, 6);
    e /= fro(e);
    EXPECT_GT(bordered_rank(a, bc.B, bc.C, am + 1e-3 * e), 3);
  }
}

TEST(BcParameterization, Errors) {
  EXPECT_THROW(bc_parameterization(existent(5, 4, 2, 1), Matrix(), Matrix()), Error);
  EXPECT_THROW(bc_parameterization(Matrix::Ones(2, 2), Matrix(), Matrix()),
               Error);
}

}  // namespace
}  // namespace mink
