#include <gtest/gtest.h>

#include "azema/lp.hpp"

using namespace azema;
using lp::Relation;
using lp::Status;

TEST(Simplex, SolvesSmallMaximisation) {
  // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6, x <= 3
  lp::Problem p(2);
  p.objective = {3, 2};
  p.add_row({1, 1}, Relation::kLessEqual, 4);
  p.add_row({1, 3}, Relation::kLessEqual, 6);
  p.add_row({1, 0}, Relation::kLessEqual, 3);
  const auto s = lp::solve(p);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_EQ(s.value, 11);
  EXPECT_EQ(s.x, (std::vector<Rational>{3, 1}));
}

TEST(Simplex, ExactFractionalOptimum) {
  // max x + y s.t. 3x + y <= 2, x + 3y <= 2
  lp::Problem p(2);
  p.objective = {1, 1};
  p.add_row({3, 1}, Relation::kLessEqual, 2);
  p.add_row({1, 3}, Relation::kLessEqual, 2);
  const auto s = lp::solve(p);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_EQ(s.value, Rational(1));
  EXPECT_EQ(s.x, (std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));
}

TEST(Simplex, DetectsInfeasibility) {
  lp::Problem p(1);
  p.add_row({1}, Relation::kGreaterEqual, 2);
  p.add_row({1}, Relation::kLessEqual, 1);
  EXPECT_EQ(lp::solve(p).status, Status::kInfeasible);
}

TEST(Simplex, UnboundedReturnsImprovingRay) {
  // max x + y s.t. x - y <= 1, y free
  lp::Problem p(2);
  p.objective = {1, 1};
  p.free[1] = true;
  p.add_row({1, -1}, Relation::kLessEqual, 1);
  const auto s = lp::solve(p);
  ASSERT_EQ(s.status, Status::kUnbounded);
  ASSERT_EQ(s.ray.size(), 2u);
  EXPECT_GT(s.ray[0] + s.ray[1], 0);
  EXPECT_LE(s.ray[0] - s.ray[1], 0);
  EXPECT_GE(s.ray[0], 0);
}

TEST(Simplex, HandlesEqualitiesAndRedundantRows) {
  lp::Problem p(3);
  p.objective = {0, 0, 1};
  p.add_row({1, 1, 1}, Relation::kEqual, 1);
  p.add_row({2, 2, 2}, Relation::kEqual, 2);
  p.add_row({1, -1, 0}, Relation::kEqual, 0);
  const auto s = lp::solve(p);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_EQ(s.value, 1);
}

TEST(Simplex, FreeVariablesTakeNegativeValues) {
  lp::Problem p(1);
  p.objective = {-1};
  p.free[0] = true;
  p.add_row({1}, Relation::kGreaterEqual, -5);
  const auto s = lp::solve(p);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_EQ(s.x[0], -5);
}
