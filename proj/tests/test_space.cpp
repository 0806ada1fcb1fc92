#include <gtest/gtest.h>

#include "azema/errors.hpp"
#include "azema/projections.hpp"
#include "azema/generator.hpp"
#include "oracle.hpp"

using namespace azema;

namespace {

FiniteSpace four_atoms() {
  return FiniteSpace({"a", "b", "c", "d"}, AtomVector(4, Rational(1, 4)), 2);
}

Filtration binary_tree() {
  return Filtration({Partition::trivial(4), Partition({{0, 1}, {2, 3}}, 4), Partition::discrete(4)});
}

}  // namespace

TEST(Rational, RoundTripsCanonicalForm) {
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-3")), "-3");
  EXPECT_EQ(to_string(parse_rational("0/7")), "0");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("0.5"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
}

TEST(FiniteSpace, RejectsBadProbabilities) {
  try {
    FiniteSpace({"a", "b"}, {Rational(1, 2), Rational(1, 3)}, 1);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(e.code(), "prob_sum");
  }
  try {
    FiniteSpace({"a", "b"}, {Rational(1), Rational(0)}, 1);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(e.code(), "nonpositive_prob");
  }
  EXPECT_THROW(FiniteSpace({"a", "a"}, {Rational(1, 2), Rational(1, 2)}, 1), InputError);
}

TEST(Filtration, RejectsNonRefiningSequence) {
  try {
    Filtration({Partition::discrete(4), Partition::trivial(4)});
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(e.code(), "non_refining");
  }
}

TEST(Partition, RejectsOverlapAndGaps) {
  EXPECT_THROW(Partition({{0, 1}, {1, 2}}, 3), std::invalid_argument);
  EXPECT_THROW(Partition({{0, 1}}, 3), std::invalid_argument);
}

TEST(Process, ConditionalExpectationAveragesOverBlocks) {
  const auto space = four_atoms();
  const AtomVector x = {1, 3, 5, 9};
  const AtomVector e = condexp(x, Partition({{0, 1}, {2, 3}}, 4), space.prob());
  EXPECT_EQ(e, (AtomVector{2, 2, 7, 7}));
}

TEST(Process, StoppingFreezesPaths) {
  Process x(2, 3);
  for (Time t = 0; t <= 3; ++t) {
    x(0, t) = t;
    x(1, t) = 10 * t;
  }
  const Process s = stop(x, RandomTime{{1, kInfinity}});
  EXPECT_EQ(s(0, 3), 1);
  EXPECT_EQ(s(1, 3), 30);
}

TEST(Process, AdaptednessIsCheckedWithLocation) {
  const auto space = four_atoms();
  Process x(4, 2);
  x(0, 1) = 1;
  try {
    require_adapted(x, binary_tree(), space, "S");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(e.code(), "not_adapted");
    EXPECT_NE(e.location().find("S["), std::string::npos);
  }
}

TEST(Projections, DoobDecompositionReassembles) {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    Instance inst = random_instance(rng);
    const auto d = doob(inst.s, inst.f, inst.space.prob());
    Process rebuilt = d.martingale + d.compensator;
    for (Time t = 0; t <= inst.s.horizon(); ++t) {
      for (AtomIndex w = 0; w < inst.space.size(); ++w) {
        for (std::size_t k = 0; k < inst.s.dim(); ++k) rebuilt(w, t, k) += inst.s(w, 0, k);
      }
    }
    EXPECT_EQ(rebuilt, inst.s);
    EXPECT_TRUE(is_martingale(d.martingale, inst.f, inst.space.prob()));
    EXPECT_TRUE(is_predictable(d.compensator, inst.f));
    EXPECT_TRUE(is_martingale(inst.martingale, inst.f, inst.space.prob()));
  }
}

TEST(Projections, DualProjectionsMatchEnumeration) {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    Instance inst = random_instance(rng);
    const auto p = inst.space.prob();
    const Process dp = dual_predictable(inst.s, inst.f, p);
    const Process dopt = dual_optional(inst.s, inst.f, p);
    const std::size_t n = inst.space.size();
    for (Time t = 1; t <= inst.s.horizon(); ++t) {
      for (AtomIndex w = 0; w < n; ++w) {
        for (std::size_t k = 0; k < inst.s.dim(); ++k) {
          auto inc = [&](AtomIndex b) { return inst.s(b, t, k) - inst.s(b, t - 1, k); };
          const Rational before = oracle::conditional_mean(
              p, n, w, [&](AtomIndex a, AtomIndex b) { return oracle::same_f_block(inst.f, t - 1, a, b); },
              inc);
          const Rational now = oracle::conditional_mean(
              p, n, w, [&](AtomIndex a, AtomIndex b) { return oracle::same_f_block(inst.f, t, a, b); },
              inc);
          EXPECT_EQ(dp.increment(w, t, k), before);
          EXPECT_EQ(dopt.increment(w, t, k), now);
        }
      }
    }
  }
}

TEST(Projections, AngleBracketCompensatesCovariation) {
  Rng rng(11);
  for (int i = 0; i < 30; ++i) {
    Instance inst = random_instance(rng);
    const auto p = inst.space.prob();
    const Process qv = covariation(inst.martingale, inst.martingale);
    const Process ab = angle_bracket(inst.martingale, inst.martingale, inst.f, p);
    EXPECT_TRUE(is_martingale(qv - ab, inst.f, p));
    EXPECT_TRUE(is_predictable(ab, inst.f));
  }
}
