#include <gtest/gtest.h>

#include "azema/deflator.hpp"
#include "azema/generator.hpp"
#include "azema/projections.hpp"
#include "fixtures.hpp"

using namespace azema;

namespace {

bool positive(const Process& x) {
  for (Time t = 0; t <= x.horizon(); ++t) {
    for (AtomIndex w = 0; w < x.atoms(); ++w) {
      if (x(w, t) <= 0) return false;
    }
  }
  return true;
}

}  // namespace

TEST(OptionalIntegral, PredictableIntegrandGivesOrdinaryIntegral) {
  Rng rng(201);
  for (int i = 0; i < 50; ++i) {
    Instance inst = random_instance(rng);
    const auto p = inst.space.prob();
    const Process n = inst.martingale.component(0);
    Process h = random_predictable_nonconstant(inst.f, inst.space.size(), rng);
    const Process m = optional_integral(h, n, inst.f, p);
    const Process expected = cumulate(hadamard(h, increments(n)));
    EXPECT_EQ(m, expected);
    const Process one = optional_integral(constant_process(inst.space.size(), n.horizon(), 1), n, inst.f, p);
    EXPECT_EQ(one, n - time_constant(n.slice(0), n.horizon()));
  }
}

TEST(OptionalIntegral, AdaptedIntegrandIsCompensated) {
  Rng rng(202);
  for (int i = 0; i < 50; ++i) {
    Instance inst = random_instance(rng);
    const auto p = inst.space.prob();
    const Process h = random_adapted(inst.f, inst.space.size(), 1, rng);
    const Process n = inst.martingale.component(0);
    const Process m = optional_integral(h, n, inst.f, p);
    EXPECT_TRUE(is_martingale(m, inst.f, p));
    const Process jump = hadamard(h, increments(n));
    EXPECT_EQ(increments(m), jump - increments(dual_predictable(cumulate(jump), inst.f, p)));
  }
}

TEST(OptionalIntegral, RejectsNonMartingaleIntegrator) {
  const auto sc = load_fixture("ex1.json");
  Process drift(4, 2);
  for (AtomIndex w = 0; w < 4; ++w) drift(w, 1) = 1;
  EXPECT_THROW(optional_integral(constant_process(4, 2, 1), drift, sc.f, sc.space.prob()),
               PreconditionError);
}

TEST(OptionalIntegral, CovariationAdjointOnFixture) {
  const auto sc = load_fixture("ex1.json");
  const auto model = fixture_model(sc);
  const auto d = build_l(model);
  const Process m = optional_integral(d.k, d.m_hat, model.g, model.prob());
  const Process gap = covariation(m, d.m_hat) - cumulate(hadamard(d.k, increments(covariation(d.m_hat, d.m_hat))));
  EXPECT_TRUE(is_martingale(gap, model.g, model.prob()));
}

TEST(StochExp, YorMultiplicativity) {
  Rng rng(203);
  for (int i = 0; i < 50; ++i) {
    Instance inst = random_instance(rng);
    const std::size_t n = inst.space.size();
    Process a = random_adapted(inst.f, n, 1, rng), b = random_adapted(inst.f, n, 1, rng);
    a -= time_constant(a.slice(0), a.horizon());
    b -= time_constant(b.slice(0), b.horizon());
    EXPECT_EQ(hadamard(stoch_exp(a), stoch_exp(b)), stoch_exp(a + b + covariation(a, b)));
  }
  EXPECT_EQ(stoch_exp(Process(3, 2)), constant_process(3, 2, 1));
}

TEST(BuildL, FixtureValues) {
  const auto sc = load_fixture("ex1.json");
  const auto d = build_l(fixture_model(sc));
  EXPECT_EQ(d.l, Process(4, 2));
  EXPECT_EQ(terminal(d.v_g, 2), rationals({"0", "1/2", "0", "1/2"}));
  EXPECT_EQ(terminal(d.e_def, 2), rationals({"1", "1/2", "1", "1/2"}));
  EXPECT_TRUE(d.closed_form_matches);
}

TEST(BuildL, InfiniteTauIsTrivial) {
  const auto sc = load_fixture("ex1.json");
  const auto d = build_l(EnlargedModel::build(sc.space, sc.f, RandomTime::constant(4, kInfinity)));
  EXPECT_EQ(d.l, Process(4, 2));
  EXPECT_EQ(d.v_g, Process(4, 2));
}

TEST(BuildL, RandomInstances) {
  Rng rng(204);
  for (int i = 0; i < 200; ++i) {
    Instance inst = random_instance(rng);
    const auto model = EnlargedModel::build(inst.space, inst.f, inst.tau);
    const auto d = build_l(model);
    EXPECT_TRUE(d.jumps_positive());
    EXPECT_TRUE(d.closed_form_matches);
    EXPECT_EQ(d.l, d.l_closed_form);
    EXPECT_TRUE(is_martingale(d.l, model.g, model.prob()));
    EXPECT_TRUE(positive(d.e_def));
    EXPECT_TRUE(is_supermartingale(d.e_def, model.g, model.prob()));
    if (model.bundle.thin_empty()) {
      EXPECT_EQ(d.v_g, Process(inst.space.size(), inst.space.horizon()));
      EXPECT_TRUE(verify_deflator(d.e_def, stop(inst.martingale, inst.tau), model.g, model.prob()).ok);
    }
  }
}

TEST(VerifyDeflator, FixtureWitnessNode) {
  const auto sc = load_fixture("ex1.json");
  const auto model = fixture_model(sc);
  const auto check = verify_deflator(constant_process(4, 2, 1), stop(sc.s, sc.tau), model.g, model.prob());
  EXPECT_FALSE(check.ok);
  ASSERT_TRUE(check.time.has_value());
  EXPECT_EQ(*check.time, 2);
  EXPECT_EQ(check.node, Block{1});
  EXPECT_TRUE(check.unbounded);
}

TEST(VerifyDeflator, PassesOnSecondFixture) {
  const auto sc = load_fixture("ex2.json");
  const auto model = fixture_model(sc);
  const auto d = build_l(model);
  EXPECT_TRUE(verify_deflator(d.e_def, stop(sc.s, sc.tau), model.g, model.prob()).ok);
  EXPECT_TRUE(verify_deflator(constant_process(4, 2, 1), stop(sc.s, sc.tau), model.g, model.prob()).ok);
}

TEST(SupermartingaleDeflator, ZeroStrategyGivesDeflator) {
  Rng rng(205);
  for (int i = 0; i < 100; ++i) {
    Instance inst = random_instance(rng);
    const auto model = EnlargedModel::build(inst.space, inst.f, inst.tau);
    const auto d = build_l(model);
    const Process theta(inst.space.size(), inst.space.horizon(), inst.s.dim());
    const auto sd = build_supermartingale_deflator(inst.s, theta, d, model);
    EXPECT_EQ(sd.process, d.e_def);
    EXPECT_TRUE(sd.positive);
    EXPECT_TRUE(sd.supermartingale);
  }
}

TEST(SupermartingaleDeflator, FixtureStrategies) {
  {
    const auto sc = load_fixture("ex2.json");
    const auto model = fixture_model(sc);
    const auto sd = build_supermartingale_deflator(sc.s, constant_process(4, 2, Rational(1, 2)),
                                                   build_l(model), model);
    EXPECT_TRUE(sd.positive);
    EXPECT_TRUE(sd.supermartingale);
  }
  {
    const auto sc = load_fixture("ex1.json");
    const auto model = fixture_model(sc);
    Process theta(4, 2);
    theta(1, 2) = -3;  // short the price at node {b}, which can only fall
    const auto sd = build_supermartingale_deflator(sc.s, theta, build_l(model), model);
    EXPECT_TRUE(sd.positive);
    EXPECT_FALSE(sd.supermartingale);
    theta(1, 2) = 2;
    EXPECT_THROW(build_supermartingale_deflator(sc.s, theta, build_l(model), model), InputError);
  }
}
