#include <gtest/gtest.h>

#include <cmath>

#include "azema/mc.hpp"

using namespace azema::mc;

TEST(Philox, KnownAnswers) {
  using Block = std::array<std::uint32_t, 4>;
  EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}), (Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
            (Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
            (Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, DrawsArePureFunctionsOfTheCounter) {
  const auto a = draws(9, 123, 456);
  const auto b = draws(9, 123, 456);
  EXPECT_EQ(a.normal1, b.normal1);
  EXPECT_EQ(a.uniform, b.uniform);
  EXPECT_NE(draws(9, 124, 456).normal1, a.normal1);
  EXPECT_NE(draws(9, 123, 456, 1).normal1, a.normal1);
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const auto d = draws(1, static_cast<std::uint64_t>(i), 0);
    sum += d.normal1;
    sq += d.normal1 * d.normal1;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.01);
}

TEST(ZFormula, LimitCases) {
  EXPECT_DOUBLE_EQ(z_closed_form(0.3, 0.0), 1.0);
  EXPECT_LT(z_closed_form(0.999999, 0.5), 1e-12);
  EXPECT_GT(z_closed_form(0.2, 0.1), z_closed_form(0.2, 0.5));
  const double h = 1e-6;
  const double fd = (z_closed_form(0.4, 0.3 + h) - z_closed_form(0.4, 0.3 - h)) / (2 * h);
  EXPECT_NEAR(z_closed_form_dx(0.4, 0.3), fd, 1e-6);
  EXPECT_NEAR(z_closed_form_dx(0.4, -0.3), -fd, 1e-6);
}

TEST(ZFormula, NestedSimulationAgrees) {
  McModel model;
  model.dt = 1e-3;
  model.seed = 17;
  const auto at_zero = validate_Z_formula(model, 0.5, 0.0, 1000);
  EXPECT_EQ(at_zero.estimate, 1.0);
  EXPECT_TRUE(at_zero.agrees());
  for (const auto& [t, x] : {std::pair{0.2, 0.4}, {0.6, -0.3}}) {
    const auto v = validate_Z_formula(model, t, x, 20000);
    EXPECT_TRUE(v.agrees()) << t << " " << x << " " << v.estimate << " vs " << v.closed_form;
  }
}

TEST(Simulate, InfiniteTauHasTrivialDeflator) {
  McModel model;
  model.id = "CAT-1-INF";
  model.paths = 20000;
  model.dt = 1e-2;
  const auto est = simulate(model);
  for (std::size_t c = 0; c < est.times.size(); ++c) {
    EXPECT_EQ(est.deflator[c], 1.0);
    EXPECT_EQ(est.estimate[c], est.control[c]);
    EXPECT_LE(std::abs(est.estimate[c] - est.s0), 3 * est.se[c]);
  }
}

TEST(Simulate, DeterministicAcrossThreadCounts) {
  McModel model;
  model.paths = 3000;
  model.dt = 1e-2;
  const auto a = simulate(model, {0.25, 0.5, 0.75}, 1);
  const auto b = simulate(model, {0.25, 0.5, 0.75}, 4);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.se, b.se);
  EXPECT_EQ(a.frozen_paths, b.frozen_paths);
}

TEST(Simulate, DeflatedStoppedPriceIsCentred) {
  McModel model;
  model.paths = 20000;
  model.dt = 2e-3;
  model.seed = 5;
  const auto est = simulate(model);
  for (std::size_t c = 0; c < est.times.size(); ++c) {
    EXPECT_LE(std::abs(est.estimate[c] - est.s0), 3 * est.se[c]) << est.times[c];
    EXPECT_GT(est.se[c], 0);
    EXPECT_EQ(est.nonpositive_steps, 0u);
  }
}

TEST(Simulate, StableUnderStepHalving) {
  McModel coarse;
  coarse.paths = 20000;
  coarse.dt = 4e-3;
  McModel fine = coarse;
  fine.dt = 2e-3;
  const auto a = simulate(coarse);
  const auto b = simulate(fine);
  for (std::size_t c = 0; c < a.times.size(); ++c) {
    const double combined = std::sqrt(a.se[c] * a.se[c] + b.se[c] * b.se[c]);
    EXPECT_LE(std::abs(a.estimate[c] - b.estimate[c]), 3 * combined) << a.times[c];
  }
}

TEST(Simulate, RejectsUnknownModel) {
  McModel model;
  model.id = "CAT-7";
  EXPECT_THROW(simulate(model), std::runtime_error);
}
