#include <gtest/gtest.h>

#include "azema/campaign.hpp"
#include "fixtures.hpp"

using namespace azema;

TEST(Campaign, SameSeedIsByteIdentical) {
  const auto a = run_campaign(20, 42, 1, 10).report.dump(2);
  const auto b = run_campaign(20, 42, 1, 10).report.dump(2);
  const auto c = run_campaign(20, 42, 3, 10).report.dump(2);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_NE(a, run_campaign(20, 43, 1, 10).report.dump(2));
}

TEST(Campaign, SmallBatteryHasNoViolations) {
  const auto r = run_campaign(40, 7, 1, 20);
  EXPECT_EQ(r.violations, 0u) << r.report.dump(2);
  EXPECT_EQ(r.report["results"].size(), 40u);
}

TEST(Campaign, EmptyCampaign) {
  const auto r = run_campaign(0, 1);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_TRUE(r.report["results"].empty());
}

TEST(Theorems, FixtureReports) {
  for (const char* name : {"ex1.json", "ex2.json"}) {
    bool consistent = false;
    const Json report = theorems_report(load_fixture(name), 1, 100, consistent);
    EXPECT_TRUE(consistent) << name;
  }
}

TEST(Theorems, SuitesAreTagged) {
  const auto sc = load_fixture("ex1.json");
  const auto model = fixture_model(sc);
  Rng rng(1);
  for (const auto& c : identity_checks(model, sc.s, sc.s, rng)) EXPECT_EQ(c.suite, Suite::kIdentities);
  for (const auto& c : deflator_checks(model, sc.s)) EXPECT_EQ(c.suite, Suite::kDeflator);
}
