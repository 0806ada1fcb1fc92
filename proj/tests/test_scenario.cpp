#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>

#include "fixtures.hpp"

using namespace azema;

namespace {

Json fixture_json(const std::string& name) {
  std::ifstream in(std::string(AZEMA_FIXTURES_DIR) + "/" + name);
  return Json::parse(in);
}

std::string error_code(const Json& doc) {
  try {
    parse_scenario(doc);
  } catch (const InputError& e) {
    return e.code() + "@" + e.location();
  }
  return "ok";
}

struct CliRun {
  int status;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(AZEMA_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) out += buf.data();
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string fixture_path(const std::string& name) { return std::string(AZEMA_FIXTURES_DIR) + "/" + name; }

}  // namespace

TEST(Scenario, RoundTripIsIdentity) {
  for (const char* name : {"ex1.json", "ex2.json"}) {
    const Scenario once = parse_scenario(fixture_json(name));
    const Json serialized = to_json(once);
    const Scenario twice = parse_scenario(serialized);
    EXPECT_EQ(to_json(twice), serialized);
    EXPECT_EQ(twice.s, once.s);
    EXPECT_EQ(twice.f, once.f);
    EXPECT_EQ(twice.tau, once.tau);
  }
}

TEST(Scenario, FixtureContents) {
  const Scenario sc = load_fixture("ex1.json");
  EXPECT_EQ(sc.space.size(), 4u);
  EXPECT_EQ(sc.tau.value, (std::vector<Time>{1, 2, 1, kInfinity}));
  EXPECT_EQ(terminal(sc.s, 2), rationals({"2", "0", "0", "-2"}));
  EXPECT_EQ(load_fixture("ex2.json").tau.value, (std::vector<Time>{kInfinity, kInfinity, 1, 1}));
}

TEST(Scenario, DistinctErrorCodes) {
  const Json base = fixture_json("ex1.json");
  {
    Json doc = base;
    doc["probs"][0] = "1/2";
    EXPECT_EQ(error_code(doc), "prob_sum@probs");
  }
  {
    Json doc = base;
    doc["probs"] = {"1/2", "1/2", "1/2", "-1/2"};
    EXPECT_EQ(error_code(doc).substr(0, 16), "nonpositive_prob");
  }
  {
    Json doc = base;
    doc["filtration"][2] = Json::array({Json::array({"a", "c"}), Json::array({"b", "d"})});
    EXPECT_EQ(error_code(doc), "non_refining@filtration[2]");
  }
  {
    Json doc = base;
    doc["filtration"][1] = Json::array({Json::array({"a", "b"}), Json::array({"b", "c", "d"})});
    EXPECT_EQ(error_code(doc), "not_partition@filtration[1]");
  }
  {
    Json doc = base;
    doc["S"]["values"]["a"][1][0] = "5";
    EXPECT_EQ(error_code(doc).substr(0, 11), "not_adapted");
  }
  {
    Json doc = base;
    doc["probs"][2] = "1/0";
    EXPECT_EQ(error_code(doc), "bad_rational@probs[2]");
  }
  {
    Json doc = base;
    doc["tau"]["e"] = 1;
    EXPECT_EQ(error_code(doc), "unknown_atom@e");
  }
  {
    Json doc = base;
    doc.erase("horizon");
    EXPECT_EQ(error_code(doc), "schema@horizon");
  }
  {
    Json doc = base;
    doc["tau"]["a"] = 7;
    EXPECT_EQ(error_code(doc), "schema@tau.a");
  }
}

TEST(Cli, CertifyFixture) {
  const CliRun r = run_cli("certify " + fixture_path("ex1.json"));
  EXPECT_EQ(r.status, 0);
  const Json out = Json::parse(r.out);
  const Json expected = Json::parse(
      R"({"nupbr_F": true, "nupbr_G_stopped": false,
          "arbitrage_node": {"time": 2, "block": ["b"], "theta": ["-1"]}})");
  EXPECT_EQ(out, expected);
}

TEST(Cli, TheoremsOnSecondFixtureAreConsistent) {
  const CliRun r = run_cli("theorems " + fixture_path("ex2.json"));
  EXPECT_EQ(r.status, 0);
  const Json out = Json::parse(r.out);
  EXPECT_TRUE(out["consistent"].get<bool>());
  for (const auto& [name, entry] : out["equivalences"].items()) {
    EXPECT_TRUE(entry["consistent"].get<bool>()) << name;
  }
}

TEST(Cli, EmptyCampaign) {
  const CliRun r = run_cli("campaign --instances 0 --seed 5");
  EXPECT_EQ(r.status, 0);
  const Json out = Json::parse(r.out);
  EXPECT_EQ(out["results"].size(), 0u);
  EXPECT_EQ(out["violations"], 0);
}

TEST(Cli, WitnessOnFirstFixture) {
  const CliRun r = run_cli("witness " + fixture_path("ex1.json"));
  EXPECT_EQ(r.status, 0);
  const Json out = Json::parse(r.out);
  EXPECT_EQ(out["time"], 2);
  EXPECT_FALSE(out["nupbr_G_stopped"]["verdict"].get<bool>());
}

TEST(Cli, InputErrorsExitWithOne) {
  const std::string bad = ::testing::TempDir() + "bad_scenario.json";
  {
    Json doc = fixture_json("ex1.json");
    doc["probs"][0] = "1/2";
    std::ofstream(bad) << doc.dump();
  }
  const CliRun r = run_cli("certify " + bad);
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("prob_sum"), std::string::npos);
  EXPECT_EQ(run_cli("frobnicate").status, 1);
  EXPECT_EQ(run_cli("mc --model CAT-9 --paths 10").status, 1);
}

TEST(Cli, InspectWritesCsv) {
  const std::string csv = ::testing::TempDir() + "bundle.csv";
  const CliRun r = run_cli("inspect " + fixture_path("ex1.json") + " --csv " + csv);
  EXPECT_EQ(r.status, 0);
  std::ifstream in(csv);
  std::string header, line;
  std::getline(in, header);
  EXPECT_EQ(header, "t,atom,Z,Z_tilde,D_oF,m,thin");
  int rows = 0, thin = 0;
  while (std::getline(in, line)) {
    ++rows;
    thin += line.back() == '1';
  }
  EXPECT_EQ(rows, 12);
  EXPECT_EQ(thin, 2);
}
