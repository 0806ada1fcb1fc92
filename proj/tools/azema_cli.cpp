#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "azema/campaign.hpp"
#include "azema/mc.hpp"
#include "azema/scenario.hpp"

namespace {

using azema::Json;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kViolation = 2;
constexpr int kRuntimeFailure = 3;

std::size_t default_threads() {
  if (const char* env = std::getenv("AZEMA_THREADS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void emit(const Json& doc, const std::string& json_path) {
  const std::string text = doc.dump(2) + "\n";
  if (json_path.empty()) {
    std::cout << text;
  } else {
    write_file(json_path, text);
  }
}

int cmd_inspect(const std::string& file, const std::string& json_path, const std::string& csv_path) {
  const auto sc = azema::load_scenario(file);
  const auto model = azema::EnlargedModel::build(sc.space, sc.f, sc.tau);
  emit(azema::bundle_json(model), json_path);
  if (!csv_path.empty()) write_file(csv_path, azema::bundle_csv(model));
  return kOk;
}

int cmd_certify(const std::string& file, const std::string& json_path) {
  const auto sc = azema::load_scenario(file);
  const auto model = azema::EnlargedModel::build(sc.space, sc.f, sc.tau);
  const auto in_f = azema::certify_nupbr(sc.s, sc.f, sc.space);
  const auto in_g = azema::certify_nupbr(azema::stop(sc.s, sc.tau), model.g, sc.space);
  Json out;
  out["nupbr_F"] = in_f.verdict;
  out["nupbr_G_stopped"] = in_g.verdict;
  const auto node_json = [&](const azema::ArbitrageWitness& a) {
    return Json{{"time", a.time},
                {"block", azema::block_json(a.node, sc.space)},
                {"theta", azema::rationals_json(a.theta)}};
  };
  if (in_g.arbitrage) out["arbitrage_node"] = node_json(*in_g.arbitrage);
  if (in_f.arbitrage) out["arbitrage_node_F"] = node_json(*in_f.arbitrage);
  emit(out, json_path);
  return kOk;
}

int cmd_theorems(const std::string& file, std::uint64_t seed, std::size_t martingales,
                 const std::string& json_path) {
  const auto sc = azema::load_scenario(file);
  bool consistent = false;
  emit(azema::theorems_report(sc, seed, martingales, consistent), json_path);
  return consistent ? kOk : kViolation;
}

int cmd_witness(const std::string& file, std::optional<int> time, const std::string& json_path) {
  const auto sc = azema::load_scenario(file);
  const auto model = azema::EnlargedModel::build(sc.space, sc.f, sc.tau);
  Json out;
  const auto times = model.bundle.thin_times();
  out["thin_set_empty"] = times.empty();
  if (times.empty() && !time) {
    emit(out, json_path);
    return kOk;
  }
  const azema::Time T = time ? *time : times.front();
  if (T < 1 || T > model.horizon()) {
    throw azema::InputError("schema", "--time", "jump date must lie in 1..horizon");
  }
  const auto m = azema::witness_martingale(T, model);
  const auto cert = azema::certify_nupbr(azema::stop(m, sc.tau), model.g, sc.space);
  Json values = Json::object();
  for (azema::AtomIndex w = 0; w < sc.space.size(); ++w) {
    Json path = Json::array();
    for (azema::Time t = 0; t <= model.horizon(); ++t) path.push_back(azema::to_string(m(w, t)));
    values[sc.space.atom(w)] = std::move(path);
  }
  out["time"] = T;
  out["equation1111"] = azema::check_equation1111(T, model);
  out["martingale"] = std::move(values);
  out["nupbr_G_stopped"] = azema::cert_json(cert, sc.space);
  emit(out, json_path);
  return out["equation1111"].get<bool>() == cert.verdict ? kOk : kViolation;
}

int cmd_campaign(std::size_t instances, std::uint64_t seed, std::size_t threads,
                 std::size_t martingales, const std::string& json_path, const std::string& csv_path) {
  const auto result = azema::run_campaign(instances, seed, threads, martingales);
  emit(result.report, json_path);
  if (!csv_path.empty()) {
    std::string csv = "index,seed,atoms,horizon,dim,thin_set_empty,checks,failed\n";
    for (const auto& row : result.report["results"]) {
      csv += std::to_string(row["index"].get<std::size_t>()) + "," +
             std::to_string(row["seed"].get<std::uint64_t>()) + "," +
             (row.contains("atoms") ? row["atoms"].dump() : "") + "," +
             (row.contains("horizon") ? row["horizon"].dump() : "") + "," +
             (row.contains("dim") ? row["dim"].dump() : "") + "," +
             (row.contains("thin_set_empty") ? row["thin_set_empty"].dump() : "") + "," +
             row["checks"].dump() + "," + std::to_string(row["failed"].size()) + "\n";
    }
    write_file(csv_path, csv);
  }
  return result.violations == 0 ? kOk : kViolation;
}

int cmd_mc(const azema::mc::McModel& model, std::size_t threads, std::size_t validate_paths,
           const std::string& json_path, const std::string& csv_path) {
  if (!azema::mc::in_catalog(model.id)) {
    throw azema::InputError("unknown_model", "--model", "model not in catalog: " + model.id);
  }
  const auto est = azema::mc::simulate(model, {0.25, 0.5, 0.75}, threads);
  Json out;
  out["model"] = model.id;
  out["paths"] = model.paths;
  out["dt"] = model.dt;
  out["bracket"] = model.bracket == azema::mc::Bracket::kRealized ? "realized" : "closed-form";
  out["seed"] = model.seed;
  out["s0"] = est.s0;
  out["frozen_paths"] = est.frozen_paths;
  out["nonpositive_steps"] = est.nonpositive_steps;
  Json checkpoints = Json::array();
  bool pass = true;
  for (std::size_t c = 0; c < est.times.size(); ++c) {
    const bool within = std::abs(est.estimate[c] - est.s0) <= 3.0 * est.se[c];
    pass = pass && within;
    checkpoints.push_back({{"t", est.times[c]},
                           {"estimate", est.estimate[c]},
                           {"se", est.se[c]},
                           {"within_3se", within},
                           {"control", est.control[c]},
                           {"control_se", est.control_se[c]},
                           {"deflator", est.deflator[c]},
                           {"deflator_se", est.deflator_se[c]}});
  }
  out["checkpoints"] = std::move(checkpoints);
  if (validate_paths > 0 && model.id == "CAT-1") {
    Json checks = Json::array();
    for (const auto& [t, x] : {std::pair{0.1, 0.2}, {0.3, 0.5}, {0.5, 0.5}, {0.7, -0.4}, {0.9, 0.1}}) {
      const auto v = azema::mc::validate_Z_formula(model, t, x, validate_paths);
      pass = pass && v.agrees();
      checks.push_back({{"t", v.t},
                        {"x", v.x},
                        {"closed_form", v.closed_form},
                        {"estimate", v.estimate},
                        {"se", v.se},
                        {"within_4se", v.agrees()}});
    }
    out["z_validation"] = std::move(checks);
  }
  out["pass"] = pass;
  emit(out, json_path);
  if (!csv_path.empty()) write_file(csv_path, azema::mc::to_csv(est));
  return pass ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact NUPBR checks under progressive enlargement of filtrations"};
  app.require_subcommand(1);

  std::string scenario, json_path, csv_path;
  std::uint64_t seed = 1;
  std::size_t instances = 100, threads = default_threads(), martingales = 100;
  std::optional<int> time;

  auto* inspect = app.add_subcommand("inspect", "Azema supermartingales, thin set and G");
  inspect->add_option("scenario", scenario)->required()->check(CLI::ExistingFile);
  inspect->add_option("--json", json_path, "write JSON here instead of stdout");
  inspect->add_option("--csv", csv_path, "per-(t, atom) table");

  auto* certify = app.add_subcommand("certify", "NUPBR of S in F and of S^tau in G");
  certify->add_option("scenario", scenario)->required()->check(CLI::ExistingFile);
  certify->add_option("--json", json_path);

  auto* theorems = app.add_subcommand("theorems", "Full boolean theorem report");
  theorems->add_option("scenario", scenario)->required()->check(CLI::ExistingFile);
  theorems->add_option("--seed", seed);
  theorems->add_option("--martingales", martingales, "random martingales for the thin-set suite");
  theorems->add_option("--json", json_path);

  auto* witness = app.add_subcommand("witness", "Martingale losing NUPBR after stopping at tau");
  witness->add_option("scenario", scenario)->required()->check(CLI::ExistingFile);
  witness->add_option("--time", time, "jump date (default: first thin time)");
  witness->add_option("--json", json_path);

  auto* campaign = app.add_subcommand("campaign", "Randomized theorem-equivalence battery");
  campaign->add_option("--instances", instances)->required();
  campaign->add_option("--seed", seed)->required();
  campaign->add_option("--threads", threads);
  campaign->add_option("--martingales", martingales);
  campaign->add_option("--json", json_path);
  campaign->add_option("--csv", csv_path);

  azema::mc::McModel mc_model;
  std::size_t validate_paths = 0;
  auto* mc = app.add_subcommand("mc", "Monte Carlo check of the deflated stopped price");
  mc->add_option("--model", mc_model.id)->required();
  mc->add_option("--paths", mc_model.paths);
  mc->add_option("--dt", mc_model.dt);
  mc->add_option("--seed", mc_model.seed);
  mc->add_option("--threads", threads);
  std::string bracket = "realized";
  mc->add_option("--bracket", bracket, "d<m> per step: realized or closed-form")
      ->check(CLI::IsMember({"realized", "closed-form"}));
  mc->add_option("--validate-paths", validate_paths, "sub-paths per Z validation point (0 skips)");
  mc->add_option("--json", json_path);
  mc->add_option("--csv", csv_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*inspect) return cmd_inspect(scenario, json_path, csv_path);
    if (*certify) return cmd_certify(scenario, json_path);
    if (*theorems) return cmd_theorems(scenario, seed, martingales, json_path);
    if (*witness) return cmd_witness(scenario, time, json_path);
    if (*campaign) return cmd_campaign(instances, seed, threads, martingales, json_path, csv_path);
    if (bracket == "closed-form") mc_model.bracket = azema::mc::Bracket::kClosedForm;
    if (*mc) return cmd_mc(mc_model, threads, validate_paths, json_path, csv_path);
  } catch (const azema::InputError& e) {
    std::cerr << Json{{"error", e.code()}, {"location", e.location()}, {"message", e.what()}}.dump()
              << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", "runtime"}, {"message", e.what()}}.dump() << "\n";
    return kRuntimeFailure;
  }
  return kRuntimeFailure;
}
