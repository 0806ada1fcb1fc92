#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "azema/enlargement.hpp"
#include "azema/nupbr.hpp"

namespace azema {

using Json = nlohmann::ordered_json;

/// A scenario file: space, filtration, random time and price process.
///
///   {"atoms": [str], "probs": ["p/q"], "horizon": int,
///    "filtration": [[[atom, ...], ...] per t],
///    "tau": {atom: int | "inf"},
///    "S": {"dim": int, "values": {atom: [[p/q per component] per t]}}}
struct Scenario {
  FiniteSpace space;
  Filtration f;
  RandomTime tau;
  Process s;
};

/// Throws InputError with codes: schema, bad_rational, unknown_atom,
/// not_partition, non_refining, prob_sum, nonpositive_prob, not_adapted.
Scenario parse_scenario(const Json& doc);
Scenario load_scenario(const std::filesystem::path& path);
Json to_json(const Scenario& scenario);

Json rational_json(const Rational& q);
Json block_json(const Block& block, const FiniteSpace& space);
Json rationals_json(const std::vector<Rational>& values);

/// Certification result; the arbitrage node is reported as
/// {"time": t, "block": [atoms of the F_{t-1}/G_{t-1} block], "theta": [...]}.
Json cert_json(const CertResult& cert, const FiniteSpace& space);

/// Z, Z~, D^{o,F}, m, thin mask and the stopping times, keyed by atom.
Json bundle_json(const EnlargedModel& model);
/// One CSV row per (time, atom): t,atom,Z,Z_tilde,D_oF,m,thin.
std::string bundle_csv(const EnlargedModel& model);

}  // namespace azema
