#include "azema/scenario.hpp"

#include <fstream>
#include <sstream>

namespace azema {

namespace {

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw InputError("schema", key, std::string("missing field '") + key + "'");
  }
  return doc.at(key);
}

Rational rational_field(const Json& value, const std::string& location) {
  try {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.get<long>());
  } catch (const std::invalid_argument& e) {
    throw InputError("bad_rational", location, e.what());
  }
  throw InputError("bad_rational", location, "expected a \"p/q\" string");
}


}  // namespace

Scenario parse_scenario(const Json& doc) {
  const Json& atoms_json = field(doc, "atoms");
  if (!atoms_json.is_array()) throw InputError("schema", "atoms", "atoms must be an array");
  std::vector<std::string> atoms;
  for (const auto& a : atoms_json) {
    if (!a.is_string()) throw InputError("schema", "atoms", "atom identifiers must be strings");
    atoms.push_back(a.get<std::string>());
  }

  const Json& probs_json = field(doc, "probs");
  if (!probs_json.is_array()) throw InputError("schema", "probs", "probs must be an array");
  AtomVector probs;
  for (std::size_t i = 0; i < probs_json.size(); ++i) {
    probs.push_back(rational_field(probs_json[i], "probs[" + std::to_string(i) + "]"));
  }

  const Json& horizon_json = field(doc, "horizon");
  if (!horizon_json.is_number_integer()) throw InputError("schema", "horizon", "horizon must be an integer");
  FiniteSpace space(std::move(atoms), std::move(probs), horizon_json.get<Time>());
  const std::size_t n = space.size();

  const Json& filt_json = field(doc, "filtration");
  if (!filt_json.is_array() || filt_json.size() != static_cast<std::size_t>(space.horizon() + 1)) {
    throw InputError("schema", "filtration", "filtration needs one partition per time 0..horizon");
  }
  std::vector<Partition> parts;
  for (std::size_t t = 0; t < filt_json.size(); ++t) {
    const std::string loc = "filtration[" + std::to_string(t) + "]";
    if (!filt_json[t].is_array()) throw InputError("schema", loc, "partition must be an array of blocks");
    std::vector<Block> blocks;
    for (const auto& block_json : filt_json[t]) {
      if (!block_json.is_array()) throw InputError("schema", loc, "block must be an array of atoms");
      Block block;
      for (const auto& a : block_json) {
        if (!a.is_string()) throw InputError("schema", loc, "block entries must be atom names");
        block.push_back(space.index_of(a.get<std::string>()));
      }
      blocks.push_back(std::move(block));
    }
    try {
      parts.emplace_back(std::move(blocks), n);
    } catch (const std::invalid_argument& e) {
      throw InputError("not_partition", loc, e.what());
    }
  }
  Filtration f(std::move(parts));

  const Json& tau_json = field(doc, "tau");
  if (!tau_json.is_object()) throw InputError("schema", "tau", "tau must map atoms to times");
  RandomTime tau{std::vector<Time>(n, -1)};
  for (const auto& [name, value] : tau_json.items()) {
    const AtomIndex w = space.index_of(name);
    if (value.is_string() && value.get<std::string>() == "inf") {
      tau.value[w] = kInfinity;
    } else if (value.is_number_integer() && value.get<long>() >= 0 &&
               value.get<long>() <= space.horizon()) {
      tau.value[w] = value.get<Time>();
    } else {
      throw InputError("schema", "tau." + name, "tau values are grid times or \"inf\"");
    }
  }
  for (AtomIndex w = 0; w < n; ++w) {
    if (tau.value[w] < 0) throw InputError("schema", "tau." + space.atom(w), "tau missing for atom");
  }

  const Json& s_json = field(doc, "S");
  const Json& dim_json = field(s_json, "dim");
  if (!dim_json.is_number_integer() || dim_json.get<long>() < 1) {
    throw InputError("schema", "S.dim", "dim must be a positive integer");
  }
  const auto dim = dim_json.get<std::size_t>();
  const Json& values = field(s_json, "values");
  Process s(n, space.horizon(), dim);
  for (AtomIndex w = 0; w < n; ++w) {
    const std::string loc = "S.values." + space.atom(w);
    if (!values.contains(space.atom(w))) throw InputError("schema", loc, "missing price path");
    const Json& path = values.at(space.atom(w));
    if (!path.is_array() || path.size() != static_cast<std::size_t>(space.horizon() + 1)) {
      throw InputError("schema", loc, "price path needs one entry per time");
    }
    for (Time t = 0; t <= space.horizon(); ++t) {
      const Json& vec = path[static_cast<std::size_t>(t)];
      if (!vec.is_array() || vec.size() != dim) {
        throw InputError("schema", loc + "[" + std::to_string(t) + "]", "wrong number of components");
      }
      for (std::size_t k = 0; k < dim; ++k) {
        s(w, t, k) = rational_field(vec[k], loc + "[" + std::to_string(t) + "][" + std::to_string(k) + "]");
      }
    }
  }
  require_adapted(s, f, space, "S");
  return Scenario{std::move(space), std::move(f), std::move(tau), std::move(s)};
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("io", path.string(), "cannot open scenario file");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("schema", path.string(), e.what());
  }
  return parse_scenario(doc);
}

Json rational_json(const Rational& q) { return to_string(q); }

Json rationals_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

Json block_json(const Block& block, const FiniteSpace& space) {
  Json out = Json::array();
  for (AtomIndex w : block) out.push_back(space.atom(w));
  return out;
}

Json to_json(const Scenario& sc) {
  Json doc;
  doc["atoms"] = sc.space.atoms();
  doc["probs"] = rationals_json({sc.space.prob().begin(), sc.space.prob().end()});
  doc["horizon"] = sc.space.horizon();
  Json filt = Json::array();
  for (const auto& part : sc.f.parts()) {
    Json blocks = Json::array();
    for (const auto& b : part.blocks()) blocks.push_back(block_json(b, sc.space));
    filt.push_back(std::move(blocks));
  }
  doc["filtration"] = std::move(filt);
  Json tau = Json::object();
  for (AtomIndex w = 0; w < sc.space.size(); ++w) {
    const Time v = sc.tau.value[w];
    tau[sc.space.atom(w)] = v == kInfinity ? Json("inf") : Json(v);
  }
  doc["tau"] = std::move(tau);
  Json values = Json::object();
  for (AtomIndex w = 0; w < sc.space.size(); ++w) {
    Json path = Json::array();
    for (Time t = 0; t <= sc.space.horizon(); ++t) {
      Json vec = Json::array();
      for (std::size_t k = 0; k < sc.s.dim(); ++k) vec.push_back(to_string(sc.s(w, t, k)));
      path.push_back(std::move(vec));
    }
    values[sc.space.atom(w)] = std::move(path);
  }
  doc["S"] = {{"dim", sc.s.dim()}, {"values", std::move(values)}};
  return doc;
}

Json cert_json(const CertResult& cert, const FiniteSpace& space) {
  Json out;
  out["verdict"] = cert.verdict;
  if (cert.arbitrage) {
    out["arbitrage_node"] = {{"time", cert.arbitrage->time},
                             {"block", block_json(cert.arbitrage->node, space)},
                             {"theta", rationals_json(cert.arbitrage->theta)}};
  } else {
    Json nodes = Json::array();
    for (const auto& node : cert.deflator) {
      Json children = Json::array();
      for (std::size_t c = 0; c < node.children.size(); ++c) {
        children.push_back({{"block", block_json(node.children[c], space)},
                            {"weight", to_string(node.weights[c])}});
      }
      nodes.push_back({{"time", node.time},
                       {"node", block_json(node.node, space)},
                       {"children", std::move(children)}});
    }
    out["deflator_weights"] = std::move(nodes);
  }
  return out;
}

Json bundle_json(const EnlargedModel& model) {
  const auto& b = model.bundle;
  const auto& space = model.space;
  auto table = [&](const Process& x) {
    Json out = Json::object();
    for (AtomIndex w = 0; w < space.size(); ++w) {
      std::vector<Rational> path;
      for (Time t = 0; t <= model.horizon(); ++t) path.push_back(x(w, t));
      out[space.atom(w)] = rationals_json(path);
    }
    return out;
  };
  auto times = [&](const StoppingTime& st) {
    Json out = Json::object();
    for (AtomIndex w = 0; w < space.size(); ++w) {
      const Time v = st.value[w];
      out[space.atom(w)] = v == kInfinity ? Json("inf") : Json(v);
    }
    return out;
  };
  Json thin = Json::array();
  for (Time t = 0; t <= model.horizon(); ++t) {
    for (AtomIndex w = 0; w < space.size(); ++w) {
      if (b.thin[t][w]) thin.push_back({{"time", t}, {"atom", space.atom(w)}});
    }
  }
  Json g = Json::array();
  for (const auto& part : model.g.parts()) {
    Json blocks = Json::array();
    for (const auto& blk : part.blocks()) blocks.push_back(block_json(blk, space));
    g.push_back(std::move(blocks));
  }
  Json out;
  out["Z"] = table(b.z);
  out["Z_tilde"] = table(b.z_tilde);
  out["D_oF"] = table(b.d_oF);
  out["m"] = table(b.m);
  out["thin_set"] = std::move(thin);
  out["R_hat"] = times(b.r_hat);
  out["R_hat0"] = times(b.r_hat0);
  out["R_tilde0"] = times(b.r_tilde0);
  out["G"] = std::move(g);
  return out;
}

std::string bundle_csv(const EnlargedModel& model) {
  const auto& b = model.bundle;
  std::ostringstream out;
  out << "t,atom,Z,Z_tilde,D_oF,m,thin\n";
  for (Time t = 0; t <= model.horizon(); ++t) {
    for (AtomIndex w = 0; w < model.space.size(); ++w) {
      out << t << ',' << model.space.atom(w) << ',' << to_string(b.z(w, t)) << ','
          << to_string(b.z_tilde(w, t)) << ',' << to_string(b.d_oF(w, t)) << ','
          << to_string(b.m(w, t)) << ',' << (b.thin[t][w] ? 1 : 0) << '\n';
    }
  }
  return out.str();
}

}  // namespace azema
