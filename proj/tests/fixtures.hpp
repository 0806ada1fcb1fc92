#pragma once

#include <string>

#include "azema/scenario.hpp"

inline azema::Scenario load_fixture(const std::string& name) {
  return azema::load_scenario(std::string(AZEMA_FIXTURES_DIR) + "/" + name);
}

inline azema::EnlargedModel fixture_model(const azema::Scenario& sc) {
  return azema::EnlargedModel::build(sc.space, sc.f, sc.tau);
}

inline azema::AtomVector terminal(const azema::Process& x, azema::Time t, std::size_t k = 0) {
  return x.slice(t, k);
}

inline azema::AtomVector rationals(std::initializer_list<const char*> values) {
  azema::AtomVector out;
  for (const char* v : values) out.push_back(azema::parse_rational(v));
  return out;
}
