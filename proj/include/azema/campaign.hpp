#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "azema/scenario.hpp"

namespace azema {

enum class Suite { kIdentities, kDeflator, kEquivalences };

struct Check {
  Suite suite;
  std::string name;
  bool passed;
};

const char* suite_name(Suite suite);

// Each check family returns one Check per identity; when `detail` is given
// a JSON entry per check is written into it as well.

/// Z~ = Z_- + dm, (V^tau)^{p,G}, the G-to-F projection transfer, U^{p,G}
/// through F, and M^ being a G-martingale, for V and M drawn from the
/// instance (S, the martingale, m, D^{o,F}, [m,m], a random adapted V).
std::vector<Check> identity_checks(const EnlargedModel& model, const Process& s,
                                   const Process& martingale, Rng& rng,
                                   Json* detail = nullptr);

/// 1 + dL > 0, L against its closed form, E(L - V^G) a positive
/// G-supermartingale, the adjoint identity for [L, M^], and (thin set empty)
/// verify_deflator(E(L - V^G), M^tau) for the F-martingale M.
std::vector<Check> deflator_checks(const EnlargedModel& model, const Process& martingale,
                                   Json* detail = nullptr);

/// Per jump date: the single-jump quadruple, the conditional-jump triple and
/// the equation1111 witness contract; the main4 contract for S and M; the
/// main5 suite with `main5_count` random martingales.
std::vector<Check> equivalence_checks(const EnlargedModel& model, const Process& s,
                                      const Process& martingale, Rng& rng,
                                      std::size_t main5_count = 100,
                                      Json* detail = nullptr);

/// Full boolean report for a scenario. The martingale used where one is
/// needed is S_0 + the martingale part of S.
Json theorems_report(const Scenario& scenario, std::uint64_t seed, std::size_t main5_count,
                     bool& all_consistent);

struct CampaignResult {
  Json report;
  std::size_t violations = 0;
};

/// Seeded randomized battery. Instance i uses its own generator derived from
/// (seed, i), so the report does not depend on `threads`.
CampaignResult run_campaign(std::size_t instances, std::uint64_t seed, std::size_t threads = 1,
                            std::size_t main5_count = 100);

std::uint64_t instance_seed(std::uint64_t seed, std::size_t index);

}  // namespace azema
