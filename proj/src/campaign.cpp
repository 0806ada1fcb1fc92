#include "azema/campaign.hpp"

#include <atomic>
#include <thread>

#include "azema/projections.hpp"

namespace azema {

namespace {

class Recorder {
 public:
  Recorder(Suite suite, Json* detail) : suite_(suite), detail_(detail) {}

  void add(const std::string& name, bool passed, Json extra = Json::object()) {
    checks_.push_back({suite_, name, passed});
    if (detail_ != nullptr) {
      extra["consistent"] = passed;
      (*detail_)[name] = std::move(extra);
    }
  }

  std::vector<Check> take() { return std::move(checks_); }

 private:
  Suite suite_;
  Json* detail_;
  std::vector<Check> checks_;
};

struct Named {
  std::string name;
  Process process;
};

bool all_positive(const Process& x) {
  for (Time t = 0; t <= x.horizon(); ++t) {
    for (AtomIndex a = 0; a < x.atoms(); ++a) {
      for (std::size_t k = 0; k < x.dim(); ++k) {
        if (!is_positive(x(a, t, k))) return false;
      }
    }
  }
  return true;
}

Process alive_part(const Process& v, const EnlargedModel& model) {
  Process inc = increments(v);
  for (Time t = 0; t <= v.horizon(); ++t) {
    for (AtomIndex a = 0; a < v.atoms(); ++a) {
      if (is_positive(model.bundle.z_tilde(a, t))) continue;
      for (std::size_t k = 0; k < v.dim(); ++k) inc(a, t, k) = 0;
    }
  }
  return cumulate(inc);
}

Jump centered(const Jump& xi, Time T, const EnlargedModel& model) {
  Jump out = xi;
  for (auto& comp : out) {
    const AtomVector mean = condexp(comp, model.f.at(T - 1), model.prob());
    for (std::size_t a = 0; a < comp.size(); ++a) comp[a] -= mean[a];
  }
  return out;
}

Process martingale_part(const Process& s, const Filtration& f, std::span<const Rational> w) {
  Process out = doob(s, f, w).martingale;
  for (Time t = 0; t <= s.horizon(); ++t) {
    for (AtomIndex a = 0; a < s.atoms(); ++a) {
      for (std::size_t k = 0; k < s.dim(); ++k) out(a, t, k) += s(a, 0, k);
    }
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

const char* suite_name(Suite suite) {
  switch (suite) {
    case Suite::kIdentities: return "identities";
    case Suite::kDeflator: return "deflator";
    case Suite::kEquivalences: return "equivalences";
  }
  return "";
}

std::vector<Check> identity_checks(const EnlargedModel& model, const Process& s,
                                   const Process& martingale, Rng& rng, Json* detail) {
  Recorder rec(Suite::kIdentities, detail);
  const auto& b = model.bundle;
  const auto w = model.prob();
  const std::size_t n = model.space.size();

  bool decomposition = true;
  for (Time t = 1; t <= model.horizon(); ++t) {
    for (AtomIndex a = 0; a < n; ++a) {
      if (b.z_tilde(a, t) != b.z(a, t - 1) + b.m.increment(a, t)) decomposition = false;
    }
  }
  rec.add("z_tilde_decomposition", decomposition);

  const std::vector<Named> finite_variation = {
      {"D_oF", b.d_oF},
      {"S", s},
      {"[m,m]", covariation(b.m, b.m)},
      {"V_random", random_adapted(model.f, n, 1, rng)}};
  for (const auto& [name, v] : finite_variation) {
    rec.add("g_compensator_before_tau/" + name,
            g_compensator_of_stopped(v, model) == dual_predictable(stop(v, model.tau), model.g, w));
  }
  for (const auto& [name, v] : finite_variation) {
    const FCompensatorCheck general = f_compensator_from_g(v, model);
    const FCompensatorCheck alive = f_compensator_from_g(alive_part(v, model), model);
    const bool special =
        alive.identity_holds && alive.special_case_applicable && alive.special_case_holds;
    rec.add("g_compensator_through_f/" + name,
            general.identity_holds && general.special_case_holds && special,
            {{"identity", general.identity_holds}, {"special_case_on_alive_part", special}});
  }

  const std::vector<Named> martingales = {{"M", martingale}, {"m", b.m}};
  for (const auto& [name, m] : martingales) {
    rec.add("projection_transfer/" + name, predictable_projection_transfer(m, model).holds);
  }
  for (const auto& [name, m] : martingales) {
    rec.add("hat_martingale/" + name, is_martingale(hat_martingale(m, model), model.g, w));
  }
  return rec.take();
}

std::vector<Check> deflator_checks(const EnlargedModel& model, const Process& martingale,
                                   Json* detail) {
  Recorder rec(Suite::kDeflator, detail);
  const auto w = model.prob();
  const DeflatorBundle d = build_l(model);

  rec.add("jumps_positive", d.jumps_positive());
  rec.add("closed_form", d.closed_form_matches && d.l == d.l_closed_form);
  rec.add("positive_supermartingale",
          all_positive(d.e_def) && is_supermartingale(d.e_def, model.g, w));

  // E[L, M^]_T = E[(-K) . [m^, M^]]_T
  const std::vector<Named> martingales = {{"M", martingale}, {"m", model.bundle.m}};
  for (const auto& [name, m] : martingales) {
    const Process m_hat = hat_martingale(m, model);
    bool holds = true;
    for (std::size_t k = 0; k < m_hat.dim(); ++k) {
      Rational lhs = 0, rhs = 0;
      for (AtomIndex a = 0; a < model.space.size(); ++a) {
        for (Time t = 1; t <= model.horizon(); ++t) {
          const Rational dm = m_hat.increment(a, t, k);
          lhs += w[a] * d.l.increment(a, t) * dm;
          rhs -= w[a] * d.k(a, t) * d.m_hat.increment(a, t) * dm;
        }
      }
      holds = holds && lhs == rhs;
    }
    rec.add("adjoint_identity/" + name, holds);
  }

  if (model.bundle.thin_empty()) {
    const DeflatorCheck check =
        verify_deflator(d.e_def, stop(martingale, model.tau), model.g, w);
    rec.add("verify_deflator", check.ok);
  }
  return rec.take();
}

std::vector<Check> equivalence_checks(const EnlargedModel& model, const Process& s,
                                      const Process& martingale, Rng& rng,
                                      std::size_t main5_count, Json* detail) {
  Recorder rec(Suite::kEquivalences, detail);
  const Time horizon = model.horizon();

  for (Time T = 1; T <= horizon; ++T) {
    const std::string at = "/T=" + std::to_string(T);
    const Jump xi = jump_at(s, T);

    const Main3Report main3 = check_main3(single_jump_price(xi, T, model), T, model);
    rec.add("main3" + at, main3.consistent(),
            {{"nupbr_G_stopped", main3.nupbr_g_stopped},
             {"nupbr_F_cut", main3.nupbr_f_cut},
             {"nupbr_F_QT", main3.nupbr_f_qt},
             {"nupbr_F_Qtilde", main3.nupbr_f_qtilde}});

    const CrucialLemmaReport lemma =
        check_cruciallemma1(single_jump(centered(xi, T, model), T, horizon), T, model);
    rec.add("cruciallemma1" + at, lemma.consistent(),
            {{"martingale_under_QT", lemma.martingale_under_qt},
             {"thin_conditional_zero", lemma.thin_conditional_zero},
             {"stopped_martingale_under_QG", lemma.stopped_martingale_under_qg}});

    const bool inclusion = check_equation1111(T, model);
    const bool witness_nupbr =
        certify_nupbr(stop(witness_martingale(T, model), model.tau), model.g, model.space).verdict;
    rec.add("equation1111" + at, inclusion == witness_nupbr,
            {{"inclusion_holds", inclusion}, {"witness_nupbr_G", witness_nupbr}});
  }

  const std::vector<Named> prices = {{"S", s}, {"M", martingale}};
  for (const auto& [name, x] : prices) {
    if (!certify_nupbr(x, model.f, model.space).verdict) continue;
    const bool condition = check_main4_all(x, model);
    const bool nupbr_g = certify_nupbr(stop(x, model.tau), model.g, model.space).verdict;
    rec.add("main4/" + name, condition == nupbr_g,
            {{"condition_all_delta", condition}, {"nupbr_G_stopped", nupbr_g}});
  }

  const Main5Report main5 = main5_suite(model, main5_count, rng);
  Json main5_detail = {{"thin_empty", main5.thin_empty},
                       {"martingales_tested", main5.martingales_tested},
                       {"martingales_preserved", main5.martingales_preserved}};
  if (main5.witness_time) {
    main5_detail["witness_time"] = *main5.witness_time;
    main5_detail["witness_nupbr_G"] = *main5.witness_nupbr_g;
  }
  rec.add("main5", main5.consistent(), std::move(main5_detail));

  const auto [accessible, quasi_left] = decompose_accessible(s);
  const bool whole = certify_nupbr(s, model.f, model.space).verdict;
  const bool parts = certify_nupbr(accessible, model.f, model.space).verdict &&
                     certify_nupbr(quasi_left, model.f, model.space).verdict;
  rec.add("nupbr_decomposed", whole == parts);
  return rec.take();
}

Json theorems_report(const Scenario& sc, std::uint64_t seed, std::size_t main5_count,
                     bool& all_consistent) {
  const EnlargedModel model = EnlargedModel::build(sc.space, sc.f, sc.tau);
  const Process martingale = martingale_part(sc.s, sc.f, model.prob());
  Rng rng(seed);
  Json identities = Json::object(), deflator = Json::object(), equivalences = Json::object();
  std::vector<Check> checks = identity_checks(model, sc.s, martingale, rng, &identities);
  for (auto& c : deflator_checks(model, martingale, &deflator)) checks.push_back(std::move(c));
  for (auto& c : equivalence_checks(model, sc.s, martingale, rng, main5_count, &equivalences)) {
    checks.push_back(std::move(c));
  }
  all_consistent = true;
  for (const auto& c : checks) all_consistent = all_consistent && c.passed;

  Json out;
  out["nupbr_F"] = certify_nupbr(sc.s, sc.f, sc.space).verdict;
  out["nupbr_G_stopped"] = certify_nupbr(stop(sc.s, sc.tau), model.g, sc.space).verdict;
  out["thin_set_empty"] = model.bundle.thin_empty();
  out["equivalences"] = std::move(equivalences);
  out["projection_identities"] = std::move(identities);
  out["deflator"] = std::move(deflator);
  out["consistent"] = all_consistent;
  return out;
}

std::uint64_t instance_seed(std::uint64_t seed, std::size_t index) {
  return splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(index));
}

CampaignResult run_campaign(std::size_t instances, std::uint64_t seed, std::size_t threads,
                            std::size_t main5_count) {
  std::vector<Json> rows(instances);
  std::vector<std::size_t> failed(instances, 0);

  auto run_one = [&](std::size_t i) {
    const std::uint64_t s = instance_seed(seed, i);
    Json row;
    row["index"] = i;
    row["seed"] = s;
    Json failures = Json::array();
    std::size_t checks = 0;
    try {
      Rng rng(s);
      Instance inst = random_instance(rng);
      row["atoms"] = inst.space.size();
      row["horizon"] = inst.space.horizon();
      row["dim"] = inst.s.dim();
      const EnlargedModel model = EnlargedModel::build(inst.space, inst.f, inst.tau);
      row["thin_set_empty"] = model.bundle.thin_empty();
      std::vector<Check> all = identity_checks(model, inst.s, inst.martingale, rng);
      for (auto& c : deflator_checks(model, inst.martingale)) all.push_back(std::move(c));
      for (auto& c : equivalence_checks(model, inst.s, inst.martingale, rng, main5_count)) {
        all.push_back(std::move(c));
      }
      checks = all.size();
      for (const auto& c : all) {
        if (!c.passed) failures.push_back(std::string(suite_name(c.suite)) + ":" + c.name);
      }
    } catch (const std::exception& e) {
      failures.push_back(std::string("error:") + e.what());
    }
    row["checks"] = checks;
    failed[i] = failures.size();
    row["failed"] = std::move(failures);
    rows[i] = std::move(row);
  };

  threads = std::max<std::size_t>(1, std::min(threads, instances));
  if (threads == 1) {
    for (std::size_t i = 0; i < instances; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < threads; ++k) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < instances; i = next++) run_one(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  CampaignResult result;
  Json results = Json::array();
  std::size_t total_checks = 0;
  for (std::size_t i = 0; i < instances; ++i) {
    result.violations += failed[i];
    total_checks += rows[i]["checks"].get<std::size_t>();
    results.push_back(std::move(rows[i]));
  }
  result.report["seed"] = seed;
  result.report["instances"] = instances;
  result.report["checks"] = total_checks;
  result.report["violations"] = result.violations;
  result.report["results"] = std::move(results);
  return result;
}

}  // namespace azema
