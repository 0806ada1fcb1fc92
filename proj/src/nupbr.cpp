#include "azema/nupbr.hpp"

#include <algorithm>

#include "azema/lp.hpp"
#include "azema/projections.hpp"

namespace azema {

std::optional<std::vector<Rational>> relative_interior_weights(
    const std::vector<std::vector<Rational>>& points) {
  const std::size_t n = points.size();
  if (n == 0) return std::vector<Rational>{};
  const std::size_t d = points.front().size();
  const std::size_t eps = n;

  lp::Problem problem(n + 1);
  problem.objective[eps] = 1;
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<Rational> row(n + 1);
    for (std::size_t i = 0; i < n; ++i) row[i] = points[i][k];
    problem.add_row(std::move(row), lp::Relation::kEqual, 0);
  }
  std::vector<Rational> total(n + 1, 1);
  total[eps] = 0;
  problem.add_row(std::move(total), lp::Relation::kEqual, 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> row(n + 1);
    row[i] = 1;
    row[eps] = -1;
    problem.add_row(std::move(row), lp::Relation::kGreaterEqual, 0);
  }
  const lp::Solution sol = lp::solve(problem);
  if (sol.status != lp::Status::kOptimal || !is_positive(sol.value)) return std::nullopt;
  return std::vector<Rational>(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(n));
}

std::optional<std::vector<Rational>> arbitrage_direction(
    const std::vector<std::vector<Rational>>& points) {
  const std::size_t n = points.size();
  if (n == 0) return std::nullopt;
  const std::size_t d = points.front().size();

  // Variables: theta (free, d) then gains s_i in [0, 1].
  lp::Problem problem(d + n);
  for (std::size_t k = 0; k < d; ++k) problem.free[k] = true;
  for (std::size_t i = 0; i < n; ++i) {
    problem.objective[d + i] = 1;
    std::vector<Rational> gain(d + n);
    for (std::size_t k = 0; k < d; ++k) gain[k] = points[i][k];
    gain[d + i] = -1;
    problem.add_row(std::move(gain), lp::Relation::kEqual, 0);
    std::vector<Rational> cap(d + n);
    cap[d + i] = 1;
    problem.add_row(std::move(cap), lp::Relation::kLessEqual, 1);
  }
  const lp::Solution sol = lp::solve(problem);
  if (sol.status != lp::Status::kOptimal || !is_positive(sol.value)) return std::nullopt;

  std::vector<Rational> theta(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(d));
  Rational best = 0;
  for (const auto& p : points) {
    Rational g = 0;
    for (std::size_t k = 0; k < d; ++k) g += theta[k] * p[k];
    best = std::max(best, g);
  }
  for (auto& v : theta) v /= best;
  return theta;
}

namespace {

struct NodeView {
  std::vector<Block> children;
  std::vector<AtomIndex> reps;
};

// Positive-weight children (blocks of `fine`) of `node`, in block order.
NodeView children_of(const Block& node, const Partition& fine, std::span<const Rational> weights) {
  NodeView view;
  std::vector<std::size_t> seen;
  for (AtomIndex w : node) {
    const std::size_t c = fine.block_of(w);
    if (std::find(seen.begin(), seen.end(), c) != seen.end()) continue;
    seen.push_back(c);
    const Block& child = fine.blocks()[c];
    Rational mass = 0;
    for (AtomIndex v : child) mass += weights[v];
    if (is_zero(mass)) continue;
    view.children.push_back(child);
    view.reps.push_back(child.front());
  }
  return view;
}

Rational mass_of(const Block& block, std::span<const Rational> weights) {
  Rational mass = 0;
  for (AtomIndex w : block) mass += weights[w];
  return mass;
}

std::vector<Rational> increment_vector(const Process& x, AtomIndex w, Time t) {
  std::vector<Rational> out(x.dim());
  for (std::size_t k = 0; k < x.dim(); ++k) out[k] = x.increment(w, t, k);
  return out;
}

AtomVector scaled(std::span<const Rational> prob, const AtomVector& density) {
  AtomVector out(prob.size());
  for (std::size_t w = 0; w < prob.size(); ++w) out[w] = prob[w] * density[w];
  return out;
}

}  // namespace

CertResult certify_nupbr(const Process& x, const Filtration& filt, const FiniteSpace& space,
                         std::optional<std::span<const Rational>> weights_opt) {
  require_adapted(x, filt, space, "X");
  const std::span<const Rational> weights = weights_opt.value_or(space.prob());
  CertResult result;
  result.verdict = true;
  for (Time t = 1; t <= x.horizon(); ++t) {
    for (const auto& node : filt.at(t - 1).blocks()) {
      if (is_zero(mass_of(node, weights))) continue;
      NodeView view = children_of(node, filt.at(t), weights);
      std::vector<std::vector<Rational>> points;
      for (AtomIndex rep : view.reps) points.push_back(increment_vector(x, rep, t));
      auto lambda = relative_interior_weights(points);
      if (lambda) {
        result.deflator.push_back({t, node, std::move(view.children), std::move(*lambda)});
        continue;
      }
      auto theta = arbitrage_direction(points);
      if (!theta) throw StructuralError("node fails relative-interior test without arbitrage");
      result.verdict = false;
      result.deflator.clear();
      result.arbitrage = ArbitrageWitness{t, node, std::move(*theta)};
      return result;
    }
  }
  return result;
}

AtomVector martingale_measure(const CertResult& cert, const Filtration& filt,
                              std::span<const Rational> weights) {
  const std::size_t n = weights.size();
  AtomVector q(n);
  for (const auto& block : filt.at(0).blocks()) {
    const Rational mass = mass_of(block, weights);
    for (AtomIndex w : block) q[w] = mass;
  }
  std::vector<AtomVector> factor(static_cast<std::size_t>(filt.horizon() + 1), AtomVector(n));
  for (const auto& node : cert.deflator) {
    for (std::size_t c = 0; c < node.children.size(); ++c) {
      for (AtomIndex w : node.children[c]) factor[node.time][w] = node.weights[c];
    }
  }
  for (Time t = 1; t <= filt.horizon(); ++t) {
    for (AtomIndex w = 0; w < n; ++w) q[w] *= factor[t][w];
  }
  for (const auto& block : filt.at(filt.horizon()).blocks()) {
    const Rational mass = mass_of(block, weights);
    for (AtomIndex w : block) {
      q[w] = is_zero(mass) ? Rational(0) : Rational(q[w] * weights[w] / mass);
    }
  }
  return q;
}

bool admissible_wealth_bounded(const Process& x, const Filtration& filt,
                               std::span<const Rational> weights) {
  const Process one = constant_process(x.atoms(), x.horizon(), 1);
  return !verify_deflator(one, x, filt, weights).unbounded;
}

Process single_jump(const Jump& xi, Time T, Time horizon) {
  const std::size_t n = xi.front().size();
  Process out(n, horizon, xi.size());
  for (Time t = T; t <= horizon; ++t) {
    for (AtomIndex w = 0; w < n; ++w) {
      for (std::size_t k = 0; k < xi.size(); ++k) out(w, t, k) = xi[k][w];
    }
  }
  return out;
}

Jump jump_at(const Process& s, Time T) {
  Jump xi(s.dim(), AtomVector(s.atoms()));
  for (std::size_t k = 0; k < s.dim(); ++k) {
    for (AtomIndex w = 0; w < s.atoms(); ++w) xi[k][w] = s.increment(w, T, k);
  }
  return xi;
}

Process single_jump_price(const Jump& xi, Time T, const EnlargedModel& model) {
  Jump cut = xi;
  for (auto& comp : cut) {
    for (AtomIndex w = 0; w < comp.size(); ++w) {
      if (!is_positive(model.bundle.z(w, T - 1))) comp[w] = 0;
    }
  }
  return single_jump(cut, T, model.horizon());
}

namespace {

void require_single_jump(const Process& s, Time T, const EnlargedModel& model) {
  if (T < 1 || T > model.horizon()) throw std::invalid_argument("jump time outside [1, horizon]");
  require_adapted(s, model.f, model.space, "S");
  for (Time t = 0; t <= model.horizon(); ++t) {
    for (AtomIndex w = 0; w < s.atoms(); ++w) {
      for (std::size_t k = 0; k < s.dim(); ++k) {
        const bool ok = t < T ? is_zero(s(w, t, k)) : s(w, t, k) == s(w, T, k);
        if (!ok) {
          throw InputError("not_single_jump", "S[" + model.space.atom(w) + "][" + std::to_string(t) + "]",
                           "process is not of the form xi I_[T, inf)");
        }
      }
    }
  }
}

}  // namespace

Main3Report check_main3(const Process& s, Time T, const EnlargedModel& model) {
  require_single_jump(s, T, model);
  for (AtomIndex w = 0; w < s.atoms(); ++w) {
    for (std::size_t k = 0; k < s.dim(); ++k) {
      if (!is_positive(model.bundle.z(w, T - 1)) && !is_zero(s(w, T, k))) {
        throw InputError("not_single_jump", "S[" + model.space.atom(w) + "]",
                         "jump must vanish on {Z_{T-} = 0}");
      }
    }
  }
  const auto prob = model.prob();
  Jump cut = jump_at(s, T);
  for (auto& comp : cut) {
    for (AtomIndex w = 0; w < comp.size(); ++w) {
      if (!is_positive(model.bundle.z_tilde(w, T))) comp[w] = 0;
    }
  }
  const QMeasures q = q_measures(T, model);
  const AtomVector qt = scaled(prob, q.q_t);
  const AtomVector qtilde = scaled(prob, q.q_tilde);

  Main3Report report;
  report.nupbr_g_stopped = certify_nupbr(stop(s, model.tau), model.g, model.space).verdict;
  report.nupbr_f_cut =
      certify_nupbr(single_jump(cut, T, model.horizon()), model.f, model.space).verdict;
  report.nupbr_f_qt = certify_nupbr(s, model.f, model.space, qt).verdict;
  report.nupbr_f_qtilde = certify_nupbr(s, model.f, model.space, qtilde).verdict;
  return report;
}

bool check_equation1111(Time T, const EnlargedModel& model) {
  for (AtomIndex w = 0; w < model.space.size(); ++w) {
    if (is_zero(model.bundle.z_tilde(w, T)) && is_positive(model.bundle.z(w, T - 1))) return false;
  }
  return true;
}

Process witness_martingale(Time T, const EnlargedModel& model) {
  const std::size_t n = model.space.size();
  AtomVector dead(n);
  for (AtomIndex w = 0; w < n; ++w) dead[w] = is_zero(model.bundle.z_tilde(w, T)) ? 1 : 0;
  const AtomVector p = condexp(dead, model.f.before(T), model.prob());
  Jump xi(1, AtomVector(n));
  for (AtomIndex w = 0; w < n; ++w) xi[0][w] = dead[w] - p[w];
  return single_jump(xi, T, model.horizon());
}

bool check_main4(const Process& s, const EnlargedModel& model, const Rational& delta) {
  if (!certify_nupbr(s, model.f, model.space).verdict) {
    throw PreconditionError("price process fails NUPBR(F)");
  }
  const auto prob = model.prob();
  for (Time t = 1; t <= model.horizon(); ++t) {
    for (const auto& node : model.f.at(t - 1).blocks()) {
      if (model.bundle.z(node.front(), t - 1) < delta) continue;
      const NodeView view = children_of(node, model.f.at(t), prob);
      std::vector<std::vector<Rational>> points;
      for (AtomIndex rep : view.reps) {
        if (is_positive(model.bundle.z_tilde(rep, t))) points.push_back(increment_vector(s, rep, t));
      }
      if (!relative_interior_weights(points)) return false;
    }
  }
  return true;
}

std::vector<Rational> main4_deltas(const EnlargedModel& model, std::span<const Rational> extra) {
  std::vector<Rational> deltas;
  for (Time t = 1; t <= model.horizon(); ++t) {
    for (AtomIndex w = 0; w < model.space.size(); ++w) {
      const Rational& z = model.bundle.z(w, t - 1);
      if (is_positive(z)) deltas.push_back(z);
    }
  }
  for (const auto& d : extra) {
    if (is_positive(d)) deltas.push_back(d);
  }
  std::sort(deltas.begin(), deltas.end());
  deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
  return deltas;
}

bool check_main4_all(const Process& s, const EnlargedModel& model, std::span<const Rational> extra) {
  for (const auto& delta : main4_deltas(model, extra)) {
    if (!check_main4(s, model, delta)) return false;
  }
  return true;
}

bool check_main5(const EnlargedModel& model) { return model.bundle.thin_empty(); }

Main5Report main5_suite(const EnlargedModel& model, std::size_t count, Rng& rng) {
  Main5Report report;
  report.thin_empty = check_main5(model);
  if (report.thin_empty) {
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t dim = static_cast<std::size_t>(rng.uniform(1, 2));
      const Process m = random_martingale(model.f, model.prob(), dim, rng);
      ++report.martingales_tested;
      if (certify_nupbr(stop(m, model.tau), model.g, model.space).verdict) {
        ++report.martingales_preserved;
      }
    }
    return report;
  }
  const Time T = model.bundle.thin_times().front();
  report.witness_time = T;
  const Process w = witness_martingale(T, model);
  report.witness_nupbr_g = certify_nupbr(stop(w, model.tau), model.g, model.space).verdict;
  return report;
}

std::pair<Process, Process> decompose_accessible(const Process& s) {
  return {s, Process(s.atoms(), s.horizon(), s.dim())};
}

CrucialLemmaReport check_cruciallemma1(const Process& m, Time T, const EnlargedModel& model) {
  require_single_jump(m, T, model);
  const auto prob = model.prob();
  const std::size_t n = model.space.size();
  const Jump xi = jump_at(m, T);
  for (const auto& comp : xi) {
    for (const auto& v : condexp(comp, model.f.before(T), prob)) {
      if (!is_zero(v)) throw PreconditionError("E[xi | F_{T-}] does not vanish");
    }
  }
  const QMeasures q = q_measures(T, model);

  CrucialLemmaReport report;
  report.martingale_under_qt = is_martingale(m, model.f, scaled(prob, q.q_t));

  report.thin_conditional_zero = true;
  for (const auto& comp : xi) {
    AtomVector on_thin(n);
    for (AtomIndex w = 0; w < n; ++w) {
      if (model.bundle.thin[T][w]) on_thin[w] = comp[w];
    }
    for (const auto& v : condexp(on_thin, model.f.before(T), prob)) {
      if (!is_zero(v)) report.thin_conditional_zero = false;
    }
  }

  const AtomVector u_norm = condexp(q.u_g, model.g.before(T), prob);
  AtomVector qg(n);
  for (AtomIndex w = 0; w < n; ++w) qg[w] = prob[w] * q.u_g[w] / u_norm[w];
  report.stopped_martingale_under_qg = is_martingale(stop(m, model.tau), model.g, qg);
  return report;
}

}  // namespace azema
