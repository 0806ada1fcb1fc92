#include "azema/deflator.hpp"

#include <algorithm>

#include "azema/lp.hpp"
#include "azema/projections.hpp"

namespace azema {

Process optional_integral(const Process& h, const Process& n, const Filtration& filt,
                          std::span<const Rational> weights) {
  if (!is_martingale(n, filt, weights)) {
    throw PreconditionError("optional_integral: integrator is not a martingale");
  }
  const Process raw = hadamard(h, increments(n));
  const Process compensator = predictable_projection(raw, filt, weights);
  return cumulate(raw - compensator);
}

Process stoch_exp(const Process& n) {
  Process out(n.atoms(), n.horizon(), n.dim(), 1);
  for (Time t = 1; t <= n.horizon(); ++t) {
    for (AtomIndex w = 0; w < n.atoms(); ++w) {
      for (std::size_t k = 0; k < n.dim(); ++k) {
        out(w, t, k) = out(w, t - 1, k) * (1 + n.increment(w, t, k));
      }
    }
  }
  return out;
}

bool DeflatorBundle::jumps_positive() const {
  for (Time t = 1; t <= l.horizon(); ++t) {
    for (AtomIndex w = 0; w < l.atoms(); ++w) {
      if (sgn(1 + l.increment(w, t)) <= 0) return false;
    }
  }
  return true;
}

DeflatorBundle build_l(const EnlargedModel& model) {
  const std::size_t n = model.space.size();
  const Time horizon = model.horizon();
  const auto& b = model.bundle;

  DeflatorBundle d;
  d.m_hat = hat_martingale(b.m, model);
  const Process bracket = angle_bracket(b.m, b.m, model.f, model.prob());

  AtomVector dead(n);
  d.p_thin = Process(n, horizon);
  for (Time t = 1; t <= horizon; ++t) {
    for (AtomIndex w = 0; w < n; ++w) dead[w] = is_zero(b.z_tilde(w, t)) ? 1 : 0;
    d.p_thin.set_slice(t, condexp(dead, model.f.before(t), model.prob()));
  }
  d.p_thin.set_predictable_flag(true);

  d.k = Process(n, horizon);
  Process closed_inc(n, horizon);
  Process vg_inc(n, horizon);
  for (Time t = 1; t <= horizon; ++t) {
    for (AtomIndex w = 0; w < n; ++w) {
      if (!model.before_tau(w, t)) continue;
      const Rational z2 = b.z(w, t - 1) * b.z(w, t - 1);
      const Rational& zt = b.z_tilde(w, t);
      d.k(w, t) = z2 / (z2 + bracket.increment(w, t)) / zt;
      closed_inc(w, t) = -b.m.increment(w, t) / zt + d.p_thin(w, t);
      vg_inc(w, t) = d.p_thin(w, t);
    }
  }
  d.l = Rational(-1) * optional_integral(d.k, d.m_hat, model.g, model.prob());
  d.l_closed_form = cumulate(closed_inc);
  d.v_g = cumulate(vg_inc);
  d.v_g.set_predictable_flag(true);
  d.closed_form_matches = d.l == d.l_closed_form;
  d.e_def = stoch_exp(d.l - d.v_g);
  return d;
}

SupermartingaleDeflator build_supermartingale_deflator(const Process& s, const Process& theta,
                                                       const DeflatorBundle& deflator,
                                                       const EnlargedModel& model) {
  require_adapted(s, model.f, model.space, "S");
  if (theta.dim() != s.dim()) {
    throw InputError("schema", "theta", "strategy and price dimensions differ");
  }
  const std::size_t n = model.space.size();
  const Process s_tau = stop(s, model.tau);
  Process dx(n, model.horizon());
  for (Time t = 1; t <= model.horizon(); ++t) {
    for (AtomIndex w = 0; w < n; ++w) {
      Rational gain = 0;
      for (std::size_t k = 0; k < s.dim(); ++k) gain += theta(w, t, k) * s_tau.increment(w, t, k);
      if (sgn(1 + gain) < 0) {
        throw InputError("inadmissible", "theta[" + model.space.atom(w) + "][" +
                                             std::to_string(t) + "]",
                         "strategy loses more than the available wealth");
      }
      const Rational base = deflator.l.increment(w, t) - deflator.v_g.increment(w, t);
      dx(w, t) = base + gain * (1 + base);
    }
  }
  SupermartingaleDeflator out;
  out.process = stoch_exp(cumulate(dx));
  out.positive = true;
  for (Time t = 0; t <= model.horizon(); ++t) {
    for (AtomIndex w = 0; w < n; ++w) {
      if (!is_positive(out.process(w, t))) out.positive = false;
    }
  }
  out.supermartingale = is_supermartingale(out.process, model.g, model.prob());
  return out;
}

DeflatorCheck verify_deflator(const Process& y, const Process& s_stopped, const Filtration& filt,
                              std::span<const Rational> weights) {
  DeflatorCheck check;
  const std::size_t d = s_stopped.dim();
  for (Time t = 1; t <= s_stopped.horizon(); ++t) {
    const Partition& children = filt.at(t);
    for (const auto& node : filt.at(t - 1).blocks()) {
      Rational node_mass = 0;
      for (AtomIndex w : node) node_mass += weights[w];
      if (is_zero(node_mass)) continue;

      // maximize sum_c p_c Y_c (1 + theta . dS_c) / p_node  s.t.  1 + theta . dS_c >= 0.
      lp::Problem problem(d);
      problem.free.assign(d, true);
      Rational constant = 0;
      std::vector<std::size_t> seen;
      for (AtomIndex w : node) {
        const std::size_t c = children.block_of(w);
        if (std::find(seen.begin(), seen.end(), c) != seen.end()) continue;
        seen.push_back(c);
        const Block& child = children.blocks()[c];
        Rational mass = 0;
        for (AtomIndex v : child) mass += weights[v];
        if (is_zero(mass)) continue;
        const AtomIndex rep = child.front();
        const Rational scale = mass * y(rep, t) / node_mass;
        constant += scale;
        std::vector<Rational> row(d);
        for (std::size_t k = 0; k < d; ++k) {
          const Rational ds = s_stopped.increment(rep, t, k);
          problem.objective[k] += scale * ds;
          row[k] = -ds;
        }
        problem.add_row(std::move(row), lp::Relation::kLessEqual, 1);
      }
      const lp::Solution sol = lp::solve(problem);
      const Rational& y_prev = y(node.front(), t - 1);
      auto record = [&](bool unbounded, Rational ratio, std::vector<Rational> theta) {
        const bool worse = !check.time.has_value() ||
                           (unbounded && !check.unbounded) ||
                           (!unbounded && !check.unbounded && ratio > check.ratio);
        check.ok = false;
        if (!worse) return;
        check.time = t;
        check.node = node;
        check.unbounded = unbounded;
        check.ratio = std::move(ratio);
        check.theta = std::move(theta);
      };
      if (sol.status == lp::Status::kUnbounded) {
        record(true, 0, sol.ray);
      } else if (sol.status == lp::Status::kOptimal) {
        const Rational value = constant + sol.value;
        if (value > y_prev) record(false, value / y_prev, sol.x);
      }
    }
  }
  return check;
}

}  // namespace azema
