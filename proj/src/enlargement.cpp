#include "azema/enlargement.hpp"

#include <stdexcept>

#include "azema/projections.hpp"

namespace azema {

Filtration enlarge(const Filtration& filt, const RandomTime& tau) {
  std::vector<Partition> parts;
  for (Time t = 0; t <= filt.horizon(); ++t) {
    const Partition& base = filt.at(t);
    std::vector<Block> blocks;
    for (const auto& block : base.blocks()) {
      for (Time s = 0; s <= t; ++s) {
        Block piece;
        for (AtomIndex w : block) {
          if (tau.value[w] == s) piece.push_back(w);
        }
        if (!piece.empty()) blocks.push_back(std::move(piece));
      }
      Block alive;
      for (AtomIndex w : block) {
        if (tau.value[w] > t) alive.push_back(w);
      }
      if (!alive.empty()) blocks.push_back(std::move(alive));
    }
    parts.emplace_back(std::move(blocks), base.atom_count());
  }
  return Filtration(std::move(parts));
}

bool AzemaBundle::thin_empty() const {
  for (const auto& row : thin) {
    for (bool b : row) {
      if (b) return false;
    }
  }
  return true;
}

std::vector<Time> AzemaBundle::thin_times() const {
  std::vector<Time> out;
  for (std::size_t t = 0; t < thin.size(); ++t) {
    for (bool b : thin[t]) {
      if (b) {
        out.push_back(static_cast<Time>(t));
        break;
      }
    }
  }
  return out;
}

AzemaBundle azema(const FiniteSpace& space, const Filtration& filt, const RandomTime& tau) {
  const std::size_t n = space.size();
  const Time horizon = space.horizon();
  const auto prob = space.prob();

  AzemaBundle b;
  b.z = Process(n, horizon);
  b.z_tilde = Process(n, horizon);
  b.d_oF = Process(n, horizon);

  AtomVector alive(n), alive_or_now(n), now(n);
  for (Time t = 0; t <= horizon; ++t) {
    for (AtomIndex w = 0; w < n; ++w) {
      alive[w] = tau.value[w] > t ? 1 : 0;
      alive_or_now[w] = tau.value[w] >= t ? 1 : 0;
      now[w] = tau.value[w] == t ? 1 : 0;
    }
    b.z.set_slice(t, condexp(alive, filt.at(t), prob));
    b.z_tilde.set_slice(t, condexp(alive_or_now, filt.at(t), prob));
    // D^{o,F} jumps by P(tau = t | F_t), including the mass at t = 0.
    const AtomVector jump = condexp(now, filt.at(t), prob);
    for (AtomIndex w = 0; w < n; ++w) {
      b.d_oF(w, t) = (t == 0 ? Rational(0) : b.d_oF(w, t - 1)) + jump[w];
    }
  }
  b.m = b.z + b.d_oF;

  b.thin.assign(static_cast<std::size_t>(horizon + 1), std::vector<bool>(n, false));
  for (Time t = 1; t <= horizon; ++t) {
    for (AtomIndex w = 0; w < n; ++w) {
      b.thin[t][w] = is_zero(b.z_tilde(w, t)) && is_positive(b.z(w, t - 1));
    }
  }

  b.r_hat.value.assign(n, kInfinity);
  b.r_hat0.value.assign(n, kInfinity);
  b.r_tilde0.value.assign(n, kInfinity);
  for (AtomIndex w = 0; w < n; ++w) {
    for (Time t = 1; t <= horizon; ++t) {
      if (is_zero(b.z(w, t - 1))) {
        b.r_hat.value[w] = t;
        break;
      }
    }
    const Time r = b.r_hat.value[w];
    if (r == kInfinity) continue;
    if (is_zero(b.z(w, r - 1))) b.r_hat0.value[w] = r;
    if (is_zero(b.z_tilde(w, r))) b.r_tilde0.value[w] = r;
  }
  return b;
}

EnlargedModel EnlargedModel::build(FiniteSpace space, Filtration f, RandomTime tau) {
  if (tau.value.size() != space.size()) {
    throw InputError("schema", "tau", "random time must assign a value to every atom");
  }
  if (f.horizon() != space.horizon()) {
    throw InputError("schema", "filtration", "filtration length does not match the horizon");
  }
  for (AtomIndex w = 0; w < space.size(); ++w) {
    const Time v = tau.value[w];
    if (v != kInfinity && (v < 0 || v > space.horizon())) {
      throw InputError("schema", "tau." + space.atom(w), "random time outside the grid");
    }
  }
  Filtration g = enlarge(f, tau);
  AzemaBundle bundle = azema(space, f, tau);
  return EnlargedModel{std::move(space), std::move(f), std::move(tau), std::move(g),
                       std::move(bundle)};
}

Process before_tau_indicator(const EnlargedModel& model) {
  Process out(model.space.size(), model.horizon());
  for (Time t = 1; t <= model.horizon(); ++t) {
    for (AtomIndex w = 0; w < model.space.size(); ++w) {
      out(w, t) = model.before_tau(w, t) ? 1 : 0;
    }
  }
  return out;
}

namespace {

const Rational& z_before(const EnlargedModel& model, AtomIndex w, Time t) {
  const Rational& z = model.bundle.z(w, t - 1);
  if (!is_positive(z)) {
    throw StructuralError("Z_{t-1} vanishes inside ]0,tau] at atom '" + model.space.atom(w) +
                          "', time " + std::to_string(t));
  }
  return z;
}

bool equal_on_before_tau(const Process& a, const Process& b, const EnlargedModel& model) {
  for (Time t = 1; t <= model.horizon(); ++t) {
    for (AtomIndex w = 0; w < model.space.size(); ++w) {
      if (!model.before_tau(w, t)) continue;
      for (std::size_t k = 0; k < a.dim(); ++k) {
        if (a(w, t, k) != b(w, t, k)) return false;
      }
    }
  }
  return true;
}

void require_f_martingale(const Process& m, const EnlargedModel& model) {
  require_adapted(m, model.f, model.space, "M");
  if (!is_martingale(m, model.f, model.prob())) {
    throw PreconditionError("input process is not an F-martingale");
  }
}

}  // namespace

Process g_compensator_of_stopped(const Process& v, const EnlargedModel& model) {
  require_adapted(v, model.f, model.space, "V");
  const std::size_t n = model.space.size();
  const Process weighted = hadamard(model.bundle.z_tilde, increments(v));
  const Process projected = predictable_projection(weighted, model.f, model.prob());
  Process inc(n, model.horizon(), v.dim());
  for (Time t = 1; t <= model.horizon(); ++t) {
    for (AtomIndex w = 0; w < n; ++w) {
      if (!model.before_tau(w, t)) continue;
      const Rational& z = z_before(model, w, t);
      for (std::size_t k = 0; k < v.dim(); ++k) inc(w, t, k) = projected(w, t, k) / z;
    }
  }
  Process out = cumulate(inc);
  out.set_predictable_flag(true);
  return out;
}

FCompensatorCheck f_compensator_from_g(const Process& v, const EnlargedModel& model) {
  require_adapted(v, model.f, model.space, "V");
  const std::size_t n = model.space.size();
  const auto& zt = model.bundle.z_tilde;
  const Process dv = increments(v);

  Process du(n, model.horizon(), v.dim());
  Process dv_alive(n, model.horizon(), v.dim());
  FCompensatorCheck check;
  check.special_case_applicable = true;
  for (Time t = 1; t <= model.horizon(); ++t) {
    for (AtomIndex w = 0; w < n; ++w) {
      const bool alive = is_positive(zt(w, t));
      for (std::size_t k = 0; k < v.dim(); ++k) {
        if (alive) {
          dv_alive(w, t, k) = dv(w, t, k);
        } else if (!is_zero(dv(w, t, k))) {
          check.special_case_applicable = false;
        }
        if (model.before_tau(w, t)) {
          if (!alive) {
            throw StructuralError("Z~ vanishes inside ]0,tau] at atom '" + model.space.atom(w) +
                                  "'");
          }
          du(w, t, k) = dv(w, t, k) / zt(w, t);
        }
      }
    }
  }

  check.direct = dual_predictable(cumulate(du), model.g, model.prob());

  const Process projected = predictable_projection(dv_alive, model.f, model.prob());
  Process inc(n, model.horizon(), v.dim());
  for (Time t = 1; t <= model.horizon(); ++t) {
    for (AtomIndex w = 0; w < n; ++w) {
      if (!model.before_tau(w, t)) continue;
      const Rational& z = z_before(model, w, t);
      for (std::size_t k = 0; k < v.dim(); ++k) inc(w, t, k) = projected(w, t, k) / z;
    }
  }
  check.closed_form = cumulate(inc);
  check.closed_form.set_predictable_flag(true);
  check.identity_holds = check.direct == check.closed_form;

  check.special_case_holds = true;
  if (check.special_case_applicable) {
    const Process dv_pf = predictable_projection(dv, model.f, model.prob());
    for (Time t = 1; t <= model.horizon() && check.special_case_holds; ++t) {
      for (AtomIndex w = 0; w < n; ++w) {
        if (!model.before_tau(w, t)) continue;
        for (std::size_t k = 0; k < v.dim(); ++k) {
          const Rational du_pg = check.direct.increment(w, t, k);
          if (dv_pf(w, t, k) != model.bundle.z(w, t - 1) * du_pg) {
            check.special_case_holds = false;
          }
        }
      }
    }
  }
  return check;
}

Process hat_martingale(const Process& m, const EnlargedModel& model) {
  require_f_martingale(m, model);
  const std::size_t n = model.space.size();
  const Process bracket = angle_bracket(m, model.bundle.m, model.f, model.prob());
  Process out = stop(m, model.tau);
  for (std::size_t k = 0; k < m.dim(); ++k) {
    for (AtomIndex w = 0; w < n; ++w) {
      Rational drift = 0;
      for (Time t = 1; t <= model.horizon(); ++t) {
        if (model.before_tau(w, t)) drift += bracket.increment(w, t, k) / z_before(model, w, t);
        out(w, t, k) -= drift;
      }
    }
  }
  return out;
}

ProjectionTransfer predictable_projection_transfer(const Process& m, const EnlargedModel& model) {
  require_f_martingale(m, model);
  const std::size_t n = model.space.size();
  const Time horizon = model.horizon();
  const auto& zt = model.bundle.z_tilde;

  Process jump_over_zt(n, horizon, m.dim());
  Process jump_alive(n, horizon, m.dim());
  Process inv_zt(n, horizon);
  Process alive(n, horizon);
  for (Time t = 1; t <= horizon; ++t) {
    for (AtomIndex w = 0; w < n; ++w) {
      if (!is_positive(zt(w, t))) continue;
      alive(w, t) = 1;
      inv_zt(w, t) = 1 / zt(w, t);
      for (std::size_t k = 0; k < m.dim(); ++k) {
        jump_over_zt(w, t, k) = m.increment(w, t, k) / zt(w, t);
        jump_alive(w, t, k) = m.increment(w, t, k);
      }
    }
  }

  const Process g_jump = predictable_projection(jump_over_zt, model.g, model.prob());
  const Process g_inv = predictable_projection(inv_zt, model.g, model.prob());
  const Process f_jump = predictable_projection(jump_alive, model.f, model.prob());
  const Process f_alive = predictable_projection(alive, model.f, model.prob());

  ProjectionTransfer out{Process(n, horizon, m.dim()), Process(n, horizon, m.dim()),
                         Process(n, horizon), Process(n, horizon), true};
  for (Time t = 1; t <= horizon; ++t) {
    for (AtomIndex w = 0; w < n; ++w) {
      if (!model.before_tau(w, t)) continue;
      const Rational& z = z_before(model, w, t);
      for (std::size_t k = 0; k < m.dim(); ++k) {
        out.g_side_jump(w, t, k) = g_jump(w, t, k);
        out.f_side_jump(w, t, k) = f_jump(w, t, k) / z;
        if (out.g_side_jump(w, t, k) != out.f_side_jump(w, t, k)) out.holds = false;
      }
      out.g_side_inverse(w, t) = g_inv(w, t);
      out.f_side_inverse(w, t) = f_alive(w, t) / z;
      if (out.g_side_inverse(w, t) != out.f_side_inverse(w, t)) out.holds = false;
    }
  }
  return out;
}

QMeasures q_measures(Time T, const EnlargedModel& model) {
  if (T < 1 || T > model.horizon()) throw std::invalid_argument("q_measures: T outside [1, horizon]");
  const std::size_t n = model.space.size();
  const auto& z = model.bundle.z;
  const auto& zt = model.bundle.z_tilde;

  AtomVector alive(n);
  for (AtomIndex w = 0; w < n; ++w) alive[w] = is_positive(zt(w, T)) ? 1 : 0;
  const AtomVector p_alive = condexp(alive, model.f.before(T), model.prob());

  QMeasures q{AtomVector(n), AtomVector(n), AtomVector(n)};
  for (AtomIndex w = 0; w < n; ++w) {
    q.q_t[w] = is_positive(p_alive[w]) ? Rational(alive[w] / p_alive[w]) : Rational(1);
    q.q_tilde[w] = is_positive(z(w, T - 1)) ? Rational(zt(w, T) / z(w, T - 1)) : Rational(1);
    if (T <= model.tau.value[w]) {
      if (!is_positive(zt(w, T))) {
        throw StructuralError("Z~_T vanishes on {T <= tau} at atom '" + model.space.atom(w) + "'");
      }
      q.u_g[w] = z(w, T - 1) / zt(w, T);
    } else {
      q.u_g[w] = 1;
    }
  }
  return q;
}

Process reduce_g_predictable(const Process& h_g, const EnlargedModel& model) {
  if (!is_predictable(h_g, model.g)) {
    throw InputError("not_predictable", "H", "process is not G-predictable");
  }
  const std::size_t n = model.space.size();
  Process out(n, model.horizon(), h_g.dim(), 1);
  for (Time t = 1; t <= model.horizon(); ++t) {
    for (const auto& block : model.f.at(t - 1).blocks()) {
      const AtomIndex* source = nullptr;
      for (const AtomIndex& w : block) {
        if (model.tau.value[w] >= t) {
          source = &w;
          break;
        }
      }
      if (source == nullptr) continue;
      for (AtomIndex w : block) {
        for (std::size_t k = 0; k < h_g.dim(); ++k) out(w, t, k) = h_g(*source, t, k);
      }
    }
  }
  out.set_predictable_flag(true);
  return out;
}

}  // namespace azema
