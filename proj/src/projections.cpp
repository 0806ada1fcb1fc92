#include "azema/projections.hpp"

#include <stdexcept>

namespace azema {

namespace {

// Applies E[f(t) | blocks(t)] per time slice, component by component.
template <typename BlocksAt, typename ValueAt>
Process project(const Process& x, BlocksAt blocks_at, ValueAt value_at,
                std::span<const Rational> weights) {
  Process out(x.atoms(), x.horizon(), x.dim());
  AtomVector slice(x.atoms());
  for (Time t = 0; t <= x.horizon(); ++t) {
    for (std::size_t k = 0; k < x.dim(); ++k) {
      for (AtomIndex w = 0; w < x.atoms(); ++w) slice[w] = value_at(w, t, k);
      out.set_slice(t, condexp(slice, blocks_at(t), weights), k);
    }
  }
  return out;
}

}  // namespace

Process optional_projection(const Process& x, const Filtration& filt,
                            std::span<const Rational> weights) {
  return project(
      x, [&](Time t) -> const Partition& { return filt.at(t); },
      [&](AtomIndex w, Time t, std::size_t k) { return x(w, t, k); }, weights);
}

Process predictable_projection(const Process& x, const Filtration& filt,
                               std::span<const Rational> weights) {
  Process out = project(
      x, [&](Time t) -> const Partition& { return filt.before(t); },
      [&](AtomIndex w, Time t, std::size_t k) { return x(w, t, k); }, weights);
  out.set_predictable_flag(true);
  return out;
}

Process dual_optional(const Process& v, const Filtration& filt, std::span<const Rational> weights) {
  return cumulate(optional_projection(increments(v), filt, weights));
}

Process dual_predictable(const Process& v, const Filtration& filt,
                         std::span<const Rational> weights) {
  Process out = cumulate(predictable_projection(increments(v), filt, weights));
  out.set_predictable_flag(true);
  return out;
}

Process covariation(const Process& m, const Process& n) {
  if (m.atoms() != n.atoms() || m.horizon() != n.horizon()) {
    throw std::invalid_argument("covariation: shape mismatch");
  }
  Process inc(m.atoms(), m.horizon(), m.dim() * n.dim());
  for (Time t = 1; t <= m.horizon(); ++t) {
    for (AtomIndex w = 0; w < m.atoms(); ++w) {
      for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < n.dim(); ++j) {
          inc(w, t, i * n.dim() + j) = m.increment(w, t, i) * n.increment(w, t, j);
        }
      }
    }
  }
  return cumulate(inc);
}

Process angle_bracket(const Process& m, const Process& n, const Filtration& filt,
                      std::span<const Rational> weights) {
  return dual_predictable(covariation(m, n), filt, weights);
}

bool is_martingale(const Process& m, const Filtration& filt, std::span<const Rational> weights) {
  const Process drift = predictable_projection(increments(m), filt, weights);
  for (Time t = 1; t <= m.horizon(); ++t) {
    for (AtomIndex w = 0; w < m.atoms(); ++w) {
      for (std::size_t k = 0; k < m.dim(); ++k) {
        if (!is_zero(drift(w, t, k))) return false;
      }
    }
  }
  return true;
}

bool is_supermartingale(const Process& x, const Filtration& filt,
                        std::span<const Rational> weights) {
  const Process drift = predictable_projection(increments(x), filt, weights);
  for (Time t = 1; t <= x.horizon(); ++t) {
    for (AtomIndex w = 0; w < x.atoms(); ++w) {
      for (std::size_t k = 0; k < x.dim(); ++k) {
        if (sgn(drift(w, t, k)) > 0) return false;
      }
    }
  }
  return true;
}

DoobDecomposition doob(const Process& x, const Filtration& filt, std::span<const Rational> weights) {
  Process a = dual_predictable(x, filt, weights);
  Process m = cumulate(increments(x)) - a;
  m.set_predictable_flag(false);
  return {std::move(m), std::move(a)};
}

}  // namespace azema
