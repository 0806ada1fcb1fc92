#pragma once

// Brute-force enumeration over atoms. Nothing here calls the engine's
// projection, enlargement or LP code; only the plain data types are shared.

#include <algorithm>
#include <set>
#include <vector>

#include "azema/space.hpp"

namespace oracle {

using azema::AtomIndex;
using azema::Filtration;
using azema::Process;
using azema::RandomTime;
using azema::Rational;
using azema::Time;

inline bool same_f_block(const Filtration& f, Time t, AtomIndex a, AtomIndex b) {
  for (const auto& block : f.at(t).blocks()) {
    const bool has_a = std::find(block.begin(), block.end(), a) != block.end();
    const bool has_b = std::find(block.begin(), block.end(), b) != block.end();
    if (has_a || has_b) return has_a && has_b;
  }
  return false;
}

/// Two atoms are indistinguishable at t when F_t cannot separate them and
/// the observation of tau up to t (its value if <= t, "not yet" otherwise)
/// agrees.
inline bool g_indistinguishable(const Filtration& f, const RandomTime& tau, Time t, AtomIndex a,
                                AtomIndex b) {
  if (!same_f_block(f, t, a, b)) return false;
  const Time ta = tau.value[a], tb = tau.value[b];
  if (ta <= t || tb <= t) return ta == tb;
  return true;
}

/// Atom blocks as a canonical set of sorted vectors.
using BlockSet = std::set<std::vector<AtomIndex>>;

inline BlockSet g_blocks(const Filtration& f, const RandomTime& tau, Time t, std::size_t n) {
  BlockSet out;
  for (AtomIndex a = 0; a < n; ++a) {
    std::vector<AtomIndex> block;
    for (AtomIndex b = 0; b < n; ++b) {
      if (g_indistinguishable(f, tau, t, a, b)) block.push_back(b);
    }
    out.insert(block);
  }
  return out;
}

inline BlockSet as_set(const azema::Partition& p) {
  BlockSet out;
  for (auto block : p.blocks()) {
    std::sort(block.begin(), block.end());
    out.insert(block);
  }
  return out;
}

template <class Same, class Event>
Rational conditional(std::span<const Rational> prob, std::size_t n, AtomIndex w, Same same,
                     Event event) {
  Rational num = 0, den = 0;
  for (AtomIndex b = 0; b < n; ++b) {
    if (!same(w, b)) continue;
    den += prob[b];
    if (event(b)) num += prob[b];
  }
  return den == 0 ? Rational(0) : Rational(num / den);
}

/// E[g(b) | block of w], enumerated.
template <class Same, class Value>
Rational conditional_mean(std::span<const Rational> prob, std::size_t n, AtomIndex w, Same same,
                          Value value) {
  Rational num = 0, den = 0;
  for (AtomIndex b = 0; b < n; ++b) {
    if (!same(w, b)) continue;
    den += prob[b];
    num += prob[b] * value(b);
  }
  return den == 0 ? Rational(0) : Rational(num / den);
}

struct Azema {
  Process z, z_tilde, d_o;
  std::vector<std::vector<bool>> thin;
};

inline Azema azema(std::span<const Rational> prob, const Filtration& f, const RandomTime& tau) {
  const std::size_t n = prob.size();
  const Time h = f.horizon();
  Azema out{Process(n, h), Process(n, h), Process(n, h), {}};
  for (Time t = 0; t <= h; ++t) {
    auto same = [&](AtomIndex a, AtomIndex b) { return same_f_block(f, t, a, b); };
    for (AtomIndex w = 0; w < n; ++w) {
      out.z(w, t) = conditional(prob, n, w, same, [&](AtomIndex b) { return tau.value[b] > t; });
      out.z_tilde(w, t) =
          conditional(prob, n, w, same, [&](AtomIndex b) { return tau.value[b] >= t; });
      const Rational jump =
          conditional(prob, n, w, same, [&](AtomIndex b) { return tau.value[b] == t; });
      out.d_o(w, t) = (t == 0 ? Rational(0) : out.d_o(w, t - 1)) + jump;
    }
  }
  out.thin.assign(static_cast<std::size_t>(h + 1), std::vector<bool>(n, false));
  for (Time t = 1; t <= h; ++t) {
    for (AtomIndex w = 0; w < n; ++w) {
      out.thin[t][w] = out.z_tilde(w, t) == 0 && out.z(w, t - 1) > 0;
    }
  }
  return out;
}

/// Dual predictable projection in G, enumerated through indistinguishability.
inline Process g_dual_predictable(const Process& v, std::span<const Rational> prob,
                                  const Filtration& f, const RandomTime& tau) {
  const std::size_t n = prob.size();
  Process out(n, v.horizon(), v.dim());
  for (Time t = 1; t <= v.horizon(); ++t) {
    auto same = [&](AtomIndex a, AtomIndex b) { return g_indistinguishable(f, tau, t - 1, a, b); };
    for (AtomIndex w = 0; w < n; ++w) {
      for (std::size_t k = 0; k < v.dim(); ++k) {
        out(w, t, k) = out(w, t - 1, k) +
                       conditional_mean(prob, n, w, same, [&](AtomIndex b) {
                         return v(b, t, k) - v(b, t - 1, k);
                       });
      }
    }
  }
  return out;
}

/// Scalar NUPBR on a finite tree: at every node of positive weight the
/// children's increments are all zero or take both signs.
template <class Same>
bool nupbr_scalar(const Process& x, std::span<const Rational> weights, Time horizon, Same same) {
  const std::size_t n = weights.size();
  for (Time t = 1; t <= horizon; ++t) {
    for (AtomIndex w = 0; w < n; ++w) {
      if (weights[w] == 0) continue;
      bool up = false, down = false;
      for (AtomIndex b = 0; b < n; ++b) {
        if (weights[b] == 0 || !same(t - 1, w, b)) continue;
        const Rational d = x(b, t) - x(b, t - 1);
        up = up || d > 0;
        down = down || d < 0;
      }
      if (up != down) return false;
    }
  }
  return true;
}

inline bool nupbr_scalar_f(const Process& x, std::span<const Rational> weights,
                           const Filtration& f) {
  return nupbr_scalar(x, weights, f.horizon(), [&](Time t, AtomIndex a, AtomIndex b) {
    return same_f_block(f, t, a, b);
  });
}

inline bool nupbr_scalar_g(const Process& x, std::span<const Rational> weights,
                           const Filtration& f, const RandomTime& tau) {
  return nupbr_scalar(x, weights, f.horizon(), [&](Time t, AtomIndex a, AtomIndex b) {
    return g_indistinguishable(f, tau, t, a, b);
  });
}

}  // namespace oracle
