#pragma once

#include <optional>

#include "azema/enlargement.hpp"

namespace azema {

/// Compensated (optional) stochastic integral H ⊙ N: M_0 = 0 and
/// dM_t = H_t dN_t - E[H_t dN_t | F_{t-1}]. N must be a martingale under
/// `weights` (PreconditionError otherwise). H is scalar; N may be vector.
Process optional_integral(const Process& h, const Process& n, const Filtration& filt,
                          std::span<const Rational> weights);

/// Stochastic exponential: E(N)_t = prod_{1 <= s <= t} (1 + dN_s), E(N)_0 = 1.
Process stoch_exp(const Process& n);

struct DeflatorBundle {
  Process m_hat;         ///< hat_martingale(m)
  Process k;             ///< Z_-^2 / (Z_-^2 + d<m>) / Z~ on ]0,tau]
  Process l;             ///< -K ⊙ m_hat in G
  Process l_closed_form; ///< increments (-dm/Z~ + pF(I_{Z~=0})) I_]0,tau]
  Process p_thin;        ///< pF(I_{Z~=0})
  Process v_g;           ///< sum_{u<=t} pF(I_{Z~=0})_u I_{u<=tau}
  Process e_def;         ///< E(L - V^G)
  bool closed_form_matches = false;

  /// 1 + dL_t > 0 everywhere.
  bool jumps_positive() const;
};

DeflatorBundle build_l(const EnlargedModel& model);

struct SupermartingaleDeflator {
  Process process;   ///< E(X), dX = dL - dV^G + theta dS^tau (1 + dL - dV^G)
  bool positive = false;
  bool supermartingale = false;
};

/// E(L - V^G) E(theta . S^tau) written as one stochastic exponential.
/// `s` is F-adapted, `theta` G-predictable of the same dimension. Throws
/// InputError("inadmissible", ...) when 1 + theta dS^tau < 0 somewhere.
SupermartingaleDeflator build_supermartingale_deflator(const Process& s, const Process& theta,
                                                       const DeflatorBundle& deflator,
                                                       const EnlargedModel& model);

struct DeflatorCheck {
  bool ok = true;
  // Worst node: the G_{time-1} block whose one-step value E[Y_t (1 + theta dS_t)]
  // exceeds Y_{time-1} by the largest factor (unbounded beats everything).
  std::optional<Time> time;
  Block node;
  bool unbounded = false;
  Rational ratio;                 ///< best value / Y_{time-1} at the worst node
  std::vector<Rational> theta;    ///< maximizer, or improving ray if unbounded
};

/// Checks that Y(1 + theta . dS) is a one-step supermartingale at every node
/// for every admissible theta, by solving the node LP exactly.
DeflatorCheck verify_deflator(const Process& y, const Process& s_stopped, const Filtration& filt,
                              std::span<const Rational> weights);

}  // namespace azema
