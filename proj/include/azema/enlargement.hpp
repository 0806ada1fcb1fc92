#pragma once

#include <vector>

#include "azema/space.hpp"

namespace azema {

/// Progressive enlargement of `filt` by `tau`: at time t each F_t block B
/// splits into B ∩ {tau = s} for s <= t and B ∩ {tau > t} (empty pieces
/// dropped).
Filtration enlarge(const Filtration& filt, const RandomTime& tau);

/// Azéma supermartingales of a random time and the objects derived from them.
struct AzemaBundle {
  Process z;        ///< Z_t = P(tau > t | F_t)
  Process z_tilde;  ///< Z~_t = P(tau >= t | F_t)
  Process d_oF;     ///< F-dual optional projection of I_[tau, inf)
  Process m;        ///< Z + D^{o,F}, an F-martingale with m_0 = 1
  /// thin[t][w] <=> Z~_t(w) = 0 and Z_{t-1}(w) > 0.
  std::vector<std::vector<bool>> thin;
  StoppingTime r_hat;     ///< inf{t >= 1 : Z_{t-1} = 0}
  StoppingTime r_hat0;    ///< r_hat on {Z_{r_hat - 1} = 0}
  StoppingTime r_tilde0;  ///< r_hat on {Z~_{r_hat} = 0}

  bool thin_empty() const;
  /// Times T at which the thin set is met, ascending.
  std::vector<Time> thin_times() const;
};

AzemaBundle azema(const FiniteSpace& space, const Filtration& filt, const RandomTime& tau);

/// Everything the enlargement formulas need: (space, F, tau), the enlarged
/// filtration G and the Azéma bundle.
struct EnlargedModel {
  FiniteSpace space;
  Filtration f;
  RandomTime tau;
  Filtration g;
  AzemaBundle bundle;

  static EnlargedModel build(FiniteSpace space, Filtration f, RandomTime tau);

  std::span<const Rational> prob() const { return space.prob(); }
  Time horizon() const { return space.horizon(); }
  /// 1 <= t <= tau(w): the stochastic interval ]0, tau].
  bool before_tau(AtomIndex w, Time t) const { return t >= 1 && t <= tau.value[w]; }
};

/// (V^tau)^{p,G} computed through F-quantities:
/// increments Z_{t-1}^{-1} I_{t<=tau} E[Z~_t dV_t | F_{t-1}].
/// Throws StructuralError if Z_{t-1} = 0 is met inside ]0, tau].
Process g_compensator_of_stopped(const Process& v, const EnlargedModel& model);

struct FCompensatorCheck {
  Process direct;        ///< U^{p,G} with U = Z~^{-1} I_]0,tau] . V
  Process closed_form;   ///< Z_-^{-1} I_]0,tau] . (I_{Z~>0} . V)^{p,F}
  bool identity_holds = false;
  /// dV vanishes on {Z~ = 0}.
  bool special_case_applicable = false;
  /// On ]0,tau]: d(V^{p,F}) = Z_- d(U^{p,G}). Vacuously true when not applicable.
  bool special_case_holds = false;
};

FCompensatorCheck f_compensator_from_g(const Process& v, const EnlargedModel& model);

/// M^tau - Z_-^{-1} I_]0,tau] . <M,m>^F. Throws PreconditionError unless M
/// is an F-martingale.
Process hat_martingale(const Process& m, const EnlargedModel& model);

/// Both sides of the G-to-F predictable projection identities evaluated on
/// ]0,tau] (zero off it).
struct ProjectionTransfer {
  Process g_side_jump;     ///< pG(dM / Z~)
  Process f_side_jump;     ///< pF(dM I_{Z~>0}) / Z_-
  Process g_side_inverse;  ///< pG(1 / Z~)
  Process f_side_inverse;  ///< pF(I_{Z~>0}) / Z_-
  bool holds = false;
};

ProjectionTransfer predictable_projection_transfer(const Process& m, const EnlargedModel& model);

/// Densities (w.r.t. P, one per atom) attached to a jump date T.
struct QMeasures {
  AtomVector q_t;        ///< dQ_T/dP
  AtomVector q_tilde;    ///< dQ~_T/dP
  AtomVector u_g;        ///< U^G(T)
};

QMeasures q_measures(Time T, const EnlargedModel& model);

/// F-predictable process agreeing with the G-predictable `h_g` on ]0,tau].
/// Where {tau >= t} misses an F_{t-1} block the value is 1, so positivity
/// and upper bounds <= 1 carry over. Throws InputError if `h_g` is not
/// G-predictable.
Process reduce_g_predictable(const Process& h_g, const EnlargedModel& model);

/// Indicator process of ]0, tau].
Process before_tau_indicator(const EnlargedModel& model);

}  // namespace azema
