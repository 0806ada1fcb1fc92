#pragma once

#include <span>

#include "azema/space.hpp"

namespace azema {

// F-calculus on a finite filtered space. Every function takes the measure as
// an atom-weight span so the same code serves P and absolutely continuous
// reweightings of P.

/// (oX)_t = E[X_t | F_t].
Process optional_projection(const Process& x, const Filtration& filt,
                            std::span<const Rational> weights);

/// (pX)_t = E[X_t | F_{t-1}] for t >= 1, (pX)_0 = E[X_0 | F_0]. Flagged predictable.
Process predictable_projection(const Process& x, const Filtration& filt,
                               std::span<const Rational> weights);

/// Increments E[dV_t | F_t], starting at 0.
Process dual_optional(const Process& v, const Filtration& filt, std::span<const Rational> weights);

/// Increments E[dV_t | F_{t-1}], starting at 0. Flagged predictable.
Process dual_predictable(const Process& v, const Filtration& filt,
                         std::span<const Rational> weights);

/// Pathwise covariation [M,N]_t = sum_{s<=t} dM_s dN_s. For vector inputs the
/// result has dim = dim(M) * dim(N), entry (i,j) at index i * dim(N) + j.
Process covariation(const Process& m, const Process& n);

/// <M,N> = dual predictable projection of [M,N]; same layout as covariation.
Process angle_bracket(const Process& m, const Process& n, const Filtration& filt,
                      std::span<const Rational> weights);

/// E[dM_t | F_{t-1}] = 0 for all t >= 1, on blocks of positive weight.
bool is_martingale(const Process& m, const Filtration& filt, std::span<const Rational> weights);

/// E[dX_t | F_{t-1}] <= 0 for every t and component (scalar use only).
bool is_supermartingale(const Process& x, const Filtration& filt,
                        std::span<const Rational> weights);

struct DoobDecomposition {
  Process martingale;    ///< M, M_0 = 0
  Process compensator;   ///< A, predictable, A_0 = 0
};

/// X = X_0 + M + A.
DoobDecomposition doob(const Process& x, const Filtration& filt, std::span<const Rational> weights);

}  // namespace azema
