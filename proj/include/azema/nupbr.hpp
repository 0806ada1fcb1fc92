#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "azema/deflator.hpp"
#include "azema/enlargement.hpp"
#include "azema/generator.hpp"

namespace azema {

// ---------------------------------------------------------------------------
// One-period geometry
// ---------------------------------------------------------------------------

/// Strictly positive weights summing to one with sum_i w_i x_i = 0, i.e. a
/// certificate that 0 lies in the relative interior of conv{x_i}. Empty
/// optional when no such weights exist. Decided by the exact LP
/// max eps s.t. sum w_i x_i = 0, sum w_i = 1, w_i >= eps.
std::optional<std::vector<Rational>> relative_interior_weights(
    const std::vector<std::vector<Rational>>& points);

/// theta with theta.x_i >= 0 for all i and > 0 for some i, normalised so
/// that max_i theta.x_i = 1; empty when 0 is in the relative interior.
std::optional<std::vector<Rational>> arbitrage_direction(
    const std::vector<std::vector<Rational>>& points);

// ---------------------------------------------------------------------------
// Certification
// ---------------------------------------------------------------------------

/// Node = block of parts[time - 1]; its children are the blocks of
/// parts[time] inside it that carry positive weight.
struct NodeWeights {
  Time time = 0;
  Block node;
  std::vector<Block> children;
  std::vector<Rational> weights;
};

struct ArbitrageWitness {
  Time time = 0;
  Block node;
  std::vector<Rational> theta;
};

struct CertResult {
  bool verdict = false;
  std::vector<NodeWeights> deflator;        ///< present iff verdict
  std::optional<ArbitrageWitness> arbitrage; ///< present iff !verdict
};

/// NUPBR on a finite space: every node of positive weight must have 0 in the
/// relative interior of its children's increments. Without `weights` the
/// space's probabilities are used. Throws InputError if x is not adapted.
CertResult certify_nupbr(const Process& x, const Filtration& filt, const FiniteSpace& space,
                         std::optional<std::span<const Rational>> weights = std::nullopt);

/// Equivalent martingale measure assembled from the node weights of a
/// positive certificate (product of transition weights, spread inside each
/// terminal block proportionally to `weights`).
AtomVector martingale_measure(const CertResult& cert, const Filtration& filt,
                              std::span<const Rational> weights);

/// The set of terminal wealths of 1-admissible one-step strategies is
/// bounded at every node (no node LP is unbounded).
bool admissible_wealth_bounded(const Process& x, const Filtration& filt,
                               std::span<const Rational> weights);

// ---------------------------------------------------------------------------
// Single-jump processes
// ---------------------------------------------------------------------------

/// Jump sizes xi[k][w] of a d-dimensional jump.
using Jump = std::vector<AtomVector>;

/// xi I_[T, inf).
Process single_jump(const Jump& xi, Time T, Time horizon);
/// dS_T, componentwise.
Jump jump_at(const Process& s, Time T);
/// xi I_{Z_{T-} > 0} I_[T, inf), the canonical price of the single-jump theorem.
Process single_jump_price(const Jump& xi, Time T, const EnlargedModel& model);

struct Main3Report {
  bool nupbr_g_stopped = false;  ///< (a)
  bool nupbr_f_cut = false;      ///< (b)  xi I_{Z~_T > 0} I_[T, inf) in F
  bool nupbr_f_qt = false;       ///< (c)  S under Q_T
  bool nupbr_f_qtilde = false;   ///< (d)  S under Q~_T
  bool consistent() const {
    return nupbr_g_stopped == nupbr_f_cut && nupbr_f_cut == nupbr_f_qt &&
           nupbr_f_qt == nupbr_f_qtilde;
  }
};

/// `s` must equal xi I_{Z_{T-}>0} I_[T, inf) for some F_T-measurable xi.
Main3Report check_main3(const Process& s, Time T, const EnlargedModel& model);

/// {Z~_T = 0} ⊂ {Z_{T-} = 0}.
bool check_equation1111(Time T, const EnlargedModel& model);

/// xi I_[T, inf) with xi = I_{Z~_T = 0} - P(Z~_T = 0 | F_{T-1}).
Process witness_martingale(Time T, const EnlargedModel& model);

/// For every t and F_{t-1}-node with Z_{t-1} >= delta, 0 lies in the relative
/// interior of {dS_t(child) : Z~_t(child) > 0}. Throws PreconditionError when
/// S fails NUPBR(F).
bool check_main4(const Process& s, const EnlargedModel& model, const Rational& delta);

/// The positive values of Z_- together with `extra`.
std::vector<Rational> main4_deltas(const EnlargedModel& model, std::span<const Rational> extra = {});

/// check_main4 over every delta in main4_deltas.
bool check_main4_all(const Process& s, const EnlargedModel& model,
                     std::span<const Rational> extra = {});

/// Thin set {Z~ = 0 & Z_- > 0} is empty.
bool check_main5(const EnlargedModel& model);

struct Main5Report {
  bool thin_empty = false;
  std::size_t martingales_tested = 0;
  std::size_t martingales_preserved = 0;
  std::optional<Time> witness_time;
  std::optional<bool> witness_nupbr_g;
  bool consistent() const {
    if (thin_empty) return martingales_preserved == martingales_tested;
    return witness_nupbr_g.has_value() && !*witness_nupbr_g;
  }
};

/// Thin set empty: `count` random bounded F-martingales must keep NUPBR after
/// stopping at tau. Otherwise the witness martingale must lose it.
Main5Report main5_suite(const EnlargedModel& model, std::size_t count, Rng& rng);

/// Discrete time: every jump is accessible, so S = S^(a) and S^(qc) = 0.
std::pair<Process, Process> decompose_accessible(const Process& s);

struct CrucialLemmaReport {
  bool martingale_under_qt = false;        ///< (a)
  bool thin_conditional_zero = false;      ///< (b)
  bool stopped_martingale_under_qg = false;///< (c)
  bool consistent() const {
    return martingale_under_qt == thin_conditional_zero &&
           thin_conditional_zero == stopped_martingale_under_qg;
  }
};

/// `m` must be xi I_[T, inf) with E[xi | F_{T-1}] = 0 (PreconditionError otherwise).
CrucialLemmaReport check_cruciallemma1(const Process& m, Time T, const EnlargedModel& model);

}  // namespace azema
