#pragma once

#include <cstdint>
#include <random>

#include "azema/space.hpp"

namespace azema {

/// Seeded generator with library-independent integer draws (std
/// distributions are implementation-defined, which would break
/// byte-identical campaign reports across toolchains).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool coin() { return uniform(0, 1) == 1; }
  /// p/q with |p| <= max_num and q in [1, max_den].
  Rational small_rational(int max_num, int max_den);
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

struct RandomInstanceLimits {
  std::size_t max_atoms = 12;
  Time max_horizon = 4;
  std::size_t max_dim = 2;
  std::size_t max_branching = 3;
  std::int64_t prob_denominator = 64;
};

struct Instance {
  FiniteSpace space;
  Filtration f;
  RandomTime tau;
  Process s;           ///< arbitrary F-adapted price, dim 1..max_dim
  Process martingale;  ///< F-martingale of the same dimension as s
};

/// Tree-shaped filtration with trivial F_0, probabilities k/64, tau uniform
/// over {0..horizon} ∪ {inf}.
Instance random_instance(Rng& rng, const RandomInstanceLimits& limits = {});

/// Terminal values drawn per F_T block, then X_t = E[X_T | F_t].
Process random_martingale(const Filtration& f, std::span<const Rational> prob, std::size_t dim,
                          Rng& rng);

Process random_adapted(const Filtration& f, std::size_t atoms, std::size_t dim, Rng& rng);

/// Predictable finite-variation process A with A_0 = 0 whose increments
/// are F_{t-1}-measurable and not all zero.
Process random_predictable_nonconstant(const Filtration& f, std::size_t atoms, Rng& rng);

}  // namespace azema
