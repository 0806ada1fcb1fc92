#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "azema/errors.hpp"
#include "azema/rational.hpp"

namespace azema {

using Time = int;
/// Sentinel for a random time that never occurs; ordered above every grid time.
inline constexpr Time kInfinity = std::numeric_limits<Time>::max();

using AtomIndex = std::size_t;
using Block = std::vector<AtomIndex>;

/// Atoms with strictly positive rational probabilities summing to one, and
/// the time grid {0, ..., horizon}.
class FiniteSpace {
 public:
  FiniteSpace(std::vector<std::string> atoms, AtomVector prob, Time horizon);

  std::size_t size() const { return atoms_.size(); }
  Time horizon() const { return horizon_; }
  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::string& atom(AtomIndex i) const { return atoms_[i]; }
  AtomIndex index_of(std::string_view name) const;
  std::span<const Rational> prob() const { return prob_; }

 private:
  std::vector<std::string> atoms_;
  AtomVector prob_;
  Time horizon_;
};

/// Disjoint blocks covering every atom. Blocks keep the atom order they
/// were given in, sorted ascending.
class Partition {
 public:
  Partition() = default;
  Partition(std::vector<Block> blocks, std::size_t n_atoms);

  static Partition trivial(std::size_t n_atoms);
  static Partition discrete(std::size_t n_atoms);

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }
  std::size_t block_of(AtomIndex atom) const { return block_of_[atom]; }
  const Block& block_containing(AtomIndex atom) const { return blocks_[block_of_[atom]]; }
  std::size_t atom_count() const { return block_of_.size(); }

  /// Every block of *this lies inside a block of `coarser`.
  bool refines(const Partition& coarser) const;
  /// `event` (one flag per atom) is a union of blocks.
  bool measurable(const std::vector<bool>& event) const;
  /// `values` is constant on every block.
  bool measurable(std::span<const Rational> values) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<Block> blocks_;
  std::vector<std::size_t> block_of_;
};

/// One partition per grid time, each refining the previous one.
class Filtration {
 public:
  explicit Filtration(std::vector<Partition> parts);

  const Partition& at(Time t) const { return parts_[static_cast<std::size_t>(t)]; }
  /// Partition generating F_{t-1}, with F_{0-} := F_0.
  const Partition& before(Time t) const { return at(t > 0 ? t - 1 : 0); }
  Time horizon() const { return static_cast<Time>(parts_.size()) - 1; }
  const std::vector<Partition>& parts() const { return parts_; }

  friend bool operator==(const Filtration&, const Filtration&) = default;

 private:
  std::vector<Partition> parts_;
};

/// A d-dimensional process indexed by (atom, time), stored densely.
/// Discrete conventions: X_{t-} = X_{t-1}, X_{0-} = X_0, dX_0 = 0.
class Process {
 public:
  Process() = default;
  Process(std::size_t atoms, Time horizon, std::size_t dim = 1, const Rational& fill = 0);

  std::size_t atoms() const { return atoms_; }
  Time horizon() const { return horizon_; }
  std::size_t dim() const { return dim_; }

  Rational& operator()(AtomIndex w, Time t, std::size_t k = 0) { return data_[offset(w, t, k)]; }
  const Rational& operator()(AtomIndex w, Time t, std::size_t k = 0) const {
    return data_[offset(w, t, k)];
  }

  /// X_t - X_{t-1} for t >= 1, zero at t = 0.
  Rational increment(AtomIndex w, Time t, std::size_t k = 0) const;
  /// X_{t-1}, with X_{0-} = X_0.
  const Rational& left(AtomIndex w, Time t, std::size_t k = 0) const {
    return (*this)(w, t > 0 ? t - 1 : 0, k);
  }

  AtomVector slice(Time t, std::size_t k = 0) const;
  void set_slice(Time t, std::span<const Rational> values, std::size_t k = 0);
  Process component(std::size_t k) const;

  bool predictable_flag() const { return predictable_; }
  void set_predictable_flag(bool flag) { predictable_ = flag; }

  Process& operator+=(const Process& other);
  Process& operator-=(const Process& other);
  Process& operator*=(const Rational& c);

  friend bool operator==(const Process& a, const Process& b) {
    return a.atoms_ == b.atoms_ && a.horizon_ == b.horizon_ && a.dim_ == b.dim_ &&
           a.data_ == b.data_;
  }

 private:
  std::size_t offset(AtomIndex w, Time t, std::size_t k) const {
    return (static_cast<std::size_t>(t) * atoms_ + w) * dim_ + k;
  }

  std::size_t atoms_ = 0;
  Time horizon_ = 0;
  std::size_t dim_ = 1;
  bool predictable_ = false;
  std::vector<Rational> data_;
};

Process operator+(Process a, const Process& b);
Process operator-(Process a, const Process& b);
Process operator*(const Rational& c, Process a);

/// Process of increments dX (dX_0 = 0).
Process increments(const Process& x);
/// Running sum: Y_t = sum_{s <= t} inc_s.
Process cumulate(const Process& inc);
/// Componentwise product of two processes of equal dimension, or of a
/// scalar process with a d-dimensional one.
Process hadamard(const Process& a, const Process& b);
/// Constant-in-(atom,time) process.
Process constant_process(std::size_t atoms, Time horizon, const Rational& c, std::size_t dim = 1);
/// Process equal to `values` at every time.
Process time_constant(std::span<const Rational> values, Time horizon);

/// A random time: one grid value (or kInfinity) per atom. A stopping time
/// is a random time that passes check_stopping_time for some filtration.
struct RandomTime {
  std::vector<Time> value;

  static RandomTime constant(std::size_t atoms, Time t) { return {std::vector<Time>(atoms, t)}; }
  std::vector<bool> at_most(Time t) const;
  friend bool operator==(const RandomTime&, const RandomTime&) = default;
};
using StoppingTime = RandomTime;

/// E[X | blocks] under `weights`. Blocks with zero total weight map to 0.
AtomVector condexp(std::span<const Rational> x, const Partition& blocks,
                   std::span<const Rational> weights);

bool check_stopping_time(const RandomTime& sigma, const Filtration& filt);

/// X^sigma(w, t) = X(w, min(t, sigma(w))).
Process stop(const Process& x, const RandomTime& sigma);

bool is_adapted(const Process& x, const Filtration& filt);
/// Constant on parts[t-1] at each t >= 1 and on parts[0] at t = 0.
bool is_predictable(const Process& x, const Filtration& filt);

/// Throws InputError("not_adapted", ...) naming the first offending (atom, time).
void require_adapted(const Process& x, const Filtration& filt, const FiniteSpace& space,
                     std::string_view what);

}  // namespace azema
