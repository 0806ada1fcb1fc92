#include "azema/space.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace azema {

FiniteSpace::FiniteSpace(std::vector<std::string> atoms, AtomVector prob, Time horizon)
    : atoms_(std::move(atoms)), prob_(std::move(prob)), horizon_(horizon) {
  if (atoms_.empty()) throw InputError("schema", "atoms", "atom list is empty");
  if (prob_.size() != atoms_.size()) {
    throw InputError("schema", "probs", "probability count does not match atom count");
  }
  if (horizon_ < 1) throw InputError("schema", "horizon", "horizon must be at least 1");
  Rational total = 0;
  for (std::size_t i = 0; i < prob_.size(); ++i) {
    if (!is_positive(prob_[i])) {
      throw InputError("nonpositive_prob", "probs[" + std::to_string(i) + "]",
                       "probability of atom '" + atoms_[i] + "' is not strictly positive");
    }
    total += prob_[i];
  }
  if (total != 1) {
    throw InputError("prob_sum", "probs", "probabilities sum to " + to_string(total));
  }
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (atoms_[i] == atoms_[j]) {
        throw InputError("schema", "atoms[" + std::to_string(i) + "]",
                         "duplicate atom '" + atoms_[i] + "'");
      }
    }
  }
}

AtomIndex FiniteSpace::index_of(std::string_view name) const {
  const auto it = std::find(atoms_.begin(), atoms_.end(), name);
  if (it == atoms_.end()) {
    throw InputError("unknown_atom", std::string(name), "unknown atom '" + std::string(name) + "'");
  }
  return static_cast<AtomIndex>(it - atoms_.begin());
}

Partition::Partition(std::vector<Block> blocks, std::size_t n_atoms)
    : blocks_(std::move(blocks)), block_of_(n_atoms, n_atoms) {
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    auto& block = blocks_[b];
    if (block.empty()) throw std::invalid_argument("partition has an empty block");
    std::sort(block.begin(), block.end());
    for (AtomIndex w : block) {
      if (w >= n_atoms) throw std::invalid_argument("partition refers to an unknown atom");
      if (block_of_[w] != n_atoms) throw std::invalid_argument("partition blocks overlap");
      block_of_[w] = b;
    }
  }
  for (std::size_t w = 0; w < n_atoms; ++w) {
    if (block_of_[w] == n_atoms) throw std::invalid_argument("partition does not cover every atom");
  }
}

Partition Partition::trivial(std::size_t n_atoms) {
  Block all(n_atoms);
  std::iota(all.begin(), all.end(), AtomIndex{0});
  return Partition({std::move(all)}, n_atoms);
}

Partition Partition::discrete(std::size_t n_atoms) {
  std::vector<Block> blocks;
  for (AtomIndex w = 0; w < n_atoms; ++w) blocks.push_back({w});
  return Partition(std::move(blocks), n_atoms);
}

bool Partition::refines(const Partition& coarser) const {
  for (const auto& block : blocks_) {
    const auto target = coarser.block_of(block.front());
    for (AtomIndex w : block) {
      if (coarser.block_of(w) != target) return false;
    }
  }
  return true;
}

bool Partition::measurable(const std::vector<bool>& event) const {
  for (const auto& block : blocks_) {
    for (AtomIndex w : block) {
      if (event[w] != event[block.front()]) return false;
    }
  }
  return true;
}

bool Partition::measurable(std::span<const Rational> values) const {
  for (const auto& block : blocks_) {
    for (AtomIndex w : block) {
      if (values[w] != values[block.front()]) return false;
    }
  }
  return true;
}

Filtration::Filtration(std::vector<Partition> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw std::invalid_argument("filtration needs at least one partition");
  for (std::size_t t = 1; t < parts_.size(); ++t) {
    if (!parts_[t].refines(parts_[t - 1])) {
      throw InputError("non_refining", "filtration[" + std::to_string(t) + "]",
                       "partition at time " + std::to_string(t) +
                           " does not refine the one at time " + std::to_string(t - 1));
    }
  }
}

Process::Process(std::size_t atoms, Time horizon, std::size_t dim, const Rational& fill)
    : atoms_(atoms),
      horizon_(horizon),
      dim_(dim),
      data_(atoms * static_cast<std::size_t>(horizon + 1) * dim, fill) {}

Rational Process::increment(AtomIndex w, Time t, std::size_t k) const {
  if (t == 0) return 0;
  return (*this)(w, t, k) - (*this)(w, t - 1, k);
}

AtomVector Process::slice(Time t, std::size_t k) const {
  AtomVector out(atoms_);
  for (AtomIndex w = 0; w < atoms_; ++w) out[w] = (*this)(w, t, k);
  return out;
}

void Process::set_slice(Time t, std::span<const Rational> values, std::size_t k) {
  for (AtomIndex w = 0; w < atoms_; ++w) (*this)(w, t, k) = values[w];
}

Process Process::component(std::size_t k) const {
  Process out(atoms_, horizon_, 1);
  for (Time t = 0; t <= horizon_; ++t) {
    for (AtomIndex w = 0; w < atoms_; ++w) out(w, t) = (*this)(w, t, k);
  }
  return out;
}

Process& Process::operator+=(const Process& other) {
  if (other.data_.size() != data_.size()) throw std::invalid_argument("process shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  predictable_ = predictable_ && other.predictable_;
  return *this;
}

Process& Process::operator-=(const Process& other) {
  if (other.data_.size() != data_.size()) throw std::invalid_argument("process shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  predictable_ = predictable_ && other.predictable_;
  return *this;
}

Process& Process::operator*=(const Rational& c) {
  for (auto& v : data_) v *= c;
  return *this;
}

Process operator+(Process a, const Process& b) { return a += b; }
Process operator-(Process a, const Process& b) { return a -= b; }
Process operator*(const Rational& c, Process a) { return a *= c; }

Process increments(const Process& x) {
  Process out(x.atoms(), x.horizon(), x.dim());
  for (Time t = 1; t <= x.horizon(); ++t) {
    for (AtomIndex w = 0; w < x.atoms(); ++w) {
      for (std::size_t k = 0; k < x.dim(); ++k) out(w, t, k) = x.increment(w, t, k);
    }
  }
  return out;
}

Process cumulate(const Process& inc) {
  Process out(inc.atoms(), inc.horizon(), inc.dim());
  for (Time t = 0; t <= inc.horizon(); ++t) {
    for (AtomIndex w = 0; w < inc.atoms(); ++w) {
      for (std::size_t k = 0; k < inc.dim(); ++k) {
        out(w, t, k) = (t == 0 ? Rational(0) : out(w, t - 1, k)) + inc(w, t, k);
      }
    }
  }
  return out;
}

Process hadamard(const Process& a, const Process& b) {
  const bool scalar_a = a.dim() == 1 && b.dim() != 1;
  if (!scalar_a && a.dim() != b.dim()) throw std::invalid_argument("hadamard: dimension mismatch");
  Process out(b.atoms(), b.horizon(), b.dim());
  for (Time t = 0; t <= b.horizon(); ++t) {
    for (AtomIndex w = 0; w < b.atoms(); ++w) {
      for (std::size_t k = 0; k < b.dim(); ++k) {
        out(w, t, k) = a(w, t, scalar_a ? 0 : k) * b(w, t, k);
      }
    }
  }
  return out;
}

Process constant_process(std::size_t atoms, Time horizon, const Rational& c, std::size_t dim) {
  Process out(atoms, horizon, dim, c);
  out.set_predictable_flag(true);
  return out;
}

Process time_constant(std::span<const Rational> values, Time horizon) {
  Process out(values.size(), horizon);
  for (Time t = 0; t <= horizon; ++t) out.set_slice(t, values);
  return out;
}

std::vector<bool> RandomTime::at_most(Time t) const {
  std::vector<bool> out(value.size());
  for (std::size_t w = 0; w < value.size(); ++w) out[w] = value[w] <= t;
  return out;
}

AtomVector condexp(std::span<const Rational> x, const Partition& blocks,
                   std::span<const Rational> weights) {
  AtomVector out(x.size());
  for (const auto& block : blocks.blocks()) {
    Rational mass = 0;
    Rational sum = 0;
    for (AtomIndex w : block) {
      mass += weights[w];
      sum += weights[w] * x[w];
    }
    const Rational value = is_zero(mass) ? Rational(0) : Rational(sum / mass);
    for (AtomIndex w : block) out[w] = value;
  }
  return out;
}

bool check_stopping_time(const RandomTime& sigma, const Filtration& filt) {
  for (Time t = 0; t <= filt.horizon(); ++t) {
    if (!filt.at(t).measurable(sigma.at_most(t))) return false;
  }
  return true;
}

Process stop(const Process& x, const RandomTime& sigma) {
  Process out(x.atoms(), x.horizon(), x.dim());
  for (Time t = 0; t <= x.horizon(); ++t) {
    for (AtomIndex w = 0; w < x.atoms(); ++w) {
      const Time s = std::min(t, sigma.value[w]);
      for (std::size_t k = 0; k < x.dim(); ++k) out(w, t, k) = x(w, s, k);
    }
  }
  return out;
}

namespace {

bool constant_on(const Process& x, Time t, const Partition& blocks, AtomIndex* bad) {
  for (const auto& block : blocks.blocks()) {
    for (AtomIndex w : block) {
      for (std::size_t k = 0; k < x.dim(); ++k) {
        if (x(w, t, k) != x(block.front(), t, k)) {
          if (bad != nullptr) *bad = w;
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

bool is_adapted(const Process& x, const Filtration& filt) {
  for (Time t = 0; t <= x.horizon(); ++t) {
    if (!constant_on(x, t, filt.at(t), nullptr)) return false;
  }
  return true;
}

bool is_predictable(const Process& x, const Filtration& filt) {
  for (Time t = 0; t <= x.horizon(); ++t) {
    if (!constant_on(x, t, filt.before(t), nullptr)) return false;
  }
  return true;
}

void require_adapted(const Process& x, const Filtration& filt, const FiniteSpace& space,
                     std::string_view what) {
  if (x.atoms() != space.size() || x.horizon() != filt.horizon()) {
    throw InputError("schema", std::string(what), std::string(what) + " has the wrong shape");
  }
  for (Time t = 0; t <= x.horizon(); ++t) {
    AtomIndex bad = 0;
    if (!constant_on(x, t, filt.at(t), &bad)) {
      throw InputError("not_adapted", std::string(what) + "[" + space.atom(bad) + "][" +
                                          std::to_string(t) + "]",
                       std::string(what) + " is not adapted at time " + std::to_string(t));
    }
  }
}

}  // namespace azema
