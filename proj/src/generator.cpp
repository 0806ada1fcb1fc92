#include "azema/generator.hpp"

#include <algorithm>

#include "azema/projections.hpp"

namespace azema {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(engine_() % span);
}

Rational Rng::small_rational(int max_num, int max_den) {
  Rational q(static_cast<long>(uniform(-max_num, max_num)), static_cast<unsigned long>(uniform(1, max_den)));
  q.canonicalize();
  return q;
}

Instance random_instance(Rng& rng, const RandomInstanceLimits& limits) {
  const Time horizon = static_cast<Time>(rng.uniform(1, limits.max_horizon));
  const std::size_t dim = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(limits.max_dim)));

  // Grow the event tree level by level; lineage[t][leaf] = level-t block id.
  std::vector<std::size_t> level_of_leaf{0};
  std::vector<std::vector<std::size_t>> ancestry{{0}};
  for (Time t = 1; t <= horizon; ++t) {
    std::vector<std::size_t> next;
    std::vector<std::size_t> parent;
    const std::size_t blocks = level_of_leaf.size();
    for (std::size_t b = 0; b < blocks; ++b) {
      const std::size_t remaining_parents = blocks - b - 1;
      const std::size_t budget = limits.max_atoms - next.size() - remaining_parents;
      const std::size_t cap = std::min(limits.max_branching, budget);
      const auto branches = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(cap)));
      for (std::size_t c = 0; c < branches; ++c) {
        next.push_back(next.size());
        parent.push_back(b);
      }
    }
    level_of_leaf = next;
    ancestry.push_back(parent);
  }

  // Terminal blocks hold one atom, occasionally two.
  std::vector<std::size_t> leaf_of_atom;
  for (std::size_t leaf = 0; leaf < level_of_leaf.size(); ++leaf) {
    leaf_of_atom.push_back(leaf);
    if (leaf_of_atom.size() + (level_of_leaf.size() - leaf - 1) < limits.max_atoms &&
        rng.uniform(0, 5) == 0) {
      leaf_of_atom.push_back(leaf);
    }
  }
  const std::size_t n = leaf_of_atom.size();

  std::vector<Partition> parts(static_cast<std::size_t>(horizon + 1));
  std::vector<std::size_t> block_id(leaf_of_atom);
  for (Time t = horizon; t >= 0; --t) {
    std::size_t count = 0;
    for (auto id : block_id) count = std::max(count, id + 1);
    std::vector<Block> blocks(count);
    for (AtomIndex w = 0; w < n; ++w) blocks[block_id[w]].push_back(w);
    std::erase_if(blocks, [](const Block& b) { return b.empty(); });
    parts[static_cast<std::size_t>(t)] = Partition(std::move(blocks), n);
    if (t > 0) {
      for (auto& id : block_id) id = ancestry[static_cast<std::size_t>(t)][id];
    }
  }

  std::vector<std::int64_t> units(n, 1);
  for (std::int64_t extra = limits.prob_denominator - static_cast<std::int64_t>(n); extra > 0; --extra) {
    ++units[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1))];
  }
  AtomVector prob(n);
  std::vector<std::string> names(n);
  for (AtomIndex w = 0; w < n; ++w) {
    prob[w] = Rational(static_cast<long>(units[w]), static_cast<unsigned long>(limits.prob_denominator));
    prob[w].canonicalize();
    names[w] = "w" + std::to_string(w);
  }

  RandomTime tau;
  for (AtomIndex w = 0; w < n; ++w) {
    const auto v = static_cast<Time>(rng.uniform(0, horizon + 1));
    tau.value.push_back(v == horizon + 1 ? kInfinity : v);
  }

  FiniteSpace space(std::move(names), std::move(prob), horizon);
  Filtration f(std::move(parts));
  Process martingale = random_martingale(f, space.prob(), dim, rng);
  Process s = rng.coin() ? random_martingale(f, space.prob(), dim, rng) : random_adapted(f, n, dim, rng);
  return Instance{std::move(space), std::move(f), std::move(tau), std::move(s), std::move(martingale)};
}

Process random_martingale(const Filtration& f, std::span<const Rational> prob, std::size_t dim,
                          Rng& rng) {
  const std::size_t n = prob.size();
  const Time horizon = f.horizon();
  Process out(n, horizon, dim);
  for (std::size_t k = 0; k < dim; ++k) {
    AtomVector terminal(n);
    for (const auto& block : f.at(horizon).blocks()) {
      const Rational v = rng.small_rational(4, 3);
      for (AtomIndex w : block) terminal[w] = v;
    }
    for (Time t = 0; t <= horizon; ++t) out.set_slice(t, condexp(terminal, f.at(t), prob), k);
  }
  return out;
}

Process random_adapted(const Filtration& f, std::size_t atoms, std::size_t dim, Rng& rng) {
  Process out(atoms, f.horizon(), dim);
  for (Time t = 0; t <= f.horizon(); ++t) {
    for (std::size_t k = 0; k < dim; ++k) {
      for (const auto& block : f.at(t).blocks()) {
        const Rational v = rng.small_rational(4, 2);
        for (AtomIndex w : block) out(w, t, k) = v;
      }
    }
  }
  return out;
}

Process random_predictable_nonconstant(const Filtration& f, std::size_t atoms, Rng& rng) {
  Process inc(atoms, f.horizon());
  bool nonzero = false;
  for (Time t = 1; t <= f.horizon(); ++t) {
    for (const auto& block : f.at(t - 1).blocks()) {
      const Rational v = rng.small_rational(3, 2);
      nonzero = nonzero || !is_zero(v);
      for (AtomIndex w : block) inc(w, t) = v;
    }
  }
  if (!nonzero) {
    const Time t = static_cast<Time>(rng.uniform(1, f.horizon()));
    const auto& blocks = f.at(t - 1).blocks();
    const auto& block = blocks[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(blocks.size()) - 1))];
    const Rational v = rng.coin() ? 1 : -1;
    for (AtomIndex w : block) inc(w, t) = v;
  }
  Process out = cumulate(inc);
  out.set_predictable_flag(true);
  return out;
}

}  // namespace azema
