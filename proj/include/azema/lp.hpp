#pragma once

#include <vector>

#include "azema/rational.hpp"

namespace azema::lp {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class Status { kOptimal, kInfeasible, kUnbounded };

/// maximize c.x subject to rows[i].x (rel[i]) rhs[i], x_j >= 0 unless free[j].
struct Problem {
  std::size_t n_vars = 0;
  std::vector<Rational> objective;
  std::vector<bool> free;
  std::vector<std::vector<Rational>> rows;
  std::vector<Relation> relations;
  std::vector<Rational> rhs;

  explicit Problem(std::size_t n = 0) : n_vars(n), objective(n), free(n, false) {}
  void add_row(std::vector<Rational> coeffs, Relation rel, Rational b);
};

struct Solution {
  Status status = Status::kInfeasible;
  Rational value;              ///< objective at optimum
  std::vector<Rational> x;     ///< optimal point, or the base point of the ray
  std::vector<Rational> ray;   ///< improving recession direction when unbounded
};

/// Exact two-phase primal simplex with Bland's anti-cycling rule.
Solution solve(const Problem& problem);

}  // namespace azema::lp
