#include "azema/lp.hpp"

#include <stdexcept>

namespace azema::lp {

void Problem::add_row(std::vector<Rational> coeffs, Relation rel, Rational b) {
  if (coeffs.size() != n_vars) throw std::invalid_argument("lp: row width mismatch");
  rows.push_back(std::move(coeffs));
  relations.push_back(rel);
  rhs.push_back(std::move(b));
}

namespace {

// Dense tableau in standard form: T[i] = row i over all columns, last column
// is the right-hand side. Row `m` is the objective row holding reduced costs
// (-c_j for a maximization) and minus the current objective value.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : m_(rows), n_(cols), t_(rows + 1, std::vector<Rational>(cols + 1)), basis_(rows) {}

  Rational& at(std::size_t i, std::size_t j) { return t_[i][j]; }
  Rational& rhs(std::size_t i) { return t_[i][n_]; }
  std::vector<std::size_t>& basis() { return basis_; }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / t_[r][c];
    for (auto& v : t_[r]) v *= inv;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r || is_zero(t_[i][c])) continue;
      const Rational f = t_[i][c];
      for (std::size_t j = 0; j <= n_; ++j) {
        if (!is_zero(t_[r][j])) t_[i][j] -= f * t_[r][j];
      }
    }
    basis_[r] = c;
  }

  // Loads objective row: reduced cost_j = -c_j + sum_{basic} c_B a_ij.
  void set_objective(const std::vector<Rational>& c) {
    auto& obj = t_[m_];
    for (std::size_t j = 0; j <= n_; ++j) obj[j] = j < n_ ? Rational(-c[j]) : Rational(0);
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational& cb = c[basis_[i]];
      if (is_zero(cb)) continue;
      for (std::size_t j = 0; j <= n_; ++j) obj[j] += cb * t_[i][j];
    }
  }

  // Runs simplex iterations over columns in `allowed`. Returns false and the
  // entering column when the objective is unbounded along it.
  bool optimize(const std::vector<bool>& allowed, std::size_t* unbounded_col) {
    for (;;) {
      std::size_t enter = n_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (allowed[j] && sgn(t_[m_][j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == n_) return true;
      std::size_t leave = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(t_[i][enter]) <= 0) continue;
        Rational ratio = t_[i][n_] / t_[i][enter];
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave == m_) {
        *unbounded_col = enter;
        return false;
      }
      pivot(leave, enter);
    }
  }

  void drop_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --m_;
  }

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<std::vector<Rational>> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Solution solve(const Problem& p) {
  const std::size_t m = p.rows.size();

  // Column layout: split variables (x+ and, for free vars, x-), then one
  // slack per inequality, then one artificial per row.
  std::vector<std::size_t> pos_col(p.n_vars), neg_col(p.n_vars, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < p.n_vars; ++j) {
    pos_col[j] = cols++;
    if (p.free[j]) neg_col[j] = cols++;
  }
  std::vector<std::size_t> slack_col(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i) {
    if (p.relations[i] != Relation::kEqual) slack_col[i] = cols++;
  }
  const std::size_t first_artificial = cols;
  cols += m;

  Tableau tab(m, cols);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = sgn(p.rhs[i]) < 0;
    const Rational sign = flip ? -1 : 1;
    for (std::size_t j = 0; j < p.n_vars; ++j) {
      if (is_zero(p.rows[i][j])) continue;
      tab.at(i, pos_col[j]) = sign * p.rows[i][j];
      if (neg_col[j] != SIZE_MAX) tab.at(i, neg_col[j]) = -sign * p.rows[i][j];
    }
    if (slack_col[i] != SIZE_MAX) {
      tab.at(i, slack_col[i]) = p.relations[i] == Relation::kLessEqual ? sign : Rational(-sign);
    }
    tab.at(i, first_artificial + i) = 1;
    tab.rhs(i) = sign * p.rhs[i];
    tab.basis()[i] = first_artificial + i;
  }

  // Phase 1: maximize -sum(artificials).
  std::vector<Rational> phase1(cols);
  for (std::size_t i = 0; i < m; ++i) phase1[first_artificial + i] = -1;
  tab.set_objective(phase1);
  std::vector<bool> allowed(cols, true);
  std::size_t dummy = 0;
  tab.optimize(allowed, &dummy);

  Solution sol;
  sol.x.assign(p.n_vars, 0);
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    if (tab.basis()[i] >= first_artificial && !is_zero(tab.rhs(i))) {
      sol.status = Status::kInfeasible;
      return sol;
    }
  }
  // Drive remaining (zero-level) artificials out of the basis or drop
  // redundant rows.
  for (std::size_t i = 0; i < tab.rows();) {
    if (tab.basis()[i] < first_artificial) {
      ++i;
      continue;
    }
    std::size_t c = first_artificial;
    for (std::size_t j = 0; j < first_artificial; ++j) {
      if (!is_zero(tab.at(i, j))) {
        c = j;
        break;
      }
    }
    if (c == first_artificial) {
      tab.drop_row(i);
    } else {
      tab.pivot(i, c);
      ++i;
    }
  }

  // Phase 2.
  std::vector<Rational> c(cols);
  for (std::size_t j = 0; j < p.n_vars; ++j) {
    c[pos_col[j]] = p.objective[j];
    if (neg_col[j] != SIZE_MAX) c[neg_col[j]] = -p.objective[j];
  }
  tab.set_objective(c);
  for (std::size_t j = first_artificial; j < cols; ++j) allowed[j] = false;
  std::size_t unbounded_col = 0;
  const bool bounded = tab.optimize(allowed, &unbounded_col);

  std::vector<Rational> col_value(cols);
  for (std::size_t i = 0; i < tab.rows(); ++i) col_value[tab.basis()[i]] = tab.rhs(i);
  auto to_original = [&](const std::vector<Rational>& v) {
    std::vector<Rational> out(p.n_vars);
    for (std::size_t j = 0; j < p.n_vars; ++j) {
      out[j] = v[pos_col[j]];
      if (neg_col[j] != SIZE_MAX) out[j] -= v[neg_col[j]];
    }
    return out;
  };
  sol.x = to_original(col_value);

  if (!bounded) {
    std::vector<Rational> dir(cols);
    dir[unbounded_col] = 1;
    for (std::size_t i = 0; i < tab.rows(); ++i) dir[tab.basis()[i]] = -tab.at(i, unbounded_col);
    sol.status = Status::kUnbounded;
    sol.ray = to_original(dir);
    return sol;
  }
  sol.status = Status::kOptimal;
  sol.value = 0;
  for (std::size_t j = 0; j < p.n_vars; ++j) sol.value += p.objective[j] * sol.x[j];
  return sol;
}

}  // namespace azema::lp
