#include "riordan/linear_solve.hpp"

#include <map>

namespace riordan {

namespace {

struct Row {
  std::vector<Rational> coeffs;
  Rational rhs;
};

class Elimination {
 public:
  explicit Elimination(std::size_t unknowns) : unknowns_(unknowns) {}

  // Returns false when the row contradicts the rows already accepted.
  bool add(Row row, std::optional<std::size_t>& new_pivot) {
    new_pivot.reset();
    for (const auto& [col, pivot] : pivots_) {
      if (row.coeffs[col].is_zero()) continue;
      const Rational factor = row.coeffs[col];
      for (std::size_t j = 0; j < unknowns_; ++j)
        if (!pivot.coeffs[j].is_zero()) row.coeffs[j] -= factor * pivot.coeffs[j];
      row.rhs -= factor * pivot.rhs;
    }
    // Pivot on the highest unknown so that lower coefficients left free by
    // their own degree stay free (and end up zero).
    std::optional<std::size_t> col;
    for (std::size_t j = unknowns_; j-- > 0;)
      if (!row.coeffs[j].is_zero()) {
        col = j;
        break;
      }
    if (!col) return row.rhs.is_zero();
    const Rational lead = row.coeffs[*col];
    for (auto& c : row.coeffs) c /= lead;
    row.rhs /= lead;
    for (auto& [other_col, other] : pivots_) {
      const Rational factor = other.coeffs[*col];
      if (factor.is_zero()) continue;
      for (std::size_t j = 0; j < unknowns_; ++j)
        if (!row.coeffs[j].is_zero()) other.coeffs[j] -= factor * row.coeffs[j];
      other.rhs -= factor * row.rhs;
    }
    pivots_.emplace(*col, std::move(row));
    new_pivot = col;
    return true;
  }

  Fps solution(std::size_t order) const {
    std::vector<Rational> x(unknowns_, Rational(0));
    for (const auto& [col, row] : pivots_) x[col] = row.rhs;
    return Fps(order, std::move(x));
  }

 private:
  std::size_t unknowns_;
  std::map<std::size_t, Row> pivots_;
};

}  // namespace

LinearSolveOutcome solve_linear_series(std::size_t order, std::span<const LinearEquation> equations,
                                       std::span<const std::pair<std::size_t, Rational>> seeds) {
  const std::size_t unknowns = order + 1;
  LinearSolveOutcome out;
  Elimination elim(unknowns);

  for (const auto& [degree, value] : seeds) {
    Row row{std::vector<Rational>(unknowns, Rational(0)), value};
    row.coeffs.at(degree) = Rational(1);
    std::optional<std::size_t> pivot;
    if (!elim.add(std::move(row), pivot)) {
      out.inconsistent_degree = degree;
      out.log.push_back("seed x_" + std::to_string(degree) + " contradicts earlier seeds");
      return out;
    }
    out.log.push_back("seed x_" + std::to_string(degree) + " = " + value.to_string());
  }

  // Column k of equation e is L_e(t^k) - L_e(0); the right-hand side is -L_e(0).
  struct Columns {
    Fps offset;
    std::vector<Fps> cols;
  };
  std::vector<Columns> tables;
  tables.reserve(equations.size());
  for (const auto& eq : equations) {
    Columns c{eq.apply(Fps::zero(order)), {}};
    c.cols.reserve(unknowns);
    for (std::size_t k = 0; k < unknowns; ++k)
      c.cols.push_back(sub(eq.apply(Fps::monomial(Rational(1), k, order)), c.offset));
    tables.push_back(std::move(c));
  }

  for (std::size_t d = 0; d <= order; ++d) {
    std::vector<std::size_t> determined;
    for (std::size_t e = 0; e < equations.size(); ++e) {
      if (d > equations[e].max_degree) continue;
      Row row{std::vector<Rational>(unknowns, Rational(0)), -tables[e].offset[d]};
      for (std::size_t k = 0; k < unknowns; ++k) row.coeffs[k] = tables[e].cols[k][d];
      std::optional<std::size_t> pivot;
      if (!elim.add(std::move(row), pivot)) {
        out.inconsistent_degree = d;
        out.log.push_back("degree " + std::to_string(d) + ": equation " + std::to_string(e) +
                          " is inconsistent");
        return out;
      }
      if (pivot) determined.push_back(*pivot);
    }
    std::string line = "degree " + std::to_string(d) + ":";
    if (determined.empty()) line += " no new constraint";
    for (auto k : determined) line += " fixes x_" + std::to_string(k);
    out.log.push_back(std::move(line));
  }
  out.solution = elim.solution(order);
  return out;
}

}  // namespace riordan
