#pragma once

#include <random>
#include <vector>

#include <gmpxx.h>

#include "riordan/involutions.hpp"

namespace testing {

using riordan::Fps;
using riordan::Rational;
using riordan::RiordanPair;

inline Rational random_rational(std::mt19937& rng, long max_num = 4, long max_den = 3) {
  std::uniform_int_distribution<long> num(-max_num, max_num);
  std::uniform_int_distribution<long> den(1, max_den);
  return Rational(num(rng), den(rng));
}

inline Rational random_nonzero(std::mt19937& rng, long max_num = 4, long max_den = 3) {
  Rational r;
  do r = random_rational(rng, max_num, max_den);
  while (r.is_zero());
  return r;
}

// Coefficients from degree `from` up; degrees above `degree` left zero so that
// products stay cheap.
inline Fps random_series(std::mt19937& rng, std::size_t order, std::size_t from = 0,
                         std::size_t degree = 6) {
  std::vector<Rational> c(order + 1, Rational(0));
  for (std::size_t k = from; k <= std::min(order, degree); ++k) c[k] = random_rational(rng);
  return Fps(order, std::move(c));
}

inline Fps random_unit(std::mt19937& rng, std::size_t order) {
  return random_series(rng, order, 0).with_coeff(0, random_nonzero(rng));
}

// f(0) = 0, f'(0) != 0.
inline Fps random_composition_unit(std::mt19937& rng, std::size_t order) {
  return random_series(rng, order, 1).with_coeff(1, random_nonzero(rng));
}

inline Fps random_tangent_to_identity(std::mt19937& rng, std::size_t order) {
  return random_series(rng, order, 2).with_coeff(1, Rational(1));
}

inline RiordanPair random_pair(std::mt19937& rng, std::size_t order) {
  return RiordanPair::make(random_unit(rng, order), random_composition_unit(rng, order));
}

// s^{-1} o (-t) o s: a compositional involution other than t.
inline Fps random_involutive_series(std::mt19937& rng, std::size_t order) {
  Fps s = random_composition_unit(rng, order);
  Fps minus_t = riordan::negate(Fps::variable(order));
  return riordan::compose(riordan::revert(s), riordan::compose(minus_t, s));
}

// (eps, -t)^X = X^{-1} (eps, -t) X.
inline RiordanPair random_involution(std::mt19937& rng, std::size_t order, int eps) {
  const RiordanPair x = random_pair(rng, order);
  const RiordanPair base = RiordanPair::make(Fps::constant(Rational(eps), order),
                                             riordan::negate(Fps::variable(order)));
  return riordan::conjugate(base, x);
}

// Oracles independent of the library's series arithmetic.

inline std::vector<std::vector<mpz_class>> binomial_rows(std::size_t rows) {
  std::vector<std::vector<mpz_class>> c(rows, std::vector<mpz_class>(rows, 0));
  for (std::size_t n = 0; n < rows; ++n) {
    c[n][0] = 1;
    for (std::size_t k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k < n ? c[n - 1][k] : mpz_class(0));
  }
  return c;
}

inline std::vector<mpz_class> catalan(std::size_t count) {
  std::vector<mpz_class> c(count, 0);
  c[0] = 1;
  for (std::size_t n = 0; n + 1 < count; ++n)
    for (std::size_t i = 0; i <= n; ++i) c[n + 1] += c[i] * c[n - i];
  return c;
}

// Naive Cauchy product on plain coefficient vectors.
inline std::vector<mpq_class> naive_mul(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
  std::vector<mpq_class> r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// a(b) by summing a_k b^k term by term.
inline std::vector<mpq_class> naive_compose(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
  std::vector<mpq_class> r(a.size(), 0);
  std::vector<mpq_class> pw(a.size(), 0);
  pw[0] = 1;
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (std::size_t j = 0; j < a.size(); ++j) r[j] += a[k] * pw[j];
    pw = naive_mul(pw, b);
  }
  return r;
}

inline std::vector<mpq_class> raw(const Fps& s) {
  std::vector<mpq_class> r;
  for (const auto& c : s.coeffs()) r.push_back(c.raw());
  return r;
}

// Dense Gaussian elimination over Q for A x = b; returns one solution (free
// variables zero) or nothing when inconsistent.
inline std::optional<std::vector<mpq_class>> dense_solve(std::vector<std::vector<mpq_class>> a,
                                                         std::vector<mpq_class> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const mpq_class f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<mpq_class> x(cols, 0);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i] / a[i][pivot_col[i]];
  return x;
}

}  // namespace testing
