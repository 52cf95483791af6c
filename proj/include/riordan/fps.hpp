#pragma once

// Truncated formal power series over an exact field.
//
// A Series<K> of order N holds the coefficients of t^0 .. t^N. Every identity
// in the library is an identity modulo t^(N+1). Values are immutable once
// built; all operations are free functions returning new values.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "riordan/cyclotomic.hpp"
#include "riordan/error.hpp"
#include "riordan/rational.hpp"

namespace riordan {

inline constexpr std::size_t kDefaultOrder = 16;

template <class K>
class Series {
 public:
  using value_type = K;

  explicit Series(std::size_t order) : order_(order), c_(order + 1, K(0)) {}

  // Missing high coefficients are zero; coefficients beyond `order` are dropped.
  Series(std::size_t order, std::vector<K> coeffs) : order_(order), c_(std::move(coeffs)) {
    c_.resize(order + 1, K(0));
  }

  static Series zero(std::size_t order) { return Series(order); }
  static Series constant(const K& value, std::size_t order) { return Series(order, {value}); }
  static Series one(std::size_t order) { return constant(K(1), order); }
  static Series monomial(const K& value, std::size_t degree, std::size_t order) {
    Series s(order);
    if (degree <= order) s.c_[degree] = value;
    return s;
  }
  // The indeterminate t.
  static Series variable(std::size_t order) { return monomial(K(1), 1, order); }

  std::size_t order() const noexcept { return order_; }
  const K& operator[](std::size_t k) const { return c_.at(k); }
  std::span<const K> coeffs() const noexcept { return c_; }

  // Index of the first nonzero coefficient, or nullopt for the zero series.
  std::optional<std::size_t> valuation() const {
    for (std::size_t k = 0; k <= order_; ++k)
      if (!c_[k].is_zero()) return k;
    return std::nullopt;
  }

  bool is_zero() const { return !valuation().has_value(); }

  Series truncate(std::size_t order) const {
    if (order > order_)
      throw Error(ErrorCode::OrderMismatch, "cannot raise truncation order by truncating");
    return Series(order, std::vector<K>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(order + 1)));
  }

  // Coefficient k replaced; used by solvers that fix one unknown at a time.
  Series with_coeff(std::size_t k, const K& value) const {
    Series s = *this;
    s.c_.at(k) = value;
    return s;
  }

  friend bool operator==(const Series& a, const Series& b) {
    if (a.order_ != b.order_)
      throw Error(ErrorCode::OrderMismatch, "comparing series of different orders");
    return a.c_ == b.c_;
  }

 private:
  std::size_t order_;
  std::vector<K> c_;
};

using Fps = Series<Rational>;
using CyclotomicFps = Series<Cyclotomic>;

namespace detail {

template <class K>
void require_same_order(const Series<K>& a, const Series<K>& b) {
  if (a.order() != b.order())
    throw Error(ErrorCode::OrderMismatch, "series orders differ: " + std::to_string(a.order()) +
                                              " vs " + std::to_string(b.order()));
}

}  // namespace detail

template <class K>
Series<K> add(const Series<K>& a, const Series<K>& b) {
  detail::require_same_order(a, b);
  std::vector<K> r(a.coeffs().begin(), a.coeffs().end());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] += b[k];
  return Series<K>(a.order(), std::move(r));
}

template <class K>
Series<K> negate(const Series<K>& a) {
  std::vector<K> r;
  r.reserve(a.order() + 1);
  for (const auto& c : a.coeffs()) r.push_back(-c);
  return Series<K>(a.order(), std::move(r));
}

template <class K>
Series<K> sub(const Series<K>& a, const Series<K>& b) {
  return add(a, negate(b));
}

template <class K>
Series<K> scale(const Series<K>& a, const K& s) {
  std::vector<K> r;
  r.reserve(a.order() + 1);
  for (const auto& c : a.coeffs()) r.push_back(c * s);
  return Series<K>(a.order(), std::move(r));
}

// Cauchy product, truncated at the common order.
template <class K>
Series<K> mul(const Series<K>& a, const Series<K>& b) {
  detail::require_same_order(a, b);
  const std::size_t n = a.order();
  std::vector<K> r(n + 1, K(0));
  for (std::size_t i = 0; i <= n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j <= n; ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  return Series<K>(n, std::move(r));
}

template <class K>
Series<K> operator+(const Series<K>& a, const Series<K>& b) { return add(a, b); }
template <class K>
Series<K> operator-(const Series<K>& a, const Series<K>& b) { return sub(a, b); }
template <class K>
Series<K> operator-(const Series<K>& a) { return negate(a); }
template <class K>
Series<K> operator*(const Series<K>& a, const Series<K>& b) { return mul(a, b); }

// Multiply by t^v (coefficients pushed past the order are dropped).
template <class K>
Series<K> shift_up(const Series<K>& a, std::size_t v) {
  std::vector<K> r(a.order() + 1, K(0));
  for (std::size_t k = 0; k + v <= a.order(); ++k) r[k + v] = a[k];
  return Series<K>(a.order(), std::move(r));
}

// Divide by t^v, assuming the low v coefficients vanish. The top v
// coefficients of the result are unknown from the input and set to zero.
template <class K>
Series<K> shift_down(const Series<K>& a, std::size_t v) {
  std::vector<K> r(a.order() + 1, K(0));
  for (std::size_t k = v; k <= a.order(); ++k) r[k - v] = a[k];
  return Series<K>(a.order(), std::move(r));
}

template <class K>
Series<K> recip(const Series<K>& a) {
  if (a[0].is_zero())
    throw Error(ErrorCode::ZeroConstantTerm, "reciprocal of a series with zero constant term");
  const std::size_t n = a.order();
  const K inv0 = K(1) / a[0];
  std::vector<K> r(n + 1, K(0));
  r[0] = inv0;
  for (std::size_t k = 1; k <= n; ++k) {
    K acc(0);
    for (std::size_t j = 1; j <= k; ++j)
      if (!a[j].is_zero()) acc += a[j] * r[k - j];
    r[k] = -(acc * inv0);
  }
  return Series<K>(n, std::move(r));
}

// a / b after cancelling t^valuation(b). With v = valuation(b) the result is
// exact through degree N - v, and b * result = a holds through degree N.
template <class K>
Series<K> divide(const Series<K>& a, const Series<K>& b) {
  detail::require_same_order(a, b);
  const auto vb = b.valuation();
  if (!vb) throw Error(ErrorCode::DivisionByZero, "division by the zero series");
  const auto va = a.valuation();
  if (!va) return Series<K>::zero(a.order());
  if (*va < *vb)
    throw Error(ErrorCode::ValuationTooHigh,
                "divisor valuation " + std::to_string(*vb) + " exceeds dividend valuation " +
                    std::to_string(*va));
  return mul(shift_down(a, *vb), recip(shift_down(b, *vb)));
}

template <class K>
Series<K> power(const Series<K>& a, long exponent) {
  if (exponent < 0) return power(recip(a), -exponent);
  Series<K> result = Series<K>::one(a.order());
  Series<K> base = a;
  for (unsigned long e = static_cast<unsigned long>(exponent); e != 0; e >>= 1) {
    if (e & 1U) result = mul(result, base);
    if (e > 1) base = mul(base, base);
  }
  return result;
}

// a(b(t)) by Horner's scheme; requires b(0) = 0.
template <class K>
Series<K> compose(const Series<K>& a, const Series<K>& b) {
  detail::require_same_order(a, b);
  if (!b[0].is_zero())
    throw Error(ErrorCode::NonzeroConstantTerm, "inner series of a composition must vanish at 0");
  const std::size_t n = a.order();
  Series<K> r = Series<K>::constant(a[n], n);
  for (std::size_t k = n; k-- > 0;) r = add(mul(r, b), Series<K>::constant(a[k], n));
  return r;
}

// Compositional inverse by Lagrange inversion: [t^n] f^{-1} = (1/n) [t^{n-1}] (t/f)^n.
template <class K>
Series<K> revert(const Series<K>& f) {
  if (!f[0].is_zero())
    throw Error(ErrorCode::NonzeroConstantTerm, "reversion needs f(0) = 0");
  if (f.order() == 0) return f;
  if (f[1].is_zero()) throw Error(ErrorCode::NotInvertible, "reversion needs f'(0) != 0");
  const std::size_t n = f.order();
  const Series<K> phi = recip(shift_down(f, 1));  // t / f, exact through degree N-1
  std::vector<K> r(n + 1, K(0));
  Series<K> pw = Series<K>::one(n);
  for (std::size_t k = 1; k <= n; ++k) {
    pw = mul(pw, phi);
    r[k] = pw[k - 1] / K(static_cast<long>(k));
  }
  return Series<K>(n, std::move(r));
}

// Coefficient k of the result is (k+1) a_{k+1}. The top coefficient would need
// a_{N+1} and is set to zero: the result is reliable through degree N-1.
template <class K>
Series<K> derivative(const Series<K>& a) {
  const std::size_t n = a.order();
  std::vector<K> r(n + 1, K(0));
  for (std::size_t k = 0; k < n; ++k) r[k] = a[k + 1] * K(static_cast<long>(k + 1));
  return Series<K>(n, std::move(r));
}

// a^alpha for a(0) = 1 and rational alpha, via the J.C.P. Miller recurrence
// r_k = (1/k) sum_{j=1..k} ((alpha+1) j - k) a_j r_{k-j}.
template <class K>
Series<K> unit_power(const Series<K>& a, const Rational& alpha) {
  if (!(a[0] == K(1)))
    throw Error(ErrorCode::NotUnitConstant, "rational power needs constant term 1");
  const std::size_t n = a.order();
  std::vector<K> r(n + 1, K(0));
  r[0] = K(1);
  const Rational alpha1 = alpha + Rational(1);
  for (std::size_t k = 1; k <= n; ++k) {
    K acc(0);
    for (std::size_t j = 1; j <= k; ++j) {
      if (a[j].is_zero()) continue;
      const Rational w = alpha1 * Rational(static_cast<long>(j)) - Rational(static_cast<long>(k));
      if (w.is_zero()) continue;
      acc += K(w) * a[j] * r[k - j];
    }
    r[k] = acc / K(static_cast<long>(k));
  }
  return Series<K>(n, std::move(r));
}

// The unique r with r(0) = 1 and r^n = a.
template <class K>
Series<K> nth_root(const Series<K>& a, long n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "root index must be positive");
  return unit_power(a, Rational(1, n));
}

template <class To, class From>
Series<To> lift(const Series<From>& a) {
  std::vector<To> r;
  r.reserve(a.order() + 1);
  for (const auto& c : a.coeffs()) r.push_back(To(c));
  return Series<To>(a.order(), std::move(r));
}

// Convenience builders for rational series.
Fps fps_from(std::size_t order, std::initializer_list<Rational> coeffs);

}  // namespace riordan
