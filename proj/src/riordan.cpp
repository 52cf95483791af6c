#include "riordan/riordan.hpp"

#include <string>

namespace riordan {

Fps fps_from(std::size_t order, std::initializer_list<Rational> coeffs) {
  return Fps(order, std::vector<Rational>(coeffs));
}

RiordanPair RiordanPair::make(Fps g, Fps f) {
  if (g.order() != f.order())
    throw Error(ErrorCode::OrderMismatch, "g and f must share a truncation order");
  if (g[0].is_zero()) throw Error(ErrorCode::G0Zero, "Riordan pair needs g(0) != 0");
  if (!f[0].is_zero()) throw Error(ErrorCode::F0Nonzero, "Riordan pair needs f(0) = 0");
  if (f.order() == 0 || f[1].is_zero())
    throw Error(ErrorCode::F1Zero, "Riordan pair needs f'(0) != 0");
  return RiordanPair(std::move(g), std::move(f));
}

RiordanPair RiordanPair::identity(std::size_t order) { return scalar(Rational(1), order); }

RiordanPair RiordanPair::scalar(const Rational& s, std::size_t order) {
  return make(Fps::constant(s, order), Fps::variable(order));
}

RiordanPair RiordanPair::alternating(std::size_t order) {
  return make(Fps::one(order), negate(Fps::variable(order)));
}

RiordanPair RiordanPair::truncate(std::size_t order) const {
  return make(g_.truncate(order), f_.truncate(order));
}

RiordanPair multiply(const RiordanPair& p, const RiordanPair& q) {
  if (p.order() != q.order())
    throw Error(ErrorCode::OrderMismatch, "Riordan pairs of different orders");
  return RiordanPair::make(mul(p.g(), compose(q.g(), p.f())), compose(q.f(), p.f()));
}

RiordanPair inverse(const RiordanPair& p) {
  Fps fbar = revert(p.f());
  Fps g = recip(compose(p.g(), fbar));
  return RiordanPair::make(std::move(g), std::move(fbar));
}

RiordanPair conjugate(const RiordanPair& p, const RiordanPair& x) {
  return multiply(multiply(inverse(x), p), x);
}

RiordanPair commutator(const RiordanPair& p, const RiordanPair& q) {
  return multiply(multiply(inverse(p), inverse(q)), multiply(p, q));
}

RiordanPair scalar_multiple(const Rational& s, const RiordanPair& p) {
  return RiordanPair::make(scale(p.g(), s), p.f());
}

bool is_scalar(const RiordanPair& p) {
  const std::size_t n = p.order();
  if (!(p.f() == Fps::variable(n))) return false;
  const Rational& g0 = p.g()[0];
  return (g0 == Rational(1) || g0 == Rational(-1)) && p.g() == Fps::constant(g0, n);
}

Rational diagonal_entry(const RiordanPair& p, std::size_t n) {
  return p.g()[0] * p.f()[1].pow(static_cast<long>(n));
}

std::string_view to_string(DiagonalPattern pattern) {
  switch (pattern) {
    case DiagonalPattern::AllOnes: return "AllOnes";
    case DiagonalPattern::AllMinusOnes: return "AllMinusOnes";
    case DiagonalPattern::AlternatingPlusFirst: return "AlternatingPlusFirst";
    case DiagonalPattern::AlternatingMinusFirst: return "AlternatingMinusFirst";
    case DiagonalPattern::Other: return "Other";
  }
  return "Other";
}

DiagonalPattern diagonal_pattern(const RiordanPair& p) {
  const Rational& g0 = p.g()[0];
  const Rational& f1 = p.f()[1];
  const Rational one(1), minus_one(-1);
  if (f1 == one) {
    if (g0 == one) return DiagonalPattern::AllOnes;
    if (g0 == minus_one) return DiagonalPattern::AllMinusOnes;
  } else if (f1 == minus_one) {
    if (g0 == one) return DiagonalPattern::AlternatingPlusFirst;
    if (g0 == minus_one) return DiagonalPattern::AlternatingMinusFirst;
  }
  return DiagonalPattern::Other;
}

bool in_commutator_subgroup(const RiordanPair& p) {
  return diagonal_pattern(p) == DiagonalPattern::AllOnes;
}

RiordanMatrix::RiordanMatrix(std::size_t size, std::vector<Rational> entries)
    : size_(size), entries_(std::move(entries)) {
  if (entries_.size() != size_ * size_)
    throw Error(ErrorCode::InvalidArgument, "matrix entry count does not match its size");
}

RiordanMatrix to_matrix(const RiordanPair& p, std::size_t size) {
  if (size > p.order() + 1)
    throw Error(ErrorCode::MatrixTooLarge,
                "matrix size " + std::to_string(size) + " exceeds truncation order + 1 = " +
                    std::to_string(p.order() + 1));
  std::vector<Rational> entries(size * size, Rational(0));
  Fps column = p.g();
  for (std::size_t k = 0; k < size; ++k) {
    for (std::size_t n = k; n < size; ++n) entries[n * size + k] = column[n];
    column = mul(column, p.f());
  }
  return RiordanMatrix(size, std::move(entries));
}

}  // namespace riordan
