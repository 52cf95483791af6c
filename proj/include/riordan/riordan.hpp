#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "riordan/fps.hpp"

namespace riordan {

// A Riordan array (g, f): column k of the matrix has generating function g f^k.
// Invariants: g(0) != 0, f(0) = 0, f'(0) != 0, equal orders.
class RiordanPair {
 public:
  // Validates; throws Error with G0Zero, F0Nonzero, F1Zero or OrderMismatch.
  static RiordanPair make(Fps g, Fps f);

  static RiordanPair identity(std::size_t order);
  // (s, t) for a nonzero scalar s; s = -1 gives -I.
  static RiordanPair scalar(const Rational& s, std::size_t order);
  // M = (1, -t).
  static RiordanPair alternating(std::size_t order);

  const Fps& g() const noexcept { return g_; }
  const Fps& f() const noexcept { return f_; }
  std::size_t order() const noexcept { return g_.order(); }

  RiordanPair truncate(std::size_t order) const;

  friend bool operator==(const RiordanPair& a, const RiordanPair& b) {
    return a.g_ == b.g_ && a.f_ == b.f_;
  }

 private:
  RiordanPair(Fps g, Fps f) : g_(std::move(g)), f_(std::move(f)) {}
  Fps g_;
  Fps f_;
};

// (g, f)(u, v) = (g * u(f), v(f)).
RiordanPair multiply(const RiordanPair& p, const RiordanPair& q);

// (g, f)^{-1} = (1 / g(fbar), fbar) with fbar the compositional inverse of f.
RiordanPair inverse(const RiordanPair& p);

// p^x := x^{-1} p x.
RiordanPair conjugate(const RiordanPair& p, const RiordanPair& x);

// [p, q] := p^{-1} q^{-1} p q.
RiordanPair commutator(const RiordanPair& p, const RiordanPair& q);

// (s g, f): the product with the scalar array s I.
RiordanPair scalar_multiple(const Rational& s, const RiordanPair& p);

bool is_scalar(const RiordanPair& p);

// n-th main-diagonal entry g(0) f'(0)^n.
Rational diagonal_entry(const RiordanPair& p, std::size_t n);

enum class DiagonalPattern {
  AllOnes,
  AllMinusOnes,
  AlternatingPlusFirst,
  AlternatingMinusFirst,
  Other,
};

std::string_view to_string(DiagonalPattern pattern);

DiagonalPattern diagonal_pattern(const RiordanPair& p);

// Membership in the commutator subgroup: all-ones main diagonal.
bool in_commutator_subgroup(const RiordanPair& p);

// K x K lower-triangular leading block of a Riordan array.
class RiordanMatrix {
 public:
  RiordanMatrix(std::size_t size, std::vector<Rational> entries);

  std::size_t size() const noexcept { return size_; }
  const Rational& at(std::size_t row, std::size_t col) const { return entries_.at(row * size_ + col); }

  friend bool operator==(const RiordanMatrix&, const RiordanMatrix&) = default;

 private:
  std::size_t size_;
  std::vector<Rational> entries_;  // row-major
};

// entries[n][k] = [t^n] g f^k; requires size <= order + 1.
RiordanMatrix to_matrix(const RiordanPair& p, std::size_t size);

}  // namespace riordan
