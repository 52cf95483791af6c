#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "riordan/involutions.hpp"

namespace riordan {

// -t (1 + lambda t^p)^(-1/p), optionally with the conjugator s that carries a
// fitted series onto it (s^{-1} o f o s = series).
struct NormalFormDescriptor {
  long p = 1;
  Rational lambda;
  Fps series;
  std::optional<Fps> conjugator;
};

NormalFormDescriptor normal_form_series(long p, const Rational& lambda, std::size_t order);

enum class ReversibilityVerdict { Reversible, ObstructedAtDegree, MultiplierObstruction };

std::string_view to_string(ReversibilityVerdict verdict);

// Reversibility of f in the composition group, decided through degree N.
//
// A reverser u (f o u = u o fbar) must have u'(0)^p = -1, where p + 1 is the
// valuation of f o f - t (multiplier -1) or of f - t (multiplier 1). For even p
// no rational u exists, so witnesses live in Q(z), z = exp(i pi / p); the
// field is reported alongside the witness (null field means Q).
struct ReversibilityReport {
  ReversibilityVerdict verdict = ReversibilityVerdict::MultiplierObstruction;
  std::optional<CyclotomicFps> witness;
  std::shared_ptr<const CyclotomicField> witness_field;
  std::size_t obstruction_degree = 0;
  std::vector<std::string> details;

  bool reversible() const { return verdict == ReversibilityVerdict::Reversible; }
};

ReversibilityReport is_series_reversible(const Fps& f);

struct NormalFormFit {
  std::optional<NormalFormDescriptor> descriptor;  // with conjugator, when found
  std::optional<std::size_t> obstruction_degree;
  std::string reason;
  std::vector<std::string> log;

  bool found() const { return descriptor.has_value(); }
};

// For f = -t + ...: finds p, lambda and s with s'(0) = 1 and
// s^{-1} o f o s = -t (1 + lambda t^p)^(-1/p), verified exactly.
NormalFormFit conjugate_to_normal_form(const Fps& f);

// Necessary conditions only: +-1 diagonal and a reversible f-part. Passing does
// not prove the array reversible.
struct ReversibilityScreen {
  DiagonalPattern pattern = DiagonalPattern::Other;
  bool diagonal_ok = false;
  ReversibilityReport series;
  bool passes() const { return diagonal_ok && series.reversible(); }
};

ReversibilityScreen riordan_reversibility_screen(const RiordanPair& p);

// P = S T with S = P Mt, T = Mt, Mt = U M U^{-1}; requires U^{-1} P U to be a
// pseudo-involution. Both factors are verified involutions.
struct StrongDecomposition {
  RiordanPair s;
  RiordanPair t;
};

StrongDecomposition strong_decompose(const RiordanPair& p, const RiordanPair& u);

// Given an involution S (nonscalar) with S^{-1} P S = P^{-1}, returns U such
// that U^{-1} P U is a pseudo-involution.
RiordanPair strong_reversibility_from_involution_pair(const RiordanPair& p, const RiordanPair& s);

enum class TwoReversibleClass { ConstantDiagonal, AlternatingDiagonal, Other };

std::string_view to_string(TwoReversibleClass c);
std::string_view describe(TwoReversibleClass c);

TwoReversibleClass two_reversible_classification(const RiordanPair& p);

}  // namespace riordan
