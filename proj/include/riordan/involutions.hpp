#pragma once

#include <string_view>
#include <optional>

#include "riordan/riordan.hpp"

namespace riordan {

bool is_involution(const RiordanPair& p);

// p is a pseudo-involution when p * (1, -t) is an involution.
bool is_pseudo_involution(const RiordanPair& p);

// Series-level witness: x with x(h) = -x, so x h x^{-1} = -t.
struct SeriesConjugacyWitness {
  Fps conjugator;  // x
  Fps target;      // -t
};

// Riordan-level witness: conjugate(source, conjugator) == (sign, -t).
struct ConjugacyWitness {
  RiordanPair conjugator;
  RiordanPair target;
  int sign = 1;
};

// x = (t - h) / 2 for a compositional involution h != t. Verified before return.
SeriesConjugacyWitness series_involution_conjugator(const Fps& h);

// For a nonscalar involution p = (a, h) returns U = (1 + eps a, (t - h)/2)
// with eps = a(0), so that U^{-1} p U = eps M. Verified before return.
ConjugacyWitness riordan_involution_conjugator(const RiordanPair& p);

enum class InvolutionKind { Identity, MinusIdentity, ConjugateToM, ConjugateToMinusM, NotInvolution };

std::string_view to_string(InvolutionKind kind);

struct InvolutionClass {
  InvolutionKind kind = InvolutionKind::NotInvolution;
  int sign = 0;  // +1 / -1 for the two conjugacy classes, 0 otherwise
  std::optional<ConjugacyWitness> witness;
};

InvolutionClass classify_involution(const RiordanPair& p);

// I1 I2 = sign * [a, b] with a = M^{R1}, b = R1^{-1} R2 where R_i conjugates
// M (or -M) onto I_i.
struct TwoInvolutionWitness {
  int sign = 1;
  RiordanPair a;
  RiordanPair b;
  // Set when I1 I2 is itself an involution; such a product is not counted
  // as a genuine product of two involutions.
  bool product_is_involution = false;
};

TwoInvolutionWitness two_involution_product_witness(const RiordanPair& i1, const RiordanPair& i2);

}  // namespace riordan
