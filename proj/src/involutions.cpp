#include "riordan/involutions.hpp"

namespace riordan {

bool is_involution(const RiordanPair& p) {
  return multiply(p, p) == RiordanPair::identity(p.order());
}

bool is_pseudo_involution(const RiordanPair& p) {
  return is_involution(multiply(p, RiordanPair::alternating(p.order())));
}

SeriesConjugacyWitness series_involution_conjugator(const Fps& h) {
  const std::size_t n = h.order();
  const Fps t = Fps::variable(n);
  if (!h[0].is_zero())
    throw Error(ErrorCode::NonzeroConstantTerm, "series involution must vanish at 0");
  if (h == t) throw Error(ErrorCode::Degenerate, "h = t has no conjugator onto -t");
  if (!(compose(h, h) == t))
    throw Error(ErrorCode::NotInvolution, "h is not a compositional involution");
  Fps x = scale(sub(t, h), Rational(1, 2));
  if (!(compose(x, h) == negate(x)))
    throw Error(ErrorCode::InvalidWitness, "x(h) = -x failed to verify");
  return {std::move(x), negate(t)};
}

ConjugacyWitness riordan_involution_conjugator(const RiordanPair& p) {
  if (is_scalar(p)) throw Error(ErrorCode::ScalarArray, "scalar arrays are not conjugate to +-M");
  if (!is_involution(p)) throw Error(ErrorCode::NotInvolution, "array is not an involution");
  const std::size_t n = p.order();
  const Rational eps = p.g()[0];
  const Fps t = Fps::variable(n);
  // a(t) a(h(t)) = 1 makes u = 1 + eps a satisfy a u(h) = eps u.
  Fps u = add(Fps::one(n), scale(p.g(), eps));
  Fps x = scale(sub(t, p.f()), Rational(1, 2));
  auto conjugator = RiordanPair::make(std::move(u), std::move(x));
  auto target = RiordanPair::make(Fps::constant(eps, n), negate(t));
  if (!(conjugate(p, conjugator) == target))
    throw Error(ErrorCode::InvalidWitness, "involution conjugator failed to verify");
  return {std::move(conjugator), std::move(target), eps.sign()};
}

std::string_view to_string(InvolutionKind kind) {
  switch (kind) {
    case InvolutionKind::Identity: return "Identity";
    case InvolutionKind::MinusIdentity: return "MinusIdentity";
    case InvolutionKind::ConjugateToM: return "ConjugateToM";
    case InvolutionKind::ConjugateToMinusM: return "ConjugateToMinusM";
    case InvolutionKind::NotInvolution: return "NotInvolution";
  }
  return "NotInvolution";
}

InvolutionClass classify_involution(const RiordanPair& p) {
  if (is_scalar(p)) {
    const bool plus = p.g()[0] == Rational(1);
    return {plus ? InvolutionKind::Identity : InvolutionKind::MinusIdentity, plus ? 1 : -1,
            std::nullopt};
  }
  if (!is_involution(p)) return {};
  auto witness = riordan_involution_conjugator(p);
  const int sign = witness.sign;
  return {sign > 0 ? InvolutionKind::ConjugateToM : InvolutionKind::ConjugateToMinusM, sign,
          std::move(witness)};
}

TwoInvolutionWitness two_involution_product_witness(const RiordanPair& i1, const RiordanPair& i2) {
  if (i1.order() != i2.order())
    throw Error(ErrorCode::OrderMismatch, "involutions of different orders");
  const auto w1 = riordan_involution_conjugator(i1);
  const auto w2 = riordan_involution_conjugator(i2);
  // U_i^{-1} I_i U_i = eps_i M, so R_i := U_i^{-1} gives I_i = eps_i M^{R_i}.
  const RiordanPair r1 = inverse(w1.conjugator);
  const RiordanPair r2 = inverse(w2.conjugator);
  const RiordanPair m = RiordanPair::alternating(i1.order());
  TwoInvolutionWitness out{w1.sign * w2.sign, conjugate(m, r1), multiply(inverse(r1), r2), false};
  const RiordanPair product = multiply(i1, i2);
  if (!(product == scalar_multiple(Rational(out.sign), commutator(out.a, out.b))))
    throw Error(ErrorCode::InvalidWitness, "two-involution commutator identity failed to verify");
  out.product_is_involution = is_involution(product);
  return out;
}

}  // namespace riordan
