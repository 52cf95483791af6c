#include "riordan/reversibility.hpp"

namespace riordan {

NormalFormDescriptor normal_form_series(long p, const Rational& lambda, std::size_t order) {
  if (p < 1) throw Error(ErrorCode::InvalidArgument, "normal form needs p >= 1");
  const Fps base =
      add(Fps::one(order), Fps::monomial(lambda, static_cast<std::size_t>(p), order));
  Fps series = negate(mul(Fps::variable(order), unit_power(base, Rational(-1, p))));
  return {p, lambda, std::move(series), std::nullopt};
}

std::string_view to_string(ReversibilityVerdict verdict) {
  switch (verdict) {
    case ReversibilityVerdict::Reversible: return "Reversible";
    case ReversibilityVerdict::ObstructedAtDegree: return "ObstructedAtDegree";
    case ReversibilityVerdict::MultiplierObstruction: return "MultiplierObstruction";
  }
  return "Unknown";
}

namespace {

void require_composition_unit(const Fps& f) {
  if (!f[0].is_zero()) throw Error(ErrorCode::NonzeroConstantTerm, "series must vanish at 0");
  if (f.order() < 1 || f[1].is_zero()) throw Error(ErrorCode::F1Zero, "series needs f'(0) != 0");
}

Fps conjugate_series(const Fps& f, const Fps& phi) {
  return compose(revert(phi), compose(f, phi));
}

}  // namespace

NormalFormFit conjugate_to_normal_form(const Fps& f) {
  require_composition_unit(f);
  if (!(f[1] == Rational(-1)))
    throw Error(ErrorCode::InvalidArgument, "normal-form fitting needs multiplier f'(0) = -1");
  const std::size_t n = f.order();
  const Fps t = Fps::variable(n);
  NormalFormFit fit;

  const Fps square = compose(f, f);
  if (square == t) {
    // Involutions are all conjugate to -t: x(f) = -x with x = (t - f)/2, s = x^{-1}.
    Fps s = revert(scale(sub(t, f), Rational(1, 2)));
    auto nf = normal_form_series(1, Rational(0), n);
    if (!(conjugate_series(f, s) == nf.series))
      throw Error(ErrorCode::InvalidWitness, "involution conjugator failed to verify");
    nf.conjugator = std::move(s);
    fit.log.push_back("f o f = t: involution branch, p = 1, lambda = 0");
    fit.descriptor = std::move(nf);
    return fit;
  }

  const std::size_t v = *sub(square, t).valuation();
  const long p = static_cast<long>(v) - 1;
  fit.log.push_back("valuation(f o f - t) = " + std::to_string(v) + ", p = " + std::to_string(p));
  if (p % 2 != 0) {
    fit.obstruction_degree = v;
    fit.reason = "normal forms with odd p are involutions, but f o f - t has valuation " +
                 std::to_string(v);
    return fit;
  }

  Fps current = f;
  Fps s = t;
  std::optional<Fps> target;  // the normal form, once lambda is known
  Rational lambda;
  for (std::size_t k = 2; k <= n; ++k) {
    if (k == v) {
      lambda = Rational(p) * current[k];
      target = normal_form_series(p, lambda, n).series;
      fit.log.push_back("degree " + std::to_string(k) + ": lambda = " + lambda.to_string());
      continue;
    }
    // Conjugating by t + c t^m moves coefficient k linearly in c; even k use
    // m = k, odd k beyond p+1 use m = k - p through the t^{p+1} term.
    for (int attempt = 0; attempt < 4; ++attempt) {
      const Rational want = target ? (*target)[k] : Rational(0);
      const Rational delta = current[k] - want;
      if (delta.is_zero()) break;
      std::size_t m = 0;
      if (k % 2 == 0) {
        m = k;
      } else if (k > v) {
        m = k - static_cast<std::size_t>(p);
      } else {
        fit.obstruction_degree = k;
        fit.reason = "odd coefficient at degree " + std::to_string(k) +
                     " below p + 1 cannot be removed";
        return fit;
      }
      const Fps probe = conjugate_series(current, add(t, Fps::monomial(Rational(1), m, n)));
      const Rational slope = probe[k] - current[k];
      if (slope.is_zero()) {
        fit.obstruction_degree = k;
        fit.reason = "resonant degree " + std::to_string(k) +
                     ": the coefficient is a conjugacy invariant and differs from the normal form's";
        fit.log.push_back("degree " + std::to_string(k) + ": resonance mismatch");
        return fit;
      }
      const Rational c = -delta / slope;
      const Fps phi = add(t, Fps::monomial(c, m, n));
      current = conjugate_series(current, phi);
      s = compose(s, phi);
      fit.log.push_back("degree " + std::to_string(k) + ": conjugate by t + (" + c.to_string() +
                        ") t^" + std::to_string(m));
    }
    const Rational want = target ? (*target)[k] : Rational(0);
    if (!(current[k] == want)) {
      fit.obstruction_degree = k;
      fit.reason = "could not match coefficient at degree " + std::to_string(k);
      return fit;
    }
  }

  auto nf = normal_form_series(p, lambda, n);
  if (!(conjugate_series(f, s) == nf.series))
    throw Error(ErrorCode::InvalidWitness, "normal-form conjugator failed to verify");
  nf.conjugator = std::move(s);
  fit.descriptor = std::move(nf);
  return fit;
}

namespace {

using KFps = CyclotomicFps;

KFps reversal_residual(const KFps& f, const KFps& fbar, const KFps& u) {
  return sub(compose(f, u), compose(u, fbar));
}

std::optional<std::size_t> first_nonzero(const KFps& r, std::size_t below) {
  for (std::size_t j = 0; j < below && j <= r.order(); ++j)
    if (!r[j].is_zero()) return j;
  return std::nullopt;
}

// A root c of c^p = -1: -1 for odd p, otherwise z = exp(i pi / p) in Q(z).
std::pair<Cyclotomic, std::shared_ptr<const CyclotomicField>> reversing_multiplier(long p) {
  if (p % 2 != 0) return {Cyclotomic(-1), nullptr};
  auto field = cyclotomic_field(static_cast<int>(2 * p));
  return {Cyclotomic::zeta(field), field};
}

void set_reversible(ReversibilityReport& report, KFps u,
                    std::shared_ptr<const CyclotomicField> field) {
  report.verdict = ReversibilityVerdict::Reversible;
  report.witness = std::move(u);
  report.witness_field = std::move(field);
  report.details.push_back("witness verified: f o u = u o f^{-1} through degree " +
                           std::to_string(report.witness->order()));
}

}  // namespace

ReversibilityReport is_series_reversible(const Fps& f) {
  require_composition_unit(f);
  const std::size_t n = f.order();
  const Fps t = Fps::variable(n);
  ReversibilityReport report;
  const Rational& mult = f[1];

  if (!(mult == Rational(1)) && !(mult == Rational(-1))) {
    report.verdict = ReversibilityVerdict::MultiplierObstruction;
    report.obstruction_degree = 1;
    report.details.push_back("multiplier " + mult.to_string() +
                             " is a conjugacy invariant and differs from the inverse's " +
                             mult.inverse().to_string());
    return report;
  }

  const Fps fbar = revert(f);
  const KFps fk = lift<Cyclotomic>(f);
  const KFps fbark = lift<Cyclotomic>(fbar);

  // Involutions (and t itself) are their own inverse: u = t.
  if (f == fbar) {
    report.details.push_back("f is a compositional involution");
    set_reversible(report, lift<Cyclotomic>(t), nullptr);
    return report;
  }

  if (mult == Rational(-1)) {
    const auto fit = conjugate_to_normal_form(f);
    for (const auto& line : fit.log) report.details.push_back(line);
    if (!fit.found()) {
      report.verdict = ReversibilityVerdict::ObstructedAtDegree;
      report.obstruction_degree = *fit.obstruction_degree;
      report.details.push_back(fit.reason);
      return report;
    }
    // f = s N s^{-1} and N is reversed by c t with c^p = -1, so u = s (c t) s^{-1}.
    const auto& nf = *fit.descriptor;
    const auto [c, field] = reversing_multiplier(nf.p);
    const KFps s = lift<Cyclotomic>(*nf.conjugator);
    const KFps sbar = lift<Cyclotomic>(revert(*nf.conjugator));
    KFps u = compose(s, compose(KFps::monomial(c, 1, n), sbar));
    if (!reversal_residual(fk, fbark, u).is_zero())
      throw Error(ErrorCode::InvalidWitness, "normal-form reverser failed to verify");
    report.details.push_back("reverser of the normal form: u'(0) = " + c.to_string() +
                             " with u'(0)^" + std::to_string(nf.p) + " = -1");
    set_reversible(report, std::move(u), field);
    return report;
  }

  // Multiplier 1: f = t + a t^{p+1} + ...; u_m enters first at degree m + p.
  const std::size_t v = *sub(f, t).valuation();
  const long p = static_cast<long>(v) - 1;
  const auto [c, field] = reversing_multiplier(p);
  report.details.push_back("f - t has valuation " + std::to_string(v) + ", p = " +
                           std::to_string(p) + ", u'(0) = " + c.to_string());
  KFps u = KFps::monomial(c, 1, n);
  const auto shift = static_cast<std::size_t>(p);
  for (std::size_t m = 2; m + shift <= n; ++m) {
    const std::size_t d = m + shift;
    const KFps residual = reversal_residual(fk, fbark, u);
    if (const auto bad = first_nonzero(residual, d)) {
      report.verdict = ReversibilityVerdict::ObstructedAtDegree;
      report.obstruction_degree = *bad;
      report.details.push_back("degree " + std::to_string(*bad) + ": unsolvable");
      return report;
    }
    const KFps probe = reversal_residual(fk, fbark, u.with_coeff(m, u[m] + Cyclotomic(1)));
    const Cyclotomic slope = probe[d] - residual[d];
    if (slope.is_zero()) {
      if (!residual[d].is_zero()) {
        report.verdict = ReversibilityVerdict::ObstructedAtDegree;
        report.obstruction_degree = d;
        report.details.push_back("degree " + std::to_string(d) + ": resonant and inconsistent");
        return report;
      }
      report.details.push_back("degree " + std::to_string(d) + ": resonant, u_" +
                               std::to_string(m) + " = 0");
      continue;
    }
    u = u.with_coeff(m, u[m] - residual[d] / slope);
  }
  const KFps residual = reversal_residual(fk, fbark, u);
  if (const auto bad = first_nonzero(residual, n + 1)) {
    report.verdict = ReversibilityVerdict::ObstructedAtDegree;
    report.obstruction_degree = *bad;
    report.details.push_back("degree " + std::to_string(*bad) + ": unsolvable");
    return report;
  }
  set_reversible(report, std::move(u), field);
  return report;
}

ReversibilityScreen riordan_reversibility_screen(const RiordanPair& p) {
  ReversibilityScreen screen;
  screen.pattern = diagonal_pattern(p);
  screen.diagonal_ok = screen.pattern != DiagonalPattern::Other;
  screen.series = is_series_reversible(p.f());
  return screen;
}

StrongDecomposition strong_decompose(const RiordanPair& p, const RiordanPair& u) {
  if (!is_pseudo_involution(conjugate(p, u)))
    throw Error(ErrorCode::InvalidWitness, "U^{-1} P U is not a pseudo-involution");
  const std::size_t n = p.order();
  const RiordanPair m_tilde = conjugate(RiordanPair::alternating(n), inverse(u));
  StrongDecomposition out{multiply(p, m_tilde), m_tilde};
  if (!is_involution(out.s) || !is_involution(out.t) || !(multiply(out.s, out.t) == p))
    throw Error(ErrorCode::InvalidWitness, "strong decomposition failed to verify");
  return out;
}

RiordanPair strong_reversibility_from_involution_pair(const RiordanPair& p, const RiordanPair& s) {
  if (!is_involution(s)) throw Error(ErrorCode::NotInvolution, "S is not an involution");
  if (!(conjugate(p, s) == inverse(p)))
    throw Error(ErrorCode::InvalidWitness, "S does not conjugate P to its inverse");
  // S^U = eps M, so (P^U M)^2 = ((P S)^2)^U = I.
  RiordanPair u = riordan_involution_conjugator(s).conjugator;
  if (!is_pseudo_involution(conjugate(p, u)))
    throw Error(ErrorCode::InvalidWitness, "conjugate of P is not a pseudo-involution");
  return u;
}

std::string_view to_string(TwoReversibleClass c) {
  switch (c) {
    case TwoReversibleClass::ConstantDiagonal: return "ConstantDiagonal";
    case TwoReversibleClass::AlternatingDiagonal: return "AlternatingDiagonal";
    case TwoReversibleClass::Other: return "Other";
  }
  return "Other";
}

std::string_view describe(TwoReversibleClass c) {
  switch (c) {
    case TwoReversibleClass::ConstantDiagonal:
      return "constant +-1 diagonal: reversible by the classification of products of two "
             "reversible arrays; no witness computed";
    case TwoReversibleClass::AlternatingDiagonal:
      return "alternating diagonal: candidate reversible (involution-type diagonal)";
    case TwoReversibleClass::Other:
      return "diagonal outside {1, -1} patterns: not reversible; product of two reversible "
             "arrays only when in the constant-diagonal subgroup (outside scope)";
  }
  return "";
}

TwoReversibleClass two_reversible_classification(const RiordanPair& p) {
  switch (diagonal_pattern(p)) {
    case DiagonalPattern::AllOnes:
    case DiagonalPattern::AllMinusOnes: return TwoReversibleClass::ConstantDiagonal;
    case DiagonalPattern::AlternatingPlusFirst:
    case DiagonalPattern::AlternatingMinusFirst: return TwoReversibleClass::AlternatingDiagonal;
    case DiagonalPattern::Other: return TwoReversibleClass::Other;
  }
  return TwoReversibleClass::Other;
}

}  // namespace riordan
