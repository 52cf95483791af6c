#include "riordan/subgroups.hpp"

#include <array>
#include <charconv>

#include "riordan/exprparse.hpp"
#include "riordan/linear_solve.hpp"

namespace riordan {

SubgroupTag SubgroupTag::simple(SubgroupKind kind) {
  SubgroupTag tag;
  tag.kind = kind;
  return tag;
}

SubgroupTag SubgroupTag::reciprocal(long r) {
  if (r < 1) throw Error(ErrorCode::InvalidArgument, "reciprocal exponent r must be positive");
  SubgroupTag tag = simple(SubgroupKind::Reciprocal);
  tag.r = r;
  return tag;
}

SubgroupTag SubgroupTag::stabilizer(Fps f, std::string source) {
  if (f[0].is_zero()) throw Error(ErrorCode::ZeroConstantTerm, "stabilizer series needs f(0) != 0");
  SubgroupTag tag = simple(SubgroupKind::Stabilizer);
  tag.stabilizer_series = std::move(f);
  tag.stabilizer_source = std::move(source);
  return tag;
}

SubgroupTag SubgroupTag::bcn(Rational c, long n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "B_{c,n} needs n >= 1");
  SubgroupTag tag = simple(SubgroupKind::Bcn);
  tag.c = std::move(c);
  tag.n = n;
  return tag;
}

namespace {

long parse_long(std::string_view text, std::string_view what) {
  long value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw Error(ErrorCode::InvalidArgument, "malformed integer for " + std::string(what) + ": '" +
                                                std::string(text) + "'");
  return value;
}

std::string series_source(const Fps& f) {
  std::string out;
  for (std::size_t k = 0; k <= f.order(); ++k) {
    if (f[k].is_zero()) continue;
    if (!out.empty()) out += "+";
    out += "(" + f[k].to_string() + ")";
    if (k > 0) out += "*t^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

}  // namespace

SubgroupTag parse_subgroup_tag(std::string_view text, std::size_t order) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const std::string_view params = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  auto no_params = [&](SubgroupKind kind) {
    if (!params.empty())
      throw Error(ErrorCode::InvalidArgument, "tag '" + std::string(name) + "' takes no parameters");
    return SubgroupTag::simple(kind);
  };
  if (name == "derivative") return no_params(SubgroupKind::Derivative);
  if (name == "hitting-time") return no_params(SubgroupKind::HittingTime);
  if (name == "lagrange") return no_params(SubgroupKind::Lagrange);
  if (name == "bell") return no_params(SubgroupKind::Bell);
  if (name == "appell") return no_params(SubgroupKind::Appell);
  if (name == "reciprocal") {
    if (!params.starts_with("r="))
      throw Error(ErrorCode::InvalidArgument, "expected reciprocal:r=<int>");
    return SubgroupTag::reciprocal(parse_long(params.substr(2), "r"));
  }
  if (name == "stabilizer") {
    if (!params.starts_with("f="))
      throw Error(ErrorCode::InvalidArgument, "expected stabilizer:f=<expr>");
    const std::string source(params.substr(2));
    return SubgroupTag::stabilizer(expr::evaluate(source, order), source);
  }
  if (name == "bcn") {
    const auto comma = params.find(',');
    if (!params.starts_with("c=") || comma == std::string_view::npos ||
        !params.substr(comma + 1).starts_with("n="))
      throw Error(ErrorCode::InvalidArgument, "expected bcn:c=<rational>,n=<int>");
    return SubgroupTag::bcn(Rational::parse(params.substr(2, comma - 2)),
                           parse_long(params.substr(comma + 3), "n"));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown subgroup tag '" + std::string(name) + "'");
}

std::string to_string(const SubgroupTag& tag) {
  switch (tag.kind) {
    case SubgroupKind::Derivative: return "derivative";
    case SubgroupKind::HittingTime: return "hitting-time";
    case SubgroupKind::Lagrange: return "lagrange";
    case SubgroupKind::Bell: return "bell";
    case SubgroupKind::Appell: return "appell";
    case SubgroupKind::Reciprocal: return "reciprocal:r=" + std::to_string(tag.r);
    case SubgroupKind::Stabilizer:
      return "stabilizer:f=" + (tag.stabilizer_source.empty() ? series_source(*tag.stabilizer_series)
                                                              : tag.stabilizer_source);
    case SubgroupKind::Bcn: return "bcn:c=" + tag.c.to_string() + ",n=" + std::to_string(tag.n);
  }
  return "unknown";
}

std::size_t seed_order_excess(const SubgroupTag& tag) {
  switch (tag.kind) {
    case SubgroupKind::Derivative:
    case SubgroupKind::HittingTime:
    case SubgroupKind::Reciprocal: return 1;
    default: return 0;
  }
}

namespace {

bool composition_seeded(SubgroupKind kind) {
  return kind != SubgroupKind::Bell && kind != SubgroupKind::Appell && kind != SubgroupKind::Bcn;
}

Fps stabilizer_series_at(const SubgroupTag& tag, std::size_t order) {
  const Fps& f = *tag.stabilizer_series;
  if (f.order() < order)
    throw Error(ErrorCode::OrderMismatch, "stabilizer series has lower order than the array");
  return f.truncate(order);
}

// t h' as an exact series at the order of h.
Fps t_times_derivative(const Fps& h) {
  std::vector<Rational> c(h.order() + 1, Rational(0));
  for (std::size_t k = 1; k <= h.order(); ++k) c[k] = h[k] * Rational(static_cast<long>(k));
  return Fps(h.order(), std::move(c));
}

RiordanPair bcn_element(const Rational& c, long n, std::size_t order) {
  const Fps base =
      sub(Fps::one(order), Fps::monomial(c, static_cast<std::size_t>(n), order));
  return RiordanPair::make(recip(base),
                           mul(Fps::variable(order), unit_power(base, Rational(-1, n))));
}

// The g-part a tag assigns to f, exact through degree N - 1 for the
// derivative-shaped tags and through N otherwise.
Fps g_for(const SubgroupTag& tag, const Fps& h) {
  const std::size_t n = h.order();
  switch (tag.kind) {
    case SubgroupKind::Derivative: return derivative(h);
    case SubgroupKind::HittingTime: return divide(t_times_derivative(h), h);
    case SubgroupKind::Reciprocal: return power(divide(Fps::variable(n), h), tag.r);
    case SubgroupKind::Lagrange: return Fps::one(n);
    case SubgroupKind::Stabilizer: {
      const Fps f = stabilizer_series_at(tag, n);
      return mul(f, recip(compose(f, h)));
    }
    default: break;
  }
  throw Error(ErrorCode::InvalidArgument, "tag has no g-part formula in terms of f");
}

}  // namespace

RiordanPair construct(const SubgroupTag& tag, const Fps& seed, std::size_t order) {
  const std::size_t excess = seed_order_excess(tag);
  if (tag.kind == SubgroupKind::Bcn) return bcn_element(tag.c, tag.n, order);
  if (seed.order() < order + excess)
    throw Error(ErrorCode::OrderMismatch, "seed for " + to_string(tag) + " must have order >= " +
                                              std::to_string(order + excess));
  const Fps h = seed.truncate(order + excess);
  if (composition_seeded(tag.kind)) {
    if (!h[0].is_zero()) throw Error(ErrorCode::F0Nonzero, "seed must satisfy h(0) = 0");
    if (h[1].is_zero()) throw Error(ErrorCode::F1Zero, "seed must satisfy h'(0) != 0");
  } else if (h[0].is_zero()) {
    throw Error(ErrorCode::G0Zero, "seed must satisfy h(0) != 0");
  }
  switch (tag.kind) {
    case SubgroupKind::Bell:
      return RiordanPair::make(h, mul(Fps::variable(order), h));
    case SubgroupKind::Appell:
      return RiordanPair::make(h, Fps::variable(order));
    default:
      return RiordanPair::make(g_for(tag, h).truncate(order), h.truncate(order));
  }
}

RiordanPair construct(const SubgroupTag& tag, const Fps& seed) {
  const std::size_t excess = seed_order_excess(tag);
  if (seed.order() < excess + 1)
    throw Error(ErrorCode::OrderMismatch, "seed order too small for " + to_string(tag));
  return construct(tag, seed, seed.order() - excess);
}

namespace {

bool agree_through(const Fps& a, const Fps& b, std::size_t degree) {
  for (std::size_t k = 0; k <= degree; ++k)
    if (!(a[k] == b[k])) return false;
  return true;
}

}  // namespace

bool is_member(const SubgroupTag& tag, const RiordanPair& p) {
  const std::size_t n = p.order();
  const Fps t = Fps::variable(n);
  switch (tag.kind) {
    case SubgroupKind::Derivative:
    case SubgroupKind::HittingTime:
    case SubgroupKind::Reciprocal:
      return agree_through(p.g(), g_for(tag, p.f()), n - 1);
    case SubgroupKind::Lagrange:
    case SubgroupKind::Stabilizer:
      return p.g() == g_for(tag, p.f());
    case SubgroupKind::Bell:
      return p.f() == mul(t, p.g());
    case SubgroupKind::Appell:
      return p.f() == t;
    case SubgroupKind::Bcn: {
      // B_{c,n} is the one-parameter group c -> B(c) at fixed n; read c off g.
      const auto deg = static_cast<std::size_t>(tag.n);
      const Rational c = deg <= n ? p.g()[deg] : Rational(0);
      return p == bcn_element(c, tag.n, n);
    }
  }
  return false;
}

bool is_subgroup_involution(const SubgroupTag& tag, const RiordanPair& p) {
  if (!is_member(tag, p))
    throw Error(ErrorCode::NotMember, "array is not a member of " + to_string(tag));
  const std::size_t n = p.order();
  switch (tag.kind) {
    case SubgroupKind::Appell: {
      const Rational& g0 = p.g()[0];
      return (g0 == Rational(1) || g0 == Rational(-1)) && p.g() == Fps::constant(g0, n);
    }
    case SubgroupKind::Bcn:
      return p == RiordanPair::identity(n);
    default:
      // Derivative, hitting-time, Lagrange, reciprocal, stabilizer: h is an
      // involution. Bell: t h(t) (which is f) is an involution.
      return compose(p.f(), p.f()) == Fps::variable(n);
  }
}

int default_target_sign(const SubgroupTag& tag) {
  return tag.kind == SubgroupKind::Bell ? -1 : 1;
}

namespace {

// First degree where the g- or f-components of two pairs differ.
std::optional<std::size_t> first_difference(const RiordanPair& a, const RiordanPair& b) {
  for (std::size_t k = 0; k <= a.order(); ++k)
    if (!(a.g()[k] == b.g()[k]) || !(a.f()[k] == b.f()[k])) return k;
  return std::nullopt;
}

// For derivative-shaped g-parts the top coefficient of u is free; choose it so
// that a u(h) = eps u holds at degree N as well.
Fps fix_top_coefficient(const RiordanPair& p, Fps u, const Rational& eps) {
  const std::size_t n = p.order();
  const Rational kappa = p.g()[0] * p.f()[1].pow(static_cast<long>(n)) - eps;
  if (kappa.is_zero()) return u;
  u = u.with_coeff(n, Rational(0));
  const Fps residual = sub(mul(p.g(), compose(u, p.f())), scale(u, eps));
  return u.with_coeff(n, -residual[n] / kappa);
}

Fps half_difference(const Fps& h) {
  return scale(sub(Fps::variable(h.order()), h), Rational(1, 2));
}

// Solves l(h) + l = 0 with l(0) = 0, l'(0) = 1.
LinearSolveOutcome solve_anti_invariant(const RiordanPair& p, std::size_t order) {
  const Fps h = p.f();
  const std::array<LinearEquation, 1> eqs{
      LinearEquation{[h](const Fps& l) { return add(compose(l, h), l); }, order}};
  const std::array<std::pair<std::size_t, Rational>, 2> seeds{
      std::pair{std::size_t{0}, Rational(0)}, std::pair{std::size_t{1}, Rational(1)}};
  return solve_linear_series(order, eqs, seeds);
}

std::string diagonal_reason(const Rational& a0, int eps) {
  return "conjugation preserves the main diagonal; the array's diagonal starts with " +
         a0.to_string() + " but the target (" + std::to_string(eps) + ", -t) starts with " +
         std::to_string(eps);
}

}  // namespace

ConjugatorResult subgroup_conjugator(const SubgroupTag& tag, const RiordanPair& p,
                                     std::optional<int> target_sign) {
  if (tag.kind == SubgroupKind::Appell || tag.kind == SubgroupKind::Bcn)
    throw Error(ErrorCode::NoNonscalarInvolutions, to_string(tag) + " has no nonscalar involutions");
  if (!is_member(tag, p)) throw Error(ErrorCode::NotMember, "array is not in " + to_string(tag));
  if (is_scalar(p)) throw Error(ErrorCode::ScalarArray, "array is scalar");
  if (!is_involution(p)) throw Error(ErrorCode::NotInvolution, "array is not an involution");

  const int eps = target_sign.value_or(default_target_sign(tag));
  if (eps != 1 && eps != -1) throw Error(ErrorCode::InvalidArgument, "target sign must be +1 or -1");
  const Rational eps_q(eps);
  const std::size_t n = p.order();
  const Fps t = Fps::variable(n);
  const Fps& a = p.g();
  const Fps& h = p.f();
  const RiordanPair target = RiordanPair::make(Fps::constant(eps_q, n), negate(t));

  ConjugatorResult result;
  result.target_sign = eps;

  auto infeasible = [&](std::size_t degree, std::string reason) {
    result.status = ConjugatorStatus::InfeasibleInSubgroup;
    result.certificate = InfeasibilityCertificate{degree, std::move(reason)};
    result.outside_witness = riordan_involution_conjugator(p);
    result.log.push_back("in-subgroup search failed at degree " + std::to_string(degree));
    return result;
  };

  std::optional<RiordanPair> u;
  switch (tag.kind) {
    case SubgroupKind::Derivative: {
      // U = (x', x): x(h) = -x and a x'(h) = eps x', linear in x.
      const std::array<LinearEquation, 2> eqs{
          LinearEquation{[h](const Fps& x) { return add(compose(x, h), x); }, n},
          LinearEquation{[a, h, eps_q](const Fps& x) {
                           const Fps dx = derivative(x);
                           return sub(mul(a, compose(dx, h)), scale(dx, eps_q));
                         },
                         n - 1}};
      const std::array<std::pair<std::size_t, Rational>, 2> seeds{
          std::pair{std::size_t{0}, Rational(0)}, std::pair{std::size_t{1}, Rational(1)}};
      auto solved = solve_linear_series(n, eqs, seeds);
      result.log = solved.log;
      if (!solved.solution) {
        return infeasible(
            *solved.inconsistent_degree,
            "U = (x', x) would need x(h) = -x and h' x'(h) = " +
                std::string(eps == 1 ? "x'" : "-x'") + "; differentiating the first gives h' x'(h) = -x', so the system forces x' = 0, "
                "contradicting x'(0) != 0 (inconsistent at degree " +
                std::to_string(*solved.inconsistent_degree) + ")");
      }
      const Fps& x = *solved.solution;
      u = RiordanPair::make(fix_top_coefficient(p, derivative(x), eps_q), x);
      break;
    }
    case SubgroupKind::HittingTime: {
      const Fps x = half_difference(h);
      u = RiordanPair::make(fix_top_coefficient(p, divide(t_times_derivative(x), x), eps_q), x);
      break;
    }
    case SubgroupKind::Lagrange:
      u = RiordanPair::make(Fps::one(n), half_difference(h));
      break;
    case SubgroupKind::Reciprocal:
    case SubgroupKind::Stabilizer: {
      auto solved = solve_anti_invariant(p, n);
      result.log = solved.log;
      if (!solved.solution)
        throw Error(ErrorCode::InvalidWitness, "l(h) = -l unexpectedly inconsistent for an involution");
      const Fps& l = *solved.solution;
      Fps g = g_for(tag, l);
      if (tag.kind == SubgroupKind::Reciprocal) g = fix_top_coefficient(p, g, eps_q);
      u = RiordanPair::make(std::move(g), l);
      break;
    }
    case SubgroupKind::Bell: {
      // U = (w, t w): a w(h) = eps w and h w(h) = -t w, linear in w.
      const std::array<LinearEquation, 2> eqs{
          LinearEquation{[a, h, eps_q](const Fps& w) {
                           return sub(mul(a, compose(w, h)), scale(w, eps_q));
                         },
                         n},
          LinearEquation{[h, t](const Fps& w) {
                           return add(mul(h, compose(w, h)), mul(t, w));
                         },
                         n}};
      const std::array<std::pair<std::size_t, Rational>, 1> seeds{
          std::pair{std::size_t{0}, Rational(1)}};
      auto solved = solve_linear_series(n, eqs, seeds);
      result.log = solved.log;
      if (!solved.solution) {
        const std::size_t d = *solved.inconsistent_degree;
        return infeasible(d, d == 0 && !(a[0] == eps_q)
                                 ? diagonal_reason(a[0], eps)
                                 : "U = (w, t w) equations inconsistent at degree " + std::to_string(d));
      }
      const Fps& w = *solved.solution;
      u = RiordanPair::make(w, mul(t, w));
      break;
    }
    case SubgroupKind::Appell:
    case SubgroupKind::Bcn:
      break;
  }

  const RiordanPair lhs = multiply(p, *u);
  const RiordanPair rhs = multiply(*u, target);
  if (const auto d = first_difference(lhs, rhs)) {
    if (!(a[0] == eps_q)) return infeasible(*d, diagonal_reason(a[0], eps));
    if (tag.kind == SubgroupKind::Stabilizer) {
      const auto parity = stabilizer_parity_involutions(*tag.stabilizer_series);
      if (!parity.m_in_stabilizer) {
        const auto odd = sub(parity.ratio, Fps::one(parity.ratio.order())).valuation();
        return infeasible(*d, "the target M = (1, -t) is not in Stab(f): f(t)/f(-t) differs from 1 at "
                              "degree " + std::to_string(odd.value_or(0)) +
                              ", and conjugation inside Stab(f) cannot leave the subgroup");
      }
    }
    throw Error(ErrorCode::InvalidWitness,
                "subgroup conjugator failed to verify at degree " + std::to_string(*d));
  }
  if (!is_member(tag, *u))
    throw Error(ErrorCode::InvalidWitness, "constructed conjugator left the subgroup");
  result.status = ConjugatorStatus::Found;
  result.witness = ConjugacyWitness{*u, target, eps};
  result.log.push_back("verified U^{-1} P U = (" + std::to_string(eps) + ", -t)");
  return result;
}

StabilizerParityReport stabilizer_parity_involutions(const Fps& f) {
  if (f[0].is_zero()) throw Error(ErrorCode::ZeroConstantTerm, "stabilizer series needs f(0) != 0");
  const std::size_t n = f.order();
  const Fps reflected = compose(f, negate(Fps::variable(n)));
  Fps ratio = mul(f, recip(reflected));
  StabilizerParityReport report{ratio == Fps::one(n), ratio == Fps::constant(Rational(-1), n), ratio};
  return report;
}

}  // namespace riordan
