// Acceptance suite: one PASS/FAIL line per criterion at N = 16, K = 12.

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "riordan/cli.hpp"
#include "riordan/exprparse.hpp"
#include "riordan/reversibility.hpp"
#include "riordan/subgroups.hpp"
#include "support.hpp"

using namespace riordan;

namespace {

constexpr std::size_t N = 16;
constexpr std::size_t K = 12;

Fps t_(std::size_t n = N) { return Fps::variable(n); }
Fps c_(long v, std::size_t n = N) { return Fps::constant(Rational(v), n); }
RiordanPair m_() { return RiordanPair::alternating(N); }
RiordanPair id() { return RiordanPair::identity(N); }
RiordanPair pascal() { return RiordanPair::make(recip(c_(1) - t_()), divide(t_(), c_(1) - t_())); }

// Collects failures within one criterion.
struct Tally {
  int checks = 0;
  std::vector<std::string> failures;
  void operator()(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok && failures.size() == 5) failures.push_back("...");
  }
};

int failed_criteria = 0;

void criterion(int number, const std::string& title, const std::function<void(Tally&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  Tally tally;
  try {
    body(tally);
  } catch (const std::exception& e) {
    tally.failures.push_back(std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool pass = tally.failures.empty();
  if (!pass) ++failed_criteria;
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << number << ": " << title << " (" << tally.checks
            << " checks, " << std::fixed << std::setprecision(2) << secs << " s)\n";
  for (const auto& f : tally.failures) std::cout << "    " << f << "\n";
}

RiordanMatrix matmul(const RiordanMatrix& a, const RiordanMatrix& b) {
  const std::size_t k = a.size();
  std::vector<Rational> e(k * k, Rational(0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (std::size_t l = j; l <= i; ++l) e[i * k + j] += a.at(i, l) * b.at(l, j);
  return RiordanMatrix(k, std::move(e));
}

bool series_witness_ok(const Fps& f, const ReversibilityReport& r) {
  if (!r.reversible() || !r.witness) return false;
  const CyclotomicFps fk = lift<Cyclotomic>(f);
  const CyclotomicFps& u = *r.witness;
  return u[0].is_zero() && !u[1].is_zero() && compose(fk, u) == compose(u, revert(fk));
}

std::string golden(const std::string& name) {
  std::ifstream in(std::string(GOLDEN_DIR) + "/" + name, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> split_rows(const std::string& text, char sep) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream cs(line);
    if (sep == ' ') {
      while (cs >> cell) cells.push_back(cell);
    } else {
      while (std::getline(cs, cell, sep)) cells.push_back(cell);
    }
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();

  criterion(1, "group axioms on 200 random pairs", [](Tally& ok) {
    std::mt19937 rng(1001);
    for (int i = 0; i < 200; ++i) {
      const RiordanPair p = testing::random_pair(rng, N);
      const RiordanPair q = testing::random_pair(rng, N);
      const RiordanPair r = testing::random_pair(rng, N);
      const std::string at = " at instance " + std::to_string(i);
      ok(multiply(multiply(p, q), r) == multiply(p, multiply(q, r)), "associativity" + at);
      ok(multiply(p, id()) == p && multiply(id(), p) == p, "identity" + at);
      const RiordanPair pi = inverse(p);
      ok(multiply(p, pi) == id() && multiply(pi, p) == id(), "inverse" + at);
    }
  });

  criterion(2, "FTRA homomorphism, 100 pairs, K = 12", [](Tally& ok) {
    std::mt19937 rng(1002);
    for (int i = 0; i < 100; ++i) {
      const RiordanPair p = testing::random_pair(rng, N);
      const RiordanPair q = testing::random_pair(rng, N);
      ok(to_matrix(multiply(p, q), K) == matmul(to_matrix(p, K), to_matrix(q, K)),
         "matrix product mismatch at instance " + std::to_string(i));
    }
  });

  criterion(3, "involution classification, 100 conjugates of (+-1, -t)", [](Tally& ok) {
    std::mt19937 rng(1003);
    for (int i = 0; i < 100; ++i) {
      const int eps = i % 2 ? -1 : 1;
      const RiordanPair x = testing::random_pair(rng, N);
      const RiordanPair p = conjugate(RiordanPair::make(c_(eps), negate(t_())), x);
      const auto c = classify_involution(p);
      const std::string at = " at instance " + std::to_string(i);
      ok(c.sign == eps, "classified sign" + at);
      ok(c.kind == (eps == 1 ? InvolutionKind::ConjugateToM : InvolutionKind::ConjugateToMinusM), "kind" + at);
      const auto w = riordan_involution_conjugator(p);
      ok(w.sign == eps && conjugate(p, w.conjugator) == RiordanPair::make(c_(eps), negate(t_())),
         "conjugator" + at);
    }
  });

  criterion(4, "products of two involutions are signed commutators, 100 pairs", [](Tally& ok) {
    std::mt19937 rng(1004);
    for (int i = 0; i < 100; ++i) {
      const int e1 = i % 2 ? -1 : 1;
      const int e2 = (i / 2) % 2 ? -1 : 1;
      const RiordanPair r1 = testing::random_pair(rng, N);
      const RiordanPair r2 = testing::random_pair(rng, N);
      const RiordanPair i1 = conjugate(RiordanPair::make(c_(e1), negate(t_())), r1);
      const RiordanPair i2 = conjugate(RiordanPair::make(c_(e2), negate(t_())), r2);
      const RiordanPair prod = multiply(i1, i2);
      const std::string at = " at instance " + std::to_string(i);
      // Explicit form from the generating conjugators.
      const RiordanPair explicit_comm = commutator(conjugate(m_(), r1), multiply(inverse(r1), r2));
      ok(prod == scalar_multiple(Rational(e1 * e2), explicit_comm), "explicit identity" + at);
      const auto w = two_involution_product_witness(i1, i2);
      ok(w.sign == e1 * e2, "witness sign" + at);
      ok(prod == scalar_multiple(Rational(w.sign), commutator(w.a, w.b)), "witness identity" + at);
      const auto pattern = diagonal_pattern(prod);
      ok(pattern == (e1 * e2 == 1 ? DiagonalPattern::AllOnes : DiagonalPattern::AllMinusOnes),
         "constant diagonal" + at);
      if (e1 * e2 == 1) ok(in_commutator_subgroup(prod), "commutator subgroup" + at);
    }
  });

  criterion(5, "subgroup involutions for all 8 subgroups, 25 seeds each", [](Tally& ok) {
    std::mt19937 rng(1005);
    const std::vector<SubgroupTag> tags{
        SubgroupTag::simple(SubgroupKind::Derivative),
        SubgroupTag::simple(SubgroupKind::HittingTime),
        SubgroupTag::simple(SubgroupKind::Lagrange),
        SubgroupTag::reciprocal(2),
        SubgroupTag::reciprocal(3),
        SubgroupTag::stabilizer(expr::evaluate("1 + t^2", N), "1 + t^2")};
    for (const auto& tag : tags) {
      const std::size_t n1 = N + seed_order_excess(tag);
      for (int i = 0; i < 25; ++i) {
        const std::string at = " for " + to_string(tag) + " seed " + std::to_string(i);
        const Fps h = testing::random_involutive_series(rng, n1);
        const RiordanPair p = construct(tag, h, N);
        ok(is_member(tag, p), "membership" + at);
        ok(is_involution(p), "involutive seed gives an involution" + at);
        ok(is_subgroup_involution(tag, p) == is_involution(p), "characterization" + at);
        const RiordanPair q = construct(tag, testing::random_composition_unit(rng, n1), N);
        ok(is_subgroup_involution(tag, q) == is_involution(q), "characterization (generic seed)" + at);
      }
    }

    const auto bell = SubgroupTag::simple(SubgroupKind::Bell);
    for (int i = 0; i < 25; ++i) {
      const std::string at = " for bell seed " + std::to_string(i);
      const Fps a = shift_down(testing::random_involutive_series(rng, N + 1), 1).truncate(N);
      const RiordanPair p = construct(bell, a, N);
      ok(is_involution(p), "involutive seed gives an involution" + at);
      ok(is_subgroup_involution(bell, p) == is_involution(p), "characterization" + at);
      const RiordanPair q = construct(bell, testing::random_unit(rng, N), N);
      ok(is_subgroup_involution(bell, q) == is_involution(q), "characterization (generic seed)" + at);
    }

    // Appell: only +-I among constructed members.
    const auto appell = SubgroupTag::simple(SubgroupKind::Appell);
    int appell_involutions = 0;
    for (int i = 0; i < 25; ++i) {
      Fps g = testing::random_unit(rng, N);
      if (i % 5 == 0) g = c_(1);
      if (i % 5 == 1) g = c_(-1);
      if (i % 5 == 2) g = Fps::constant(g[0], N);
      const RiordanPair p = construct(appell, g, N);
      const bool inv = is_involution(p);
      appell_involutions += inv;
      ok(inv == (p == id() || p == scalar_multiple(Rational(-1), id())), "Appell involution is +-I");
      ok(is_subgroup_involution(appell, p) == inv, "Appell characterization");
    }
    ok(appell_involutions == 10, "Appell population contains both +-I");

    // B_{c,n}: only I.
    for (int i = 0; i < 25; ++i) {
      const Rational c = i % 5 == 0 ? Rational(0) : testing::random_nonzero(rng);
      const long n = 1 + i % 3;
      const auto tag = SubgroupTag::bcn(c, n);
      const RiordanPair p = construct(tag, Fps::zero(N), N);
      const bool inv = is_involution(p);
      ok(inv == (p == id()), "B_{c,n} involution is I");
      ok(inv == c.is_zero(), "B_{c,n} involution only at c = 0");
      ok(is_subgroup_involution(tag, p) == inv, "B_{c,n} characterization");
    }
  });

  criterion(6, "hitting-time conjugator (t x'/x, x), 25 involutive h", [](Tally& ok) {
    std::mt19937 rng(1006);
    const auto tag = SubgroupTag::simple(SubgroupKind::HittingTime);
    for (int i = 0; i < 25; ++i) {
      const std::string at = " at instance " + std::to_string(i);
      const Fps h = testing::random_involutive_series(rng, N + 1);
      const RiordanPair p = construct(tag, h, N);
      ok(p.g() == divide(mul(t_(N + 1), derivative(h)), h).truncate(N), "(t h'/h, h)" + at);
      const Fps x = series_involution_conjugator(h).conjugator;
      const RiordanPair u =
          RiordanPair::make(divide(mul(t_(N + 1), derivative(x)), x).truncate(N), x.truncate(N));
      ok(conjugate(p, u) == m_(), "display identity" + at);
      const auto r = subgroup_conjugator(tag, p);
      ok(r.status == ConjugatorStatus::Found && is_member(tag, r.witness->conjugator) &&
             conjugate(p, r.witness->conjugator) == m_(),
         "subgroup_conjugator" + at);
    }
  });

  criterion(7, "derivative subgroup: no in-subgroup conjugator to M", [](Tally& ok) {
    std::mt19937 rng(1007);
    const auto tag = SubgroupTag::simple(SubgroupKind::Derivative);
    for (int i = 0; i < 25; ++i) {
      const std::string at = " at instance " + std::to_string(i);
      const RiordanPair p = construct(tag, testing::random_involutive_series(rng, N + 1), N);
      if (!is_involution(p) || p == id()) {
        ok(false, "member is not a nontrivial involution" + at);
        continue;
      }
      const auto r = subgroup_conjugator(tag, p);
      ok(r.status == ConjugatorStatus::InfeasibleInSubgroup, "status" + at);
      ok(r.certificate && r.certificate->degree <= N, "certificate degree" + at);
      ok(r.outside_witness && conjugate(p, r.outside_witness->conjugator) == r.outside_witness->target &&
             r.outside_witness->target ==
                 RiordanPair::make(c_(r.outside_witness->sign), negate(t_())),
         "unrestricted witness" + at);
    }
    // The involution h = -t/(1+t) from the derivative construction.
    const RiordanPair p = construct(tag, divide(negate(t_(N + 1)), c_(1, N + 1) + t_(N + 1)), N);
    const auto r = subgroup_conjugator(tag, p);
    ok(r.status == ConjugatorStatus::InfeasibleInSubgroup && r.certificate->degree <= N, "h = -t/(1+t)");
  });

  criterion(8, "normal forms for p <= 7, 5 values of lambda each", [](Tally& ok) {
    std::mt19937 rng(1008);
    for (long p = 1; p <= 7; ++p) {
      for (int i = 0; i < 5; ++i) {
        const Rational lambda = testing::random_nonzero(rng);
        const std::string at = " at p = " + std::to_string(p) + ", lambda = " + lambda.to_string();
        const Fps nf = normal_form_series(p, lambda, N).series;
        const bool involution = compose(nf, nf) == t_();
        if (p % 2 == 1) {
          ok(involution, "odd p is an involution" + at);
        } else {
          ok(!involution, "even p is not an involution" + at);
          ok(series_witness_ok(nf, is_series_reversible(nf)), "verified reversing witness" + at);
        }
        const Fps s = testing::random_composition_unit(rng, N);
        const Fps f = compose(revert(s), compose(nf, s));
        const auto fit = conjugate_to_normal_form(f);
        if (!fit.found()) {
          ok(false, "normal-form fit failed" + at);
          continue;
        }
        const auto& d = *fit.descriptor;
        ok(compose(revert(*d.conjugator), compose(f, *d.conjugator)) == d.series, "fit conjugator" + at);
        if (p % 2 == 0) ok(d.p == p && d.lambda == lambda * s[1].pow(p), "fit invariants" + at);
        else ok(compose(d.series, d.series) == t_(), "odd fit is an involution" + at);
      }
    }
  });

  criterion(9, "pseudo-involutions and strong reversibility", [](Tally& ok) {
    ok(is_pseudo_involution(pascal()), "Pascal is a pseudo-involution");
    const auto d = strong_decompose(pascal(), id());
    ok(d.s == RiordanPair::make(recip(c_(1) - t_()), divide(negate(t_()), c_(1) - t_())), "S factor");
    ok(d.t == m_(), "T factor");
    ok(is_involution(d.s) && is_involution(d.t), "factors are involutions");
    ok(multiply(d.s, d.t) == pascal(), "S T = Pascal");

    std::mt19937 rng(1009);
    for (int i = 0; i < 50; ++i) {
      const std::string at = " at instance " + std::to_string(i);
      const RiordanPair x = testing::random_pair(rng, N);
      const RiordanPair p = conjugate(pascal(), x);
      const auto dec = strong_decompose(p, inverse(x));
      ok(is_involution(dec.s) && is_involution(dec.t) && multiply(dec.s, dec.t) == p, "decomposition" + at);
      ok(conjugate(p, dec.t) == inverse(p), "T reverses P" + at);
      const RiordanPair u = strong_reversibility_from_involution_pair(p, dec.t);
      ok(is_pseudo_involution(conjugate(p, u)), "back to a pseudo-involution" + at);
    }
  });

  criterion(10, "(1, -t/(1+t^2)^(1/2)) is reversible but no (pseudo-)involution", [](Tally& ok) {
    const Fps f = expr::evaluate("-t/root(2, 1+t^2)", N);
    const RiordanPair p = RiordanPair::make(c_(1), f);
    const auto screen = riordan_reversibility_screen(p);
    ok(screen.passes(), "screen passes");
    ok(series_witness_ok(f, screen.series), "series witness verifies");
    ok(!is_involution(p), "not an involution");
    ok(!is_pseudo_involution(p), "not a pseudo-involution");
  });

  criterion(11, "parser goldens and 10^4-input fuzz", [](Tally& ok) {
    const Fps geo = expr::evaluate("1/(1-t)", 4);
    for (std::size_t k = 0; k <= 4; ++k) ok(geo[k] == Rational(1), "1/(1-t)");
    const Fps tg = expr::evaluate("t/(1-t)", N);
    for (std::size_t k = 0; k <= N; ++k) ok(tg[k] == Rational(k ? 1 : 0), "t/(1-t)");
    const auto cat = testing::catalan(N + 1);
    const Fps c = expr::evaluate("(1-sqrt(1-4*t))/(2*t)", N);
    for (std::size_t k = 0; k <= N; ++k) ok(c[k].raw() == cat[k], "Catalan at degree " + std::to_string(k));
    ok(to_tree(*expr::parse("-t/root(2,1+t^2)")) == "Div(Neg(t), Root(2, Add(1, Pow(t, 2))))", "tree");
    const Fps nf = expr::evaluate("-t/root(2,1+t^2)", N);
    ok(nf == normal_form_series(2, Rational(1), N).series, "normal form");
    // Binomial oracle: -t (1+t^2)^(-1/2) = -sum binom(-1/2, k) t^(2k+1).
    Rational b(1);
    for (std::size_t k = 0; 2 * k + 1 <= N; ++k) {
      ok(nf[2 * k + 1] == -b, "binomial coefficient " + std::to_string(k));
      b = b * (Rational(-1, 2) - Rational(static_cast<long>(k))) / Rational(static_cast<long>(k) + 1);
    }

    std::mt19937 rng(1011);
    std::uniform_int_distribution<int> len(0, 64);
    const std::string alphabet = "0123456789t+-*/^(),. sqrtoot";
    for (int i = 0; i < 10000; ++i) {
      std::string s;
      const int n = len(rng);
      for (int k = 0; k < n; ++k)
        s += i % 2 ? static_cast<char>(rng() & 0xff) : alphabet[rng() % alphabet.size()];
      try {
        expr::evaluate(s, 8);
      } catch (const expr::ParseError& e) {
        ok(e.offset() <= s.size() && e.span().end <= s.size(), "error offset within input");
      } catch (const Error&) {
      } catch (const std::exception& e) {
        ok(false, std::string("unstructured exception: ") + e.what());
      }
    }
  });

  criterion(12, "CLI eval of Pascal, rows 5, byte-exact goldens", [](Tally& ok) {
    const auto binom = testing::binomial_rows(5);
    for (const std::string format : {"text", "csv", "json"}) {
      std::ostringstream out, err;
      const int code = cli::run({"eval", "--g", "1/(1-t)", "--f", "t/(1-t)", "--rows", "5", "--format", format},
                                out, err);
      const std::string file = format == "text" ? "pascal5.txt" : "pascal5." + format;
      const std::string want = golden(file);
      ok(code == 0, format + " exit code");
      ok(!want.empty() && out.str() == want, format + " output matches " + file);

      std::vector<std::vector<std::string>> cells;
      if (format == "json") {
        const auto doc = nlohmann::json::parse(want);
        for (const auto& row : doc["matrix"]) {
          cells.emplace_back();
          for (const auto& v : row) cells.back().push_back(v.get<std::string>());
        }
      } else {
        cells = split_rows(want, format == "csv" ? ',' : ' ');
      }
      ok(cells.size() == 5, format + " row count");
      for (std::size_t n = 0; n < cells.size() && n < 5; ++n) {
        // Text output shows the lower triangle only.
        const std::size_t width = format == "text" ? n + 1 : 5;
        ok(cells[n].size() == width, format + " row width");
        for (std::size_t k = 0; k < cells[n].size(); ++k)
          ok(cells[n][k] == binom[n][k].get_str(), format + " entry (" + std::to_string(n) + ", " +
                                                       std::to_string(k) + ")");
      }
    }
  });

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (failed_criteria == 0 ? "all criteria passed" : std::to_string(failed_criteria) + " criteria failed")
            << " in " << std::fixed << std::setprecision(2) << secs << " s\n";
  return failed_criteria == 0 ? 0 : 1;
}
