#include <doctest.h>

#include "riordan/involutions.hpp"
#include "support.hpp"

using namespace riordan;

namespace {

constexpr std::size_t N = kDefaultOrder;

Fps t_() { return Fps::variable(N); }
Fps c_(long v) { return Fps::constant(Rational(v), N); }
RiordanPair m_() { return RiordanPair::alternating(N); }
RiordanPair id() { return RiordanPair::identity(N); }
RiordanPair pascal() { return RiordanPair::make(recip(c_(1) - t_()), divide(t_(), c_(1) - t_())); }
RiordanPair pascal_m() { return RiordanPair::make(recip(c_(1) - t_()), divide(negate(t_()), c_(1) - t_())); }
Fps h_simple() { return divide(negate(t_()), c_(1) + t_()); }

// Columns of the linear map s -> L(s) in the monomial basis, applied naively.
template <class L>
std::vector<std::vector<mpq_class>> dense_operator(L apply, std::size_t rows) {
  std::vector<std::vector<mpq_class>> a(rows, std::vector<mpq_class>(N + 1, 0));
  for (std::size_t k = 0; k <= N; ++k) {
    std::vector<mpq_class> e(N + 1, 0);
    e[k] = 1;
    const auto col = apply(e);
    for (std::size_t r = 0; r < rows; ++r) a[r][k] = col[r];
  }
  return a;
}

}  // namespace

TEST_CASE("involution predicates") {
  CHECK(is_involution(m_()));
  CHECK(is_involution(RiordanPair::make(c_(1), h_simple())));
  CHECK_FALSE(is_involution(pascal()));
  CHECK(is_pseudo_involution(pascal()));
  CHECK(is_pseudo_involution(id()));
  CHECK_FALSE(is_pseudo_involution(RiordanPair::make(c_(2), t_())));

  std::mt19937 rng(3);
  for (int i = 0; i < 20; ++i) {
    const RiordanPair p = testing::random_pair(rng, N);
    CHECK(is_pseudo_involution(p) == is_involution(multiply(p, m_())));
  }
}

TEST_CASE("series conjugator") {
  CHECK(series_involution_conjugator(negate(t_())).conjugator == t_());
  const Fps x = series_involution_conjugator(h_simple()).conjugator;
  // t(t+2) / (2(t+1))
  const Fps want = divide(mul(t_(), t_() + c_(2)), scale(t_() + c_(1), Rational(2)));
  CHECK(x == want);
  CHECK(x[1] == Rational(1));
  CHECK(x[2] == Rational(-1, 2));
  CHECK(x[3] == Rational(1, 2));
  CHECK_THROWS_AS(series_involution_conjugator(t_()), Error);

  std::mt19937 rng(5);
  for (int i = 0; i < 30; ++i) {
    const Fps h = testing::random_involutive_series(rng, N);
    const Fps xi = series_involution_conjugator(h).conjugator;
    CHECK(compose(xi, h) == negate(xi));
  }
}

TEST_CASE("Riordan conjugator examples") {
  const auto w = riordan_involution_conjugator(m_());
  CHECK(w.sign == 1);
  CHECK(w.conjugator == RiordanPair::make(c_(2), t_()));

  const auto wp = riordan_involution_conjugator(pascal_m());
  CHECK(wp.sign == 1);
  CHECK(wp.conjugator.g() == c_(1) + recip(c_(1) - t_()));
  CHECK(wp.conjugator.f() == divide(mul(t_(), c_(2) - t_()), scale(c_(1) - t_(), Rational(2))));
  CHECK(conjugate(pascal_m(), wp.conjugator) == m_());

  const RiordanPair neg = RiordanPair::make(c_(-1), h_simple());
  const auto wn = riordan_involution_conjugator(neg);
  CHECK(wn.sign == -1);
  CHECK(conjugate(neg, wn.conjugator) == RiordanPair::make(c_(-1), negate(t_())));

  CHECK_THROWS_AS(riordan_involution_conjugator(id()), Error);
  CHECK_THROWS_AS(riordan_involution_conjugator(pascal()), Error);
}

TEST_CASE("closed-form conjugators agree with a dense linear-solve oracle") {
  // Oracle: solve x(h) + x = 0 (x_0 = 0, x_1 = 1) and a u(h) - eps u = 0 (u_0 = 1)
  // by dense elimination with naive composition, then check that both the
  // oracle's and the library's solutions conjugate P to eps M.
  std::mt19937 rng(99);
  for (int i = 0; i < 6; ++i) {
    const int eps = i % 2 ? -1 : 1;
    const RiordanPair p = testing::random_involution(rng, N, eps);
    const auto h = testing::raw(p.f());
    const auto a = testing::raw(p.g());

    auto ax = dense_operator(
        [&](const std::vector<mpq_class>& x) {
          auto r = testing::naive_compose(x, h);
          for (std::size_t k = 0; k <= N; ++k) r[k] += x[k];
          return r;
        },
        N + 1);
    std::vector<mpq_class> bx(N + 1, 0);
    ax.push_back(std::vector<mpq_class>(N + 1, 0));
    ax.back()[0] = 1;
    bx.push_back(0);
    ax.push_back(std::vector<mpq_class>(N + 1, 0));
    ax.back()[1] = 1;
    bx.push_back(1);
    const auto x = testing::dense_solve(ax, bx);
    REQUIRE(x);

    auto au = dense_operator(
        [&](const std::vector<mpq_class>& u) {
          auto r = testing::naive_mul(a, testing::naive_compose(u, h));
          for (std::size_t k = 0; k <= N; ++k) r[k] -= eps * u[k];
          return r;
        },
        N + 1);
    std::vector<mpq_class> bu(N + 1, 0);
    au.push_back(std::vector<mpq_class>(N + 1, 0));
    au.back()[0] = 1;
    bu.push_back(1);
    const auto u = testing::dense_solve(au, bu);
    REQUIRE(u);

    auto to_fps = [](const std::vector<mpq_class>& v) {
      std::vector<Rational> c;
      for (const auto& q : v) c.emplace_back(q);
      return Fps(N, std::move(c));
    };
    const RiordanPair oracle = RiordanPair::make(to_fps(*u), to_fps(*x));
    const RiordanPair target = RiordanPair::make(c_(eps), negate(t_()));
    CHECK(conjugate(p, oracle) == target);

    const auto w = riordan_involution_conjugator(p);
    CHECK(w.sign == eps);
    CHECK(conjugate(p, w.conjugator) == target);
    // The closed forms lie in the oracle's solution sets.
    const auto xc = testing::raw(w.conjugator.f());
    const auto uc = testing::raw(w.conjugator.g());
    auto lhs_x = testing::naive_compose(xc, h);
    for (std::size_t k = 0; k <= N; ++k) CHECK(lhs_x[k] + xc[k] == 0);
    auto lhs_u = testing::naive_mul(a, testing::naive_compose(uc, h));
    for (std::size_t k = 0; k <= N; ++k) CHECK(lhs_u[k] == eps * uc[k]);
  }
}

TEST_CASE("classification") {
  CHECK(classify_involution(id()).kind == InvolutionKind::Identity);
  CHECK(classify_involution(RiordanPair::make(c_(-1), t_())).kind == InvolutionKind::MinusIdentity);
  CHECK(classify_involution(pascal_m()).kind == InvolutionKind::ConjugateToM);
  CHECK(classify_involution(pascal()).kind == InvolutionKind::NotInvolution);

  std::mt19937 rng(21);
  for (int i = 0; i < 30; ++i) {
    const int eps = i % 3 ? 1 : -1;
    const RiordanPair p = testing::random_involution(rng, N, eps);
    const auto c = classify_involution(p);
    CHECK(c.sign == eps);
    CHECK(c.kind == (eps == 1 ? InvolutionKind::ConjugateToM : InvolutionKind::ConjugateToMinusM));
    REQUIRE(c.witness);
    CHECK(conjugate(p, c.witness->conjugator) == c.witness->target);
  }
}

TEST_CASE("two-involution witness") {
  const auto w0 = two_involution_product_witness(m_(), m_());
  CHECK(w0.sign == 1);
  CHECK(commutator(w0.a, w0.b) == id());

  const auto w1 = two_involution_product_witness(m_(), pascal_m());
  CHECK(w1.sign == 1);
  CHECK(multiply(m_(), pascal_m()) == commutator(w1.a, w1.b));

  const RiordanPair neg = RiordanPair::make(c_(-1), h_simple());
  const auto w2 = two_involution_product_witness(m_(), neg);
  CHECK(w2.sign == -1);
  CHECK(multiply(m_(), neg) == scalar_multiple(Rational(-1), commutator(w2.a, w2.b)));

  std::mt19937 rng(31);
  for (int i = 0; i < 20; ++i) {
    const int e1 = i % 2 ? 1 : -1;
    const int e2 = i % 3 ? 1 : -1;
    const RiordanPair i1 = testing::random_involution(rng, N, e1);
    const RiordanPair i2 = testing::random_involution(rng, N, e2);
    const auto w = two_involution_product_witness(i1, i2);
    CHECK(w.sign == e1 * e2);
    const RiordanPair prod = multiply(i1, i2);
    CHECK(prod == scalar_multiple(Rational(w.sign), commutator(w.a, w.b)));
    const auto pattern = diagonal_pattern(prod);
    CHECK((pattern == DiagonalPattern::AllOnes || pattern == DiagonalPattern::AllMinusOnes));
    if (w.sign == 1) CHECK(in_commutator_subgroup(prod));
    CHECK(is_involution(w.a));
  }
}
