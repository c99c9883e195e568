#include <doctest.h>

#include "testutil.hpp"
#include "tfps/division.hpp"
#include "tfps/parser.hpp"
#include "tfps/weierstrass.hpp"

using namespace tfps;
using testutil::q_ctx;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

// Binomial series (1+y)^{1/2} truncated: independent oracle for the square
// root produced by Hensel factorization.
Series<Rational> sqrt_one_plus(const ContextPtr<Rational>& ctx, int var,
                               int prec) {
  Series<Rational> s(ctx, prec);
  Rational coef(1);
  Expo e(ctx->vars.size(), 0);
  s.add_term(e, coef);
  Rational half(1, 2);
  for (int k = 1; k < prec; ++k) {
    // C(1/2, k) = C(1/2, k-1) * (1/2 - (k-1)) / k
    coef = coef * (half - Rational(k - 1)) / Rational(k);
    Expo ek(ctx->vars.size(), 0);
    ek[var] = k;
    s.add_term(ek, coef);
  }
  return s;
}

}  // namespace

TEST_CASE("regularity order of the distinguished variable") {
  auto ctx = q_ctx({"x", "y"});
  auto f = parse_expr<Rational>("x^2 - y^2*(1 + y)", ctx, 10);
  auto o = xn_regularity_order(f, 0);
  CHECK(o.resolved);
  CHECK(o.value == 2);
  CHECK(xn_regularity_order(f, 1).value == 2);  // f(0,y) = -y^2 - y^3

  auto unit = parse_expr<Rational>("1 + x", ctx, 10);
  CHECK(xn_regularity_order(unit, 0).value == 0);

  auto g = parse_expr<Rational>("(x - y^2)*(y - x^2)", ctx, 10);
  CHECK(xn_regularity_order(g, 1).value == 3);  // g(0,y) = -y^3

  auto xy = parse_expr<Rational>("x*y", ctx, 10);
  CHECK_FALSE(xn_regularity_order(xy, 1).resolved);
}

TEST_CASE("weierstrass division: worked instances") {
  auto ctx = q_ctx({"x", "y"});
  auto f = parse_expr<Rational>("x^2 - y^2*(1 + y)", ctx, 12);
  auto g = parse_expr<Rational>("x^3", ctx, 12);
  auto div = weierstrass_divide(g, f, 0);
  CHECK(div.d == 2);
  auto expected_q = parse_expr<Rational>("x", ctx, div.quotient.precision());
  auto expected_r =
      parse_expr<Rational>("x*y^2*(1 + y)", ctx, div.remainder.precision());
  CHECK(div.quotient.equal_at_min_precision(expected_q));
  CHECK(div.remainder.equal_at_min_precision(expected_r));
  // degree bound in the distinguished variable
  CHECK(div.remainder.max_exponent_of(0) < 2);

  auto self = weierstrass_divide(f, f, 0);
  CHECK(self.quotient.equal_at_min_precision(
      Series<Rational>::constant(ctx, self.quotient.precision(), q(1))));
  CHECK(self.remainder.is_zero());
}

TEST_CASE("weierstrass division against the quadratic root") {
  // P(x,t) = t^2 + 2t - x is t-regular of order 1; dividing t by P gives a
  // t-free remainder r(x) with t = q*P + r, so r is the root of P that
  // vanishes at the origin: r^2 + 2r - x = 0 below precision.
  auto ctx = q_ctx({"x", "t"});
  auto P = parse_expr<Rational>("t^2 + 2*t - x", ctx, 14);
  auto t = Series<Rational>::variable(ctx, 14, 1);
  auto div = weierstrass_divide(t, P, 1);
  CHECK(div.d == 1);
  CHECK(div.remainder.max_exponent_of(1) == 0);
  auto r = div.remainder;
  auto residual = r * r + r.scaled(q(2)) - Series<Rational>::variable(ctx, r.precision(), 0);
  CHECK(residual.is_zero());
  // explicit prefix: r = x/2 - x^2/8 + x^3/16 - ...
  CHECK(r.coeff({1, 0}) == q(1, 2));
  CHECK(r.coeff({2, 0}) == q(-1, 8));
  CHECK(r.coeff({3, 0}) == q(1, 16));
}

TEST_CASE("weierstrass division identity on random regular inputs") {
  std::mt19937_64 rng(1234);
  auto ctx = q_ctx({"y", "x"});  // distinguished variable is index 1
  std::uniform_int_distribution<int> dd(1, 3);
  for (int it = 0; it < 40; ++it) {
    int d = dd(rng);
    int prec = 12;
    // f = x^d * unit(x) + terms of positive y-degree
    Series<Rational> f(ctx, prec);
    f.add_term({0, d}, q(1));
    if (rng() % 2) f.add_term({0, d + 1}, q(static_cast<long>(rng() % 5) - 2));
    auto mixed = testutil::random_series(rng, ctx, prec, 6);
    for (const auto& [e, c] : mixed.terms())
      if (e[0] >= 1) f.add_term(e, c);
    auto g = testutil::random_series(rng, ctx, prec, 8);
    auto div = weierstrass_divide(g, f, 1);
    CHECK(div.remainder.max_exponent_of(1) < div.d);
    // the identity is certified below min(prec r, prec q + ord f)
    auto recon = div.quotient.as_polynomial_at(prec) * f + div.remainder;
    int check_prec =
        std::min({prec, div.remainder.precision(),
                  div.quotient.precision() + f.order().value});
    CHECK(check_prec >= 3);
    CHECK((g - recon).truncated_to(check_prec).is_zero());
  }
}

TEST_CASE("weierstrass division cross-checked by ideal division") {
  // When f's initial exponent under grlex is d*e_var, Hironaka division by
  // the single-element family [f] also produces an x_var-bounded remainder
  // and the two paths agree by uniqueness.
  auto ctx = q_ctx({"x", "y"});
  auto f = parse_expr<Rational>("y^2 - x^2 - x^3", ctx, 12);
  REQUIRE(*f.initial_exponent(MonomialOrder{}) == Expo{0, 2});
  auto g = parse_expr<Rational>("y^3 + x*y", ctx, 12);
  auto wd = weierstrass_divide(g, f, 1);
  DivisionFamily<Rational> fam({f});
  auto hd = hironaka_divide(g, fam);
  CHECK(wd.quotient.equal_at_min_precision(hd.quotients[0]));
  CHECK(wd.remainder.equal_at_min_precision(hd.remainder));
}

#include "tfps/division.hpp"

TEST_CASE("preparation: worked instances and reconstruction") {
  auto ctx = q_ctx({"x", "y"});
  auto f = parse_expr<Rational>("x^2 - y^2 - y^3", ctx, 12);
  auto w = weierstrass_prepare(f, 0);
  CHECK(w.d == 2);
  CHECK(w.unit.equal_at_min_precision(
      Series<Rational>::constant(ctx, w.unit.precision(), q(1))));
  CHECK(w.coeffs[0].is_zero());
  CHECK(w.coeffs[1].equal_at_min_precision(
      parse_expr<Rational>("-y^2*(1+y)", ctx, w.coeffs[1].precision())));
  CHECK(w.reconstruct().equal_at_min_precision(f));

  auto f2 = parse_expr<Rational>("(1 + x + y)*x", ctx, 12);
  auto w2 = weierstrass_prepare(f2, 0);
  CHECK(w2.d == 1);
  CHECK(w2.reconstruct().equal_at_min_precision(f2));
  CHECK(w2.coeffs[0].constant_term().is_zero());

  auto u = parse_expr<Rational>("2 + y", ctx, 12);
  auto w3 = weierstrass_prepare(u, 0);
  CHECK(w3.d == 0);
  CHECK(w3.coeffs.empty());
  CHECK(w3.reconstruct().equal_at_min_precision(u));
}

TEST_CASE("preparation on random regular inputs") {
  std::mt19937_64 rng(4321);
  auto ctx = q_ctx({"y", "x"});
  std::uniform_int_distribution<int> dd(1, 3);
  for (int it = 0; it < 50; ++it) {
    int d = dd(rng);
    int prec = 16;
    Series<Rational> f(ctx, prec);
    f.add_term({0, d}, q((rng() % 2) ? 1 : 3));
    auto mixed = testutil::random_series(rng, ctx, prec, 6);
    for (const auto& [e, c] : mixed.terms())
      if (e[0] >= 1) f.add_term(e, c);
    auto w = weierstrass_prepare(f, 1);
    CHECK(w.d == d);
    CHECK(w.unit.constant_term() != Rational());
    for (const auto& a : w.coeffs) {
      CHECK(a.constant_term().is_zero());
      CHECK(a.max_exponent_of(1) == 0);
    }
    CHECK(w.reconstruct().equal_at_min_precision(f));
  }
}

TEST_CASE("preparation in an extended context reproduces division") {
  // For h := W + w*g in the context extended by a fresh variable w, the
  // degree-0 part of h's preparation is (1, W) and the degree-1 parts
  // (v1, Q1) satisfy g = v1*W + Q1, deg Q1 < d. Comparing with
  // weierstrass_divide(g, f): q = v1 * u^{-1} and r = Q1.
  std::mt19937_64 rng(9);
  auto ctx = q_ctx({"y", "x"});
  auto ctx2 = q_ctx({"y", "x", "w"});
  std::vector<int> embed{0, 1};
  std::uniform_int_distribution<int> dd(1, 2);
  for (int it = 0; it < 20; ++it) {
    int d = dd(rng);
    int prec = 12;
    Series<Rational> f(ctx, prec);
    f.add_term({0, d}, q(1));
    auto mixed = testutil::random_series(rng, ctx, prec, 5);
    for (const auto& [e, c] : mixed.terms())
      if (e[0] >= 1) f.add_term(e, c);
    auto g = testutil::random_series(rng, ctx, prec, 6);

    auto wf = weierstrass_prepare(f, 1);
    auto W = wf.weierstrass_polynomial();

    auto h = W.transported(ctx2, embed) +
             Series<Rational>::variable(ctx2, W.precision(), 2) *
                 g.transported(ctx2, embed);
    auto wh = weierstrass_prepare(h, 1);
    auto Wh = wh.weierstrass_polynomial();

    // read off the w-degree 0 and 1 slices
    auto slice = [&](const Series<Rational>& s, int k) {
      return s.coefficient_in_var(2, k).transported(ctx, {0, 1, -1});
    };
    // transported() rejects dropped-but-used variables; the slices are
    // w-free by construction so the -1 slot is never consulted.
    auto W0 = slice(Wh, 0);
    auto Q1 = slice(Wh, 1);
    auto u0 = slice(wh.unit, 0);
    auto v1 = slice(wh.unit, 1);

    CHECK(W0.equal_at_min_precision(W.truncated_to(W0.precision())));
    CHECK(u0.equal_at_min_precision(
        Series<Rational>::constant(ctx, u0.precision(), q(1))));

    auto div = weierstrass_divide(g, f, 1);
    int p = std::min({v1.precision(), div.quotient.precision()});
    auto q_from_prep = v1 * wf.unit.invert_unit();
    CHECK(q_from_prep.truncated_to(p).equal_at_min_precision(
        div.quotient.truncated_to(p)));
    int pr = std::min(Q1.precision(), div.remainder.precision());
    CHECK(Q1.truncated_to(pr).equal_at_min_precision(
        div.remainder.truncated_to(pr)));
  }
}

TEST_CASE("hensel factorization of z^2 - (1+y)") {
  auto ctx = q_ctx({"y"});
  int prec = 12;
  SeriesPoly<Rational> P;
  P.c.push_back(-parse_expr<Rational>("1 + y", ctx, prec));
  P.c.push_back(Series<Rational>::zero(ctx, prec));
  P.c.push_back(Series<Rational>::constant(ctx, prec, q(1)));
  Rational::Meta meta{};
  std::vector<Rational> f0{q(-1), q(1)};  // z - 1
  std::vector<Rational> g0{q(1), q(1)};   // z + 1
  auto [P1, P2] = hensel_factor(P, f0, g0);

  auto s = sqrt_one_plus(ctx, 0, prec);
  CHECK(P1.c[0].equal_at_min_precision(-s));
  CHECK(P2.c[0].equal_at_min_precision(s));
  CHECK(s.coeff({0}) == q(1));
  CHECK(s.coeff({1}) == q(1, 2));
  CHECK(s.coeff({2}) == q(-1, 8));
  CHECK(s.coeff({3}) == q(1, 16));
  CHECK(s.coeff({4}) == q(-5, 128));

  auto prod = poly_mul(P1, P2);
  for (int j = 0; j <= P.degree(); ++j)
    CHECK(prod.c[j].equal_at_min_precision(P.c[j]));
}

TEST_CASE("hensel factorization refuses non-coprime residue splits") {
  auto ctx = q_ctx({"y"});
  int prec = 8;
  SeriesPoly<Rational> P;
  P.c.push_back(-parse_expr<Rational>("y^2*(1+y)", ctx, prec));
  P.c.push_back(Series<Rational>::zero(ctx, prec));
  P.c.push_back(Series<Rational>::constant(ctx, prec, q(1)));
  std::vector<Rational> z{Rational(), q(1)};  // the double residue root
  CHECK_THROWS_AS(hensel_factor(P, z, z), PreconditionError);
}

TEST_CASE("hensel factorization recovers exact linear factors") {
  auto ctx = q_ctx({"y"});
  int prec = 10;
  auto y = Series<Rational>::variable(ctx, prec, 0);
  // P = (z - (2+y))(z - (5 - y^2)) expanded
  auto A = Series<Rational>::constant(ctx, prec, q(2)) + y;
  auto B = Series<Rational>::constant(ctx, prec, q(5)) - y * y;
  SeriesPoly<Rational> P;
  P.c.push_back(A * B);
  P.c.push_back(-(A + B));
  P.c.push_back(Series<Rational>::constant(ctx, prec, q(1)));
  std::vector<Rational> f0{q(-2), q(1)};
  std::vector<Rational> g0{q(-5), q(1)};
  auto [P1, P2] = hensel_factor(P, f0, g0);
  CHECK(P1.c[0].equal_at_min_precision(-A));
  CHECK(P2.c[0].equal_at_min_precision(-B));
}
