#include <doctest.h>

#include <random>

#include "testutil.hpp"
#include "tfps/corpus.hpp"

using namespace tfps;
using testutil::q_ctx;

TEST_CASE("euler series solves its equation with factorial coefficients") {
  int N = 32;
  auto f = euler_series(N);
  auto ctx = f.context();
  auto x = Series<Rational>::variable(ctx, N, 0);
  CHECK((x * x * f.derivative(0) - f + x).is_zero());
  Rational fact(1);
  for (int n = 0; n + 1 < N; ++n) {
    if (n > 0) fact = fact * Rational(n);
    CHECK(f.coeff({n + 1}) == fact);
  }
}

TEST_CASE("becker series: prefix, functional equation, sensitivity") {
  int N = 24;
  auto f = becker_series(N);
  auto ctx = f.context();
  CHECK(f.coeff({1}) == Rational(1));
  CHECK(f.coeff({2}) == Rational(1));
  CHECK(f.coeff({3}) == Rational(2));
  CHECK(f.coeff({4}) == Rational(7));
  auto s = Series<Rational>::monomial(ctx, N, {1}, Rational(1)) +
           Series<Rational>::monomial(ctx, N, {2}, Rational(1));
  auto x = Series<Rational>::variable(ctx, N, 0);
  CHECK((f.substitute({s}) - f.scaled(Rational(2)) + x).is_zero());
  // each coefficient is pinned: changing one breaks the equation right there
  auto g = f + Series<Rational>::monomial(ctx, N, {5}, Rational(1));
  auto bad = g.substitute({s}) - g.scaled(Rational(2)) + x;
  CHECK(bad.order() == SeriesOrder{true, 5});
}

TEST_CASE("lacunary remainder matches the known closed form") {
  int N = 30;
  auto r = lacunary_remainder(N);
  Series<Rational> expected(r.context(), N);
  int sign = 1;
  for (int e = 3; e < N; e *= 2, sign = -sign) {
    expected.add_term({e, 0}, Rational(sign));
    expected.add_term({0, e}, Rational(sign));
  }
  CHECK((r - expected).is_zero());
}

TEST_CASE("cusp syzygy report is clean") {
  auto rep = cusp_syzygy_check();
  CHECK(rep.on_curve);
  CHECK(rep.relations_hold);
  CHECK(rep.weighted_homogeneous);
}

TEST_CASE("osgood substitution: disjoint supports, bounded coefficients") {
  auto rep = osgood_gabrielov_check(4, 14);
  CHECK(rep.image_formula);
  CHECK(rep.supports_disjoint);
  CHECK(rep.coefficients_bounded);
}

TEST_CASE("cusp parametrization: random round trips") {
  int N = 24;
  auto tc = q_ctx({"t"});
  std::mt19937_64 rng(20240817);
  for (int it = 0; it < 20; ++it) {
    auto z = testutil::random_series<Rational>(rng, tc, 6, 4, true, true);
    z = z.as_polynomial_at(N);
    auto back = ploski_cusp_parametrize(z * z * z, z * z);
    CHECK(back.equal_at_min_precision(z));
  }
}

TEST_CASE("cusp parametrization rejects points off the curve") {
  int N = 12;
  auto tc = q_ctx({"t"});
  auto t = Series<Rational>::variable(tc, N, 0);
  CHECK_THROWS_AS(ploski_cusp_parametrize(t * t, t * t), PreconditionError);
  // odd-order second coordinate, even though y1^2 = y2^3 can still hold
  CHECK_THROWS_AS(ploski_cusp_parametrize(Series<Rational>(tc, N), t),
                  PreconditionError);
}

TEST_CASE("ode encoding: witness values annihilate the system") {
  int N = 20;
  auto pctx = q_ctx({"x", "y", "z1"});
  Series<Rational> P(pctx, N);
  P.add_term({2, 0, 1}, Rational(1));
  P.add_term({0, 1, 0}, Rational(-1));
  P.add_term({1, 0, 0}, Rational(1));
  auto sys = encode_ode_system(P, 1);
  REQUIRE(sys.equations.size() == 3);
  CHECK(sys.joint->arity() == 3 + 1 + sys.n + 4);

  auto values = ode_witness_values(euler_series(N), 1);
  REQUIRE(values.size() == static_cast<std::size_t>(sys.n) + 5);
  auto rs = ode_residuals(sys, values);
  for (const auto& r : rs) {
    CHECK(r.is_zero());
    CHECK(r.precision() >= N - 2);
  }
}

TEST_CASE("ode encoding: second derivatives and dependency roster") {
  int N = 14;
  // y'' = y, solved by cosh-like even series
  auto pctx = q_ctx({"x", "y", "z1", "z2"});
  Series<Rational> P(pctx, N);
  P.add_term({0, 0, 0, 1}, Rational(1));
  P.add_term({0, 1, 0, 0}, Rational(-1));
  auto sys = encode_ode_system(P, 2);
  auto xctx = q_ctx({"x"});
  Series<Rational> ch(xctx, N);
  Rational inv(1);
  for (int j = 0; j < N; j += 2) {
    if (j > 0) inv = inv / Rational(j) / Rational(j - 1);
    ch.add_term({j}, inv);
  }
  for (const auto& r : ode_residuals(sys, ode_witness_values(ch, 2)))
    CHECK(r.is_zero());

  REQUIRE(sys.dependencies.size() == static_cast<std::size_t>(sys.n) + 5);
  CHECK(sys.dependencies.front().first == "y");
  CHECK(sys.dependencies.front().second == std::vector<std::string>{"x"});
  CHECK(sys.dependencies.back().first == "g");
  CHECK(sys.dependencies.back().second == std::vector<std::string>{"u"});
}

TEST_CASE("ode encoding rejects malformed input") {
  auto pctx = q_ctx({"x", "y", "z1"});
  Series<Rational> P(pctx, 8);
  P.add_term({0, 0, 1}, Rational(1));
  CHECK_THROWS_AS(encode_ode_system(P, 2), ContextError);
  CHECK_THROWS_AS(encode_ode_system(P, 0), PreconditionError);
}

TEST_CASE("linear correction repairs near-relations and respects order") {
  int N = 16, c = 3;
  auto ctx = q_ctx({"x1", "x2"});
  auto y1 = Series<Rational>::monomial(ctx, N, {0, 1}, Rational(1)) +
            Series<Rational>::monomial(ctx, N, {2, 1}, Rational(5));
  auto y2 = -Series<Rational>::monomial(ctx, N, {1, 0}, Rational(1)) -
            Series<Rational>::monomial(ctx, N, {3, 0}, Rational(5)) +
            Series<Rational>::monomial(ctx, N, {1, c}, Rational(2));
  auto fixed = linear_correction({y1, y2}, c);
  Expo e1{1, 0}, e2{0, 1};
  auto res = fixed[0].shifted(e1, Rational(1)) +
             fixed[1].shifted(e2, Rational(1));
  CHECK(res.is_zero());
  for (int i = 0; i < 2; ++i) {
    auto d = fixed[i] -
             (i == 0 ? y1 : y2).truncated_to(fixed[i].precision());
    auto o = d.order();
    CHECK((!o.resolved || o.value >= c));
  }
  // a residual of low order is an input error, not something to paper over
  auto shallow = Series<Rational>::monomial(ctx, N, {0, 1}, Rational(1));
  CHECK_THROWS_AS(
      linear_correction({shallow, Series<Rational>(ctx, N)}, 3),
      PreconditionError);
}

TEST_CASE("fixture corpus covers every required topic") {
  CHECK(coverage_gaps().empty());
  // ids are unique and every fixture declares at least one topic
  std::set<std::string> ids;
  for (const auto& fx : example_corpus()) {
    CHECK(ids.insert(fx.id).second);
    CHECK_FALSE(fx.covers.empty());
    CHECK_FALSE(fx.description.empty());
  }
}

TEST_CASE("all fixtures pass at default precision") {
  for (const auto& rep : verify_examples()) {
    INFO(rep.id);
    for (const auto& c : rep.checks) {
      INFO(c.name);
      CHECK(c.pass);
    }
    CHECK(rep.all_pass);
  }
}

TEST_CASE("verify_examples: id filter and precision override") {
  auto one = verify_examples("unit-inversion", 10);
  REQUIRE(one.size() == 1);
  CHECK(one[0].all_pass);
  CHECK_THROWS_AS(verify_examples("no-such-example"), PreconditionError);
}
