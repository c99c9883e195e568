#include <doctest.h>

#include "testutil.hpp"
#include "tfps/parser.hpp"

using namespace tfps;
using testutil::fp_ctx;
using testutil::q_ctx;

TEST_CASE("parse_expr: polynomials, precedence, literals") {
  auto ctx = q_ctx({"y1", "y2"});
  auto f = parse_expr<Rational>("y1^2 - y2^3", ctx, 8);
  CHECK(f.coeff({2, 0}) == Rational(1));
  CHECK(f.coeff({0, 3}) == Rational(-1));
  CHECK(f.terms().size() == 2);

  CHECK(parse_expr<Rational>("0", ctx, 5).is_zero());

  auto cxy = q_ctx({"x", "y"});
  auto g = parse_expr<Rational>("(x - y^2)*(y - x^2)", cxy, 8);
  CHECK(g.coeff({1, 1}) == Rational(1));
  CHECK(g.coeff({3, 0}) == Rational(-1));
  CHECK(g.coeff({0, 3}) == Rational(-1));
  CHECK(g.coeff({2, 2}) == Rational(1));

  // precedence: ^ binds tighter than unary minus, * tighter than +
  auto h = parse_expr<Rational>("-x^2 + 3/2*x*y", cxy, 8);
  CHECK(h.coeff({2, 0}) == Rational(-1));
  CHECK(h.coeff({1, 1}) == Rational(3, 2));

  // prime-field literals reduce modulo p
  auto c5 = fp_ctx({"x"}, 5);
  auto k = parse_expr<Fp>("7*x + 3/2", c5, 4);
  CHECK(k.coeff({1}) == Fp(2, 5));
  CHECK(k.coeff({0}) == Fp(4, 5));  // 3 * inverse(2) = 3*3 = 9 = 4
}

TEST_CASE("format_series matches the documented shape") {
  auto ctx = q_ctx({"x"});
  Series<Rational> e(ctx, 5);
  e.add_term({1}, Rational(1));
  e.add_term({2}, Rational(1));
  e.add_term({3}, Rational(2));
  e.add_term({4}, Rational(6));
  CHECK(format_series(e) == "x + x^2 + 2*x^3 + 6*x^4 + O(deg 5)");

  CHECK(format_series(Series<Rational>::zero(ctx, 3)) == "0 + O(deg 3)");

  Series<Rational> m(ctx, 6);
  m.add_term({0}, Rational(-1, 2));
  m.add_term({3}, Rational(5, 4));
  CHECK(format_series(m) == "-1/2 + 5/4*x^3 + O(deg 6)");
}

TEST_CASE("round-trip: parse(format(f)) == f for random series") {
  std::mt19937_64 rng(2024);
  auto cq = q_ctx({"x", "y", "z"});
  for (int it = 0; it < 250; ++it) {
    auto f = testutil::random_series(rng, cq, 9, 6);
    auto g = parse_formatted<Rational>(format_series(f), cq, 1);
    CHECK(g.precision() == f.precision());
    CHECK(g.equal_at_min_precision(f));
  }
  auto c7 = fp_ctx({"x", "y"}, 7);
  for (int it = 0; it < 250; ++it) {
    auto f = testutil::random_series(rng, c7, 9, 6);
    auto g = parse_formatted<Fp>(format_series(f), c7, 1);
    CHECK(g.precision() == f.precision());
    CHECK(g.equal_at_min_precision(f));
  }
}

TEST_CASE("grammar-invalid inputs are rejected with positions") {
  auto ctx = q_ctx({"x", "y"});
  auto bad = [&](const std::string& s) {
    CHECK_THROWS_AS((void)parse_expr<Rational>(s, ctx, 5), ParseError);
  };
  bad("");
  bad("x +");
  bad("* x");
  bad("x ^ y");     // exponent must be a natural literal
  bad("x ^ -2");
  bad("(x + y");
  bad("x + )");
  bad("q");         // unknown variable
  bad("x y");       // no implicit multiplication
  bad("3 / x");     // slash only in rational literals
  bad("x @ y");
  CHECK_THROWS_AS((void)parse_expr<Rational>("1/0", ctx, 5),
                  PreconditionError);

  try {
    parse_expr<Rational>("x +\n* y", ctx, 5);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.column == 1);
  }
}

TEST_CASE("fuzz: random byte strings never crash the parser") {
  std::mt19937_64 rng(99);
  auto ctx = q_ctx({"x", "y"});
  const std::string alphabet = "xy1234567890+-*/^() \t\n_ab%$";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> len(0, 30);
  int rejected = 0, parsed = 0;
  for (int it = 0; it < 2000; ++it) {
    std::string s;
    int n = len(rng);
    for (int i = 0; i < n; ++i) s += alphabet[pick(rng)];
    try {
      (void)parse_expr<Rational>(s, ctx, 6);
      ++parsed;
    } catch (const ParseError&) {
      ++rejected;
    } catch (const PreconditionError&) {
      ++rejected;  // e.g. zero denominators
    }
  }
  CHECK(parsed + rejected == 2000);
  CHECK(rejected > 0);
}

TEST_CASE("term-list JSON round-trip") {
  auto ctx = q_ctx({"x", "y"});
  Series<Rational> f(ctx, 7);
  f.add_term({1, 2}, Rational(-3, 7));
  f.add_term({0, 0}, Rational(5));
  auto j = series_to_json(f);
  CHECK(json_field_name(j) == "Q");
  auto g = series_from_json<Rational>(j, Rational::Meta{});
  CHECK(g.precision() == 7);
  CHECK(g.equal_at_min_precision(f));
  CHECK(*g.context() == *ctx);

  auto c3 = fp_ctx({"t"}, 3);
  Series<Fp> h(c3, 4);
  h.add_term({2}, Fp(2, 3));
  auto j2 = series_to_json(h);
  CHECK(json_field_name(j2) == "F3");
  auto h2 = series_from_json<Fp>(j2, Fp::Meta{3});
  CHECK(h2.equal_at_min_precision(h));
}
