#ifndef TFPS_CORPUS_HPP
#define TFPS_CORPUS_HPP

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "tfps/division.hpp"
#include "tfps/greenberg.hpp"
#include "tfps/jets.hpp"
#include "tfps/lifting.hpp"
#include "tfps/weierstrass.hpp"

// Worked examples as self-verifying fixtures. Every check below is a pure
// boolean over exact arithmetic; divergent series appear as exact
// truncations with coefficient-growth assertions.

namespace tfps {

// The divergent solution of x^2 y' - y + x = 0: coefficients follow the
// recursion a_{n+1} = n a_n from a_1 = 1, so a_{n+1} = n!.
inline Series<Rational> euler_series(int N) {
  if (N < 2) throw PreconditionError("precision must be >= 2");
  auto ctx = make_context<Rational>({"x"});
  Series<Rational> f(ctx, N);
  Rational a(1);
  for (int n = 0; n + 1 < N; ++n) {
    if (n > 0) a = a * Rational(n);
    f.add_term({n + 1}, a);
  }
  return f;
}

// The unique solution of f(x + x^2) = 2 f(x) - x. The recursion is
// triangular: [x^k] f(x + x^2) = c_k + contributions of c_j for j < k.
inline Series<Rational> becker_series(int N) {
  if (N < 2) throw PreconditionError("precision must be >= 2");
  auto ctx = make_context<Rational>({"x"});
  auto s = Series<Rational>::monomial(ctx, N, {1}, Rational(1)) +
           Series<Rational>::monomial(ctx, N, {2}, Rational(1));
  // powers of x + x^2, computed once
  std::vector<Series<Rational>> pw{Series<Rational>::constant(ctx, N,
                                                              Rational(1))};
  for (int j = 1; j < N; ++j) pw.push_back(pw.back() * s);

  std::vector<Rational> c(N, Rational(0));
  for (int k = 1; k < N; ++k) {
    Rational rhs = k == 1 ? Rational(1) : Rational(0);
    for (int j = 1; j < k; ++j) rhs = rhs + c[j] * pw[j].coeff({k});
    c[k] = rhs;  // [x^k](x+x^2)^k = 1, so 2c_k = c_k + rhs
  }
  Series<Rational> f(ctx, N);
  for (int k = 1; k < N; ++k) f.add_term({k}, c[k]);
  return f;
}

// Remainder of x*y divided by (x - y^2)(y - x^2). The initial monomial of
// the divisor is x*y, so the remainder is supported on pure powers; its
// exponents turn out to be the lacunary sequence 3*2^i with alternating
// signs, which is the point of the example.
inline Series<Rational> lacunary_remainder(int N) {
  auto ctx = make_context<Rational>({"x", "y"});
  Series<Rational> g(ctx, N);
  g.add_term({1, 1}, Rational(1));
  g.add_term({3, 0}, Rational(-1));
  g.add_term({0, 3}, Rational(-1));
  g.add_term({2, 2}, Rational(1));
  auto xy = Series<Rational>::monomial(ctx, N, {1, 1}, Rational(1));
  return hironaka_divide(xy, DivisionFamily<Rational>({g})).remainder;
}

struct CuspSyzygyReport {
  bool on_curve;              // f, g, h vanish along (t^3, t^4, t^5)
  bool relations_hold;        // r_1..r_5 are exact syzygies
  bool weighted_homogeneous;  // weights (3,4,5) give degrees 8, 9, 10
};

inline CuspSyzygyReport cusp_syzygy_check() {
  int P = 40;
  auto ctx = make_context<Rational>({"x", "y", "z"});
  auto mono = [&](Expo e, long c) {
    return Series<Rational>::monomial(ctx, P, e, Rational(c));
  };
  auto f = mono({0, 2, 0}, 1) - mono({1, 0, 1}, 1);
  auto g = mono({0, 1, 1}, 1) - mono({3, 0, 0}, 1);
  auto h = mono({0, 0, 2}, 1) - mono({2, 1, 0}, 1);

  auto tc = make_context<Rational>({"t"});
  auto arc = [&](int k) {
    return Series<Rational>::monomial(tc, P, {k}, Rational(1));
  };
  std::vector<Series<Rational>> param{arc(3), arc(4), arc(5)};
  bool on_curve = f.substitute(param).is_zero() &&
                  g.substitute(param).is_zero() &&
                  h.substitute(param).is_zero();

  auto zero = Series<Rational>::zero(ctx, P);
  std::vector<std::vector<Series<Rational>>> rels{
      {g, -f, zero},
      {h, zero, -f},
      {zero, h, -g},
      {mono({0, 0, 1}, 1), -mono({0, 1, 0}, 1), mono({1, 0, 0}, 1)},
      {mono({2, 0, 0}, 1), -mono({0, 0, 1}, 1), mono({0, 1, 0}, 1)}};
  bool relations = true;
  for (const auto& r : rels)
    relations = relations && (r[0] * f + r[1] * g + r[2] * h).is_zero();

  auto wdeg_is = [](const Series<Rational>& s, int w) {
    for (const auto& [e, c] : s.terms())
      if (3 * e[0] + 4 * e[1] + 5 * e[2] != w) return false;
    return !s.is_zero();
  };
  bool weighted = wdeg_is(f, 8) && wdeg_is(g, 9) && wdeg_is(h, 10);
  // the two non-trivial relations are weighted homogeneous too
  weighted = weighted && wdeg_is(rels[3][0], 5) && wdeg_is(rels[3][1], 4) &&
             wdeg_is(rels[3][2], 3) && wdeg_is(rels[4][0], 6) &&
             wdeg_is(rels[4][1], 5) && wdeg_is(rels[4][2], 4);
  return {on_curve, relations, weighted};
}

struct OsgoodReport {
  bool image_formula;         // phi(f_n) = y1^{n+1} y2 sum_{i>n} y2^i/i!
  bool supports_disjoint;     // phi(f_n), phi(f_m) share no monomial
  bool coefficients_bounded;  // |(n+1)! * coeff| <= 1
};

// The substitution x1 -> y1, x2 -> y1*y2, x3 -> y1*y2*e^{y2} applied to
// the cleared polynomials f_n = x1^n x3 - sum_{i<=n} x2^{i+1} x1^{n-i}/i!.
// The images live on pairwise disjoint y1-levels with factorially small
// coefficients, which is what makes their weighted sum convergent while
// the preimage is divergent.
inline OsgoodReport osgood_gabrielov_check(int n_max, int N) {
  auto ctxX = make_context<Rational>({"x1", "x2", "x3"});
  auto ctxY = make_context<Rational>({"y1", "y2"});
  int P = std::max(N, 4);

  auto y1 = Series<Rational>::variable(ctxY, P, 0);
  auto y2 = Series<Rational>::variable(ctxY, P, 1);
  Series<Rational> expy2(ctxY, P);  // e^{y2} - 1 has zero constant term,
  Rational inv_fact(1);             // but phi(x3) absorbs the constant
  for (int j = 0; j < P; ++j) {
    if (j > 0) inv_fact = inv_fact / Rational(j);
    expy2.add_term({0, j}, inv_fact);
  }
  std::vector<Series<Rational>> phi{y1, y1 * y2, y1 * y2 * expy2};

  OsgoodReport rep{true, true, true};
  std::vector<std::set<Expo>> supports;
  Rational fact(1);  // n!
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) fact = fact * Rational(n);
    Series<Rational> fn(ctxX, P);
    Expo lead(3, 0);
    lead[0] = n;
    lead[2] = 1;
    fn.add_term(lead, Rational(1));
    Rational inv(1);
    for (int i = 0; i <= n; ++i) {
      if (i > 0) inv = inv / Rational(i);
      Expo e(3, 0);
      e[0] = n - i;
      e[1] = i + 1;
      fn.add_term(e, -inv);
    }
    auto image = fn.substitute(phi);

    Series<Rational> expected(ctxY, P);
    // recompute 1/i! from scratch to keep the check independent
    Rational acc(1);
    for (int i = 1; i <= n + 1; ++i) acc = acc / Rational(i);
    for (int i = n + 1; n + 1 + i + 1 < P; ++i) {
      if (i > n + 1) acc = acc / Rational(i);
      Expo e(2, 0);
      e[0] = n + 1;
      e[1] = i + 1;
      expected.add_term(e, acc);
    }
    rep.image_formula =
        rep.image_formula && image.equal_at_min_precision(expected);

    std::set<Expo> supp;
    for (const auto& [e, c] : image.terms())
      if (total_degree(e) < 12) supp.insert(e);
    rep.supports_disjoint = rep.supports_disjoint && !supp.empty();
    for (const auto& prev : supports)
      for (const auto& e : supp)
        if (prev.count(e)) rep.supports_disjoint = false;
    supports.push_back(std::move(supp));

    Rational scale = fact * Rational(n + 1);  // (n+1)!
    for (const auto& [e, c] : image.terms())
      rep.coefficients_bounded =
          rep.coefficients_bounded && (c * scale).abs_leq_one();
  }
  return rep;
}

// Recovers the parameter of a point on y1^2 = y2^3 as z = y1/y2, so that
// (y1, y2) = (z^3, z^2). Exactness of the division certifies membership.
template <class K>
Series<K> ploski_cusp_parametrize(const Series<K>& y1, const Series<K>& y2) {
  auto residual = y1 * y1 - y2 * y2 * y2;
  if (!residual.is_zero())
    throw PreconditionError("not on the curve: y1^2 - y2^3 has order " +
                            residual.order().to_string());
  auto o2 = y2.order();
  if (!o2.resolved)
    throw PreconditionError("not on the curve: y2 vanishes below precision");
  if (o2.value % 2 != 0)
    throw PreconditionError("not on the curve: y2 has odd order " +
                            std::to_string(o2.value));
  auto z = exact_series_divide(y1, y2, "not on the curve");
  if (!(z * z).equal_at_min_precision(y2) ||
      !(z * z * z).equal_at_min_precision(y1))
    throw PreconditionError("not on the curve: quotient fails to square back");
  return z;
}

// Auxiliary encoding of P(x, y, y', ..., y^(n)) = 0 as a polynomial system:
// unknowns z_i stand for the scaled derivatives, g for the reparametrized
// solution, and h, k, l are Taylor-remainder witnesses tying them together.
struct OdeSystem {
  ContextPtr<Rational> joint;  // x, t, u, then y, z1..zn, h, k, l, g
  int n;
  std::vector<Series<Rational>> equations;
  // which base variables each unknown is allowed to depend on
  std::vector<std::pair<std::string, std::vector<std::string>>> dependencies;
};

// P must live in a context (x, y, z1, ..., zn) listing the derivative
// placeholders in order.
inline OdeSystem encode_ode_system(const Series<Rational>& P, int n) {
  if (n < 1) throw PreconditionError("derivative order must be >= 1");
  if (P.context()->arity() != n + 2)
    throw ContextError("equation context must be (x, y, z1..zn)");
  int prec = P.precision();

  std::vector<std::string> names{"x", "t", "u", "y"};
  for (int i = 1; i <= n; ++i) names.push_back("z" + std::to_string(i));
  names.insert(names.end(), {"h", "k", "l", "g"});
  auto joint = make_context<Rational>(names);
  int nv = static_cast<int>(names.size());

  std::vector<int> vmap(n + 2);
  vmap[0] = 0;                                  // x
  for (int i = 0; i <= n; ++i) vmap[1 + i] = 3 + i;  // y, z1..zn
  auto E1 = P.transported(joint, vmap);

  auto var = [&](int slot) {
    return Series<Rational>::variable(joint, prec, slot);
  };
  auto x = var(0), t = var(1), u = var(2);
  auto E2 = var(nv - 1) - var(3);  // g - y
  Rational inv_fact(1);
  auto tpow = t;
  for (int i = 1; i <= n; ++i) {
    if (i > 1) {
      inv_fact = inv_fact / Rational(i);
      tpow = tpow * t;
    }
    E2 = E2 - (tpow * var(3 + i)).scaled(inv_fact);
  }
  E2 = E2 - tpow * t * var(nv - 4) + (u - x - t) * var(nv - 3);
  auto E3 = var(nv - 1) - var(3) + (u - x) * var(nv - 2);

  OdeSystem out{joint, n, {E1, E2, E3}, {}};
  std::vector<std::string> xtu{"x", "t", "u"};
  out.dependencies.push_back({"y", {"x"}});
  for (int i = 1; i <= n; ++i)
    out.dependencies.push_back({"z" + std::to_string(i), {"x"}});
  out.dependencies.push_back({"h", xtu});
  out.dependencies.push_back({"k", xtu});
  out.dependencies.push_back({"l", xtu});
  out.dependencies.push_back({"g", {"u"}});
  return out;
}

namespace cdetail {

inline Series<Rational> divide_by_var_power(const Series<Rational>& s,
                                            int var, int k) {
  Series<Rational> r(s.context(), std::max(1, s.precision() - k));
  for (const auto& [e, c] : s.terms()) {
    if (e[var] < k)
      throw PreconditionError("term not divisible by the variable power");
    Expo e2(e);
    e2[var] -= k;
    r.add_term(e2, c);
  }
  return r;
}

}  // namespace cdetail

// Witness values (y, z1..zn, h, k, l, g) in the base context (x, t, u) for
// a given univariate solution candidate. h comes from the Taylor remainder
// of y(x+t), k and l are the divided differences that eliminate u.
inline std::vector<Series<Rational>> ode_witness_values(
    const Series<Rational>& y, int n) {
  if (y.context()->arity() != 1)
    throw ContextError("solution must be univariate");
  int P = y.precision();
  auto base = make_context<Rational>({"x", "t", "u"});

  auto yx = y.transported(base, {0});
  auto gu = y.transported(base, {2});

  std::vector<Series<Rational>> values{yx};
  auto d = y;
  for (int i = 1; i <= n; ++i) {
    d = d.derivative(0);
    values.push_back(d.transported(base, {0}));
  }

  // y(x+t), exact below P since each a_j (x+t)^j is a degree-j polynomial
  auto xt = Series<Rational>::variable(base, P, 0) +
            Series<Rational>::variable(base, P, 1);
  std::vector<Series<Rational>> xt_pow{
      Series<Rational>::constant(base, P, Rational(1))};
  int max_j = 0;
  for (const auto& [e, c] : y.terms()) max_j = std::max(max_j, e[0]);
  for (int j = 1; j <= max_j; ++j) xt_pow.push_back(xt_pow.back() * xt);
  Series<Rational> yxt(base, P);
  for (const auto& [e, c] : y.terms()) yxt = yxt + xt_pow[e[0]].scaled(c);

  auto remainder = yxt - yx;
  Rational inv_fact(1);
  for (int i = 1; i <= n; ++i) {
    if (i > 1) inv_fact = inv_fact / Rational(i);
    Expo shift(3, 0);
    shift[1] = i;
    // t^i z_i is exact below P: z_i is the derivative of a polynomial, so
    // lifting it to full precision before the shift loses nothing
    remainder =
        remainder - values[i].as_polynomial_at(P).shifted(shift, inv_fact);
  }
  auto h = cdetail::divide_by_var_power(remainder, 1, n + 1);

  // k = -(y(u) - y(x+t)) / (u - x - t) and l = -(y(u) - y(x)) / (u - x),
  // expanded through (a^j - b^j)/(a - b) = sum a^p b^q over p + q = j - 1
  Series<Rational> k(base, std::max(1, P - 1)), l(base, std::max(1, P - 1));
  for (const auto& [e, c] : y.terms()) {
    int j = e[0];
    for (int p = 0; p + 1 <= j; ++p) {
      int q = j - 1 - p;
      Expo up(3, 0);
      up[2] = p;
      k = k - xt_pow[q].truncated_to(k.precision()).shifted(up, c);
      Expo eq(3, 0);
      eq[2] = p;
      eq[0] = q;
      l.add_term(eq, -c);
    }
  }

  values.push_back(h);
  values.push_back(k);
  values.push_back(l);
  values.push_back(gu);
  return values;
}

// Residuals of the encoded system at witness values; the unknowns may be
// units (e.g. derivative placeholders), so the equations are evaluated as
// exact polynomials.
inline std::vector<Series<Rational>> ode_residuals(
    const OdeSystem& sys, const std::vector<Series<Rational>>& values) {
  const auto& base = values.front().context();
  int prec = values.front().precision();
  for (const auto& v : values) prec = std::min(prec, v.precision());
  std::vector<Series<Rational>> args;
  for (int i = 0; i < 3; ++i)
    args.push_back(Series<Rational>::variable(base, prec, i));
  for (const auto& v : values) args.push_back(v);
  std::vector<Series<Rational>> out;
  for (const auto& eq : sys.equations)
    out.push_back(eq.substitute_polynomial(args));
  return out;
}

// Correction step for the relation x1*y1 + x2*y2 = 0: every monomial of
// the residual is divisible by x1 or x2 (x1 takes precedence), so pushing
// each one into the matching component kills the residual exactly while
// moving the solution by the residual's order minus one.
inline std::vector<Series<Rational>> linear_correction(
    const std::vector<Series<Rational>>& ybar, int c) {
  if (ybar.size() != 2) throw PreconditionError("instance has two components");
  const auto& ctx = ybar[0].context();
  if (ctx->arity() != 2) throw ContextError("instance lives in two variables");
  Expo e1(2, 0), e2(2, 0);
  e1[0] = 1;
  e2[1] = 1;
  auto residual = ybar[0].shifted(e1, Rational(1)) +
                  ybar[1].shifted(e2, Rational(1));
  auto ord = residual.order();
  if (ord.resolved && ord.value < c + 1)
    throw PreconditionError("residual order too low: " + ord.to_string());
  auto out = ybar;
  for (const auto& [e, coef] : residual.terms()) {
    Expo q(e);
    if (e[0] > 0) {
      q[0] -= 1;
      out[0] = out[0] - Series<Rational>::monomial(ctx, out[0].precision(), q,
                                                   coef);
    } else {
      q[1] -= 1;
      out[1] = out[1] - Series<Rational>::monomial(ctx, out[1].precision(), q,
                                                   coef);
    }
  }
  int p = std::max(1, residual.precision() - 1);
  for (auto& v : out)
    if (v.precision() > p) v = v.truncated_to(p);
  return out;
}

// ---------------------------------------------------------------------------
// Fixture registry and coverage manifest.

struct CheckResult {
  std::string name;
  bool pass;
};

struct ExampleFixture {
  std::string id;
  std::string description;
  std::vector<std::string> covers;  // topic ids from required_corpus_topics
  std::function<std::vector<CheckResult>(int)> run;  // prec <= 0: default
};

struct FixtureReport {
  std::string id;
  std::vector<CheckResult> checks;
  bool all_pass;
};

// Every topic on this list must be covered by some fixture; the test suite
// and `verify-examples` treat a gap as a failure.
inline const std::vector<std::string>& required_corpus_topics() {
  static const std::vector<std::string> topics{
      "space-curve-syzygies",    "unit-inversion",
      "formal-factorization",    "monomial-division",
      "jet-spaces",              "derivative-encoding",
      "euler-equation",          "newton-iteration",
      "implicit-function",       "dvr-certified-lift",
      "power-equation-estimate", "cusp-estimate",
      "no-solution-level",       "linear-relation-correction",
      "system-folding",          "quadratic-lower-bound-witness",
      "separate-filtration-witness", "lacunary-division-remainder",
      "functional-equation-series",  "morphism-image",
      "curve-parametrization",   "weierstrass-preparation",
      "hensel-factorization"};
  return topics;
}

namespace cdetail {

inline Series<Rational> sqrt_one_plus_var(const ContextPtr<Rational>& ctx,
                                          int var, int prec) {
  Series<Rational> s(ctx, prec);
  Rational coef(1);
  s.add_term(Expo(ctx->vars.size(), 0), coef);
  for (int k = 1; k < prec; ++k) {
    coef = coef * (Rational(1, 2) - Rational(k - 1)) / Rational(k);
    Expo e(ctx->vars.size(), 0);
    e[var] = k;
    s.add_term(e, coef);
  }
  return s;
}

}  // namespace cdetail

inline std::vector<ExampleFixture> example_corpus() {
  std::vector<ExampleFixture> out;
  auto add = [&](std::string id, std::string desc,
                 std::vector<std::string> covers,
                 std::function<std::vector<CheckResult>(int)> run) {
    out.push_back({std::move(id), std::move(desc), std::move(covers),
                   std::move(run)});
  };

  add("euler-divergent-series",
      "factorially divergent solution of x^2 y' - y + x = 0",
      {"euler-equation"}, [](int prec) {
        int N = prec > 0 ? std::max(prec, 4) : 32;
        auto f = euler_series(N);
        std::vector<CheckResult> cs;
        auto ctx = f.context();
        bool prefix = f.coeff({1}) == Rational(1) &&
                      f.coeff({2}) == Rational(1) &&
                      f.coeff({3}) == Rational(2) &&
                      f.coeff({4}) == Rational(6) && f.coeff({0}).is_zero();
        cs.push_back({"prefix x + x^2 + 2x^3 + 6x^4", prefix});
        auto x = Series<Rational>::variable(ctx, N, 0);
        auto op = x * x * f.derivative(0) - f + x;
        cs.push_back({"operator residual vanishes", op.is_zero()});
        bool rec = true;
        for (int n = 1; n + 2 < N; ++n)
          rec = rec && f.coeff({n + 2}) == f.coeff({n + 1}) * Rational(n + 1);
        cs.push_back({"coefficient ratio grows without bound", rec});
        return cs;
      });

  add("functional-equation-series",
      "unique solution of f(x + x^2) = 2 f(x) - x, divergent",
      {"functional-equation-series"}, [](int prec) {
        int N = prec > 0 ? std::max(prec, 5) : 24;
        auto f = becker_series(N);
        auto ctx = f.context();
        std::vector<CheckResult> cs;
        bool prefix = f.coeff({1}) == Rational(1) &&
                      f.coeff({2}) == Rational(1) &&
                      f.coeff({3}) == Rational(2) &&
                      f.coeff({4}) == Rational(7);
        cs.push_back({"prefix x + x^2 + 2x^3 + 7x^4", prefix});
        auto s = Series<Rational>::monomial(ctx, N, {1}, Rational(1)) +
                 Series<Rational>::monomial(ctx, N, {2}, Rational(1));
        auto x = Series<Rational>::variable(ctx, N, 0);
        auto residual = f.substitute({s}) - f.scaled(Rational(2)) + x;
        cs.push_back({"functional-equation residual vanishes",
                      residual.is_zero()});
        auto g = f + Series<Rational>::monomial(ctx, N, {3}, Rational(1));
        auto bad = g.substitute({s}) - g.scaled(Rational(2)) + x;
        cs.push_back({"perturbing c_3 breaks the residual at degree 3",
                      bad.order() == SeriesOrder{true, 3}});
        return cs;
      });

  add("lacunary-division-remainder",
      "division remainder supported on exponents 3*2^i, alternating signs",
      {"lacunary-division-remainder"}, [](int prec) {
        int N = prec > 0 ? std::max(prec, 7) : 100;
        auto r = lacunary_remainder(N);
        std::vector<CheckResult> cs;
        Series<Rational> expected(r.context(), N);
        int sign = 1;
        for (long long e = 3; e < N; e *= 2, sign = -sign) {
          expected.add_term({static_cast<int>(e), 0}, Rational(sign));
          expected.add_term({0, static_cast<int>(e)}, Rational(sign));
        }
        cs.push_back({"remainder = sum of (-1)^i (x^{3*2^i} + y^{3*2^i})",
                      (r - expected).is_zero()});
        // pure part r(x): substituting x^2 telescopes the alternating sum
        auto cx = make_context<Rational>({"x"});
        Series<Rational> rx(cx, N), rx2(cx, N);
        for (const auto& [e, c] : r.terms())
          if (e[1] == 0) {
            rx.add_term({e[0]}, c);
            if (2 * e[0] < N) rx2.add_term({2 * e[0]}, c);
          }
        auto x3 = Series<Rational>::monomial(cx, N, {3}, Rational(1));
        cs.push_back({"r(x^2) + r(x) - x^3 = 0", (rx2 + rx - x3).is_zero()});
        return cs;
      });

  add("space-curve-syzygies",
      "twisted-curve equations: parametrization, syzygies, weights",
      {"space-curve-syzygies"}, [](int) {
        auto rep = cusp_syzygy_check();
        return std::vector<CheckResult>{
            {"f, g, h vanish along (t^3, t^4, t^5)", rep.on_curve},
            {"r_1..r_5 are exact relations", rep.relations_hold},
            {"weighted homogeneous of weights 8, 9, 10",
             rep.weighted_homogeneous}};
      });

  add("unit-inversion", "geometric series as the inverse of 1 - x",
      {"unit-inversion"}, [](int prec) {
        int N = prec > 0 ? std::max(prec, 3) : 24;
        auto ctx = make_context<Rational>({"x"});
        auto one = Series<Rational>::constant(ctx, N, Rational(1));
        auto u = one - Series<Rational>::variable(ctx, N, 0);
        auto y = u.invert_unit();
        bool all_ones = true;
        for (int k = 0; k < N; ++k) all_ones &= y.coeff({k}) == Rational(1);
        return std::vector<CheckResult>{
            {"all coefficients equal 1", all_ones},
            {"(1 - x) y - 1 = 0", (u * y - one).is_zero()}};
      });

  add("formal-factorization",
      "x^2 - y^2(1+y) splits as (x + y s)(x - y s) with s^2 = 1 + y",
      {"formal-factorization", "hensel-factorization"}, [](int prec) {
        int N = prec > 0 ? std::max(prec, 4) : 24;
        auto ctx = make_context<Rational>({"x", "y"});
        auto x = Series<Rational>::variable(ctx, N, 0);
        auto y = Series<Rational>::variable(ctx, N, 1);
        auto one = Series<Rational>::constant(ctx, N, Rational(1));
        auto fser = x * x - y * y * (one + y);
        std::vector<CheckResult> cs;

        // factor z^2 - (1 + y) from the coprime residue roots z = 1, -1
        SeriesPoly<Rational> P;
        P.c.push_back(-(one + y));
        P.c.push_back(Series<Rational>::zero(ctx, N));
        P.c.push_back(one);
        auto factors = hensel_factor(
            P, {-Rational(1), Rational(1)}, {Rational(1), Rational(1)});
        auto s = -factors.first.c[0];  // first factor is z - s
        cs.push_back({"lifted factor root squares to 1 + y",
                      (s * s).equal_at_min_precision(one + y)});
        cs.push_back(
            {"root agrees with the binomial square-root series",
             s.equal_at_min_precision(
                 cdetail::sqrt_one_plus_var(ctx, 1, N))});
        auto prod = (x + y * s) * (x - y * s);
        cs.push_back({"product of the factors reconstructs the polynomial",
                      prod.equal_at_min_precision(fser)});
        return cs;
      });

  add("monomial-division",
      "division algorithm: staircase complement and exact reduction",
      {"monomial-division"}, [](int prec) {
        int N = prec > 0 ? std::max(prec, 8) : 12;
        auto ctx = make_context<Rational>({"x1", "x2"});
        auto g1 = Series<Rational>::monomial(ctx, N, {1, 3}, Rational(1));
        auto g2 = Series<Rational>::monomial(ctx, N, {2, 2}, Rational(1));
        DivisionFamily<Rational> fam({g1, g2});
        auto dividend =
            Series<Rational>::monomial(ctx, N, {2, 3}, Rational(1)) +
            Series<Rational>::monomial(ctx, N, {1, 1}, Rational(1));
        auto res = hironaka_divide(dividend, fam);
        std::vector<CheckResult> cs;
        cs.push_back({"remainder keeps only staircase-complement support",
                      res.remainder.equal_at_min_precision(
                          Series<Rational>::monomial(ctx, N, {1, 1},
                                                     Rational(1)))});
        auto recon = res.quotients[0] * g1 + res.quotients[1] * g2 +
                     res.remainder;
        cs.push_back({"division identity f = sum q_i g_i + r",
                      recon.equal_at_min_precision(dividend)});
        return cs;
      });

  add("jet-truncation-image",
      "cusp jets over F_5: fibre of the image over the singular point",
      {"jet-spaces"}, [](int) {
        std::uint64_t p = 5;
        auto ctx = make_context<Fp>({"a", "b"}, Fp::Meta{p});
        Series<Fp> cusp(ctx, 8);
        cusp.add_term({2, 0}, Fp(1, p));
        cusp.add_term({0, 3}, Fp(p - 1, p));
        std::vector<Series<Fp>> F{cusp};
        auto sys = jet_equations(F, 1);
        std::vector<CheckResult> cs;
        cs.push_back({"order-1 jets satisfy r(n+1) equations",
                      sys.equations.size() == 2});
        auto img = image_of_truncation(F, 2, 1);
        std::size_t fibre = 0;
        bool line = true;
        for (const auto& pt : img)
          if (pt.coords[0].is_zero() && pt.coords[2].is_zero()) {
            ++fibre;
            line = line && pt.coords[1].is_zero();
          }
        cs.push_back({"image fibre over the origin is the line a_1 = 0",
                      line && fibre == p});
        std::size_t big = 0;
        for (const auto& pt : enumerate_jets(F, 1))
          if (pt.coords[0].is_zero() && pt.coords[2].is_zero()) ++big;
        cs.push_back({"truncation map is not surjective onto order-1 jets",
                      big == p * p && big > fibre});
        return cs;
      });

  add("newton-and-implicit",
      "quadratic root by doubling steps; linear system by layered solve",
      {"newton-iteration", "implicit-function"}, [](int prec) {
        int N = prec > 0 ? std::max(prec, 8) : 32;
        auto ctx = make_context<Rational>({"x"});
        SeriesPoly<Rational> P;
        P.c.push_back(-Series<Rational>::variable(ctx, N, 0));
        P.c.push_back(Series<Rational>::constant(ctx, N, Rational(2)));
        P.c.push_back(Series<Rational>::constant(ctx, N, Rational(1)));
        auto res =
            newton_lift_simple_root(P, Series<Rational>::zero(ctx, N), N);
        std::vector<CheckResult> cs;
        cs.push_back({"root prefix x/2 - x^2/8 + x^3/16",
                      res.root.coeff({1}) == Rational(1, 2) &&
                          res.root.coeff({2}) == Rational(-1, 8) &&
                          res.root.coeff({3}) == Rational(1, 16)});
        bool doubling = true;
        for (std::size_t i = 1; i < res.residual_orders.size(); ++i)
          doubling = doubling &&
                     res.residual_orders[i] >= 2 * res.residual_orders[i - 1];
        cs.push_back({"residual orders at least double", doubling});

        auto joint = make_context<Rational>({"x", "y"});
        Series<Rational> eq(joint, N);
        eq.add_term({0, 1}, Rational(1));
        eq.add_term({1, 0}, Rational(-1));
        PolySystem<Rational> sys(joint, 1, {eq});
        auto sol = ift_solve_square_system(sys, N);
        cs.push_back({"unit-Jacobian linear equation solves to y = x",
                      sol[0].equal_at_min_precision(
                          Series<Rational>::variable(ctx, N, 0))});
        return cs;
      });

  add("dvr-certified-lift",
      "automatic delta-squared certificate and lift on the cusp",
      {"dvr-certified-lift"}, [](int prec) {
        int N = prec > 0 ? std::max(prec, 16) : 32;
        auto joint = make_context<Rational>({"t", "y1", "y2"});
        Series<Rational> cusp(joint, N);
        cusp.add_term({0, 2, 0}, Rational(1));
        cusp.add_term({0, 0, 3}, Rational(-1));
        PolySystem<Rational> sys(joint, 1, {cusp});
        auto tc = make_context<Rational>({"t"});
        auto y1 = Series<Rational>::monomial(tc, N, {3}, Rational(1)) +
                  Series<Rational>::monomial(tc, N, {4}, Rational(1));
        auto y2 = Series<Rational>::monomial(tc, N, {2}, Rational(1));
        auto approx = approximate_solution(sys, {y1, y2});
        MinorSpec minor{{0}, {0}};
        auto chk = dvr_auto_delta_check(sys, approx, minor, 1);
        std::vector<CheckResult> cs;
        cs.push_back({"residual order 7 meets 2e + c = 7",
                      chk.certified && chk.delta_order == 3});
        auto lift = tougeron_lift(sys, approx, minor, 1, N / 2);
        bool exact = true;
        for (const auto& r : sys.evaluate(lift.values)) exact &= r.is_zero();
        cs.push_back({"lift lands on (t^3, t^2) exactly",
                      exact && lift.values[1].equal_at_min_precision(
                                   y2.truncated_to(N / 2))});
        return cs;
      });

  add("power-equation-estimate", "bracket for y^2 over F_2 collapses",
      {"power-equation-estimate"}, [](int) {
        auto joint = make_context<Fp>({"t", "y"}, Fp::Meta{2});
        Series<Fp> eq(joint, 16);
        eq.add_term({0, 2}, Fp(1, 2));
        PolySystem<Fp> sys(joint, 1, {eq});
        auto est = estimate_artin_function(sys, 2, 7, 5);
        return std::vector<CheckResult>{
            {"estimate collapses to 2c - 1 = 3",
             est.upper.has_value() && est.lower == 3 && *est.upper == 3}};
      });

  add("cusp-estimate", "bracket for the cusp over F_5 stays linear",
      {"cusp-estimate"}, [](int) {
        auto joint = make_context<Fp>({"t", "y1", "y2"}, Fp::Meta{5});
        Series<Fp> eq(joint, 16);
        eq.add_term({0, 2, 0}, Fp(1, 5));
        eq.add_term({0, 0, 3}, Fp(4, 5));
        PolySystem<Fp> sys(joint, 1, {eq});
        auto est = estimate_artin_function(sys, 1, 6, 4);
        return std::vector<CheckResult>{
            {"upper bound at most 3c", est.upper.has_value() &&
                                           *est.upper <= 3 &&
                                           est.lower <= *est.upper}};
      });

  add("no-solution-level", "y^2 = t^3 runs out of approximate solutions",
      {"no-solution-level"}, [](int) {
        auto joint = make_context<Fp>({"t", "y"}, Fp::Meta{3});
        Series<Fp> eq(joint, 16);
        eq.add_term({0, 2}, Fp(1, 3));
        eq.add_term({3, 0}, Fp(2, 3));
        PolySystem<Fp> sys(joint, 1, {eq});
        auto est = estimate_artin_function(sys, 1, 6, 4);
        return std::vector<CheckResult>{
            {"first empty level is 4",
             est.empty_level.has_value() && *est.empty_level == 4}};
      });

  add("linear-relation-correction",
      "monomial-wise repair of an approximate relation x1 y1 + x2 y2 = 0",
      {"linear-relation-correction"}, [](int prec) {
        int N = prec > 0 ? std::max(prec, 8) : 16;
        auto ctx = make_context<Rational>({"x1", "x2"});
        int c = 3;
        auto y1 = Series<Rational>::monomial(ctx, N, {0, 1}, Rational(1));
        auto y2 = -Series<Rational>::monomial(ctx, N, {1, 0}, Rational(1)) +
                  Series<Rational>::monomial(ctx, N, {0, c}, Rational(1));
        auto fixed = linear_correction({y1, y2}, c);
        Expo e1{1, 0}, e2{0, 1};
        auto res = fixed[0].shifted(e1, Rational(1)) +
                   fixed[1].shifted(e2, Rational(1));
        std::vector<CheckResult> cs;
        cs.push_back({"corrected pair is an exact relation", res.is_zero()});
        auto d0 = fixed[0] - y1.truncated_to(fixed[0].precision());
        auto d1 = fixed[1] - y2.truncated_to(fixed[1].precision());
        bool close = (!d0.order().resolved || d0.order().value >= c) &&
                     (!d1.order().resolved || d1.order().value >= c);
        cs.push_back({"correction has order at least c", close});
        auto exact = linear_correction(
            {y1, -Series<Rational>::monomial(ctx, N, {1, 0}, Rational(1))},
            c);
        cs.push_back({"exact relation passes through unchanged",
                      exact[0].equal_at_min_precision(y1)});
        return cs;
      });

  add("system-folding",
      "two equations folded into one with the same vanishing arcs",
      {"system-folding"}, [](int prec) {
        int N = prec > 0 ? std::max(prec, 8) : 16;
        std::uint64_t p = 3;
        auto joint = make_context<Fp>({"t", "y1", "y2"}, Fp::Meta{p});
        Series<Fp> f1(joint, N), f2(joint, N);
        f1.add_term({0, 1, 0}, Fp(1, p));
        f1.add_term({2, 0, 0}, Fp(p - 1, p));
        f2.add_term({0, 0, 1}, Fp(1, p));
        f2.add_term({3, 0, 0}, Fp(p - 1, p));
        PolySystem<Fp> sys(joint, 1, {f1, f2});
        PolySystem<Fp> one(joint, 1, {combine_to_single_equation(sys)});
        auto tc = sys.base_context();
        bool agree = true;
        for (std::uint64_t a = 0; a < p && agree; ++a)
          for (std::uint64_t b = 0; b < p && agree; ++b) {
            Series<Fp> v1(tc, N), v2(tc, N);
            v1.add_term({2}, Fp(a, p));
            v2.add_term({3}, Fp(b, p));
            auto rs = sys.evaluate({v1, v2});
            bool fzero = rs[0].is_zero() && rs[1].is_zero();
            bool gzero = one.evaluate({v1, v2})[0].is_zero();
            agree = fzero == gzero;
          }
        return std::vector<CheckResult>{
            {"vanishing agrees on the sampled arcs", agree}};
      });

  add("quadratic-lower-bound-witness",
      "approximate square root forcing quadratic residual growth",
      {"quadratic-lower-bound-witness"}, [](int) {
        int c = 2;
        auto w = construct_ro2_witness(c);
        auto o = w.residual.order();
        return std::vector<CheckResult>{
            {"residual order reaches c^2 + 4c",
             o.value >= w.claimed_order},
            {"component orders are 2c + 2 and 2c + 1",
             w.y1.order().value == 2 * c + 2 &&
                 w.y2.order().value == 2 * c + 1}};
      });

  add("separate-filtration-witness",
      "pair deep in the (x2)-adic filtration but far from the solution",
      {"separate-filtration-witness"}, [](int) {
        int c = 2;
        auto w = construct_spivakovsky_witness(c);
        return std::vector<CheckResult>{
            {"residual has (x2)-adic order at least c", w.x2_adic_order >= c},
            {"total-degree order stays linear",
             w.residual.order().value <= 2 * c + 2}};
      });

  add("morphism-image",
      "cleared preimages with disjoint-support, bounded-coefficient images",
      {"morphism-image"}, [](int prec) {
        int N = prec > 0 ? std::max(prec, 8) : 14;
        auto rep = osgood_gabrielov_check(3, N);
        return std::vector<CheckResult>{
            {"image formula holds", rep.image_formula},
            {"supports pairwise disjoint below degree 12",
             rep.supports_disjoint},
            {"scaled coefficients bounded by 1", rep.coefficients_bounded}};
      });

  add("curve-parametrization",
      "points of y1^2 = y2^3 come from (z^3, z^2)",
      {"curve-parametrization"}, [](int prec) {
        int N = prec > 0 ? std::max(prec, 8) : 20;
        auto tc = make_context<Rational>({"t"});
        auto t = Series<Rational>::variable(tc, N, 0);
        std::vector<CheckResult> cs;
        auto z1 = ploski_cusp_parametrize(t * t * t, t * t);
        cs.push_back({"(t^3, t^2) recovers t",
                      z1.equal_at_min_precision(t)});
        auto w = t + t * t;
        auto z2 = ploski_cusp_parametrize(w * w * w, w * w);
        cs.push_back({"((t+t^2)^3, (t+t^2)^2) recovers t + t^2",
                      z2.equal_at_min_precision(w)});
        bool rejected = false;
        try {
          ploski_cusp_parametrize(t.scaled(Rational(0)), t * t * t);
        } catch (const PreconditionError&) {
          rejected = true;
        }
        cs.push_back({"odd-order second coordinate is rejected", rejected});
        return cs;
      });

  add("ode-encoding",
      "differential equations as polynomial systems with Taylor witnesses",
      {"derivative-encoding"}, [](int prec) {
        int N = prec > 0 ? std::max(prec, 8) : 24;
        std::vector<CheckResult> cs;

        // x^2 y' - y + x = 0 with the divergent solution
        auto pctx = make_context<Rational>({"x", "y", "z1"});
        Series<Rational> P(pctx, N);
        P.add_term({2, 0, 1}, Rational(1));
        P.add_term({0, 1, 0}, Rational(-1));
        P.add_term({1, 0, 0}, Rational(1));
        auto sys = encode_ode_system(P, 1);
        auto values = ode_witness_values(euler_series(N), 1);
        bool all_zero = true;
        int rprec = N;
        for (const auto& r : ode_residuals(sys, values)) {
          all_zero = all_zero && r.is_zero();
          rprec = std::min(rprec, r.precision());
        }
        cs.push_back({"residuals vanish below N - 2",
                      all_zero && rprec >= N - 2});
        cs.push_back({"unknown g depends on u alone",
                      sys.dependencies.back().second ==
                          std::vector<std::string>{"u"}});

        // y' = y with the exponential
        Series<Rational> Q(pctx, N);
        Q.add_term({0, 0, 1}, Rational(1));
        Q.add_term({0, 1, 0}, Rational(-1));
        auto sys2 = encode_ode_system(Q, 1);
        auto xctx = make_context<Rational>({"x"});
        Series<Rational> expo(xctx, N);
        Rational inv(1);
        for (int j = 0; j < N; ++j) {
          if (j > 0) inv = inv / Rational(j);
          expo.add_term({j}, inv);
        }
        bool expo_ok = true;
        for (const auto& r : ode_residuals(sys2, ode_witness_values(expo, 1)))
          expo_ok = expo_ok && r.is_zero();
        cs.push_back({"exponential satisfies the encoded y' = y", expo_ok});

        // trivial equation y' = 0 with a constant solution
        Series<Rational> R(pctx, N);
        R.add_term({0, 0, 1}, Rational(1));
        auto sys3 = encode_ode_system(R, 1);
        auto one = Series<Rational>::constant(xctx, N, Rational(1));
        bool const_ok = true;
        for (const auto& r : ode_residuals(sys3, ode_witness_values(one, 1)))
          const_ok = const_ok && r.is_zero();
        cs.push_back({"constants solve the encoded y' = 0", const_ok});
        return cs;
      });

  add("weierstrass-preparation",
      "unit times distinguished polynomial, reconstructed exactly",
      {"weierstrass-preparation"}, [](int prec) {
        int N = prec > 0 ? std::max(prec, 8) : 16;
        auto ctx = make_context<Rational>({"x", "y"});
        auto x = Series<Rational>::variable(ctx, N, 0);
        auto y = Series<Rational>::variable(ctx, N, 1);
        auto one = Series<Rational>::constant(ctx, N, Rational(1));
        auto f = (one + x + y) * (x * x - y * y * (one + y));
        auto data = weierstrass_prepare(f, 0);
        std::vector<CheckResult> cs;
        cs.push_back({"regularity order in x is 2", data.d == 2});
        auto recon = data.reconstruct();
        cs.push_back({"unit times distinguished polynomial gives f back",
                      recon.equal_at_min_precision(
                          f.truncated_to(recon.precision()))});
        bool var_free = true;
        for (const auto& a : data.coeffs)
          var_free = var_free && a.max_exponent_of(0) == 0;
        cs.push_back({"polynomial coefficients are free of x", var_free});
        return cs;
      });

  return out;
}

// Topics required but not covered by any fixture. Empty in a healthy tree.
inline std::vector<std::string> coverage_gaps() {
  std::set<std::string> covered;
  for (const auto& fx : example_corpus())
    for (const auto& t : fx.covers) covered.insert(t);
  std::vector<std::string> gaps;
  for (const auto& t : required_corpus_topics())
    if (!covered.count(t)) gaps.push_back(t);
  return gaps;
}

inline std::vector<FixtureReport> verify_examples(const std::string& only = "",
                                                  int prec = 0) {
  std::vector<FixtureReport> out;
  for (const auto& fx : example_corpus()) {
    if (!only.empty() && fx.id != only) continue;
    FixtureReport rep{fx.id, fx.run(prec), true};
    for (const auto& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;
    out.push_back(std::move(rep));
  }
  if (!only.empty() && out.empty())
    throw PreconditionError("unknown fixture id '" + only + "'");
  return out;
}

}  // namespace tfps

#endif
