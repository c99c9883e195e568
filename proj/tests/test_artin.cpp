#include <doctest.h>

#include "testutil.hpp"
#include "tfps/greenberg.hpp"
#include "tfps/parser.hpp"

using namespace tfps;
using testutil::fp_ctx;

namespace {

PolySystem<Fp> square_system(std::uint64_t p, int prec = 24) {
  auto joint = fp_ctx({"t", "y"}, p);
  return {joint, 1, {parse_expr<Fp>("y^2", joint, prec)}};
}

PolySystem<Fp> cusp_system(std::uint64_t p, int prec = 24) {
  auto joint = fp_ctx({"t", "y1", "y2"}, p);
  return {joint, 1, {parse_expr<Fp>("y1^2 - y2^3", joint, prec)}};
}

PolySystem<Fp> square_minus_cube(std::uint64_t p, int prec = 24) {
  auto joint = fp_ctx({"t", "y"}, p);
  return {joint, 1, {parse_expr<Fp>("y^2 - t^3", joint, prec)}};
}

Series<Fp> poly(const std::string& s, const ContextPtr<Fp>& ctx, int prec) {
  return parse_expr<Fp>(s, ctx, prec);
}

}  // namespace

TEST_CASE("candidate enumeration: worked levels for y^2 over F_2") {
  auto sys = square_system(2);
  auto tc = sys.base_context();

  // order of y^2 is twice the order of y, so 4-approximate candidates of
  // degree < 4 are exactly those with ord(y) >= 2
  auto lvl4 = enumerate_approx_solutions(sys, 4, 4);
  REQUIRE(lvl4.size() == 4);
  CHECK(lvl4[0].values[0].is_zero());
  CHECK(lvl4[1].values[0].equal_at_min_precision(poly("t^3", tc, 5)));
  CHECK(lvl4[2].values[0].equal_at_min_precision(poly("t^2", tc, 5)));
  CHECK(lvl4[3].values[0].equal_at_min_precision(poly("t^2 + t^3", tc, 5)));
  for (const auto& cand : lvl4)
    CHECK((!cand.residual_order.resolved || cand.residual_order.value >= 4));

  // at level 2 the linear coefficient is free
  CHECK(enumerate_approx_solutions(sys, 2, 4).size() == 2);
  // the zero candidate is always present
  CHECK(enumerate_approx_solutions(sys, 1, 4).size() == 1);

  CHECK_THROWS_AS(enumerate_approx_solutions(cusp_system(5), 6, 6, 100),
                  BudgetError);
}

TEST_CASE("candidate enumeration: y^2 = t^3 has no 4-approximate solutions") {
  for (std::uint64_t p : {2, 3, 5}) {
    auto sys = square_minus_cube(p);
    // the t^3 coefficient of the residual is -1 no matter what y is
    CHECK(enumerate_approx_solutions(sys, 4, 4).empty());
    CHECK_FALSE(enumerate_approx_solutions(sys, 3, 4).empty());
  }
}

TEST_CASE("liftability: zero-solution certificate and a blocked witness") {
  auto sys = square_system(2);
  auto tc = sys.base_context();

  // ord(y) >= c and f has no unknown-free terms: certified without search
  auto deep = approximate_solution(sys, {poly("t^2", tc, 8)});
  CHECK(liftability(sys, deep, 2, 8) == Liftability::CertifiedLiftable);

  // y = t is 2-approximate but (t + ...)^2 always has the t^2 term in
  // characteristic 2, so every continuation is excluded
  auto shallow = approximate_solution(sys, {poly("t", tc, 8)});
  CHECK(shallow.residual_order.value == 2);
  CHECK(liftability(sys, shallow, 2, 8) == Liftability::Blocked);

  CHECK_THROWS_AS(liftability(sys, deep, 4, 3), PreconditionError);
}

TEST_CASE("liftability: tougeron certificate on a perturbed cusp") {
  auto sys = cusp_system(5, 32);
  auto tc = sys.base_context();
  // ord(y2) = 2 < c = 3 rules out the zero-solution certificate; the
  // y1-column minor has delta = 2*y1 of order 3 and the residual order
  // 6 + 3 meets the 2e + c threshold exactly
  auto cand =
      approximate_solution(sys, {poly("t^3 + t^6", tc, 32), poly("t^2", tc, 32)});
  CHECK(cand.residual_order.value == 9);
  CHECK(liftability(sys, cand, 3, 16) == Liftability::CertifiedLiftable);
}

TEST_CASE("liftability: extendable but uncertified candidate") {
  auto sys = cusp_system(2, 16);
  auto tc = sys.base_context();
  // (0, t^2) at c = 3: no zero certificate (ord y2 = 2), both minors fail
  // the DVR threshold, but y = (t^3, t^2) continues it past the horizon
  auto cand = approximate_solution(sys, {Series<Fp>(tc, 16),
                                         poly("t^2", tc, 16)});
  CHECK(cand.residual_order.value == 6);
  CHECK(liftability(sys, cand, 3, 6) == Liftability::ExtendableToH);
}

TEST_CASE("artin estimate of y^2 collapses to 2c - 1") {
  for (std::uint64_t p : {2, 3}) {
    for (int c = 1; c <= 3; ++c) {
      auto est = estimate_artin_function(square_system(p), c, 7, 5);
      REQUIRE(est.upper.has_value());
      CHECK(est.lower == 2 * c - 1);
      CHECK(*est.upper == 2 * c - 1);
      CHECK_FALSE(est.empty_level.has_value());
      if (c > 1) CHECK_FALSE(est.blocked_witnesses.empty());
    }
  }
}

TEST_CASE("artin estimate of the cusp stays within the linear bound") {
  for (int c = 1; c <= 2; ++c) {
    auto est = estimate_artin_function(cusp_system(5), c, 8, 4);
    REQUIRE(est.upper.has_value());
    CHECK(*est.upper <= 3 * c);
    CHECK(est.lower <= *est.upper);
    CHECK(est.certified_count > 0);
  }
  // the bracket at c = 2 is tight: blocked witnesses of residual order 3
  // force the lower bound up to 4, where every candidate is certified
  auto est2 = estimate_artin_function(cusp_system(5), 2, 8, 4);
  CHECK(est2.lower == 4);
  CHECK(*est2.upper == 4);
}

TEST_CASE("artin estimate reports an empty level for y^2 = t^3") {
  for (std::uint64_t p : {2, 3}) {
    auto est = estimate_artin_function(square_minus_cube(p), 1, 6, 4);
    REQUIRE(est.empty_level.has_value());
    CHECK(*est.empty_level == 4);
    CHECK(*est.upper == 4);
    CHECK(est.lower == 4);
    CHECK(est.certified_count == 0);
  }
}

TEST_CASE("quadratic-growth witness: orders and residual depth") {
  for (int c = 2; c <= 3; ++c) {
    auto w = construct_ro2_witness(c);
    CHECK(w.claimed_order == c * c + 4 * c);
    CHECK(w.y1.order().value == 2 * c + 2);
    CHECK(w.y2.order().value == 2 * c + 1);
    auto o = w.residual.order();
    CHECK(o.value >= w.claimed_order);
    // y1 truncates an actual square root, so the residual is not zero
    CHECK(o.resolved);
  }
  CHECK_THROWS_AS(construct_ro2_witness(1), PreconditionError);
}

TEST_CASE("spivakovsky pair: deep along x2 yet far from the only solution") {
  for (int c = 1; c <= 4; ++c) {
    auto w = construct_spivakovsky_witness(c);
    CHECK(w.x2_adic_order >= c);
    CHECK(w.y1.order().value == c);
    CHECK(w.y2.order().value == c);
    // total-degree order of the residual stays small: the pair is not
    // close to (0,0) in the usual filtration
    CHECK(w.residual.order().value <= 2 * c + 2);
  }
}

TEST_CASE("system combination: vanishing sets agree on sampled arcs") {
  std::uint64_t p = 3;
  auto joint = fp_ctx({"t", "y1", "y2"}, p);
  int prec = 16;
  PolySystem<Fp> sys(joint, 1,
                     {poly("y1 - t^2", joint, prec),
                      poly("y2 - t^3 + y1*t", joint, prec)});
  auto g = combine_to_single_equation(sys);
  PolySystem<Fp> one(joint, 1, {g});
  auto tc = sys.base_context();

  // all arcs (a*t + b*t^2, c*t + d*t^2); the grid contains the exact
  // solution (t^2, 0)'s truncation neighbours and plenty of non-solutions
  for (std::uint64_t a = 0; a < p; ++a)
    for (std::uint64_t b = 0; b < p; ++b)
      for (std::uint64_t cc = 0; cc < p; ++cc)
        for (std::uint64_t d = 0; d < p; ++d) {
          Series<Fp> v1(tc, prec), v2(tc, prec);
          v1.add_term({1}, Fp(a, p));
          v1.add_term({2}, Fp(b, p));
          v2.add_term({1}, Fp(cc, p));
          v2.add_term({2}, Fp(d, p));
          auto rs = sys.evaluate({v1, v2});
          auto o1 = rs[0].order();
          auto o2 = rs[1].order();
          auto og = one.evaluate({v1, v2})[0].order();
          bool fzero = !o1.resolved && !o2.resolved;
          CHECK(fzero == !og.resolved);
          if (!fzero) {
            // the two pieces of g have orders of opposite parity, so the
            // combined order is exactly the smaller of the two
            int expect = std::min(o1.resolved ? 2 * o1.value : prec,
                                  o2.resolved ? 1 + 4 * o2.value : prec);
            CHECK(og.value == expect);
          }
        }
}

TEST_CASE("system combination: estimator runs on the combined equation") {
  std::uint64_t p = 2;
  auto joint = fp_ctx({"t", "y1", "y2"}, p);
  int prec = 24;
  PolySystem<Fp> sys(joint, 1,
                     {poly("y1^2 - t*y2", joint, prec),
                      poly("y2^2 - t*y1", joint, prec)});
  PolySystem<Fp> one(joint, 1, {combine_to_single_equation(sys)});
  auto est = estimate_artin_function(one, 2, 6, 4, 2000000);
  // candidates congruent to the exact branch (t, t) stay extendable but
  // uncertified, so the upper end of the bracket is never reached; the
  // lower end comes from blocked witnesses like (t, 0) of residual order 4
  CHECK(est.lower == 5);
  CHECK_FALSE(est.upper.has_value());
  CHECK(est.certified_count >= 1);
  CHECK(est.blocked_witnesses.size() >= 2);
  CHECK(est.last_level_searched == 6);
}
