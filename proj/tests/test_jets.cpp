#include <doctest.h>

#include "testutil.hpp"
#include "tfps/jets.hpp"
#include "tfps/parser.hpp"

using namespace tfps;
using testutil::fp_ctx;
using testutil::q_ctx;

namespace {

std::vector<Series<Fp>> cusp_fp(std::uint64_t p, int prec = 8) {
  auto ctx = fp_ctx({"a", "b"}, p);
  return {parse_expr<Fp>("a^2 - b^3", ctx, prec)};
}

}  // namespace

TEST_CASE("cusp jet equations at orders one and two") {
  auto base = q_ctx({"a", "b"});
  auto F = parse_expr<Rational>("a^2 - b^3", base, 8);

  auto j1 = jet_equations<Rational>({F}, 1);
  CHECK(j1.jet_ctx->vars ==
        std::vector<std::string>{"a_0", "a_1", "b_0", "b_1"});
  REQUIRE(j1.equations.size() == 2);
  int p1 = j1.equations[0].precision();
  CHECK(j1.equations[0].equal_at_min_precision(
      parse_expr<Rational>("a_0^2 - b_0^3", j1.jet_ctx, p1)));
  CHECK(j1.equations[1].equal_at_min_precision(
      parse_expr<Rational>("2*a_0*a_1 - 3*b_0^2*b_1", j1.jet_ctx, p1)));

  auto j2 = jet_equations<Rational>({F}, 2);
  REQUIRE(j2.equations.size() == 3);
  int p2 = j2.equations[2].precision();
  CHECK(j2.equations[2].equal_at_min_precision(parse_expr<Rational>(
      "a_1^2 + 2*a_0*a_2 - 3*b_0*b_1^2 - 3*b_0^2*b_2", j2.jet_ctx, p2)));
}

TEST_CASE("order-zero jets reproduce the system") {
  auto base = q_ctx({"u", "v"});
  auto F = parse_expr<Rational>("u*v - u^3 + 2*v", base, 8);
  auto j0 = jet_equations<Rational>({F}, 0);
  REQUIRE(j0.equations.size() == 1);
  std::vector<int> ident{0, 1};
  CHECK(j0.equations[0].equal_at_min_precision(
      F.as_polynomial_at(j0.equations[0].precision())
          .transported(j0.jet_ctx, ident)));
}

TEST_CASE("equation count law on random systems") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 10; ++it) {
    int m = 1 + static_cast<int>(rng() % 3);
    int r = 1 + static_cast<int>(rng() % 3);
    int n = static_cast<int>(rng() % 4);
    std::vector<std::string> names;
    for (int i = 0; i < m; ++i) names.push_back("y" + std::to_string(i + 1));
    auto ctx = q_ctx(names);
    std::vector<Series<Rational>> F;
    for (int i = 0; i < r; ++i)
      F.push_back(testutil::random_series(rng, ctx, 6, 5, true));
    auto sys = jet_equations(F, n);
    CHECK(sys.equations.size() == static_cast<std::size_t>(r * (n + 1)));
    CHECK(sys.jet_ctx->arity() == m * (n + 1));
  }
}

TEST_CASE("jet truncation: worked point and functoriality") {
  std::uint64_t p = 5;
  auto sys1 = jet_equations(cusp_fp(p), 1);
  // (a_0,a_1,b_0,b_1) = (1,4,1,1): 2*4 = 3*1 in F_5
  JetPoint<Fp> pt{2, 1, {Fp(1, p), Fp(4, p), Fp(1, p), Fp(1, p)}};
  CHECK(satisfies(sys1, pt));
  auto t0 = truncate_jet(pt, 0);
  CHECK(t0.coords == std::vector<Fp>{Fp(1, p), Fp(1, p)});
  CHECK(satisfies(jet_equations(cusp_fp(p), 0), t0));

  CHECK(truncate_jet(pt, 1) == pt);
  JetPoint<Fp> zero{2, 2, std::vector<Fp>(6, Fp(0, p))};
  CHECK(truncate_jet(zero, 0).coords == std::vector<Fp>{Fp(0, p), Fp(0, p)});

  // functoriality on enumerated order-2 jets
  for (const auto& q : enumerate_jets(cusp_fp(p), 2)) {
    auto one_step = truncate_jet(truncate_jet(q, 1), 0);
    CHECK(one_step == truncate_jet(q, 0));
  }
}

TEST_CASE("jet enumeration: worked counts and soundness") {
  auto x2 = enumerate_jets(cusp_fp(2), 0);
  REQUIRE(x2.size() == 2);
  CHECK(x2[0].coords == std::vector<Fp>{Fp(0, 2), Fp(0, 2)});
  CHECK(x2[1].coords == std::vector<Fp>{Fp(1, 2), Fp(1, 2)});

  auto x5 = enumerate_jets(cusp_fp(5), 0);
  CHECK(x5.size() == 5);
  auto sys0 = jet_equations(cusp_fp(5), 0);
  for (const auto& pt : x5) CHECK(satisfies(sys0, pt));

  // inconsistent system
  auto ctx = fp_ctx({"y"}, 3);
  auto one = Series<Fp>::constant(ctx, 4, Fp(1, 3));
  CHECK(enumerate_jets({one}, 1).empty());

  CHECK_THROWS_AS(enumerate_jets(cusp_fp(5), 3, 10), BudgetError);
}

TEST_CASE("jet enumeration is independent of the thread count") {
  auto a = enumerate_jets(cusp_fp(5), 1, 10000000, 1);
  auto b = enumerate_jets(cusp_fp(5), 1, 10000000, 2);
  auto c = enumerate_jets(cusp_fp(5), 1, 10000000, 4);
  CHECK(a == b);
  CHECK(a == c);
  CHECK_FALSE(a.empty());
}

TEST_CASE("image of truncation: cusp fibre over the singular point") {
  std::uint64_t p = 5;
  auto img = image_of_truncation(cusp_fp(p), 2, 1);
  // points of the image with a_0 = b_0 = 0 form exactly the line a_1 = 0
  std::vector<std::vector<std::uint64_t>> fibre;
  for (const auto& pt : img)
    if (pt.coords[0].is_zero() && pt.coords[2].is_zero()) {
      CHECK(pt.coords[1].is_zero());
      fibre.push_back({pt.coords[3].residue()});
    }
  CHECK(fibre.size() == p);  // b_1 free on the line

  // the fibre inside X_1 itself is bigger: a_1 is unconstrained there, so
  // pi_1^2 is not surjective
  std::size_t x1_fibre = 0;
  for (const auto& pt : enumerate_jets(cusp_fp(p), 1))
    if (pt.coords[0].is_zero() && pt.coords[2].is_zero()) ++x1_fibre;
  CHECK(x1_fibre == p * p);

  // k = n gives X_n itself
  auto same = image_of_truncation(cusp_fp(p), 1, 1);
  CHECK(same == enumerate_jets(cusp_fp(p), 1));
}

TEST_CASE("image of truncation: monotone in k and surjective when smooth") {
  std::uint64_t p = 5;
  auto img1 = image_of_truncation(cusp_fp(p), 1, 1);
  auto img2 = image_of_truncation(cusp_fp(p), 2, 1);
  auto img3 = image_of_truncation(cusp_fp(p), 3, 1);
  auto contains = [](const std::vector<JetPoint<Fp>>& big,
                     const JetPoint<Fp>& pt) {
    return std::find(big.begin(), big.end(), pt) != big.end();
  };
  for (const auto& pt : img2) CHECK(contains(img1, pt));
  for (const auto& pt : img3) CHECK(contains(img2, pt));

  auto conic_ctx = fp_ctx({"y1", "y2"}, p);
  std::vector<Series<Fp>> conic{
      parse_expr<Fp>("y1^2 + y2^2 - 1", conic_ctx, 6)};
  auto x0 = enumerate_jets(conic, 0);
  auto img0 = image_of_truncation(conic, 1, 0);
  CHECK(img0 == x0);
  CHECK(x0.size() == 4);
}
