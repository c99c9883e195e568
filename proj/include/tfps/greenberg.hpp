#ifndef TFPS_GREENBERG_HPP
#define TFPS_GREENBERG_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tfps/lifting.hpp"

namespace tfps {

// Every b-approximate solution agrees modulo t^b with one whose coefficients
// stop below b, so searching coefficient vectors of degree < min(b, bound)
// is exhaustive modulo t^b whenever bound >= b. Candidates are drawn from
// the maximal ideal (zero constant term), matching the solution type the
// lifting machinery works with.
inline std::uint64_t greenberg_candidate_count(std::uint64_t p, int m,
                                               int coeff_degrees) {
  std::uint64_t total = 1;
  for (int i = 0; i < m * coeff_degrees; ++i) {
    if (total > (std::uint64_t{1} << 62) / p) return UINT64_MAX;
    total *= p;
  }
  return total;
}

inline std::vector<ApproximateSolution<Fp>> enumerate_approx_solutions(
    const PolySystem<Fp>& sys, int b, int degree_bound,
    std::uint64_t budget = 10000000) {
  if (sys.n_x != 1)
    throw PreconditionError("enumeration needs a single base variable");
  int m = sys.unknowns();
  std::uint64_t p = sys.joint->field.p;
  int d = std::min(b, degree_bound);
  int coeff_degrees = std::max(0, d - 1);  // degrees 1 .. d-1
  if (greenberg_candidate_count(p, m, coeff_degrees) > budget)
    throw BudgetError("candidate enumeration budget exceeded");

  int prec = std::max(b + 1, 2);
  for (const auto& eq : sys.equations)
    if (eq.precision() < prec)
      throw PrecisionError("equation precision below the residual level");
  auto tc = sys.base_context();

  std::vector<ApproximateSolution<Fp>> out;
  int N = m * coeff_degrees;
  std::vector<std::uint64_t> digits(N, 0);
  for (;;) {
    std::vector<Series<Fp>> values;
    for (int i = 0; i < m; ++i) {
      Series<Fp> v(tc, prec);
      for (int j = 1; j < d; ++j)
        v.add_term({j}, Fp(digits[i * coeff_degrees + (j - 1)], p));
      values.push_back(std::move(v));
    }
    auto cand = approximate_solution(sys, std::move(values));
    if (!cand.residual_order.resolved || cand.residual_order.value >= b)
      out.push_back(std::move(cand));
    int pos = N - 1;
    while (pos >= 0 && ++digits[pos] == p) digits[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

enum class Liftability { CertifiedLiftable, ExtendableToH, Blocked };

namespace gdetail {

// True when the zero vector is visibly an exact solution: every known term
// of every equation involves an unknown.
inline bool zero_is_solution(const PolySystem<Fp>& sys) {
  for (const auto& eq : sys.equations)
    for (const auto& [e, c] : eq.terms()) {
      bool has_unknown = false;
      for (int j = sys.n_x; j < static_cast<int>(e.size()); ++j)
        if (e[j] > 0) has_unknown = true;
      if (!has_unknown) return false;
    }
  return true;
}

// Depth-first continuation search: coefficients at degrees >= c are free,
// degrees below c are pinned to the approximation. A full path certifies
// an H-approximate continuation; exhausting the tree proves none exists,
// because any exact lift would truncate to such a path.
inline bool extension_exists(const PolySystem<Fp>& sys,
                             const std::vector<Series<Fp>>& approx, int c,
                             int horizon, std::uint64_t budget) {
  int m = sys.unknowns();
  std::uint64_t p = sys.joint->field.p;
  auto tc = approx.front().context();
  std::vector<std::vector<std::uint64_t>> coeffs(
      m, std::vector<std::uint64_t>(horizon, 0));
  for (int i = 0; i < m; ++i)
    for (int j = 1; j < std::min(c, approx[i].precision()); ++j)
      coeffs[i][j] = approx[i].coeff({j}).residue();

  std::uint64_t nodes = 0;
  // residual coefficient at exactly degree k, with coefficients beyond k
  // zeroed (they cannot influence degree k)
  auto degree_k_clean = [&](int k) {
    std::vector<Series<Fp>> vals;
    for (int i = 0; i < m; ++i) {
      Series<Fp> v(tc, k + 2);
      for (int j = 1; j <= k; ++j) v.add_term({j}, Fp(coeffs[i][j], p));
      vals.push_back(std::move(v));
    }
    for (const auto& r : sys.evaluate(vals))
      if (!r.coeff({k}).is_zero()) return false;
    return true;
  };
  // degrees below c are fixed; reject immediately if they already fail
  for (int k = 0; k < std::min(c, horizon); ++k)
    if (!degree_k_clean(k)) return false;

  std::function<bool(int)> dfs = [&](int k) -> bool {
    if (k >= horizon) return true;
    // enumerate the m degree-k coefficients as a base-p counter
    std::vector<std::uint64_t> pick(m, 0);
    for (;;) {
      if (++nodes > budget) throw BudgetError("extension search budget exceeded");
      for (int i = 0; i < m; ++i) coeffs[i][k] = pick[i];
      if (degree_k_clean(k) && dfs(k + 1)) return true;
      int pos = m - 1;
      while (pos >= 0 && ++pick[pos] == p) pick[pos--] = 0;
      if (pos < 0) break;
    }
    for (int i = 0; i < m; ++i) coeffs[i][k] = 0;
    return false;
  };
  return dfs(std::min(c, horizon));
}

}  // namespace gdetail

// Classification of a candidate at agreement level c within horizon H.
// certified-liftable is a proof of exact liftability (zero-solution or
// Tougeron certificate); blocked is a proof that no lift exists, obtained
// by exhausting every continuation below the horizon.
inline Liftability liftability(const PolySystem<Fp>& sys,
                               const ApproximateSolution<Fp>& cand, int c,
                               int horizon, std::uint64_t budget = 10000000) {
  if (horizon < c) throw PreconditionError("horizon below the agreement level");
  if (sys.n_x != 1)
    throw PreconditionError("liftability needs a single base variable");
  for (const auto& eq : sys.equations)
    if (eq.precision() < horizon)
      throw PrecisionError("equation precision below the horizon");

  // re-anchor the candidate at horizon precision (its term map is exact)
  std::vector<Series<Fp>> values;
  for (const auto& v : cand.values)
    values.push_back(v.as_polynomial_at(std::max(horizon, v.precision())));

  if (gdetail::zero_is_solution(sys)) {
    bool deep = true;
    for (const auto& v : values) {
      auto o = v.order();
      if (o.resolved && o.value < c) deep = false;
    }
    if (deep) return Liftability::CertifiedLiftable;
  }

  int h = static_cast<int>(sys.equations.size());
  if (h <= sys.unknowns()) {
    auto anchored = approximate_solution(sys, values);
    std::vector<int> rows(h);
    for (int i = 0; i < h; ++i) rows[i] = i;
    std::vector<int> cols(h);
    std::function<bool(int, int)> try_minors = [&](int pos, int start) -> bool {
      if (pos == h) {
        MinorSpec spec{rows, cols};
        try {
          if (!dvr_auto_delta_check(sys, anchored, spec, c).certified)
            return false;
          tougeron_lift(sys, anchored, spec, c, horizon);
          return true;
        } catch (const Error&) {
          return false;
        }
      }
      for (int j = start; j < sys.unknowns(); ++j) {
        cols[pos] = j;
        if (try_minors(pos + 1, j + 1)) return true;
      }
      return false;
    };
    if (try_minors(0, 0)) return Liftability::CertifiedLiftable;
  }

  return gdetail::extension_exists(sys, values, c, horizon, budget)
             ? Liftability::ExtendableToH
             : Liftability::Blocked;
}

struct ArtinFunctionEstimate {
  int c = 0;
  std::uint64_t p = 0;
  int horizon = 0;
  int degree_bound = 0;
  int lower = 1;
  std::optional<int> upper;
  std::optional<int> empty_level;  // first b with no b-approximate candidate
  int last_level_searched = 0;
  int certified_count = 0;
  std::vector<std::vector<Series<Fp>>> blocked_witnesses;
};

// Bracket estimation of the Greenberg/Artin function value at c. A blocked
// witness with residual order rho proves beta(c) >= rho + 1; a level b >= c
// (with degree_bound >= b for completeness) at which every candidate is
// certified proves beta(c) <= b. The estimate never reports a point value
// unless the bracket collapses.
inline ArtinFunctionEstimate estimate_artin_function(
    const PolySystem<Fp>& sys, int c, int horizon, int degree_bound = 4,
    std::uint64_t budget = 10000000) {
  ArtinFunctionEstimate est;
  est.c = c;
  est.p = sys.joint->field.p;
  est.horizon = horizon;
  est.degree_bound = degree_bound;
  for (int b = std::max(1, c); b <= horizon; ++b) {
    est.last_level_searched = b;
    auto cands = enumerate_approx_solutions(sys, b, degree_bound, budget);
    if (cands.empty()) {
      est.empty_level = b;
      est.upper = b;  // vacuously, every b-approximate solution lifts
      break;
    }
    bool all_certified = true;
    for (const auto& cand : cands) {
      switch (liftability(sys, cand, c, horizon, budget)) {
        case Liftability::CertifiedLiftable:
          ++est.certified_count;
          break;
        case Liftability::ExtendableToH:
          all_certified = false;
          break;
        case Liftability::Blocked: {
          all_certified = false;
          int rho = cand.residual_order.resolved ? cand.residual_order.value
                                                 : b;
          est.lower = std::max(est.lower, rho + 1);
          est.blocked_witnesses.push_back(cand.values);
          break;
        }
      }
    }
    if (all_certified) {
      est.upper = b;
      break;
    }
  }
  return est;
}

// Strong-Artin lower-bound witness with quadratic residual growth: an
// approximate square root of x1^2 + x2^c, truncated after c+1 terms.
// f = y1^2 - y2^2*y3 with y2 = x1^{2c+1} and y3 = x1^2 + x2^c.
struct Ro2Witness {
  Series<Rational> y1, y2, y3;
  Series<Rational> residual;  // y1^2 - y2^2*y3
  int claimed_order;          // c^2 + 4c
};

inline Ro2Witness construct_ro2_witness(int c) {
  if (c < 2) throw PreconditionError("witness needs c >= 2");
  auto ctx = make_context<Rational>({"x1", "x2"});
  int prec = c * c + 4 * c + 3;
  // a_i = binomial(1/2, i), the sqrt(1+t) coefficients
  Series<Rational> y1(ctx, prec);
  Rational a(1);
  for (int i = 0; i <= c + 1; ++i) {
    if (i > 0) a = a * (Rational(1, 2) - Rational(i - 1)) / Rational(i);
    y1.add_term({2 * (c - i + 1), c * i}, a);
  }
  auto y2 = Series<Rational>::monomial(ctx, prec, {2 * c + 1, 0}, Rational(1));
  Series<Rational> y3(ctx, prec);
  y3.add_term({2, 0}, Rational(1));
  y3.add_term({0, c}, Rational(1));
  auto residual = y1 * y1 - y2 * y2 * y3;
  return {y1, y2, y3, residual, c * c + 4 * c};
}

// Spivakovsky's pair: an approximate solution of x1*y1^2 = (x1+x2)*y2^2
// accurate in the (x2)-adic filtration, with exact solution set {(0,0)}.
struct SpivakovskyWitness {
  Series<Rational> y1, y2;
  Series<Rational> residual;   // x1*y1^2 - (x1+x2)*y2^2
  int x2_adic_order;           // order of the residual along x2
};

inline SpivakovskyWitness construct_spivakovsky_witness(int c) {
  if (c < 1) throw PreconditionError("witness needs c >= 1");
  auto ctx = make_context<Rational>({"x1", "x2"});
  int prec = 2 * c + 3;
  Series<Rational> y1(ctx, prec);
  Rational a(1);
  for (int n = 0; n <= c; ++n) {
    if (n > 0) a = a * (Rational(1, 2) - Rational(n - 1)) / Rational(n);
    y1.add_term({c - n, n}, a);
  }
  auto y2 = Series<Rational>::monomial(ctx, prec, {c, 0}, Rational(1));
  auto x1 = Series<Rational>::variable(ctx, prec, 0);
  auto x2 = Series<Rational>::variable(ctx, prec, 1);
  auto residual = x1 * y1 * y1 - (x1 + x2) * y2 * y2;
  return {y1, y2, residual, residual.order_along_var(1).value};
}

// Combines a system into the single equation
// f1^2 + x1*(f2^2 + x1*(f3^2 + ...)^2)^2. Along any series point the two
// summands have x1-adic orders of opposite parity, so they cannot cancel:
// the combined equation vanishes exactly where the whole system does. The
// multiplier has to be an element of odd order in the base ring, which is
// why the first base variable appears and not an unknown. Used to stress
// the estimator on one-equation inputs.
template <class K>
Series<K> combine_to_single_equation(const PolySystem<K>& sys) {
  auto x1 = Series<K>::variable(sys.joint, sys.equations.front().precision(),
                                0);
  Series<K> g = sys.equations.back() * sys.equations.back();
  for (int i = static_cast<int>(sys.equations.size()) - 2; i >= 0; --i)
    g = sys.equations[i] * sys.equations[i] + x1 * g * g;
  return g;
}

}  // namespace tfps

#endif
