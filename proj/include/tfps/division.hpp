#ifndef TFPS_DIVISION_HPP
#define TFPS_DIVISION_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "tfps/series.hpp"

namespace tfps {

// A family of divisors under a fixed monomial order, with their initial
// exponents cached. Every divisor must have a resolved initial exponent;
// a divisor indistinguishable from zero at its precision cannot drive a
// division step.
template <class K>
struct DivisionFamily {
  std::vector<Series<K>> divisors;
  MonomialOrder order;
  std::vector<Expo> initial_exponents;

  DivisionFamily(std::vector<Series<K>> divs, MonomialOrder ord = {})
      : divisors(std::move(divs)), order(std::move(ord)) {
    if (divisors.empty())
      throw PreconditionError("division family must be nonempty");
    for (const auto& g : divisors) {
      if (!(*g.context() == *divisors.front().context()))
        throw ContextError("divisors in mixed contexts");
      auto e = g.initial_exponent(order);
      if (!e)
        throw PrecisionError(
            "divisor is indistinguishable from zero at its precision");
      initial_exponents.push_back(*e);
    }
  }
};

// The regions Delta_1..Delta_s (first matching divisor wins) and the
// complement Delta_0 that holds remainder terms.
template <class K>
struct DeltaPartition {
  std::vector<Expo> corners;  // initial exponents, in divisor-list order

  // Index of the region owning alpha: 1..s, or 0 for the remainder region.
  int region(const Expo& alpha) const {
    for (std::size_t i = 0; i < corners.size(); ++i)
      if (divides(corners[i], alpha)) return static_cast<int>(i) + 1;
    return 0;
  }
};

template <class K>
DeltaPartition<K> delta_partition(const DivisionFamily<K>& family) {
  return DeltaPartition<K>{family.initial_exponents};
}

template <class K>
struct DivisionResult {
  std::vector<Series<K>> quotients;
  Series<K> remainder;
  int precision;  // the working precision of the identity
};

// Division with unique quotients and remainder: g = sum_i g_i q_i + r with
// Supp(q_i) + exp(g_i) inside Delta_i and Supp(r) inside Delta_0, all below
// the working precision. Each iteration resolves the order-minimal
// outstanding term, so the running exponent strictly increases and the loop
// terminates once it passes the precision bound.
template <class K>
DivisionResult<K> hironaka_divide(const Series<K>& g,
                                  const DivisionFamily<K>& family) {
  const auto& ctx = g.context();
  if (!(*ctx == *family.divisors.front().context()))
    throw ContextError("dividend context differs from family context");
  int prec = g.precision();
  for (const auto& d : family.divisors)
    prec = std::min(prec, d.precision());

  DeltaPartition<K> delta = delta_partition(family);
  std::vector<Series<K>> trunc_divisors;
  for (const auto& d : family.divisors)
    trunc_divisors.push_back(d.truncated_to(prec));
  std::vector<Series<K>> quotients;
  for (const auto& e : family.initial_exponents)
    quotients.push_back(
        Series<K>::zero(ctx, std::max(1, prec - total_degree(e))));
  Series<K> remainder(ctx, prec);
  Series<K> pending = g.truncated_to(prec);

  while (true) {
    auto init = pending.initial_exponent(family.order);
    if (!init) break;
    const Expo alpha = *init;
    const K c = pending.coeff(alpha);
    int i = delta.region(alpha);
    if (i == 0) {
      remainder.add_term(alpha, c);
      pending.add_term(alpha, -c);
    } else {
      const Series<K>& gi = trunc_divisors[i - 1];
      const Expo& ei = family.initial_exponents[i - 1];
      K lead = gi.coeff(ei);
      K q = c / lead;
      Expo shift = expo_sub(alpha, ei);
      quotients[i - 1].add_term(shift, q);
      // pending -= q * x^shift * g_i ; cancels the alpha term exactly.
      for (const auto& [e2, c2] : gi.terms())
        pending.add_term(expo_add(e2, shift), -(c2 * q));
    }
  }
  return {std::move(quotients), std::move(remainder), prec};
}

// Minimal antichain of a set of exponents under coordinatewise division
// (Dickson): keeps exactly the elements no other element divides.
inline std::vector<Expo> minimal_antichain(std::vector<Expo> exps) {
  std::sort(exps.begin(), exps.end(), GrlexLess{});
  exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
  std::vector<Expo> out;
  for (const auto& e : exps) {
    bool dominated = false;
    for (const auto& m : out)
      if (divides(m, e)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(e);
  }
  return out;
}

struct Staircase {
  std::vector<Expo> generators;  // minimal antichain, grlex-sorted
  int degree_bound;              // certified below this total degree
};

namespace detail {

// Enumerates all exponents of the given arity with total degree < bound,
// in graded-lex order.
inline std::vector<Expo> exponents_below(int arity, int bound) {
  std::vector<Expo> out;
  Expo cur(arity, 0);
  // Depth-first product enumeration, then sort.
  std::vector<Expo> stack;
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == arity) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      cur[pos] = v;
      rec(pos + 1, remaining - v);
    }
    cur[pos] = 0;
  };
  rec(0, bound - 1);
  std::sort(out.begin(), out.end(), GrlexLess{});
  return out;
}

}  // namespace detail

// Brute-force staircase oracle: row-reduces the matrix of all monomial
// multiples m*g_i with |m| + |exp(g_i)| < bound, columns ordered by the
// monomial order, and reads the pivot exponents. Independent of the
// division code path by construction.
template <class K>
Staircase staircase_mod_truncation(const std::vector<Series<K>>& generators,
                                   int degree_bound,
                                   MonomialOrder order = {}) {
  if (generators.empty())
    throw PreconditionError("staircase of the empty family");
  for (const auto& g : generators)
    if (degree_bound > g.precision())
      throw PrecisionError("degree bound exceeds a generator's precision");
  const auto& ctx = generators.front().context();
  int arity = ctx->arity();

  // Row representation: sparse exponent -> coefficient maps sorted by the
  // requested order (via comparator capture).
  auto cmp = [&order](const Expo& a, const Expo& b) { return order.less(a, b); };
  using Row = std::map<Expo, K, decltype(cmp)>;

  std::vector<Row> pivots;  // echelon rows, keyed by leading exponent
  std::map<Expo, std::size_t, decltype(cmp)> pivot_of(cmp);

  auto reduce_insert = [&](Row row) {
    while (!row.empty()) {
      auto lead = row.begin()->first;
      auto it = pivot_of.find(lead);
      if (it == pivot_of.end()) {
        // Normalize and register as a new pivot row.
        K inv = row.begin()->second.inverse();
        for (auto& [e, c] : row) c = c * inv;
        pivots.push_back(std::move(row));
        pivot_of.emplace(lead, pivots.size() - 1);
        return;
      }
      const Row& p = pivots[it->second];
      K factor = row.begin()->second;
      for (const auto& [e, c] : p) {
        K delta = -(factor * c);
        auto [jt, inserted] = row.try_emplace(e, delta);
        if (!inserted) {
          jt->second += delta;
          if (jt->second.is_zero()) row.erase(jt);
        }
      }
    }
  };

  for (const auto& g : generators) {
    auto gord_res = g.order();
    if (!gord_res.resolved)
      throw PrecisionError("zero generator in staircase computation");
    int gord = gord_res.value;
    for (const auto& m : detail::exponents_below(arity, degree_bound)) {
      if (total_degree(m) + gord >= degree_bound) continue;
      Row row(cmp);
      for (const auto& [e, c] : g.terms()) {
        Expo shifted = expo_add(e, m);
        if (total_degree(shifted) >= degree_bound) continue;
        row.emplace(shifted, c);
      }
      if (!row.empty()) reduce_insert(std::move(row));
    }
  }

  std::vector<Expo> leads;
  for (const auto& [e, idx] : pivot_of) leads.push_back(e);
  return Staircase{minimal_antichain(std::move(leads)), degree_bound};
}

// Division-route staircase: an exponent below the bound belongs to the
// staircase iff its monomial reduces to remainder zero against the family.
// For monomial-generated ideals this equals the true staircase; in general
// it is the family's reachable-initial-exponent set, which the oracle above
// cross-checks in tests.
template <class K>
Staircase staircase_via_division(const DivisionFamily<K>& family,
                                 int degree_bound) {
  const auto& ctx = family.divisors.front().context();
  for (const auto& g : family.divisors)
    if (degree_bound > g.precision())
      throw PrecisionError("degree bound exceeds a divisor's precision");
  std::vector<Expo> in_gamma;
  for (const auto& e : detail::exponents_below(ctx->arity(), degree_bound)) {
    auto mono = Series<K>::monomial(ctx, degree_bound, e,
                                    K::one(ctx->field));
    auto res = hironaka_divide(mono, family);
    if (res.remainder.is_zero()) in_gamma.push_back(e);
  }
  return Staircase{minimal_antichain(std::move(in_gamma)), degree_bound};
}

enum class Membership { MemberBelowBound, NonMember, Unresolved };

struct MembershipResult {
  Membership verdict;
  std::optional<Expo> certificate;  // a nonzero remainder exponent
};

// Truncated ideal-membership test by division. A nonzero remainder term
// below the bound certifies non-membership; a vanishing residual only
// proves membership below the bound.
template <class K>
MembershipResult ideal_membership_mod(const Series<K>& g,
                                      const std::vector<Series<K>>& generators,
                                      int degree_bound,
                                      MonomialOrder order = {}) {
  if (degree_bound > g.precision())
    throw PrecisionError("degree bound exceeds the dividend's precision");
  std::vector<Series<K>> divs;
  for (const auto& d : generators) {
    if (degree_bound > d.precision())
      throw PrecisionError("degree bound exceeds a generator's precision");
    divs.push_back(d.truncated_to(degree_bound));
    if (divs.back().is_zero()) return {Membership::Unresolved, std::nullopt};
  }
  DivisionFamily<K> family(std::move(divs), order);
  auto res = hironaka_divide(g.truncated_to(degree_bound), family);
  if (res.remainder.is_zero())
    return {Membership::MemberBelowBound, std::nullopt};
  return {Membership::NonMember,
          res.remainder.initial_exponent(order)};
}

}  // namespace tfps

#endif
