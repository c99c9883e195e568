#ifndef TFPS_WEIERSTRASS_HPP
#define TFPS_WEIERSTRASS_HPP

#include <vector>

#include "tfps/series.hpp"

namespace tfps {

// Order of the restriction f(0, ..., 0, x_var): the regularity order d in
// the distinguished variable. Unresolved when the restriction vanishes
// below the precision bound.
template <class K>
SeriesOrder xn_regularity_order(const Series<K>& f, int var) {
  int best = -1;
  for (const auto& [e, c] : f.terms()) {
    bool pure = true;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (static_cast<int>(i) != var && e[i] != 0) {
        pure = false;
        break;
      }
    if (pure && (best < 0 || e[var] < best)) best = e[var];
  }
  if (best < 0) return {false, f.precision()};
  return {true, best};
}

template <class K>
struct WeierstrassDivision {
  Series<K> quotient;   // precision = working precision - d
  Series<K> remainder;  // x_var-degree < d
  int d;
};

namespace wdetail {

// x'-degree of a term: total degree in every variable except var.
inline int xprime_degree(const Expo& e, int var) {
  return total_degree(e) - e[var];
}

// Division of w by a(x_var) = sum_{k>=d} a_k x_var^k (a_d a unit of the
// coefficient field): w = q*a + rem with deg_var(rem) < d, by the
// triangular var-coefficient recursion. The recursion must run past the
// dividend's top var-degree: a vanishing coefficient of w still receives
// feedback from lower quotient layers, so the caller supplies the cutoff
// jmax past which quotient terms no longer matter.
template <class K>
void divide_by_univariate(const Series<K>& w, const std::vector<K>& a, int d,
                          int var, int jmax, Series<K>& q_accum,
                          Series<K>& r_accum) {
  const auto& ctx = w.context();
  K ad_inv = a[d].inverse();
  // q coefficient layers by var-degree, kept as var-free series.
  std::vector<Series<K>> qc;
  for (int j = 0; j < jmax; ++j) {
    Series<K> vj = w.coefficient_in_var(var, j).as_polynomial_at(w.precision());
    if (j < d) {
      // remainder layer
      for (const auto& [e, c] : vj.terms()) {
        Expo e2(e);
        e2[var] = j;
        r_accum.add_term(e2, c);
      }
      continue;
    }
    Series<K> rhs = vj;
    for (int k = d + 1; k <= j; ++k) {
      if (static_cast<std::size_t>(k) >= a.size() || a[k].is_zero()) continue;
      const Series<K>& ql = qc[j - k];
      if (!ql.is_zero()) rhs = rhs - ql.scaled(a[k]);
    }
    qc.push_back(rhs.scaled(ad_inv));
    for (const auto& [e, c] : qc.back().terms()) {
      Expo e2(e);
      e2[var] = j - d;
      q_accum.add_term(e2, c);
    }
  }
}

}  // namespace wdetail

// Weierstrass division g = q*f + r with deg_var(r) < d, computed by
// induction on x'-degree: writing f = a(x_var) - B with B carrying every
// mixed term, the x'-degree-s layer of (q, r) is the univariate division
// of the degree-s layer of g + q*B, which only involves layers below s.
//
// Precision bookkeeping: the unknown tails of g and f sit at total degree
// >= prec. Each pass through the univariate division can pull an error
// down by d, each multiplication by B pushes it up by ord(B) and raises
// its x'-degree (so a chain of t passes stays at degree >= t). The output
// precisions below are the resulting guarantees; when ord(B) >= d there
// is no cascade and they reduce to the familiar prec - d and prec.
template <class K>
WeierstrassDivision<K> weierstrass_divide(const Series<K>& g,
                                          const Series<K>& f, int var) {
  SeriesOrder dres = xn_regularity_order(f, var);
  if (!dres.resolved)
    throw PrecisionError(
        "regularity order unresolved at this precision; increase precision");
  int d = dres.value;
  int prec = std::min(g.precision(), f.precision());
  if (prec <= d)
    throw PrecisionError("working precision must exceed the regularity order");
  const auto& ctx = g.context();
  if (!(*ctx == *f.context())) throw ContextError("mixed contexts");

  // a_k = coefficient of x_var^k in the pure restriction of f.
  std::vector<K> a(prec, K::zero(ctx->field));
  Series<K> pure(ctx, prec);
  for (const auto& [e, c] : f.terms()) {
    if (wdetail::xprime_degree(e, var) == 0 && e[var] < prec) {
      a[e[var]] = c;
      pure.add_term(e, c);
    }
  }
  Series<K> B = pure - f.truncated_to(prec);  // every term has x'-degree >= 1
  int m = B.is_zero() ? prec : B.order().value;

  int q_prec = prec - d;
  int r_prec = prec;
  if (m < d) {
    for (int t = 2; t - 1 < q_prec; ++t)
      q_prec = std::min(q_prec,
                        std::max(prec - t * d + (t - 1) * m, t - 1));
    for (int t = 1; t < r_prec; ++t)
      r_prec = std::min(r_prec, std::max(prec - t * (d - m), t));
  }
  if (q_prec < 1 || r_prec < 1)
    throw PrecisionError(
        "insufficient precision for this regularity order; increase precision");

  Series<K> q(ctx, prec);
  Series<K> r(ctx, prec);
  Series<K> w = g.truncated_to(prec);  // g + (computed layers of q) * B
  for (int s = 0; s < prec; ++s) {
    // extract the x'-degree-s layer of w
    Series<K> layer(ctx, prec);
    for (const auto& [e, c] : w.terms())
      if (wdetail::xprime_degree(e, var) == s) layer.add_term(e, c);
    if (layer.is_zero()) continue;
    Series<K> qs(ctx, prec);
    wdetail::divide_by_univariate(layer, a, d, var, prec - s + d, qs, r);
    if (!qs.is_zero()) {
      q = q + qs;
      // w += qs * B, which only feeds layers of x'-degree > s
      w = w + qs * B;
    }
  }
  return {q.truncated_to(q_prec), r.truncated_to(r_prec), d};
}

// Unit u and Weierstrass polynomial x_var^d + a_1 x_var^{d-1} + ... + a_d
// with every a_i var-free and vanishing at the origin.
template <class K>
struct WeierstrassData {
  int d;
  int var;
  Series<K> unit;                 // invertible
  std::vector<Series<K>> coeffs;  // a_1 .. a_d, var-free series

  Series<K> weierstrass_polynomial() const {
    const auto& ctx = unit.context();
    int prec = unit.precision();
    // the a_i x_var^{d-i} term is known below prec(a_i) + d - i
    for (int i = 1; i <= d; ++i)
      prec = std::min(prec, coeffs[i - 1].precision() + d - i);
    Expo e(ctx->vars.size(), 0);
    e[var] = d;
    Series<K> p = Series<K>::monomial(ctx, prec, e, K::one(ctx->field));
    for (int i = 1; i <= d; ++i) {
      Expo shift(ctx->vars.size(), 0);
      shift[var] = d - i;
      // lifting is sound here: the unknown tail of a_i only feeds degrees
      // >= prec(a_i) + d - i >= prec, all beyond p's precision
      p = p + coeffs[i - 1]
                  .as_polynomial_at(std::max(prec, coeffs[i - 1].precision()))
                  .shifted(shift, K::one(ctx->field));
    }
    return p.truncated_to(prec);
  }
  Series<K> reconstruct() const { return unit * weierstrass_polynomial(); }
};

// Preparation via division: dividing x_var^d by f gives x_var^d = qf + r,
// hence f = q^{-1} (x_var^d - r) with q a unit.
template <class K>
WeierstrassData<K> weierstrass_prepare(const Series<K>& f, int var) {
  SeriesOrder dres = xn_regularity_order(f, var);
  if (!dres.resolved)
    throw PrecisionError(
        "regularity order unresolved at this precision; increase precision");
  int d = dres.value;
  const auto& ctx = f.context();
  if (d == 0) return {0, var, f, {}};
  Expo e(ctx->vars.size(), 0);
  e[var] = d;
  auto xd = Series<K>::monomial(ctx, f.precision(), e, K::one(ctx->field));
  auto div = weierstrass_divide(xd, f, var);
  WeierstrassData<K> out{d, var, div.quotient.invert_unit(), {}};
  for (int i = 1; i <= d; ++i) {
    Series<K> ai = -div.remainder.coefficient_in_var(var, d - i);
    if (!ai.constant_term().is_zero())
      throw PrecisionError(
          "preparation produced a coefficient with nonzero constant term");
    out.coeffs.push_back(std::move(ai));
  }
  return out;
}

// Polynomial in one distinguished indeterminate with series coefficients,
// lowest degree first. Used by Hensel factorization.
template <class K>
struct SeriesPoly {
  std::vector<Series<K>> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool monic() const {
    if (c.empty()) return false;
    const Series<K>& lead = c.back();
    return lead.terms().size() == 1 &&
           lead.constant_term() == K::one(lead.field());
  }
};

template <class K>
SeriesPoly<K> poly_mul(const SeriesPoly<K>& a, const SeriesPoly<K>& b) {
  if (a.c.empty() || b.c.empty()) return {};
  const auto& ctx = a.c.front().context();
  int prec = a.c.front().precision();
  for (const auto& s : a.c) prec = std::min(prec, s.precision());
  for (const auto& s : b.c) prec = std::min(prec, s.precision());
  SeriesPoly<K> out;
  out.c.assign(a.c.size() + b.c.size() - 1, Series<K>::zero(ctx, prec));
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j)
      out.c[i + j] = out.c[i + j] + a.c[i].truncated_to(prec) *
                                        b.c[j].truncated_to(prec);
  return out;
}

template <class K>
SeriesPoly<K> poly_add(const SeriesPoly<K>& a, const SeriesPoly<K>& b) {
  SeriesPoly<K> out = a;
  for (std::size_t j = 0; j < b.c.size(); ++j) {
    if (j < out.c.size())
      out.c[j] = out.c[j] + b.c[j];
    else
      out.c.push_back(b.c[j]);
  }
  return out;
}

template <class K>
SeriesPoly<K> poly_sub(const SeriesPoly<K>& a, const SeriesPoly<K>& b) {
  SeriesPoly<K> out = a;
  for (std::size_t j = 0; j < b.c.size(); ++j) {
    if (j < out.c.size())
      out.c[j] = out.c[j] - b.c[j];
    else
      out.c.push_back(-b.c[j]);
  }
  return out;
}

// Remainder and quotient of division by a monic polynomial.
template <class K>
void poly_divmod_monic(const SeriesPoly<K>& a, const SeriesPoly<K>& m,
                       SeriesPoly<K>& quot, SeriesPoly<K>& rem) {
  rem = a;
  quot.c.clear();
  int dm = m.degree();
  while (rem.degree() >= dm) {
    int k = rem.degree() - dm;
    Series<K> lead = rem.c.back();
    if (static_cast<int>(quot.c.size()) < k + 1) {
      const auto& ctx = lead.context();
      quot.c.resize(k + 1, Series<K>::zero(ctx, lead.precision()));
    }
    quot.c[k] = quot.c[k] + lead;
    for (int j = 0; j <= dm; ++j)
      rem.c[k + j] = rem.c[k + j] - m.c[j].truncated_to(lead.precision()) * lead;
    rem.c.pop_back();
  }
}

namespace wdetail {

// Extended Euclid over K[z] on constant polynomials; returns the gcd and
// Bezout cofactors. Vectors are lowest-degree-first, normalized.
template <class K>
struct Euclid {
  std::vector<K> gcd, u, v;  // gcd = u*f + v*g
};

template <class K>
std::vector<K> trim(std::vector<K> p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

template <class K>
std::vector<K> kpoly_sub(const std::vector<K>& a, const std::vector<K>& b,
                         typename K::Meta meta) {
  std::vector<K> out(std::max(a.size(), b.size()), K::zero(meta));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = out[i] + a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = out[i] - b[i];
  return trim(std::move(out));
}

template <class K>
std::vector<K> kpoly_mul(const std::vector<K>& a, const std::vector<K>& b,
                         typename K::Meta meta) {
  if (a.empty() || b.empty()) return {};
  std::vector<K> out(a.size() + b.size() - 1, K::zero(meta));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = out[i + j] + a[i] * b[j];
  return trim(std::move(out));
}

template <class K>
void kpoly_divmod(const std::vector<K>& a, const std::vector<K>& b,
                  typename K::Meta meta, std::vector<K>& q,
                  std::vector<K>& r) {
  r = a;
  q.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, K::zero(meta));
  K lead_inv = b.back().inverse();
  while (r.size() >= b.size() && !r.empty()) {
    K f = r.back() * lead_inv;
    std::size_t k = r.size() - b.size();
    q[k] = q[k] + f;
    for (std::size_t j = 0; j < b.size(); ++j) r[k + j] = r[k + j] - f * b[j];
    r = trim(std::move(r));
    if (r.size() < b.size()) break;
  }
  q = trim(std::move(q));
}

template <class K>
Euclid<K> extended_euclid(std::vector<K> f, std::vector<K> g,
                          typename K::Meta meta) {
  std::vector<K> r0 = trim(std::move(f)), r1 = trim(std::move(g));
  std::vector<K> u0{K::one(meta)}, u1{};
  std::vector<K> v0{}, v1{K::one(meta)};
  while (!r1.empty()) {
    std::vector<K> q, rem;
    kpoly_divmod(r0, r1, meta, q, rem);
    auto next_u = kpoly_sub(u0, kpoly_mul(q, u1, meta), meta);
    auto next_v = kpoly_sub(v0, kpoly_mul(q, v1, meta), meta);
    r0 = std::move(r1);
    r1 = std::move(rem);
    u0 = std::move(u1);
    u1 = std::move(next_u);
    v0 = std::move(v1);
    v1 = std::move(next_v);
  }
  // normalize gcd to be monic
  if (!r0.empty()) {
    K inv = r0.back().inverse();
    for (auto& x : r0) x = x * inv;
    for (auto& x : u0) x = x * inv;
    for (auto& x : v0) x = x * inv;
  }
  return {std::move(r0), std::move(u0), std::move(v0)};
}

template <class K>
SeriesPoly<K> embed_kpoly(const std::vector<K>& p, ContextPtr<K> ctx,
                          int prec) {
  SeriesPoly<K> out;
  for (const auto& coef : p)
    out.c.push_back(Series<K>::constant(ctx, prec, coef));
  return out;
}

}  // namespace wdetail

// Hensel factorization: lifts a coprime residue factorization f0*g0 of the
// monic polynomial P to P = P1*P2 over the series ring, one total-degree
// layer of the coefficient ideal at a time. The Bezout identity
// u*f0 + v*g0 = 1 over the residue field solves each layer's linear step;
// its existence is exactly the nonvanishing of the resultant of f0 and g0.
template <class K>
std::pair<SeriesPoly<K>, SeriesPoly<K>> hensel_factor(
    const SeriesPoly<K>& P, const std::vector<K>& f0,
    const std::vector<K>& g0) {
  if (!P.monic()) throw PreconditionError("hensel_factor: P is not monic");
  const auto& ctx = P.c.front().context();
  auto meta = ctx->field;
  int prec = P.c.front().precision();
  for (const auto& s : P.c) prec = std::min(prec, s.precision());

  auto f0t = wdetail::trim(f0);
  auto g0t = wdetail::trim(g0);
  if (f0t.empty() || g0t.empty())
    throw PreconditionError("hensel_factor: zero residue factor");
  if (static_cast<int>(f0t.size() + g0t.size()) - 2 != P.degree())
    throw PreconditionError("hensel_factor: degree mismatch");
  if (!(f0t.back() == K::one(meta)) || !(g0t.back() == K::one(meta)))
    throw PreconditionError("hensel_factor: residue factors must be monic");

  // residue check: P mod m == f0 * g0
  auto prod = wdetail::kpoly_mul(f0t, g0t, meta);
  for (int j = 0; j <= P.degree(); ++j) {
    K pc = P.c[j].constant_term();
    K qc = j < static_cast<int>(prod.size()) ? prod[j] : K::zero(meta);
    if (pc != qc)
      throw PreconditionError(
          "hensel_factor: P != f0*g0 modulo the maximal ideal");
  }

  auto bez = wdetail::extended_euclid(f0t, g0t, meta);
  if (bez.gcd.size() != 1)
    throw PreconditionError(
        "hensel_factor: residue factors are not coprime (zero resultant)");

  SeriesPoly<K> P1 = wdetail::embed_kpoly(f0t, ctx, prec);
  SeriesPoly<K> P2 = wdetail::embed_kpoly(g0t, ctx, prec);
  SeriesPoly<K> U = wdetail::embed_kpoly(bez.u, ctx, prec);
  SeriesPoly<K> V = wdetail::embed_kpoly(bez.v, ctx, prec);
  SeriesPoly<K> F0 = wdetail::embed_kpoly(f0t, ctx, prec);
  SeriesPoly<K> G0 = wdetail::embed_kpoly(g0t, ctx, prec);

  for (int k = 1; k < prec; ++k) {
    SeriesPoly<K> E = poly_sub(P, poly_mul(P1, P2));
    SeriesPoly<K> Ek;
    bool nonzero = false;
    for (const auto& s : E.c) {
      Ek.c.push_back(s.homogeneous_part(k));
      if (!Ek.c.back().is_zero()) nonzero = true;
    }
    if (!nonzero) continue;
    // solve d1*g0 + d2*f0 = Ek with deg d1 < deg f0, deg d2 < deg g0
    SeriesPoly<K> quot, d1;
    poly_divmod_monic(poly_mul(V, Ek), F0, quot, d1);
    SeriesPoly<K> d2 = poly_add(poly_mul(U, Ek), poly_mul(quot, G0));
    while (!d2.c.empty() && d2.c.back().is_zero()) d2.c.pop_back();
    while (!d1.c.empty() && d1.c.back().is_zero()) d1.c.pop_back();
    if (static_cast<int>(d2.c.size()) > G0.degree() ||
        static_cast<int>(d1.c.size()) > F0.degree())
      throw PreconditionError("hensel_factor: internal degree overflow");
    for (std::size_t j = 0; j < d1.c.size(); ++j)
      P1.c[j] = P1.c[j] + d1.c[j];
    for (std::size_t j = 0; j < d2.c.size(); ++j)
      P2.c[j] = P2.c[j] + d2.c[j];
  }
  return {std::move(P1), std::move(P2)};
}

}  // namespace tfps

#endif
