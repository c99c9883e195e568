#ifndef TFPS_LIFTING_HPP
#define TFPS_LIFTING_HPP

#include <string>
#include <utility>
#include <vector>

#include "tfps/division.hpp"
#include "tfps/series.hpp"
#include "tfps/weierstrass.hpp"

namespace tfps {

// A system of equations polynomial in the unknowns, stored over the joint
// context whose first n_x variables are the base x-variables and whose
// remaining variables are the unknowns y_1..y_m.
template <class K>
struct PolySystem {
  ContextPtr<K> joint;
  int n_x;
  std::vector<Series<K>> equations;

  PolySystem(ContextPtr<K> ctx, int base_vars, std::vector<Series<K>> eqs)
      : joint(std::move(ctx)), n_x(base_vars), equations(std::move(eqs)) {
    if (n_x < 1 || n_x >= joint->arity())
      throw PreconditionError("system needs at least one base variable and one unknown");
    if (equations.empty()) throw PreconditionError("empty system");
    for (const auto& e : equations)
      if (!(*e.context() == *joint)) throw ContextError("equation context mismatch");
  }

  int unknowns() const { return joint->arity() - n_x; }

  ContextPtr<K> base_context() const {
    std::vector<std::string> names(joint->vars.begin(),
                                   joint->vars.begin() + n_x);
    return make_context<K>(names, joint->field);
  }

  // Substitutes the unknowns by the given base-context series (which must
  // vanish at the origin) and the base variables by themselves.
  std::vector<Series<K>> evaluate(const std::vector<Series<K>>& values) const {
    if (static_cast<int>(values.size()) != unknowns())
      throw PreconditionError("value count does not match unknown count");
    const auto& xctx = values.front().context();
    int vprec = values.front().precision();
    for (const auto& v : values) vprec = std::min(vprec, v.precision());
    std::vector<Series<K>> args;
    for (int i = 0; i < n_x; ++i)
      args.push_back(Series<K>::variable(xctx, vprec, i));
    for (const auto& v : values) args.push_back(v);
    std::vector<Series<K>> out;
    for (const auto& eq : equations) out.push_back(eq.substitute(args));
    return out;
  }

  // Residue matrix of the y-Jacobian at the origin: the coefficient of the
  // bare unknown y_j in equation i.
  std::vector<std::vector<K>> residue_jacobian() const {
    std::vector<std::vector<K>> J;
    for (const auto& eq : equations) {
      std::vector<K> row;
      for (int j = 0; j < unknowns(); ++j) {
        Expo e(joint->vars.size(), 0);
        e[n_x + j] = 1;
        row.push_back(eq.coeff(e));
      }
      J.push_back(std::move(row));
    }
    return J;
  }
};

template <class K>
struct ApproximateSolution {
  std::vector<Series<K>> values;  // zero constant terms, base context
  SeriesOrder residual_order;     // order of the worst (lowest) residual
};

template <class K>
ApproximateSolution<K> approximate_solution(const PolySystem<K>& sys,
                                            std::vector<Series<K>> values) {
  for (const auto& v : values)
    if (!v.constant_term().is_zero())
      throw PreconditionError("approximate solution must vanish at the origin");
  auto residuals = sys.evaluate(values);
  SeriesOrder worst{false, residuals.front().precision()};
  for (const auto& r : residuals) {
    auto o = r.order();
    if (o.resolved && (!worst.resolved || o.value < worst.value)) worst = o;
    if (!o.resolved && !worst.resolved)
      worst.value = std::min(worst.value, o.value);
  }
  return {std::move(values), worst};
}

namespace ldetail {

// Gauss-Jordan inverse of a small matrix over the coefficient field.
template <class K>
std::vector<std::vector<K>> invert_matrix(std::vector<std::vector<K>> a,
                                          typename K::Meta meta) {
  std::size_t n = a.size();
  std::vector<std::vector<K>> inv(n, std::vector<K>(n, K::zero(meta)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = K::one(meta);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) throw PreconditionError("singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    K s = a[col][col].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] = a[col][j] * s;
      inv[col][j] = inv[col][j] * s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      K f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] = a[r][j] - f * a[col][j];
        inv[r][j] = inv[r][j] - f * inv[col][j];
      }
    }
  }
  return inv;
}

// Determinant of a small matrix of series by cofactor expansion.
template <class K>
Series<K> series_det(const std::vector<std::vector<Series<K>>>& m) {
  std::size_t n = m.size();
  if (n == 0)
    throw PreconditionError("determinant of an empty matrix");
  if (n == 1) return m[0][0];
  const auto& ctx = m[0][0].context();
  int prec = m[0][0].precision();
  for (const auto& row : m)
    for (const auto& s : row) prec = std::min(prec, s.precision());
  Series<K> acc(ctx, prec);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Series<K>>> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Series<K>> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      sub.push_back(std::move(row));
    }
    auto contrib = m[0][j] * series_det(sub);
    acc = (j % 2 == 0) ? acc + contrib : acc - contrib;
  }
  return acc;
}

// Adjugate: adj * m = det(m) * Id, entries are signed cofactors.
template <class K>
std::vector<std::vector<Series<K>>> series_adjugate(
    const std::vector<std::vector<Series<K>>>& m) {
  std::size_t n = m.size();
  const auto& ctx = m[0][0].context();
  if (n == 1) {
    int prec = m[0][0].precision();
    return {{Series<K>::constant(ctx, prec, K::one(ctx->field))}};
  }
  std::vector<std::vector<Series<K>>> adj(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::vector<Series<K>>> sub;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        std::vector<Series<K>> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != j) row.push_back(m[r][c]);
        sub.push_back(std::move(row));
      }
      auto cof = series_det(sub);
      adj[j].push_back((i + j) % 2 == 0 ? cof : -cof);
    }
  return adj;
}

}  // namespace ldetail

template <class K>
SeriesPoly<K> poly_derivative(const SeriesPoly<K>& p) {
  SeriesPoly<K> out;
  for (std::size_t j = 1; j < p.c.size(); ++j)
    out.c.push_back(p.c[j].scaled(
        K::from_long(p.c[j].field(), static_cast<long long>(j))));
  return out;
}

template <class K>
Series<K> poly_eval(const SeriesPoly<K>& p, const Series<K>& y) {
  if (p.c.empty()) throw PreconditionError("evaluating the empty polynomial");
  Series<K> acc = p.c.back().truncated_to(
      std::min(p.c.back().precision(), y.precision()));
  for (int j = static_cast<int>(p.c.size()) - 2; j >= 0; --j)
    acc = acc * y + p.c[j];
  return acc;
}

template <class K>
struct NewtonLiftResult {
  Series<K> root;
  std::vector<int> residual_orders;  // per accepted iterate, including y0
};

// Newton iteration on a univariate polynomial over the series ring. The
// correction at each step is residual / P'(y), a unit division, so the
// residual order doubles (recorded for inspection); iteration stops once
// the residual vanishes below target_prec.
template <class K>
NewtonLiftResult<K> newton_lift_simple_root(const SeriesPoly<K>& P,
                                            const Series<K>& y0,
                                            int target_prec) {
  const auto& ctx = y0.context();
  for (const auto& s : P.c)
    if (s.precision() < target_prec)
      throw PrecisionError("polynomial coefficients known below target precision");
  if (target_prec < 1) throw PreconditionError("target precision must be positive");

  auto dP = poly_derivative(P);
  Series<K> y = y0.as_polynomial_at(std::max(target_prec, y0.precision()))
                    .truncated_to(target_prec);
  NewtonLiftResult<K> out{y, {}};
  auto slope = poly_eval(dP, y);
  if (slope.constant_term().is_zero())
    throw PreconditionError("root is not simple: derivative is not a unit");

  Series<K> residual = poly_eval(P, y);
  auto rord = residual.order();
  if (rord.resolved && rord.value < 1)
    throw PreconditionError("initial residual must vanish at the origin");
  out.residual_orders.push_back(rord.resolved ? rord.value : target_prec);

  int guard = 0;
  while (rord.resolved) {
    if (++guard > target_prec + 2)
      throw Error("newton iteration failed to converge");
    y = y - residual * poly_eval(dP, y).invert_unit();
    residual = poly_eval(P, y);
    auto next = residual.order();
    if (next.resolved && next.value <= rord.value)
      throw Error("newton iteration stalled: residual order did not increase");
    rord = next;
    out.residual_orders.push_back(rord.resolved ? rord.value : target_prec);
  }
  out.root = y.truncated_to(target_prec);
  return out;
}

// Implicit-function-theorem solve for a square system with invertible
// residue Jacobian: the unique origin-vanishing solution, built one
// homogeneous degree at a time. At degree k the fresh correction eps_k
// only enters linearly through the constant Jacobian, so each layer is a
// constant linear solve against the degree-k residual.
template <class K>
std::vector<Series<K>> ift_solve_square_system(const PolySystem<K>& sys,
                                               int target_prec) {
  if (sys.unknowns() != static_cast<int>(sys.equations.size()))
    throw PreconditionError("system is not square");
  for (const auto& eq : sys.equations) {
    if (!eq.constant_term().is_zero())
      throw PreconditionError("system does not vanish at the origin");
    if (eq.precision() < target_prec)
      throw PrecisionError("equation precision below target precision");
  }
  auto meta = sys.joint->field;
  std::vector<std::vector<K>> J0inv;
  try {
    J0inv = ldetail::invert_matrix(sys.residue_jacobian(), meta);
  } catch (const PreconditionError&) {
    throw PreconditionError("singular Jacobian at the origin");
  }

  auto xctx = sys.base_context();
  int m = sys.unknowns();
  std::vector<Series<K>> y(m, Series<K>::zero(xctx, target_prec));
  for (int k = 1; k < target_prec; ++k) {
    auto residuals = sys.evaluate(y);
    std::vector<Series<K>> Ek;
    std::vector<Expo> support;
    for (auto& r : residuals) {
      Ek.push_back(r.homogeneous_part(k));
      for (const auto& [e, c] : Ek.back().terms()) support.push_back(e);
    }
    if (support.empty()) continue;
    std::sort(support.begin(), support.end(), GrlexLess{});
    support.erase(std::unique(support.begin(), support.end()), support.end());
    for (const auto& e : support)
      for (int j = 0; j < m; ++j) {
        K val = K::zero(meta);
        for (int i = 0; i < m; ++i) val = val + J0inv[j][i] * Ek[i].coeff(e);
        y[j].add_term(e, -val);
      }
  }
  return y;
}

// Exact division in the series ring: a = q*b below precision, certified by
// a vanishing division remainder. Returns the quotient; a nonzero
// remainder term disproves membership in (b) below the working precision.
template <class K>
Series<K> exact_series_divide(const Series<K>& a, const Series<K>& b,
                              const std::string& what) {
  if (a.is_zero())
    return Series<K>::zero(a.context(),
                           std::max(1, a.precision() - b.order().value));
  DivisionFamily<K> fam({b});
  auto res = hironaka_divide(a, fam);
  if (!res.remainder.is_zero()) {
    auto bad = res.remainder.order();
    throw PreconditionError(what + ": not divisible (obstruction at order " +
                            std::to_string(bad.value) + ")");
  }
  return res.quotients[0];
}

// An h-row, h-column selection of the Jacobian; rows index equations and
// cols index unknowns.
struct MinorSpec {
  std::vector<int> rows;
  std::vector<int> cols;
};

template <class K>
struct TougeronResult {
  std::vector<Series<K>> values;  // lifted solution, frozen outside cols
  int delta_order;                // e = ord(det of the chosen minor)
  std::vector<int> correction_orders;  // ord(lift_i - approx_i) per column
};

struct DvrCheckResult {
  bool certified;
  int delta_order;        // e
  SeriesOrder residual_order;  // rho
};

namespace ldetail {

// Taylor expansion data of the selected equations around y_approx: for each
// chosen row, the series T(x, w) = f(x, y_approx + w) with w ranging over
// the chosen columns only (other unknowns frozen at their approximations).
template <class K>
struct TaylorData {
  ContextPtr<K> wctx;  // base variables followed by h fresh w-variables
  std::vector<Series<K>> T;
};

template <class K>
TaylorData<K> taylor_at_approx(const PolySystem<K>& sys,
                               const std::vector<Series<K>>& approx,
                               const MinorSpec& minor) {
  auto xctx = approx.front().context();
  int h = static_cast<int>(minor.rows.size());
  std::vector<std::string> names = xctx->vars;
  for (int p = 0; p < h; ++p) {
    std::string w = "w" + std::to_string(p + 1);
    while (std::find(names.begin(), names.end(), w) != names.end()) w += "_";
    names.push_back(w);
  }
  auto wctx = make_context<K>(names, xctx->field);

  int aprec = approx.front().precision();
  for (const auto& v : approx) aprec = std::min(aprec, v.precision());
  std::vector<int> embed;
  for (int i = 0; i < xctx->arity(); ++i) embed.push_back(i);

  std::vector<Series<K>> args;
  for (int i = 0; i < sys.n_x; ++i)
    args.push_back(Series<K>::variable(wctx, aprec, i));
  for (int j = 0; j < sys.unknowns(); ++j) {
    auto v = approx[j].transported(wctx, embed);
    auto it = std::find(minor.cols.begin(), minor.cols.end(), j);
    if (it != minor.cols.end()) {
      int p = static_cast<int>(it - minor.cols.begin());
      v = v + Series<K>::variable(wctx, aprec, xctx->arity() + p);
    }
    args.push_back(std::move(v));
  }
  TaylorData<K> out{wctx, {}};
  for (int r : minor.rows) out.T.push_back(sys.equations[r].substitute(args));
  return out;
}

// Splits T by total w-degree: slice(T, k) collects the terms whose
// w-exponents sum to k, with the w-part preserved.
template <class K>
Series<K> w_degree_slice(const Series<K>& T, int n_base, int k) {
  Series<K> out(T.context(), T.precision());
  for (const auto& [e, c] : T.terms()) {
    int wd = 0;
    for (std::size_t i = n_base; i < e.size(); ++i) wd += e[i];
    if (wd == k) out.add_term(e, c);
  }
  return out;
}

template <class K>
int max_w_degree(const Series<K>& T, int n_base) {
  int m = 0;
  for (const auto& [e, c] : T.terms()) {
    int wd = 0;
    for (std::size_t i = n_base; i < e.size(); ++i) wd += e[i];
    m = std::max(m, wd);
  }
  return m;
}

}  // namespace ldetail

// Automatic verification of the delta-squared precondition over a single
// base variable, where every ideal is a power of (t): with e = ord(delta)
// and rho = ord(residual), membership in (delta^2)(t)^c is exactly
// rho >= 2e + c. An unresolved residual certifies every c below precision.
template <class K>
DvrCheckResult dvr_auto_delta_check(const PolySystem<K>& sys,
                                    const ApproximateSolution<K>& approx,
                                    const MinorSpec& minor, int c) {
  if (sys.n_x != 1)
    throw PreconditionError("automatic certification needs a single base variable");
  auto taylor = ldetail::taylor_at_approx(sys, approx.values, minor);
  auto xctx = approx.values.front().context();
  int h = static_cast<int>(minor.rows.size());
  std::vector<int> back_map(taylor.wctx->arity(), -1);
  for (int q = 0; q < xctx->arity(); ++q) back_map[q] = q;
  std::vector<std::vector<Series<K>>> M(h);
  for (int i = 0; i < h; ++i) {
    // coefficient of w_p: the (i,p) Jacobian entry at y_approx
    auto lin = ldetail::w_degree_slice(taylor.T[i], sys.n_x, 1);
    for (int p = 0; p < h; ++p)
      M[i].push_back(
          lin.coefficient_in_var(sys.n_x + p, 1).transported(xctx, back_map));
  }
  auto delta = ldetail::series_det(M);
  auto eord = delta.order();
  if (!eord.resolved)
    throw PrecisionError("minor determinant has unresolved order");
  return {approx.residual_order.resolved
              ? approx.residual_order.value >= 2 * eord.value + c
              : true,
          eord.value, approx.residual_order};
}

// Tougeron's strengthened lifting: given an approximate solution whose
// residual lies in (delta^2)(x)^c for the determinant delta of the chosen
// Jacobian minor, substitute y = y_approx + delta*z and solve the
// unit-Jacobian system adj(M)*eps + z + adj(M)*H(z) = 0 for z. Unknowns
// outside the chosen columns stay frozen at their approximate values.
template <class K>
TougeronResult<K> tougeron_lift(const PolySystem<K>& sys,
                                const ApproximateSolution<K>& approx,
                                const MinorSpec& minor, int c,
                                int target_prec) {
  int h = static_cast<int>(minor.rows.size());
  if (h == 0 || minor.cols.size() != minor.rows.size())
    throw PreconditionError("minor must select equally many rows and columns");
  if (c < 1) throw PreconditionError("c must be positive");
  auto xctx = approx.values.front().context();

  auto taylor = ldetail::taylor_at_approx(sys, approx.values, minor);
  const auto& wctx = taylor.wctx;
  int n_all = wctx->arity();
  std::vector<int> back_map(n_all, -1);
  for (int q = 0; q < xctx->arity(); ++q) back_map[q] = q;

  // Minor matrix at y_approx, read off the w-linear slice.
  std::vector<std::vector<Series<K>>> M(h);
  for (int i = 0; i < h; ++i) {
    auto lin = ldetail::w_degree_slice(taylor.T[i], sys.n_x, 1);
    for (int p = 0; p < h; ++p)
      M[i].push_back(lin.coefficient_in_var(sys.n_x + p, 1)
                         .transported(xctx, back_map));
  }
  auto delta = ldetail::series_det(M);
  auto eres = delta.order();
  if (!eres.resolved)
    throw PrecisionError("minor determinant has unresolved order");
  int e = eres.value;
  auto adj = ldetail::series_adjugate(M);

  // Residuals of the chosen equations, divided exactly by delta^2; the
  // quotient must have order >= c.
  auto delta2 = delta * delta;
  std::vector<Series<K>> eps;
  for (int i = 0; i < h; ++i) {
    auto residual = ldetail::w_degree_slice(taylor.T[i], sys.n_x, 0)
                        .transported(xctx, back_map);
    auto q = exact_series_divide(residual, delta2,
                                 "delta-squared precondition");
    auto qord = q.order();
    if (qord.resolved && qord.value < c)
      throw PreconditionError(
          "delta-squared precondition: quotient order " +
          std::to_string(qord.value) + " is below c = " + std::to_string(c));
    eps.push_back(std::move(q));
  }

  // Build the z-system g = adj*eps + z + adj*H(z), H from the w-degree >= 2
  // Taylor slices with delta^{|beta|-2} restoring the substituted scale.
  int gprec = target_prec;
  for (const auto& s : eps) gprec = std::min(gprec, s.precision());
  for (const auto& t : taylor.T) gprec = std::min(gprec, t.precision());
  if (gprec < 1)
    throw PrecisionError("no precision left after the delta-squared division");

  std::vector<int> embed_x(xctx->arity());
  for (int q = 0; q < xctx->arity(); ++q) embed_x[q] = q;

  std::vector<Series<K>> H;
  for (int i = 0; i < h; ++i) {
    Series<K> acc(wctx, gprec);
    auto dpow = Series<K>::constant(xctx, gprec, K::one(xctx->field));
    for (int k = 2; k <= ldetail::max_w_degree(taylor.T[i], sys.n_x); ++k) {
      auto slice = ldetail::w_degree_slice(taylor.T[i], sys.n_x, k)
                       .truncated_to(gprec);
      acc = acc + slice * dpow.transported(wctx, embed_x);
      dpow = dpow * delta.truncated_to(gprec);
    }
    H.push_back(std::move(acc));
  }
  std::vector<Series<K>> g;
  for (int p = 0; p < h; ++p) {
    Series<K> gp = Series<K>::variable(wctx, gprec, sys.n_x + p);
    for (int i = 0; i < h; ++i) {
      auto a = adj[p][i].truncated_to(std::min(gprec, adj[p][i].precision()));
      gp = gp + a.transported(wctx, embed_x) *
                    (eps[i].truncated_to(gprec).transported(wctx, embed_x) +
                     H[i]);
    }
    g.push_back(gp.truncated_to(gprec));
  }

  PolySystem<K> zsys(wctx, sys.n_x, std::move(g));
  auto z = ift_solve_square_system(zsys, gprec);

  TougeronResult<K> out{approx.values, e, {}};
  for (int p = 0; p < h; ++p) {
    int col = minor.cols[p];
    // delta*z is known below min(prec(delta)+1, prec(z)+e): the unknown
    // tail of each factor is pushed up by the other factor's order
    int know = std::min(delta.precision() + 1, gprec + e);
    int big = std::max({know, delta.precision(), gprec});
    auto corr = (delta.as_polynomial_at(big) * z[p].as_polynomial_at(big))
                    .truncated_to(know);
    out.values[col] = out.values[col] + corr;
    auto o = corr.order();
    out.correction_orders.push_back(o.resolved ? o.value : corr.precision());
  }
  for (auto& v : out.values)
    v = v.truncated_to(std::min(v.precision(), target_prec));
  return out;
}

// Reports which column selections satisfy the delta-squared precondition
// for the given c; rows are taken in order. A certification helper, never
// invoked implicitly by tougeron_lift.
template <class K>
std::vector<std::pair<MinorSpec, bool>> enumerate_certified_minors(
    const PolySystem<K>& sys, const ApproximateSolution<K>& approx, int c) {
  int h = static_cast<int>(sys.equations.size());
  int m = sys.unknowns();
  std::vector<int> rows(h);
  for (int i = 0; i < h; ++i) rows[i] = i;
  std::vector<std::pair<MinorSpec, bool>> out;
  std::vector<int> cols(h);
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == h) {
      MinorSpec spec{rows, cols};
      bool ok = true;
      try {
        if (sys.n_x == 1) {
          ok = dvr_auto_delta_check(sys, approx, spec, c).certified;
        } else {
          tougeron_lift(sys, approx, spec, c, 2);
        }
      } catch (const Error&) {
        ok = false;
      }
      out.emplace_back(std::move(spec), ok);
      return;
    }
    for (int j = start; j < m; ++j) {
      cols[pos] = j;
      rec(pos + 1, j + 1);
    }
  };
  rec(0, 0);
  return out;
}

}  // namespace tfps

#endif
