#ifndef TFPS_JETS_HPP
#define TFPS_JETS_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "tfps/series.hpp"

namespace tfps {

// Equations of the order-n jet space of a polynomial system in m unknowns:
// substituting y_i(t) = sum_j y_{i,j} t^j and reading the coefficient of
// t^k for 0 <= k <= n gives r*(n+1) polynomial equations in the m*(n+1)
// coefficient variables.
template <class K>
struct JetSystem {
  ContextPtr<K> jet_ctx;  // variables y_{i,j}, flattened i*(n+1)+j
  int m;
  int r;
  int n;
  std::vector<Series<K>> equations;  // equation (i,k) at index i*(n+1)+k

  int var_slot(int i, int j) const { return i * (n + 1) + j; }
};

template <class K>
JetSystem<K> jet_equations(const std::vector<Series<K>>& F, int n) {
  if (F.empty()) throw PreconditionError("empty base system");
  if (n < 0) throw PreconditionError("jet order must be non-negative");
  const auto& base = F.front().context();
  int m = base->arity();
  int r = static_cast<int>(F.size());
  int max_deg = 1;
  for (const auto& f : F) {
    if (!(*f.context() == *base)) throw ContextError("mixed base contexts");
    for (const auto& [e, c] : f.terms())
      max_deg = std::max(max_deg, total_degree(e));
  }

  std::vector<std::string> names;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j)
      names.push_back(base->vars[i] + "_" + std::to_string(j));
  auto jet_ctx = make_context<K>(names, base->field);

  std::string tname = "t";
  while (std::find(names.begin(), names.end(), tname) != names.end())
    tname += "_";
  auto names_t = names;
  names_t.push_back(tname);
  auto ctx_t = make_context<K>(names_t, base->field);
  int t_slot = m * (n + 1);

  // full symbolic expansion: every term of F_i(y(t)) has total degree at
  // most max_deg * (n + 1), so this precision truncates nothing
  int prec = max_deg * (n + 1) + 2;
  std::vector<Series<K>> args;
  for (int i = 0; i < m; ++i) {
    Series<K> yi(ctx_t, prec);
    for (int j = 0; j <= n; ++j) {
      Expo e(names_t.size(), 0);
      e[i * (n + 1) + j] = 1;
      e[t_slot] = j;
      yi.add_term(e, K::one(base->field));
    }
    args.push_back(std::move(yi));
  }

  std::vector<int> drop_t(names_t.size(), -1);
  for (int s = 0; s < t_slot; ++s) drop_t[s] = s;

  JetSystem<K> out{jet_ctx, m, r, n, {}};
  for (const auto& f : F) {
    auto expanded = f.as_polynomial_at(prec).substitute(args);
    for (int k = 0; k <= n; ++k)
      out.equations.push_back(expanded.coefficient_in_var(t_slot, k)
                                  .as_polynomial_at(prec)
                                  .transported(jet_ctx, drop_t));
  }
  return out;
}

// A jet of order `order`: the coefficient vector of a truncated arc,
// flattened like the jet variables.
template <class K>
struct JetPoint {
  int m;
  int order;
  std::vector<K> coords;

  bool operator==(const JetPoint& o) const {
    return m == o.m && order == o.order && coords == o.coords;
  }
};

template <class K>
K eval_at_point(const Series<K>& f, const std::vector<K>& vals) {
  auto meta = f.field();
  K acc = K::zero(meta);
  for (const auto& [e, c] : f.terms()) {
    K term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) term = term * vals[i];
    acc = acc + term;
  }
  return acc;
}

template <class K>
bool satisfies(const JetSystem<K>& sys, const JetPoint<K>& p) {
  if (p.m != sys.m || p.order != sys.n)
    throw PreconditionError("jet point shape does not match the system");
  for (const auto& eq : sys.equations)
    if (!eval_at_point(eq, p.coords).is_zero()) return false;
  return true;
}

// Coefficient restriction pi_n^k: keeps the first n+1 coefficients of each
// component.
template <class K>
JetPoint<K> truncate_jet(const JetPoint<K>& p, int n) {
  if (n > p.order) throw PreconditionError("cannot truncate upward");
  JetPoint<K> out{p.m, n, {}};
  for (int i = 0; i < p.m; ++i)
    for (int j = 0; j <= n; ++j)
      out.coords.push_back(p.coords[i * (p.order + 1) + j]);
  return out;
}

namespace jdetail {

inline bool residue_less(const std::vector<std::uint64_t>& a,
                         const std::vector<std::uint64_t>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Compiled term list of one equation for fast repeated evaluation.
struct FpEquation {
  std::vector<std::pair<Expo, std::uint64_t>> terms;
};

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b,
                                std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) %
                                    p);
}

inline bool eval_zero(const FpEquation& eq,
                      const std::vector<std::uint64_t>& v, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (const auto& [e, c] : eq.terms) {
    std::uint64_t term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) term = mulmod_u64(term, v[i], p);
    acc = (acc + term) % p;
  }
  return acc == 0;
}

}  // namespace jdetail

// Exhaustive enumeration of the order-n jets of F over F_p, in the
// lexicographic order of the flattened coefficient vectors. The worker
// partition is by the first coordinate, so the concatenated result is
// identical for every thread count.
inline std::vector<JetPoint<Fp>> enumerate_jets(
    const std::vector<Series<Fp>>& F, int n,
    std::uint64_t budget = 10000000, int threads = 1) {
  auto sys = jet_equations(F, n);
  std::uint64_t p = sys.jet_ctx->field.p;
  int N = sys.m * (n + 1);

  std::uint64_t total = 1;
  for (int i = 0; i < N; ++i) {
    if (total > budget / p + 1) throw BudgetError("enumeration budget exceeded");
    total *= p;
  }
  if (total > budget) throw BudgetError("enumeration budget exceeded");

  std::vector<jdetail::FpEquation> eqs;
  for (const auto& eq : sys.equations) {
    jdetail::FpEquation ce;
    for (const auto& [e, c] : eq.terms()) ce.terms.emplace_back(e, c.residue());
    eqs.push_back(std::move(ce));
  }

  if (threads < 1) threads = 1;
  std::vector<std::vector<std::vector<std::uint64_t>>> found(p);
  auto worker = [&](std::uint64_t first_lo, std::uint64_t first_hi) {
    for (std::uint64_t a = first_lo; a < first_hi; ++a) {
      std::vector<std::uint64_t> v(N, 0);
      v[0] = a;
      for (;;) {
        bool ok = true;
        for (const auto& eq : eqs)
          if (!jdetail::eval_zero(eq, v, p)) {
            ok = false;
            break;
          }
        if (ok) found[a].push_back(v);
        // base-p increment over the trailing N-1 digits
        int pos = N - 1;
        while (pos >= 1 && ++v[pos] == p) v[pos--] = 0;
        if (pos < 1) break;
      }
    }
  };

  if (threads == 1 || p == 1) {
    worker(0, p);
  } else {
    std::vector<std::thread> pool;
    std::uint64_t chunk = (p + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      std::uint64_t lo = std::min<std::uint64_t>(p, t * chunk);
      std::uint64_t hi = std::min<std::uint64_t>(p, lo + chunk);
      if (lo < hi) pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  std::vector<JetPoint<Fp>> out;
  for (std::uint64_t a = 0; a < p; ++a)
    for (const auto& v : found[a]) {
      JetPoint<Fp> pt{sys.m, n, {}};
      for (auto r : v) pt.coords.emplace_back(r, p);
      out.push_back(std::move(pt));
    }
  return out;
}

// The image pi_n^k(X_k) as an explicit, lexicographically sorted and
// deduplicated point set.
inline std::vector<JetPoint<Fp>> image_of_truncation(
    const std::vector<Series<Fp>>& F, int k, int n,
    std::uint64_t budget = 10000000, int threads = 1) {
  if (n > k) throw PreconditionError("image requires n <= k");
  auto jets = enumerate_jets(F, k, budget, threads);
  std::vector<std::vector<std::uint64_t>> keys;
  int m = F.front().context()->arity();
  for (const auto& pt : jets) {
    auto tr = truncate_jet(pt, n);
    std::vector<std::uint64_t> key;
    for (const auto& c : tr.coords) key.push_back(c.residue());
    keys.push_back(std::move(key));
  }
  std::sort(keys.begin(), keys.end(), jdetail::residue_less);
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::uint64_t p = F.front().context()->field.p;
  std::vector<JetPoint<Fp>> out;
  for (const auto& key : keys) {
    JetPoint<Fp> pt{m, n, {}};
    for (auto r : key) pt.coords.emplace_back(r, p);
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace tfps

#endif
