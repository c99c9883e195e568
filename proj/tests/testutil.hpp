#ifndef TFPS_TESTS_TESTUTIL_HPP
#define TFPS_TESTS_TESTUTIL_HPP

#include <random>
#include <string>
#include <vector>

#include "tfps/series.hpp"

namespace tfps::testutil {

inline ContextPtr<Rational> q_ctx(std::vector<std::string> vars) {
  return make_context<Rational>(std::move(vars));
}

inline ContextPtr<Fp> fp_ctx(std::vector<std::string> vars, std::uint64_t p) {
  return make_context<Fp>(std::move(vars), Fp::Meta{p});
}

// Random exponent of bounded total degree, coordinates drawn uniformly and
// rejected until the bound holds.
inline Expo random_expo(std::mt19937_64& rng, int arity, int max_deg) {
  std::uniform_int_distribution<int> d(0, max_deg);
  for (;;) {
    Expo e(arity);
    for (int i = 0; i < arity; ++i) e[i] = d(rng);
    if (total_degree(e) <= max_deg) return e;
  }
}

template <class K>
Series<K> random_series(std::mt19937_64& rng, ContextPtr<K> ctx, int prec,
                        int n_terms, bool force_nonzero = false,
                        bool zero_constant = false) {
  Series<K> f(ctx, prec);
  std::uniform_int_distribution<long long> cd(-9, 9);
  for (int t = 0; t < n_terms || (force_nonzero && f.is_zero()); ++t) {
    Expo e = random_expo(rng, ctx->arity(), prec - 1);
    if (zero_constant && total_degree(e) == 0) e[0] = 1;
    f.add_term(e, K::from_long(ctx->field, cd(rng)));
    if (t > 8 * n_terms) break;  // give up on pathological draws
  }
  if (force_nonzero && f.is_zero()) {
    Expo e(ctx->arity(), 0);
    if (zero_constant) e[0] = 1;
    f.add_term(e, K::one(ctx->field));
  }
  return f;
}

}  // namespace tfps::testutil

#endif
