#ifndef TFPS_MONOMIAL_HPP
#define TFPS_MONOMIAL_HPP

#include <numeric>
#include <vector>

#include "tfps/errors.hpp"

namespace tfps {

// Exponent vector of a monomial; one entry per context variable.
using Expo = std::vector<int>;

inline int total_degree(const Expo& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

// Coordinatewise comparison: a + N^n contains b.
inline bool divides(const Expo& a, const Expo& b) {
  if (a.size() != b.size()) throw ContextError("exponent length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Expo expo_add(const Expo& a, const Expo& b) {
  Expo r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

// Requires divides(b, a).
inline Expo expo_sub(const Expo& a, const Expo& b) {
  Expo r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

// Graded-lexicographic comparison in the native variable order:
// compare (|a|, a_1, ..., a_n) with (|b|, b_1, ..., b_n) lexicographically.
inline int grlex_compare(const Expo& a, const Expo& b) {
  if (a.size() != b.size()) throw ContextError("exponent length mismatch");
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

struct GrlexLess {
  bool operator()(const Expo& a, const Expo& b) const {
    return grlex_compare(a, b) < 0;
  }
};

// A monomial well-order: graded-lex, optionally after permuting the
// variables. permutation[k] is the index of the variable compared k-th;
// empty means the native order.
struct MonomialOrder {
  std::vector<int> permutation;

  int compare(const Expo& a, const Expo& b) const {
    if (permutation.empty()) return grlex_compare(a, b);
    if (a.size() != b.size() || permutation.size() != a.size())
      throw ContextError("exponent length mismatch");
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t k = 0; k < permutation.size(); ++k) {
      int i = permutation[k];
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
  }
  bool less(const Expo& a, const Expo& b) const { return compare(a, b) < 0; }
  bool is_native() const { return permutation.empty(); }
};

}  // namespace tfps

#endif
