#ifndef TFPS_SERIES_HPP
#define TFPS_SERIES_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tfps/coeff.hpp"
#include "tfps/errors.hpp"
#include "tfps/monomial.hpp"

namespace tfps {

// Variable roster plus coefficient-field descriptor. Contexts are explicit
// values; operations on series from different contexts are errors.
template <class K>
struct Context {
  std::vector<std::string> vars;
  typename K::Meta field;

  bool operator==(const Context& o) const {
    return vars == o.vars && field == o.field;
  }
  int arity() const { return static_cast<int>(vars.size()); }
  int var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == name) return static_cast<int>(i);
    throw ContextError("unknown variable '" + name + "'");
  }
};

template <class K>
using ContextPtr = std::shared_ptr<const Context<K>>;

template <class K>
ContextPtr<K> make_context(std::vector<std::string> vars,
                           typename K::Meta field = {}) {
  return std::make_shared<const Context<K>>(
      Context<K>{std::move(vars), field});
}

// Order of a series. When the series has no terms below its precision the
// truncation cannot distinguish zero from high order, so the order is only
// known to be >= precision and `resolved` is false.
struct SeriesOrder {
  bool resolved;
  int value;  // the order if resolved, otherwise the precision bound

  bool operator==(const SeriesOrder&) const = default;
  std::string to_string() const {
    return resolved ? std::to_string(value) : (">= " + std::to_string(value));
  }
};

// Exact truncated multivariate power series: a sparse map from exponent
// vectors (total degree < precision) to nonzero coefficients. All terms
// below the precision bound are exact; nothing is known at or above it.
template <class K>
class Series {
 public:
  using TermMap = std::map<Expo, K, GrlexLess>;

  Series(ContextPtr<K> ctx, int precision) : ctx_(std::move(ctx)), prec_(precision) {
    if (!ctx_) throw ContextError("null context");
    if (prec_ < 1) throw PreconditionError("precision must be >= 1");
  }

  static Series zero(ContextPtr<K> ctx, int precision) {
    return Series(std::move(ctx), precision);
  }
  static Series constant(ContextPtr<K> ctx, int precision, const K& c) {
    Series s(std::move(ctx), precision);
    s.add_term(Expo(s.ctx_->vars.size(), 0), c);
    return s;
  }
  static Series monomial(ContextPtr<K> ctx, int precision, const Expo& e,
                         const K& c) {
    Series s(std::move(ctx), precision);
    s.add_term(e, c);
    return s;
  }
  static Series variable(ContextPtr<K> ctx, int precision, int var) {
    Series s(ctx, precision);
    Expo e(ctx->vars.size(), 0);
    if (var < 0 || var >= ctx->arity())
      throw ContextError("variable index out of range");
    e[var] = 1;
    s.add_term(e, K::one(ctx->field));
    return s;
  }

  const ContextPtr<K>& context() const { return ctx_; }
  typename K::Meta field() const { return ctx_->field; }
  int precision() const { return prec_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int arity() const { return ctx_->arity(); }

  K coeff(const Expo& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? K::zero(ctx_->field) : it->second;
  }
  K constant_term() const { return coeff(Expo(ctx_->vars.size(), 0)); }

  // Adds c * x^e, dropping the term if it lands at zero or beyond the
  // precision bound.
  void add_term(const Expo& e, const K& c) {
    if (static_cast<int>(e.size()) != ctx_->arity())
      throw ContextError("exponent length does not match context");
    for (int x : e)
      if (x < 0) throw PreconditionError("negative exponent");
    if (c.is_zero() || total_degree(e) >= prec_) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  // Reinterprets the term map as an exact polynomial at a (possibly
  // higher) precision. Only sound when the caller knows the series is
  // polynomial, or when the lost tail provably cannot reach the target
  // degrees in the surrounding computation.
  Series as_polynomial_at(int new_prec) const {
    Series r(ctx_, new_prec);
    for (const auto& [e, c] : terms_) r.add_term(e, c);
    return r;
  }

  Series truncated_to(int new_prec) const {
    if (new_prec > prec_)
      throw PrecisionError("cannot raise precision by truncation");
    Series r(ctx_, new_prec);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) < new_prec) r.terms_.emplace(e, c);
    return r;
  }

  Series operator-() const {
    Series r(ctx_, prec_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }

  Series operator+(const Series& o) const {
    check_context(o);
    Series r(ctx_, std::min(prec_, o.prec_));
    for (const auto& [e, c] : terms_) r.add_term(e, c);
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }
  Series operator-(const Series& o) const { return *this + (-o); }

  Series operator*(const Series& o) const {
    check_context(o);
    int p = std::min(prec_, o.prec_);
    Series r(ctx_, p);
    for (const auto& [ea, ca] : terms_) {
      int da = total_degree(ea);
      if (da >= p) continue;
      for (const auto& [eb, cb] : o.terms_) {
        if (da + total_degree(eb) >= p) continue;
        r.add_term(expo_add(ea, eb), ca * cb);
      }
    }
    return r;
  }

  Series scaled(const K& c) const {
    Series r(ctx_, prec_);
    if (c.is_zero()) return r;
    for (const auto& [e, cc] : terms_) {
      K v = cc * c;
      if (!v.is_zero()) r.terms_.emplace(e, v);
    }
    return r;
  }

  // Multiplication by c * x^e without changing precision; terms pushed
  // past the bound are dropped (they were never known anyway).
  Series shifted(const Expo& e, const K& c) const {
    Series r(ctx_, prec_);
    if (c.is_zero()) return r;
    for (const auto& [ee, cc] : terms_) r.add_term(expo_add(ee, e), cc * c);
    return r;
  }

  // Multiplicative inverse of a unit, to the same precision.
  Series invert_unit() const {
    K c0 = constant_term();
    if (c0.is_zero())
      throw PreconditionError("invert_unit: constant term is zero");
    // f = c0 (1 - w) with ord(w) >= 1; 1/f = (1 + w + w^2 + ...) / c0.
    K c0inv = c0.inverse();
    Series w = Series::constant(ctx_, prec_, K::one(ctx_->field)) -
               scaled(c0inv);
    Series acc = Series::constant(ctx_, prec_, K::one(ctx_->field));
    Series pw = Series::constant(ctx_, prec_, K::one(ctx_->field));
    for (int k = 1; k < prec_; ++k) {
      pw = pw * w;
      if (pw.is_zero()) break;
      acc = acc + pw;
    }
    return acc.scaled(c0inv);
  }

  Series derivative(int var) const {
    if (var < 0 || var >= ctx_->arity())
      throw ContextError("variable index out of range");
    if (prec_ <= 1)
      throw PrecisionError("derivative of a precision-1 series is empty");
    Series r(ctx_, prec_ - 1);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Expo e2(e);
      e2[var] -= 1;
      r.add_term(e2, c * K::from_long(ctx_->field, e[var]));
    }
    return r;
  }

  // Composite f(args...). Every argument must have zero constant term
  // (substitution into a genuine series); use substitute_polynomial when
  // f is an exact polynomial and the arguments may be units.
  Series substitute(const std::vector<Series>& args) const {
    for (const auto& a : args)
      if (!a.constant_term().is_zero())
        throw PreconditionError(
            "substitute: argument has nonzero constant term");
    return compose(args, /*include_own_precision=*/true);
  }

  // Treats this series as an exact polynomial and evaluates it on the
  // arguments. Result precision = min over argument precisions.
  Series substitute_polynomial(const std::vector<Series>& args) const {
    return compose(args, /*include_own_precision=*/false);
  }

  SeriesOrder order() const {
    if (terms_.empty()) return {false, prec_};
    // Map is graded, so the first term has minimal total degree.
    return {true, total_degree(terms_.begin()->first)};
  }

  // Order-minimal exponent of the support, under an arbitrary monomial
  // order; nullopt when the series has no terms below its precision.
  std::optional<Expo> initial_exponent(const MonomialOrder& ord) const {
    if (terms_.empty()) return std::nullopt;
    if (ord.is_native()) return terms_.begin()->first;
    const Expo* best = &terms_.begin()->first;
    for (const auto& [e, c] : terms_)
      if (ord.less(e, *best)) best = &e;
    return *best;
  }

  // Minimal exponent of one variable over the support: the order of f in
  // the filtration by powers of the ideal generated by that variable.
  SeriesOrder order_along_var(int var) const {
    if (terms_.empty()) return {false, prec_};
    int best = -1;
    for (const auto& [e, c] : terms_)
      if (best < 0 || e[var] < best) best = e[var];
    return {true, best};
  }

  Series homogeneous_part(int d) const {
    Series r(ctx_, prec_);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) == d) r.terms_.emplace(e, c);
    return r;
  }

  // Coefficient of x_var^k, as a series in the remaining variables (the
  // var slot of every exponent is zeroed). Known below prec - k.
  Series coefficient_in_var(int var, int k) const {
    int p = std::max(1, prec_ - k);
    Series r(ctx_, p);
    for (const auto& [e, c] : terms_) {
      if (e[var] != k) continue;
      Expo e2(e);
      e2[var] = 0;
      r.add_term(e2, c);
    }
    return r;
  }

  int max_exponent_of(int var) const {
    int m = 0;
    for (const auto& [e, c] : terms_) m = std::max(m, e[var]);
    return m;
  }

  // Re-expresses the series in another context; var_map[i] is the slot in
  // the target context of our variable i. Unmapped target variables never
  // appear. Precision carries over.
  Series transported(const ContextPtr<K>& target,
                     const std::vector<int>& var_map) const {
    if (static_cast<int>(var_map.size()) != ctx_->arity())
      throw ContextError("transport map has wrong arity");
    Series r(target, prec_);
    for (const auto& [e, c] : terms_) {
      Expo e2(target->vars.size(), 0);
      for (std::size_t i = 0; i < var_map.size(); ++i) {
        if (e[i] == 0) continue;
        if (var_map[i] < 0)
          throw ContextError("transport drops a used variable");
        e2[var_map[i]] += e[i];
      }
      r.add_term(e2, c);
    }
    return r;
  }

  // Termwise agreement below min(precisions).
  bool equal_at_min_precision(const Series& o) const {
    check_context(o);
    int p = std::min(prec_, o.prec_);
    return (*this - o.truncated_to(p)).is_zero();
  }

 private:
  void check_context(const Series& o) const {
    if (ctx_ != o.ctx_ && !(*ctx_ == *o.ctx_))
      throw ContextError("mixed series contexts");
  }

  Series compose(const std::vector<Series>& args,
                 bool include_own_precision) const {
    if (static_cast<int>(args.size()) != ctx_->arity())
      throw ContextError("substitute: wrong argument count");
    if (args.empty()) throw ContextError("substitute: empty context");
    const ContextPtr<K>& tctx = args.front().context();
    int p = args.front().precision();
    for (const auto& a : args) {
      if (a.context() != tctx && !(*a.context() == *tctx))
        throw ContextError("substitute: arguments in mixed contexts");
      p = std::min(p, a.precision());
    }
    if (include_own_precision) p = std::min(p, prec_);
    Series result(tctx, p);
    // Power cache per argument, filled on demand.
    std::vector<std::vector<Series>> pows(args.size());
    for (std::size_t i = 0; i < args.size(); ++i)
      pows[i].push_back(Series::constant(tctx, p, K::one(tctx->field)));
    auto power = [&](std::size_t i, int k) -> const Series& {
      while (static_cast<int>(pows[i].size()) <= k)
        pows[i].push_back(pows[i].back() * args[i].truncated_to(p));
      return pows[i][k];
    };
    for (const auto& [e, c] : terms_) {
      Series term = Series::constant(tctx, p, c);
      for (std::size_t i = 0; i < args.size(); ++i)
        if (e[i] > 0) term = term * power(i, e[i]);
      result = result + term;
    }
    return result;
  }

  ContextPtr<K> ctx_;
  int prec_;
  TermMap terms_;
};

}  // namespace tfps

#endif
