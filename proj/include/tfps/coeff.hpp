#ifndef TFPS_COEFF_HPP
#define TFPS_COEFF_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "tfps/errors.hpp"

namespace tfps {

// Arbitrary-precision rational number, stored in lowest terms with a
// positive denominator (mpq_class canonical form).
class Rational {
 public:
  // Field descriptor. Rationals need no parameters; the struct exists so
  // that code generic over the coefficient field can carry one.
  struct Meta {
    bool operator==(const Meta&) const = default;
    std::string name() const { return "Q"; }
  };

  Rational() : v_(0) {}
  explicit Rational(long n) : v_(static_cast<signed long>(n)) {}
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw PreconditionError("rational with zero denominator");
    v_.canonicalize();
  }

  static Rational zero(Meta) { return Rational(); }
  static Rational one(Meta) { return Rational(1); }
  static Rational from_long(Meta, long long n) {
    Rational r;
    r.v_ = mpq_class(static_cast<signed long>(n));
    return r;
  }
  static Rational from_decimal_strings(Meta, const std::string& num,
                                       const std::string& den) try {
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) throw PreconditionError("rational with zero denominator");
    Rational r;
    r.v_ = mpq_class(n, d);
    r.v_.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw PreconditionError("malformed decimal string '" + num + "'/'" + den +
                            "'");
  }

  Meta meta() const { return Meta{}; }
  bool is_zero() const { return v_ == 0; }

  Rational operator+(const Rational& o) const { return wrap(v_ + o.v_); }
  Rational operator-(const Rational& o) const { return wrap(v_ - o.v_); }
  Rational operator*(const Rational& o) const { return wrap(v_ * o.v_); }
  Rational operator-() const { return wrap(-v_); }
  Rational operator/(const Rational& o) const {
    if (o.is_zero()) throw PreconditionError("division by zero coefficient");
    return wrap(v_ / o.v_);
  }
  Rational inverse() const {
    if (is_zero()) throw PreconditionError("inverse of zero coefficient");
    return wrap(1 / v_);
  }
  Rational& operator+=(const Rational& o) {
    v_ += o.v_;
    return *this;
  }

  bool operator==(const Rational& o) const { return v_ == o.v_; }
  bool operator!=(const Rational& o) const { return v_ != o.v_; }

  bool abs_leq_one() const { return cmp(abs(v_), 1) <= 0; }

  const mpz_class numerator() const { return v_.get_num(); }
  const mpz_class denominator() const { return v_.get_den(); }

  std::string to_string() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

 private:
  static Rational wrap(mpq_class v) {
    Rational r;
    r.v_ = std::move(v);
    return r;
  }
  mpq_class v_;
};

// Element of the prime field F_p. The modulus travels with the value and
// is checked on every binary operation.
class Fp {
 public:
  struct Meta {
    std::uint64_t p = 0;
    bool operator==(const Meta&) const = default;
    std::string name() const { return "F" + std::to_string(p); }
  };

  Fp(std::uint64_t residue, std::uint64_t p) : r_(residue % p), p_(p) {
    if (p < 2) throw PreconditionError("modulus must be a prime >= 2");
  }

  static Fp zero(Meta m) { return Fp(0, m.p); }
  static Fp one(Meta m) { return Fp(1, m.p); }
  static Fp from_long(Meta m, long long n) {
    long long r = n % static_cast<long long>(m.p);
    if (r < 0) r += static_cast<long long>(m.p);
    return Fp(static_cast<std::uint64_t>(r), m.p);
  }
  static Fp from_decimal_strings(Meta m, const std::string& num,
                                 const std::string& den) try {
    mpz_class n(num, 10), d(den, 10);
    mpz_class p(static_cast<unsigned long>(m.p));
    mpz_class nr = n % p, dr = d % p;
    if (nr < 0) nr += p;
    if (dr < 0) dr += p;
    Fp a(nr.get_ui(), m.p), b(dr.get_ui(), m.p);
    return a / b;
  } catch (const std::invalid_argument&) {
    throw PreconditionError("malformed decimal string '" + num + "'/'" + den +
                            "'");
  }

  Meta meta() const { return Meta{p_}; }
  std::uint64_t residue() const { return r_; }
  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return r_ == 0; }

  Fp operator+(const Fp& o) const {
    check(o);
    return Fp((r_ + o.r_) % p_, p_);
  }
  Fp operator-(const Fp& o) const {
    check(o);
    return Fp((r_ + p_ - o.r_) % p_, p_);
  }
  Fp operator*(const Fp& o) const {
    check(o);
    return Fp(mulmod(r_, o.r_, p_), p_);
  }
  Fp operator-() const { return Fp(r_ == 0 ? 0 : p_ - r_, p_); }
  Fp operator/(const Fp& o) const { return *this * o.inverse(); }
  Fp inverse() const {
    if (r_ == 0) throw PreconditionError("inverse of zero in F_p");
    // Extended Euclid on (r, p).
    long long t = 0, newt = 1;
    long long r = static_cast<long long>(p_), newr = static_cast<long long>(r_);
    while (newr != 0) {
      long long q = r / newr;
      long long tmp = t - q * newt;
      t = newt;
      newt = tmp;
      tmp = r - q * newr;
      r = newr;
      newr = tmp;
    }
    if (r != 1) throw PreconditionError("modulus is not prime");
    if (t < 0) t += static_cast<long long>(p_);
    return Fp(static_cast<std::uint64_t>(t), p_);
  }
  Fp& operator+=(const Fp& o) {
    *this = *this + o;
    return *this;
  }

  bool operator==(const Fp& o) const { return p_ == o.p_ && r_ == o.r_; }
  bool operator!=(const Fp& o) const { return !(*this == o); }

  std::string to_string() const { return std::to_string(r_); }

 private:
  void check(const Fp& o) const {
    if (p_ != o.p_)
      throw ContextError("mixed moduli: F" + std::to_string(p_) + " vs F" +
                         std::to_string(o.p_));
  }
  static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b,
                              std::uint64_t p) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % p);
  }
  std::uint64_t r_;
  std::uint64_t p_;
};

}  // namespace tfps

#endif
