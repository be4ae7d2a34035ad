#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace shopd {

/// Exact rational scalar. Values are kept in canonical reduced form
/// (gcd(num, den) == 1, den > 0). Small values live in two int64 words;
/// arithmetic that overflows int64 transparently promotes to GMP and
/// demotes again once the value fits.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(int n) : num_(n), den_(1) {}

  Rational(long long n, long long d) : num_(n), den_(d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    reduce_small();
  }

  explicit Rational(const mpq_class& q) { set_big(q); }

  /// Parses "p", "-p" or "p/q". Result is reduced.
  static Rational parse(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0)
      throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("Rational: zero denominator");
    Rational r;
    r.set_big(q);
    return r;
  }

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }

  bool is_small() const { return !big_; }
  long long small_num() const { return num_; }
  long long small_den() const { return den_; }

  mpq_class to_mpq() const {
    if (big_) return *big_;
    mpq_class q(static_cast<long>(0));
    // construct from the two 64-bit words without narrowing
    mpz_class n = mpz_from_ll(num_);
    mpz_class d = mpz_from_ll(den_);
    q = mpq_class(n) / mpq_class(d);
    q.canonicalize();
    return q;
  }

  std::string str() const {
    if (!big_) {
      if (den_ == 1) return std::to_string(num_);
      return std::to_string(num_) + "/" + std::to_string(den_);
    }
    return big_->get_str();
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
      __int128 d = (__int128)a.den_ * b.den_;
      return from_i128(n, d);
    }
    return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      __int128 n = (__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_;
      __int128 d = (__int128)a.den_ * b.den_;
      return from_i128(n, d);
    }
    return Rational(mpq_class(a.to_mpq() - b.to_mpq()));
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      __int128 n = (__int128)a.num_ * b.num_;
      __int128 d = (__int128)a.den_ * b.den_;
      return from_i128(n, d);
    }
    return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::invalid_argument("Rational: division by zero");
    if (!a.big_ && !b.big_) {
      __int128 n = (__int128)a.num_ * b.den_;
      __int128 d = (__int128)a.den_ * b.num_;
      return from_i128(n, d);
    }
    return Rational(mpq_class(a.to_mpq() / b.to_mpq()));
  }
  Rational operator-() const {
    if (!big_) {
      if (num_ == INT64_MIN) return Rational(mpq_class(-to_mpq()));
      Rational r;
      r.num_ = -num_;
      r.den_ = den_;
      return r;
    }
    return Rational(mpq_class(-*big_));
  }

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    return a.to_mpq() == b.to_mpq();
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    return a.to_mpq() < b.to_mpq();
  }

  Rational inverse() const {
    if (is_zero()) throw std::invalid_argument("Rational: inverse of zero");
    return Rational(1) / *this;
  }

  int sign() const {
    if (!big_) return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1);
    return sgn(*big_);
  }

  double to_double() const { return big_ ? big_->get_d() : (double)num_ / (double)den_; }

 private:
  long long num_ = 0, den_ = 1;
  std::shared_ptr<const mpq_class> big_;  // set iff the value does not fit int64/int64

  static mpz_class mpz_from_ll(long long v) {
    mpz_class z;
    bool neg = v < 0;
    unsigned long long u = neg ? (~(unsigned long long)v + 1ULL) : (unsigned long long)v;
    mpz_import(z.get_mpz_t(), 1, -1, sizeof(u), 0, 0, &u);
    if (neg) z = -z;
    return z;
  }

  void reduce_small() {
    if (den_ < 0) {
      if (num_ == INT64_MIN || den_ == INT64_MIN) {
        set_big(to_mpq_raw());
        return;
      }
      num_ = -num_;
      den_ = -den_;
    }
    long long g = std::gcd(num_ < 0 ? -(unsigned long long)num_ : (unsigned long long)num_,
                           (unsigned long long)den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
  }

  mpq_class to_mpq_raw() const {
    mpq_class q(mpz_from_ll(num_), mpz_from_ll(den_));
    q.canonicalize();
    return q;
  }

  void set_big(const mpq_class& q) {
    // demote when it fits
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
      num_ = q.get_num().get_si();
      den_ = q.get_den().get_si();
      big_.reset();
      if (den_ < 0) { num_ = -num_; den_ = -den_; }
      return;
    }
    big_ = std::make_shared<const mpq_class>(q);
  }

  static Rational from_i128(__int128 n, __int128 d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 an = n < 0 ? -n : n;
    // gcd on 128-bit magnitudes
    __int128 a = an, b = d;
    while (b) { __int128 t = a % b; a = b; b = t; }
    if (a > 1) { n /= a; d /= a; }
    if (n <= INT64_MAX && n >= INT64_MIN && d <= INT64_MAX) {
      Rational r;
      r.num_ = (long long)n;
      r.den_ = (long long)d;
      return r;
    }
    // rare: reduced value still exceeds 64 bits
    mpq_class q = mpq_from_i128(n) / mpq_from_i128(d);
    q.canonicalize();
    return Rational(q);
  }

  static mpq_class mpq_from_i128(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
    mpz_class z;
    unsigned long long words[2] = {(unsigned long long)u, (unsigned long long)(u >> 64)};
    mpz_import(z.get_mpz_t(), 2, -1, sizeof(words[0]), 0, 0, words);
    if (neg) z = -z;
    return mpq_class(z);
  }
};

inline Rational operator*(long long a, const Rational& b) { return Rational(a) * b; }

}  // namespace shopd
