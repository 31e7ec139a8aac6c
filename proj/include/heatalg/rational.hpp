#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

namespace heatalg {

// Exact rational arithmetic. Thin value wrapper over GMP's mpq_class so the
// bignum backend stays confined to this header; everything downstream sees a
// plain value type that is always canonicalized (gcd 1, positive denominator).
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  // Accepts "p" or "p/q" with an optional leading minus, nothing else.
  static Rational parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational: empty string");
    std::size_t i = 0;
    if (s[i] == '-' || s[i] == '+') ++i;
    std::size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
    if (digits == 0) throw std::invalid_argument("Rational: bad literal '" + s + "'");
    if (i != s.size()) {
      if (s[i] != '/') throw std::invalid_argument("Rational: bad literal '" + s + "'");
      ++i;
      digits = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
      if (digits == 0 || i != s.size())
        throw std::invalid_argument("Rational: bad literal '" + s + "'");
    }
    mpq_class v;
    if (v.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0)
      throw std::invalid_argument("Rational: bad literal '" + s + "'");
    if (v.get_den() == 0) throw std::domain_error("Rational: zero denominator");
    v.canonicalize();
    return Rational(v, already_canonical_tag{});
  }

  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  // Integral value as a machine long; requires an integer that fits.
  long to_long() const {
    if (!is_integer() || !v_.get_num().fits_slong_p())
      throw std::domain_error("Rational: " + str() + " is not a machine integer");
    return v_.get_num().get_si();
  }

  Rational operator-() const { return Rational(mpq_class(-v_), already_canonical_tag{}); }
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

  Rational inv() const {
    if (is_zero()) throw std::domain_error("Rational: inverse of zero");
    return Rational(mpq_class(1) / v_, already_canonical_tag{});
  }

 private:
  struct already_canonical_tag {};
  Rational(mpq_class v, already_canonical_tag) : v_(std::move(v)) {}
  mpq_class v_;
};

inline Rational rat_binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(mpq_class(r));
}

inline Rational rat_factorial(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return Rational(mpq_class(r));
}

// Falling factorial n (n-1) ... (n-k+1).
inline Rational rat_falling(unsigned long n, unsigned long k) {
  mpz_class r = 1;
  for (unsigned long i = 0; i < k; ++i) r *= static_cast<long>(n - i);
  return Rational(mpq_class(r));
}

}  // namespace heatalg
