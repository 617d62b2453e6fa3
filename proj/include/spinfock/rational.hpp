#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace spinfock {

/// Arbitrary-precision rational number. Always stored fully reduced with a
/// positive denominator. Division by zero throws instead of producing any
/// sentinel value.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) { v_.canonicalize(); }
  Rat(long n, long d) : v_(n, d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    v_.canonicalize();
  }
  explicit Rat(const mpz_class& z) : v_(z) {}
  explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  Rat(const mpz_class& n, const mpz_class& d) : v_(n, d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    v_.canonicalize();
  }

  /// Parses "p", "-p" or "p/q".
  static Rat parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(mpz_class(s), mpz_class(1));
    return Rat(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
  }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  /// "p/q" with q > 0 and gcd(p, q) = 1; plain "p" when q = 1.
  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }
  /// Always "p/q", even for integers (machine-readable form).
  std::string str_frac() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  long to_long() const {
    if (!is_integer() || !v_.get_num().fits_slong_p())
      throw std::domain_error("Rat: not a machine integer");
    return v_.get_num().get_si();
  }

 private:
  mpq_class v_;
};

inline Rat pow(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  if (base.is_zero()) {
    if (e < 0) throw std::domain_error("Rat: 0^negative");
    return Rat(0);
  }
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
  mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
  return e > 0 ? Rat(n, d) : Rat(d, n);
}

inline Rat factorial(long n) {
  if (n < 0) throw std::domain_error("factorial of negative integer");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rat(f);
}

inline Rat binomial(long n, long k) {
  if (k < 0 || k > n) return Rat(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rat(b);
}

inline Rat pow2(long e) { return pow(Rat(2), e); }

/// Uniform rational rescaling across coefficient rings.
inline Rat scale_by_rat(const Rat& c, const Rat& r) { return c * r; }

/// The rational value of a constant coefficient (throws when not rational).
inline Rat rat_of(const Rat& c) { return c; }

}  // namespace spinfock
