#pragma once

#include <stdexcept>
#include <string>

#include "spinfock/rational.hpp"

namespace spinfock {

/// Element of the quadratic extension Q(sqrt2), stored as a + b*sqrt2.
/// The extension is carried formally; a value is rational iff b = 0.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long n) : a_(n) {}
  Scalar(const Rat& a) : a_(a) {}
  Scalar(const Rat& a, const Rat& b) : a_(a), b_(b) {}

  static Scalar sqrt2() { return Scalar(Rat(0), Rat(1)); }

  /// 2^(k/2) for any integer k (possibly negative).
  static Scalar sqrt2_pow(long k) {
    if (k % 2 == 0) return Scalar(pow2(k / 2));
    long half = (k - 1) / 2;  // floor for negative k keeps k = 2*half + 1
    return Scalar(Rat(0), pow2(half));
  }

  const Rat& rat_part() const { return a_; }
  const Rat& sqrt2_part() const { return b_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }

  /// The rational value; throws when a sqrt2 component survived.
  const Rat& rational() const {
    if (!b_.is_zero()) throw std::domain_error("Scalar: sqrt2 component is nonzero");
    return a_;
  }

  Scalar operator-() const { return Scalar(-a_, -b_); }
  Scalar& operator+=(const Scalar& o) { a_ += o.a_; b_ += o.b_; return *this; }
  Scalar& operator-=(const Scalar& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
  Scalar& operator*=(const Scalar& o) {
    Rat a = a_ * o.a_ + Rat(2) * b_ * o.b_;
    Rat b = a_ * o.b_ + b_ * o.a_;
    a_ = a;
    b_ = b;
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    // (a + b s) / (c + d s) = (a + b s)(c - d s) / (c^2 - 2 d^2)
    Rat norm = o.a_ * o.a_ - Rat(2) * o.b_ * o.b_;
    if (norm.is_zero()) {
      if (o.is_zero()) throw std::domain_error("Scalar: division by zero");
      throw std::domain_error("Scalar: non-invertible divisor");  // impossible over Q(sqrt2), kept for safety
    }
    Scalar conj(o.a_, -o.b_);
    *this *= conj;
    a_ /= norm;
    b_ /= norm;
    return *this;
  }

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }
  friend bool operator==(const Scalar& x, const Scalar& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

  std::string str() const {
    if (b_.is_zero()) return a_.str();
    std::string s = a_.is_zero() ? "" : a_.str();
    if (!s.empty()) s += "+";
    return s + b_.str() + "*sqrt2";
  }

 private:
  Rat a_, b_;
};

inline Scalar scale_by_rat(const Scalar& c, const Rat& r) { return c * Scalar(r); }

}  // namespace spinfock
