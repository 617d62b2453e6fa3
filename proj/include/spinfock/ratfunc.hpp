#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinfock/rational.hpp"

namespace spinfock {

namespace poly {

using Poly = std::vector<Rat>;  // ascending coefficients, no trailing zeros

inline void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}
inline bool is_zero(const Poly& p) { return p.empty(); }
inline int deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

inline Poly add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}
inline Poly neg(Poly a) {
  for (auto& c : a) c = -c;
  return a;
}
inline Poly sub(const Poly& a, const Poly& b) { return add(a, neg(b)); }
inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}
inline Poly scale(Poly a, const Rat& c) {
  for (auto& x : a) x *= c;
  trim(a);
  return a;
}

/// Euclidean division: a = q*b + r with deg r < deg b.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  if (b.empty()) throw std::domain_error("poly: division by zero");
  Poly q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Rat(0));
  while (!a.empty() && a.size() >= b.size()) {
    Rat c = a.back() / b.back();
    size_t shift = a.size() - b.size();
    q[shift] += c;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto [q, r] = divmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) a = scale(a, Rat(1) / a.back());  // monic
  return a;
}

inline Rat eval(const Poly& p, const Rat& x) {
  Rat r(0);
  for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

}  // namespace poly

/// Rational function in one designated formal parameter, over exact rationals.
/// Normal form: gcd(num, den) = 1 and the denominator monic.
class RatFunc {
 public:
  RatFunc() = default;
  RatFunc(const Rat& c) {
    if (!c.is_zero()) num_ = {c};
    den_ = {Rat(1)};
  }
  RatFunc(long c) : RatFunc(Rat(c)) {}
  RatFunc(poly::Poly num, poly::Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  /// The parameter itself.
  static RatFunc param() { return RatFunc({Rat(0), Rat(1)}, {Rat(1)}); }
  /// c * parameter^k, k possibly negative.
  static RatFunc param_pow(long k, const Rat& c = Rat(1)) {
    poly::Poly p(static_cast<size_t>(k < 0 ? -k : k) + 1, Rat(0));
    p.back() = Rat(1);
    return k >= 0 ? RatFunc(poly::scale(p, c), {Rat(1)}) : RatFunc({c}, p);
  }

  bool is_zero() const { return num_.empty(); }
  const poly::Poly& num() const { return num_; }
  const poly::Poly& den() const { return den_; }

  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = poly::neg(r.num_);
    return r;
  }
  RatFunc& operator+=(const RatFunc& o) {
    num_ = poly::add(poly::mul(num_, o.den_), poly::mul(o.num_, den_));
    den_ = poly::mul(den_, o.den_);
    normalize();
    return *this;
  }
  RatFunc& operator-=(const RatFunc& o) { return *this += -o; }
  RatFunc& operator*=(const RatFunc& o) {
    num_ = poly::mul(num_, o.num_);
    den_ = poly::mul(den_, o.den_);
    normalize();
    return *this;
  }
  RatFunc& operator/=(const RatFunc& o) {
    if (o.is_zero()) throw std::domain_error("RatFunc: division by zero");
    num_ = poly::mul(num_, o.den_);
    den_ = poly::mul(den_, o.num_);
    normalize();
    return *this;
  }
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  /// Exact evaluation; the point must avoid denominator roots.
  Rat eval(const Rat& x) const {
    Rat d = poly::eval(den_, x);
    if (d.is_zero()) throw std::domain_error("RatFunc: evaluation at a pole");
    return poly::eval(num_, x) / d;
  }

  bool has_pole_at(const Rat& x) const { return poly::eval(den_, x).is_zero(); }

  /// The underlying rational when the function is constant.
  Rat rational() const {
    if (num_.size() > 1 || den_.size() > 1) throw std::domain_error("RatFunc: not constant");
    return num_.empty() ? Rat(0) : num_[0];
  }

  std::string str() const {
    auto poly_str = [](const poly::Poly& p) {
      if (p.empty()) return std::string("0");
      std::ostringstream os;
      bool first = true;
      for (size_t i = 0; i < p.size(); ++i) {
        if (p[i].is_zero()) continue;
        if (!first) os << "+";
        first = false;
        os << "(" << p[i].str() << ")";
        if (i > 0) os << "*t^" << i;
      }
      return os.str();
    };
    if (den_.size() == 1 && den_[0].is_one()) return poly_str(num_);
    return "(" + poly_str(num_) + ")/(" + poly_str(den_) + ")";
  }

 private:
  void normalize() {
    poly::trim(num_);
    poly::trim(den_);
    if (den_.empty()) throw std::domain_error("RatFunc: zero denominator");
    if (num_.empty()) {
      den_ = {Rat(1)};
      return;
    }
    poly::Poly g = poly::gcd(num_, den_);
    if (poly::deg(g) > 0) {
      num_ = poly::divmod(num_, g).first;
      den_ = poly::divmod(den_, g).first;
    }
    Rat lead = den_.back();
    if (!lead.is_one()) {
      den_ = poly::scale(den_, Rat(1) / lead);
      num_ = poly::scale(num_, Rat(1) / lead);
    }
  }

  poly::Poly num_;          // empty means 0
  poly::Poly den_{Rat(1)};  // monic after normalization
};

inline RatFunc scale_by_rat(const RatFunc& c, const Rat& r) { return c * RatFunc(r); }
inline Rat rat_of(const RatFunc& c) { return c.rational(); }

}  // namespace spinfock
