#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "spinfock/rational.hpp"
#include "spinfock/series.hpp"

namespace spinfock {

/// Finite exact sums  sum_e c_e * exp(e*z/2)  over half-integer multiples of z,
/// stored by the integer exponent of q = exp(z/2). Closed under + and *; this
/// is the exact carrier for hyperbolic-polynomial results in one variable.
class HyperPoly {
 public:
  HyperPoly() = default;
  HyperPoly(const Rat& c) { add(0, c); }
  HyperPoly(long c) { add(0, Rat(c)); }

  /// exp(k*z/2)
  static HyperPoly expq(int k, const Rat& c = Rat(1)) {
    HyperPoly p;
    p.add(k, c);
    return p;
  }
  /// sinh(k*z/2), cosh(k*z/2)
  static HyperPoly sinh_half(int k) {
    HyperPoly p;
    p.add(k, Rat(1, 2));
    p.add(-k, Rat(-1, 2));
    return p;
  }
  static HyperPoly cosh_half(int k) {
    HyperPoly p;
    p.add(k, Rat(1, 2));
    p.add(-k, Rat(1, 2));
    return p;
  }
  /// sigma(z) = 2 sinh(z/2) = q - 1/q
  static HyperPoly sigma() {
    HyperPoly p;
    p.add(1, Rat(1));
    p.add(-1, Rat(-1));
    return p;
  }
  /// qoppa(z) = cosh(z/2)/2 = (q + 1/q)/4
  static HyperPoly qoppa() {
    HyperPoly p;
    p.add(1, Rat(1, 4));
    p.add(-1, Rat(1, 4));
    return p;
  }

  void add(int e, const Rat& c) {
    if (c.is_zero()) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
      t_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  bool is_zero() const { return t_.empty(); }
  const std::map<int, Rat>& terms() const { return t_; }
  Rat coeff(int e) const {
    auto it = t_.find(e);
    return it == t_.end() ? Rat(0) : it->second;
  }

  bool is_odd() const {
    for (auto& [e, c] : t_)
      if (coeff(-e) != -c) return false;
    return true;
  }
  bool is_even() const {
    for (auto& [e, c] : t_)
      if (coeff(-e) != c) return false;
    return true;
  }

  HyperPoly operator-() const {
    HyperPoly r;
    for (auto& [e, c] : t_) r.t_.emplace(e, -c);
    return r;
  }
  HyperPoly& operator+=(const HyperPoly& o) {
    for (auto& [e, c] : o.t_) add(e, c);
    return *this;
  }
  HyperPoly& operator-=(const HyperPoly& o) {
    for (auto& [e, c] : o.t_) add(e, -c);
    return *this;
  }
  HyperPoly& operator*=(const HyperPoly& o) { return *this = *this * o; }
  friend HyperPoly operator+(HyperPoly a, const HyperPoly& b) { return a += b; }
  friend HyperPoly operator-(HyperPoly a, const HyperPoly& b) { return a -= b; }
  friend HyperPoly operator*(const HyperPoly& a, const HyperPoly& b) {
    HyperPoly r;
    for (auto& [ea, ca] : a.t_)
      for (auto& [eb, cb] : b.t_) r.add(ea + eb, ca * cb);
    return r;
  }
  friend bool operator==(const HyperPoly& a, const HyperPoly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const HyperPoly& a, const HyperPoly& b) { return !(a == b); }

  /// Exact Taylor coefficient of z^m at z = 0.
  Rat taylor_coeff(long m) const {
    Rat s(0);
    for (auto& [e, c] : t_) s += c * pow(Rat(e, 2), m);
    return s / factorial(m);
  }

  /// Truncated z-expansion into a series pipeline.
  template <class C>
  Series<C> to_series(const VarTablePtr& vt, int zvar) const {
    Series<C> r(vt);
    Expo e(vt->names.size(), 0);
    for (int m = 0; m <= vt->hi[zvar]; ++m) {
      e[zvar] = m;
      Rat c = taylor_coeff(m);
      if (!c.is_zero()) r.add_term(e, C(c));
    }
    return r;
  }

  /// Decomposition of an odd element over the basis sinh(k*z/2), k > 0.
  /// Keys are the half-unit exponents k; sinh(d*z) sits at k = 2d.
  std::map<int, Rat> sinh_decompose() const {
    if (!is_odd()) throw std::domain_error("HyperPoly: sinh decomposition needs an odd element");
    std::map<int, Rat> out;
    HyperPoly rest = *this;
    while (!rest.t_.empty()) {
      auto top = std::prev(rest.t_.end());
      int e = top->first;
      Rat c = top->second;
      if (e <= 0) throw std::logic_error("HyperPoly: odd element with nonpositive leading exponent");
      out[e] = c * Rat(2);
      rest -= sinh_half(e) * HyperPoly(c * Rat(2));
    }
    return out;
  }

  std::string str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : t_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c.str() << ")";
      if (e != 0) os << "*q^" << e;
    }
    return os.str();
  }

 private:
  std::map<int, Rat> t_;
};

inline HyperPoly scale_by_rat(const HyperPoly& c, const Rat& r) { return c * HyperPoly(r); }

}  // namespace spinfock
