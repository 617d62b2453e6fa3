#pragma once

#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinfock/rational.hpp"

namespace spinfock {

/// Variable layout shared by all series of one pipeline: names plus the
/// retained exponent range [lo, hi] per variable. lo < 0 declares a Laurent
/// variable. Exponents above hi are truncated away by ring operations;
/// exponents below lo are an error, never a silent drop.
struct VarTable {
  std::vector<std::string> names;
  std::vector<int> lo, hi;

  int index(const std::string& n) const {
    for (size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) return static_cast<int>(i);
    throw std::invalid_argument("VarTable: unknown variable " + n);
  }
};

using VarTablePtr = std::shared_ptr<const VarTable>;

inline VarTablePtr make_vars(std::vector<std::string> names, std::vector<int> lo, std::vector<int> hi) {
  if (names.size() != lo.size() || names.size() != hi.size())
    throw std::invalid_argument("make_vars: size mismatch");
  auto vt = std::make_shared<VarTable>();
  vt->names = std::move(names);
  vt->lo = std::move(lo);
  vt->hi = std::move(hi);
  return vt;
}

/// Convenience: all variables truncated at [0, cap] unless a negative lo is given.
inline VarTablePtr make_vars(std::vector<std::pair<std::string, std::pair<int, int>>> spec) {
  std::vector<std::string> n;
  std::vector<int> lo, hi;
  for (auto& [name, range] : spec) {
    n.push_back(name);
    lo.push_back(range.first);
    hi.push_back(range.second);
  }
  return make_vars(std::move(n), std::move(lo), std::move(hi));
}

using Expo = std::vector<int>;

/// Multivariate formal series with exact coefficients, truncated per variable.
/// Sparse, deterministically ordered. Ring operations are exact within the
/// retained window: for series without negative exponents, truncating the
/// product of truncations agrees with truncating the full product.
template <class C>
class Series {
 public:
  Series() = default;
  explicit Series(VarTablePtr vt) : vt_(std::move(vt)) {}

  static Series constant(VarTablePtr vt, C c) {
    Series s(std::move(vt));
    s.add_term(Expo(s.vt_->names.size(), 0), std::move(c));
    return s;
  }
  static Series monomial(VarTablePtr vt, Expo e, C c) {
    Series s(std::move(vt));
    s.add_term(std::move(e), std::move(c));
    return s;
  }
  static Series var(const VarTablePtr& vt, int v) {
    Expo e(vt->names.size(), 0);
    e[v] = 1;
    return monomial(vt, std::move(e), C(Rat(1)));
  }

  const VarTablePtr& vars() const { return vt_; }
  size_t nvars() const { return vt_->names.size(); }
  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }
  const std::map<Expo, C>& terms() const { return t_; }

  /// Adds one term, enforcing the window. Returns *this.
  Series& add_term(const Expo& e, const C& c) {
    if (c.is_zero()) return *this;
    check_expo(e);
    if (above_cap(e)) return *this;
    auto it = t_.find(e);
    if (it == t_.end()) {
      t_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
    return *this;
  }

  C coeff(const Expo& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? C() : it->second;
  }
  C constant_term() const { return coeff(Expo(nvars(), 0)); }

  /// Drops all terms with the exponent of one variable above a cap (used to
  /// restrict a computation with internal headroom to its certified window).
  Series drop_above(int var, int cap) const {
    Series r(vt_);
    for (auto& [e, c] : t_)
      if (e[var] <= cap) r.t_.emplace(e, c);
    return r;
  }

  /// Coefficient of var^k as a series over the same table (exponent of var zeroed).
  Series coeff_of(int var, int k) const {
    Series r(vt_);
    for (auto& [e, c] : t_) {
      if (e[var] != k) continue;
      Expo e2 = e;
      e2[var] = 0;
      r.t_.emplace(std::move(e2), c);
    }
    return r;
  }

  /// Max exponent of one variable actually present (lo-1 when empty).
  int degree(int var) const {
    int d = vt_->lo[var] - 1;
    for (auto& [e, c] : t_) d = std::max(d, e[var]);
    return d;
  }

  Series operator-() const {
    Series r(vt_);
    for (auto& [e, c] : t_) r.t_.emplace(e, -c);
    return r;
  }
  Series& operator+=(const Series& o) {
    same_table(o);
    for (auto& [e, c] : o.t_) add_term(e, c);
    return *this;
  }
  Series& operator-=(const Series& o) {
    same_table(o);
    for (auto& [e, c] : o.t_) add_term(e, -c);
    return *this;
  }
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }

  friend Series operator*(const Series& a, const Series& b) {
    a.same_table(b);
    Series r(a.vt_);
    Expo e(a.nvars());
    for (auto& [ea, ca] : a.t_)
      for (auto& [eb, cb] : b.t_) {
        bool skip = false;
        for (size_t i = 0; i < e.size(); ++i) {
          e[i] = ea[i] + eb[i];
          if (e[i] > a.vt_->hi[i]) { skip = true; break; }
        }
        if (skip) continue;
        r.check_expo(e);
        C prod = ca * cb;
        if (prod.is_zero()) continue;
        auto it = r.t_.find(e);
        if (it == r.t_.end()) {
          r.t_.emplace(e, std::move(prod));
        } else {
          it->second += prod;
          if (it->second.is_zero()) r.t_.erase(it);
        }
      }
    return r;
  }
  Series& operator*=(const Series& o) { return *this = *this * o; }

  Series& scale(const C& c) {
    if (c.is_zero()) { t_.clear(); return *this; }
    for (auto it = t_.begin(); it != t_.end();) {
      it->second = it->second * c;
      it = it->second.is_zero() ? t_.erase(it) : std::next(it);
    }
    return *this;
  }
  Series scaled(const C& c) const { Series r = *this; r.scale(c); return r; }

  /// Multiplication by a single monomial (shifts all exponents).
  Series mul_monomial(const Expo& shift, const C& c) const {
    Series r(vt_);
    Expo e(nvars());
    for (auto& [ea, ca] : t_) {
      bool skip = false;
      for (size_t i = 0; i < e.size(); ++i) {
        e[i] = ea[i] + shift[i];
        if (e[i] > vt_->hi[i]) { skip = true; break; }
      }
      if (skip) continue;
      r.check_expo(e);
      C prod = ca * c;
      if (!prod.is_zero()) r.t_.emplace(e, std::move(prod));
    }
    return r;
  }

  /// exp(f) for f with zero constant term and no negative exponents.
  Series exp() const {
    require_positive("exp");
    if (!constant_term().is_zero()) throw std::domain_error("Series::exp: nonzero constant term");
    Series r = constant(vt_, C(Rat(1)));
    Series fk = r;  // f^k / k!
    long k = 0;
    while (true) {
      ++k;
      fk = (fk * *this).scaled(C(Rat(1, k)));
      if (fk.is_zero()) break;
      r += fk;
    }
    return r;
  }

  /// log(f) for f with constant term one and no negative exponents.
  Series log() const {
    require_positive("log");
    if (!(constant_term() == C(Rat(1)))) throw std::domain_error("Series::log: constant term is not one");
    Series g = *this - constant(vt_, C(Rat(1)));
    Series r(vt_);
    Series gk = constant(vt_, C(Rat(1)));
    long k = 0;
    while (true) {
      ++k;
      gk = gk * g;
      if (gk.is_zero()) break;
      r += gk.scaled(C(Rat(k % 2 == 1 ? 1 : -1, k)));
    }
    return r;
  }

  Series inverse() const {
    // f = c (1 - h) with h nilpotent under truncation.
    require_positive("inverse");
    C c = constant_term();
    if (c.is_zero()) throw std::domain_error("Series::inverse: constant term is zero");
    C cinv = C(Rat(1)) / c;
    Series h = constant(vt_, C(Rat(1))) - scaled(cinv);
    Series r = constant(vt_, C(Rat(1)));
    Series hk = constant(vt_, C(Rat(1)));
    while (true) {
      hk = hk * h;
      if (hk.is_zero()) break;
      r += hk;
    }
    return r.scaled(cinv);
  }

  Series pow_int(long e) const {
    if (e < 0) return inverse().pow_int(-e);
    Series r = constant(vt_, C(Rat(1)));
    Series base = *this;
    while (e > 0) {
      if (e & 1) r = r * base;
      base = (e >>= 1) ? base * base : base;
    }
    return r;
  }

  friend bool operator==(const Series& a, const Series& b) {
    a.same_table(b);
    return a.t_ == b.t_;
  }
  friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

  std::string str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : t_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c.str() << ")";
      for (size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) os << "*" << vt_->names[i] << "^" << e[i];
    }
    return os.str();
  }

 private:
  void same_table(const Series& o) const {
    if (vt_ != o.vt_ && !(vt_ && o.vt_ && vt_->names == o.vt_->names && vt_->lo == o.vt_->lo && vt_->hi == o.vt_->hi))
      throw std::invalid_argument("Series: mixed variable tables");
  }
  bool above_cap(const Expo& e) const {
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > vt_->hi[i]) return true;
    return false;
  }
  void check_expo(const Expo& e) const {
    if (e.size() != vt_->names.size()) throw std::invalid_argument("Series: exponent arity mismatch");
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] < vt_->lo[i])
        throw std::domain_error("Series: exponent of " + vt_->names[i] + " fell below the declared window");
  }
  void require_positive(const char* op) const {
    for (auto& [e, c] : t_)
      for (int x : e)
        if (x < 0) throw std::domain_error(std::string("Series::") + op + ": Laurent input");
  }

  VarTablePtr vt_;
  std::map<Expo, C> t_;
};

template <class C>
Series<C> scale_by_rat(const Series<C>& c, const Rat& r) { return c.scaled(C(r)); }

}  // namespace spinfock
