#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "spinfock/hyperbolic.hpp"
#include "spinfock/rational.hpp"
#include "spinfock/series.hpp"

namespace spinfock {

/// Basis word phi_{a_1} ... phi_{a_l} |0> with a_1 > a_2 > ... > a_l >= 0.
/// A zero index may appear once (single zero mode). Energy is the sum of
/// the parts; the sector is the length mod 2.
struct FockState {
  std::vector<int> parts;

  long energy() const {
    long e = 0;
    for (int p : parts) e += p;
    return e;
  }
  int sector() const { return static_cast<int>(parts.size() % 2); }
  bool has_zero_mode() const { return !parts.empty() && parts.back() == 0; }
  int max_part() const { return parts.empty() ? 0 : parts.front(); }

  friend bool operator<(const FockState& a, const FockState& b) { return a.parts < b.parts; }
  friend bool operator==(const FockState& a, const FockState& b) { return a.parts == b.parts; }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
    os << "]";
    return os.str();
  }
};

inline FockState fock_vacuum() { return FockState{}; }

/// Exact action of a single Clifford generator phi_k on a basis word.
/// At most one word survives; returns nothing when the action annihilates.
inline std::optional<std::pair<Rat, FockState>> phi_apply(int k, const FockState& s) {
  const auto& p = s.parts;
  if (k >= 0) {
    size_t i = 0;
    while (i < p.size() && p[i] > k) ++i;
    if (i < p.size() && p[i] == k) {
      if (k > 0) return std::nullopt;  // duplicate positive mode
      // phi_0 against the zero mode: phi_0 phi_0 = 1/2
      FockState r = s;
      r.parts.pop_back();
      Rat c = Rat(1, 2) * Rat((p.size() - 1) % 2 == 0 ? 1 : -1);
      return std::make_pair(c, std::move(r));
    }
    FockState r = s;
    r.parts.insert(r.parts.begin() + static_cast<long>(i), k);
    return std::make_pair(Rat(i % 2 == 0 ? 1 : -1), std::move(r));
  }
  // k < 0: annihilate the part -k
  int target = -k;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] == target) {
      FockState r = s;
      r.parts.erase(r.parts.begin() + static_cast<long>(i));
      int sign = ((i % 2 == 0) ? 1 : -1) * ((k % 2 == 0) ? 1 : -1);
      return std::make_pair(Rat(sign), std::move(r));
    }
    if (p[i] < target) break;
  }
  return std::nullopt;
}

/// Finite exact linear combination of basis words.
template <class C>
struct FockVector {
  std::map<FockState, C> t;

  static FockVector vacuum(C c = C(Rat(1))) {
    FockVector v;
    v.t.emplace(fock_vacuum(), std::move(c));
    return v;
  }

  bool is_zero() const { return t.empty(); }
  void add(const FockState& s, const C& c) {
    if (c.is_zero()) return;
    auto it = t.find(s);
    if (it == t.end()) {
      t.emplace(s, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) t.erase(it);
    }
  }
  FockVector& operator+=(const FockVector& o) {
    for (auto& [s, c] : o.t) add(s, c);
    return *this;
  }
  FockVector& scale(const C& c) {
    for (auto it = t.begin(); it != t.end();) {
      it->second = it->second * c;
      it = it->second.is_zero() ? t.erase(it) : std::next(it);
    }
    return *this;
  }
  FockVector scaled(const C& c) const {
    FockVector r = *this;
    r.scale(c);
    return r;
  }
  FockVector& scale_rat(const Rat& c) {
    for (auto it = t.begin(); it != t.end();) {
      it->second = scale_by_rat(it->second, c);
      it = it->second.is_zero() ? t.erase(it) : std::next(it);
    }
    return *this;
  }
  FockVector scaled_rat(const Rat& c) const {
    FockVector r = *this;
    r.scale_rat(c);
    return r;
  }
  void prune_energy(long lo, long hi) {
    for (auto it = t.begin(); it != t.end();)
      it = (it->first.energy() < lo || it->first.energy() > hi) ? t.erase(it) : std::next(it);
  }
  C coeff(const FockState& s) const {
    auto it = t.find(s);
    return it == t.end() ? C() : it->second;
  }
  C vacuum_coeff() const { return coeff(fock_vacuum()); }
  int max_part() const {
    int m = 0;
    for (auto& [s, c] : t) m = std::max(m, s.max_part());
    return m;
  }
  long max_energy() const {
    long e = 0;
    for (auto& [s, c] : t) e = std::max(e, s.energy());
    return e;
  }
};

template <class C>
FockVector<C> apply_phi(int k, const FockVector<C>& v) {
  FockVector<C> r;
  for (auto& [s, c] : v.t)
    if (auto hit = phi_apply(k, s)) r.add(hit->second, scale_by_rat(c, hit->first));
  return r;
}

/// Normal-ordered quadratic :phi_j phi_{-k}: (vacuum expectation subtracted).
inline std::pair<std::optional<std::pair<Rat, FockState>>, Rat> quad_on_state(int j, int k, const FockState& s) {
  Rat contraction(0);
  if (j == k) {
    // <phi_j phi_{-j}> = (-1)^j u[-j]
    if (j < 0) contraction = Rat(j % 2 == 0 ? 1 : -1);
    if (j == 0) contraction = Rat(1, 2);
  }
  std::optional<std::pair<Rat, FockState>> word;
  if (auto h1 = phi_apply(-k, s))
    if (auto h2 = phi_apply(j, h1->second)) word = std::make_pair(h1->first * h2->first, h2->second);
  return {word, contraction};
}

template <class C>
FockVector<C> apply_quad(int j, int k, const FockVector<C>& v) {
  FockVector<C> r;
  for (auto& [s, c] : v.t) {
    auto [word, contraction] = quad_on_state(j, k, s);
    if (word) r.add(word->second, scale_by_rat(c, word->first));
    if (!contraction.is_zero()) r.add(s, scale_by_rat(c, -contraction));
  }
  return r;
}

/// Bosonic mode alpha_m (m odd; even m acts as zero).
template <class C>
FockVector<C> apply_alpha(int m, const FockVector<C>& v) {
  FockVector<C> r;
  if (m % 2 == 0) return r;
  for (auto& [s, c] : v.t) {
    int klo = (m >= 0 ? m / 2 : (m - 1) / 2) + 1;  // floor(m/2) + 1
    int khi = std::max(s.max_part(), 0);
    for (int k = klo; k <= khi; ++k) {
      auto [word, contraction] = quad_on_state(k - m, k, s);
      Rat sign(k % 2 == 0 ? 1 : -1);
      if (word) r.add(word->second, scale_by_rat(c, sign * word->first));
      if (!contraction.is_zero()) r.add(s, scale_by_rat(c, -(sign * contraction)));
    }
  }
  return r;
}

/// Diagonal completed cut-and-join F_{r1} with eigenvalue p_{r1}(lambda),
/// r1 odd; even r1 acts as zero.
template <class C>
FockVector<C> apply_cut_join(long r1, const FockVector<C>& v) {
  FockVector<C> r;
  if (r1 % 2 == 0) return r;
  for (auto& [s, c] : v.t) {
    Rat eig(0);
    for (int p : s.parts)
      if (p > 0) eig += pow(Rat(p), r1);
    if (!eig.is_zero()) r.add(s, scale_by_rat(c, eig));
  }
  return r;
}

/// Eigenvalue of the non-corrected generating operator at m = 0 on a basis
/// word: sum over parts of sinh(p z), exact in q = exp(z/2).
inline HyperPoly e0_eigenvalue(const FockState& s) {
  HyperPoly e;
  for (int p : s.parts)
    if (p > 0) e += HyperPoly::sinh_half(2 * p);
  return e;
}

/// Generating operators E_m(z) with hyperbolic-exact weights, non-corrected.
/// Each term carries exp((l - m/2) z) = q^(2l - m).
inline FockVector<HyperPoly> apply_e_hyper(int m, const FockVector<HyperPoly>& v) {
  FockVector<HyperPoly> r;
  for (auto& [s, c] : v.t) {
    int L = s.max_part() + std::abs(m) + 2;
    for (int l = -L; l <= L; ++l) {
      auto [word, contraction] = quad_on_state(l - m, l, s);
      Rat half(l % 2 == 0 ? 1 : -1, 2);
      if (word) r.add(word->second, c * HyperPoly::expq(2 * l - m, half * word->first));
      if (!contraction.is_zero()) r.add(s, c * HyperPoly::expq(2 * l - m, -(half * contraction)));
    }
  }
  return r;
}

/// Taylor coefficients of qoppa(z)/sigma(z) = (1/4) coth(z/2) as a Laurent
/// series in z, orders -1..cap. Computed once per cap in a scratch table.
inline std::vector<Rat> coth_quarter_coeffs(int cap) {
  auto local = make_vars({"z"}, {0}, {cap + 1});
  Series<Rat> qop(local), sig_over_z(local);
  for (int a = 0; a <= cap + 1; ++a) {
    Rat q = HyperPoly::qoppa().taylor_coeff(a);
    if (!q.is_zero()) qop.add_term({a}, q);
    Rat s = HyperPoly::sigma().taylor_coeff(a + 1);
    if (!s.is_zero()) sig_over_z.add_term({a}, s);
  }
  Series<Rat> reg = qop * sig_over_z.inverse();
  std::vector<Rat> out(static_cast<size_t>(cap) + 2);  // out[i] = coeff of z^(i-1)
  for (int a = 0; a <= cap + 1; ++a) out[static_cast<size_t>(a)] = reg.coeff({a});
  return out;
}

/// qoppa(z)/sigma(z) expanded on a pipeline variable (needs lo <= -1).
template <class C>
Series<C> coth_quarter_series(const VarTablePtr& vt, int zvar) {
  if (vt->lo[zvar] > -1) throw std::domain_error("coth_quarter_series: variable must admit exponent -1");
  auto cs = coth_quarter_coeffs(vt->hi[zvar]);
  Series<C> r(vt);
  Expo e(vt->names.size(), 0);
  for (size_t i = 0; i < cs.size(); ++i) {
    if (cs[i].is_zero()) continue;
    e[zvar] = static_cast<int>(i) - 1;
    r.add_term(e, C(cs[i]));
  }
  return r;
}

/// A linear form sum_i scale_i * x_{var_i} in pipeline variables.
using LinForm = std::vector<std::pair<int, Rat>>;

/// exp(scale * form), truncated; the form must use non-negative exponents.
template <class C>
Series<C> exp_linear_form(const VarTablePtr& vt, const LinForm& form, const Rat& scale) {
  Series<C> arg(vt);
  Expo e(vt->names.size(), 0);
  for (auto& [var, c] : form) {
    Rat cc = c * scale;
    if (cc.is_zero()) continue;
    e[var] = 1;
    arg.add_term(e, C(cc));
    e[var] = 0;
  }
  return arg.exp();
}

/// Truncated expansion of a hyperbolic polynomial evaluated on a linear form.
template <class C>
Series<C> hyper_on_form(const HyperPoly& p, const VarTablePtr& vt, const LinForm& form) {
  Series<C> r(vt);
  for (auto& [e, c] : p.terms()) r += exp_linear_form<C>(vt, form, Rat(e, 2)).scaled(C(c));
  return r;
}

/// E_m evaluated on a linear form: each Clifford term carries
/// exp((l - m/2) * form). corrected = true adds qoppa/sigma * Id at m = 0 and
/// requires a single-variable form with unit scale (Laurent pole at order -1).
template <class C>
FockVector<Series<C>> apply_e_series(int m, bool corrected, const LinForm& form, const FockVector<Series<C>>& v) {
  using S = Series<C>;
  FockVector<S> r;
  if (v.is_zero()) return r;
  const VarTablePtr& vt = v.t.begin()->second.vars();
  if (corrected && m == 0 && (form.size() != 1 || form[0].second != Rat(1)))
    throw std::domain_error("apply_e_series: the corrected operator needs a plain single-variable form");
  std::map<int, S> weight_cache;
  auto weight = [&](int twol_minus_m) -> const S& {
    auto it = weight_cache.find(twol_minus_m);
    if (it == weight_cache.end())
      it = weight_cache.emplace(twol_minus_m, exp_linear_form<C>(vt, form, Rat(twol_minus_m, 2))).first;
    return it->second;
  };
  for (auto& [s, c] : v.t) {
    int L = s.max_part() + std::abs(m) + 2;
    for (int l = -L; l <= L; ++l) {
      auto [word, contraction] = quad_on_state(l - m, l, s);
      Rat half(l % 2 == 0 ? 1 : -1, 2);
      if (!word && contraction.is_zero()) continue;
      const S& w = weight(2 * l - m);
      if (word) r.add(word->second, c * w.scaled(C(half * word->first)));
      if (!contraction.is_zero()) r.add(s, c * w.scaled(C(-(half * contraction))));
    }
    if (corrected && m == 0) r.add(s, c * coth_quarter_series<C>(vt, form[0].first));
  }
  return r;
}

template <class C>
FockVector<Series<C>> apply_e_series(int m, bool corrected, int zvar, const FockVector<Series<C>>& v) {
  return apply_e_series(m, corrected, LinForm{{zvar, Rat(1)}}, v);
}

/// Matrix of an operator on an explicit window of basis states.
template <class C>
struct FockOp {
  std::map<FockState, FockVector<C>> col;
  long band_lo = 0, band_hi = 0;  // energy-shift support

  FockVector<C> apply(const FockVector<C>& v) const {
    FockVector<C> r;
    for (auto& [s, c] : v.t) {
      auto it = col.find(s);
      if (it == col.end()) throw std::domain_error("FockOp: state outside the operator window: " + s.str());
      for (auto& [s2, c2] : it->second.t) r.add(s2, c * c2);
    }
    return r;
  }

  /// Columns from an action on basis states.
  template <class F>
  static FockOp build(const std::vector<FockState>& window, long blo, long bhi, F&& act) {
    FockOp op;
    op.band_lo = blo;
    op.band_hi = bhi;
    for (auto& s : window) op.col[s] = act(s);
    return op;
  }

  /// (a after b): apply b first. Intermediate states must lie in a's window.
  static FockOp compose(const FockOp& a, const FockOp& b) {
    FockOp op;
    op.band_lo = a.band_lo + b.band_lo;
    op.band_hi = a.band_hi + b.band_hi;
    for (auto& [s, column] : b.col) op.col[s] = a.apply(column);
    return op;
  }

  FockOp& operator+=(const FockOp& o) {
    band_lo = std::min(band_lo, o.band_lo);
    band_hi = std::max(band_hi, o.band_hi);
    for (auto& [s, column] : o.col) {
      auto it = col.find(s);
      if (it == col.end())
        col.emplace(s, column);
      else
        it->second += column;
    }
    return *this;
  }
  FockOp& operator-=(const FockOp& o) { return *this += o.scaled_rat(Rat(-1)); }
  FockOp scaled(const C& c) const {
    FockOp r = *this;
    for (auto& [s, column] : r.col) column.scale(c);
    return r;
  }
  FockOp scaled_rat(const Rat& c) const {
    FockOp r = *this;
    for (auto& [s, column] : r.col) column.scale_rat(c);
    return r;
  }

  /// Columns restricted to source states within an energy cap.
  FockOp restrict_sources(long emax) const {
    FockOp r;
    r.band_lo = band_lo;
    r.band_hi = band_hi;
    for (auto& [s, column] : col)
      if (s.energy() <= emax) r.col.emplace(s, column);
    return r;
  }

  /// Matrix elements restricted to source/target states within an energy cap.
  std::map<std::pair<FockState, FockState>, C> entries_within(long emax) const {
    std::map<std::pair<FockState, FockState>, C> m;
    for (auto& [s, column] : col) {
      if (s.energy() > emax) continue;
      for (auto& [t, c] : column.t)
        if (t.energy() <= emax && !c.is_zero()) m[{s, t}] = c;
    }
    return m;
  }
};

/// Gram factor <s|s> of the pairing on internal basis words.
inline Rat gram(const FockState& s) { return s.has_zero_mode() ? Rat(1, 2) : Rat(1); }

/// Adjoint with respect to the pairing: col*[s][t] = (G_s / G_t) col[t][s].
template <class C>
FockOp<C> fock_adjoint(const FockOp<C>& a, const std::vector<FockState>& window) {
  FockOp<C> r;
  r.band_lo = -a.band_hi;
  r.band_hi = -a.band_lo;
  for (auto& s : window) r.col[s] = {};
  for (auto& [t, column] : a.col)
    for (auto& [s, c] : column.t) {
      auto it = r.col.find(s);
      if (it == r.col.end()) continue;  // target outside the requested window
      it->second.add(t, scale_by_rat(c, gram(s) / gram(t)));
    }
  return r;
}

/// All internal basis states with energy <= emax (both sectors).
std::vector<FockState> fock_window(long emax);

/// Coefficients <0| exp(alpha_1) |s> for all s with energy <= emax.
std::map<FockState, Rat> covacuum_exp_alpha1(long emax);

/// Sergeev character zeta^lambda_mu read off the bosonic creation action
/// (lambda strict with positive parts, mu odd, |lambda| = |mu|). Cached.
Rat sergeev_character(const std::vector<long>& lambda, const std::vector<long>& mu);

}  // namespace spinfock
