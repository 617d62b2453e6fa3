#pragma once

#include <limits>
#include <map>
#include <mutex>
#include <vector>

#include "spinfock/fock.hpp"
#include "spinfock/partitions.hpp"
#include "spinfock/series.hpp"

namespace spinfock {

/// One banded generating-operator factor B(Z, U). The argument Z is either a
/// rational constant (zvar < 0) or zscale * x_zvar; U is uscale times a
/// monomial in the pipeline variables. The ladder index j runs up to jmax;
/// its lower end is the structural bound of each Clifford band, so the only
/// truncations are the declared variable windows and jmax.
template <class C>
struct BFactor {
  C zscale;
  int zvar = -1;
  C uscale;
  Expo uexp;
  int jmax = 0;

  bool z_is_formal() const { return zvar >= 0; }

  /// Forward raising capacity: an odd integer argument cannot raise beyond
  /// itself; a formal factor is bounded by its declared ladder floor.
  long raise_cap(const VarTablePtr& vt) const {
    if (z_is_formal()) return 2 * static_cast<long>(-vt->lo[static_cast<size_t>(zvar)]) + 1;
    Rat z = rat_of(zscale);
    if (z.is_integer() && z.sign() > 0 && z.num() % 2 != 0) return z.to_long();
    return 2L * jmax - 1;
  }
};

/// c^j for integer j (negative allowed for invertible c).
template <class C>
C pow_c(const C& c, long j) {
  if (j >= 0) {
    C r(Rat(1));
    for (long i = 0; i < j; ++i) r = r * c;
    return r;
  }
  C r(Rat(1));
  for (long i = 0; i < -j; ++i) r = r / c;
  return r;
}

namespace hodge_detail {

inline long jmin_for(long k) {
  if (k == 0) return 0;
  return (k % 2 != 0) ? (k + 1) / 2 : k / 2 + 1;  // k odd (either sign) and even
}

/// Unit-normalized w-expansions: coefficient vector c[0..] of w^(val..).
template <class C>
struct WSlice {
  long val = 0;
  std::vector<Series<C>> c;
};

/// Scratch tables shared by every application of one factor.
template <class C>
struct BTables {
  VarTablePtr vt;
  int wcap = 0;
  std::vector<Series<C>> logS;        // [w^a] log S(w), a = 0..wcap (rational, constant series)
  std::vector<Series<C>> s_pow_z;     // [w^a] S(w)^Z
  std::map<long, WSlice<C>> t_k;      // S(w)^Z sigma(w)^k
  std::map<std::pair<long, long>, Series<C>> gamma;  // (k, j) -> Gamma-ratio coefficient
  Series<C> prefactor;                // exp(U Z^2 / 12)
  std::vector<Rat> cothq;             // [w^(i-1)] qoppa/sigma
};

template <class C>
Series<C> z_series(const BFactor<C>& f, const VarTablePtr& vt) {
  if (!f.z_is_formal()) return Series<C>::constant(vt, f.zscale);
  return Series<C>::var(vt, f.zvar).scaled(f.zscale);
}

/// 1/(Z + l) as a truncated series; l = 0 needs a formal Laurent variable or
/// a nonzero rational argument.
template <class C>
Series<C> inv_linear(const BFactor<C>& f, const VarTablePtr& vt, const Rat& l) {
  if (!f.z_is_formal()) {
    C den = f.zscale + C(l);
    if (den.is_zero()) throw std::domain_error("generating operator: argument at a pole");
    return Series<C>::constant(vt, C(Rat(1)) / den);
  }
  if (l.is_zero()) {
    Expo e(vt->names.size(), 0);
    e[f.zvar] = -1;
    return Series<C>::monomial(vt, e, C(Rat(1)) / f.zscale);
  }
  // geometric expansion of 1/(l + zscale z)
  Series<C> r(vt);
  Expo e(vt->names.size(), 0);
  C ratio = -f.zscale * C(Rat(1) / l);
  C cur = C(Rat(1) / l);
  for (int a = 0; a <= vt->hi[f.zvar]; ++a) {
    e[f.zvar] = a;
    r.add_term(e, cur);
    cur = cur * ratio;
  }
  return r;
}

/// Gamma(x + a)/Gamma(x + b) for x = Z or x = (Z-1)/2, as finite products of
/// linear factors (never a transcendental evaluation).
template <class C>
Series<C> gamma_ratio(const BFactor<C>& f, const VarTablePtr& vt, bool half_shifted, long a, long b) {
  Series<C> zs = z_series(f, vt);
  if (half_shifted) zs = (zs - Series<C>::constant(vt, C(Rat(1)))).scaled(C(Rat(1, 2)));
  Series<C> r = Series<C>::constant(vt, C(Rat(1)));
  if (a >= b) {
    for (long l = b; l < a; ++l) r *= zs + Series<C>::constant(vt, C(Rat(l)));
  } else {
    for (long l = a; l < b; ++l) {
      if (f.z_is_formal()) {
        // 1/(x + l): for the half-shifted argument x + l = (Z + 2l - 1)/2
        if (half_shifted)
          r = r.scaled(C(Rat(2))) * inv_linear(f, vt, Rat(2 * l - 1));
        else
          r *= inv_linear(f, vt, Rat(l));
      } else {
        C den = half_shifted ? (f.zscale - C(Rat(1))) * C(Rat(1, 2)) + C(Rat(l)) : f.zscale + C(Rat(l));
        if (den.is_zero()) throw std::domain_error("generating operator: argument at a pole");
        r = r.scaled(C(Rat(1)) / den);
      }
    }
  }
  return r;
}

template <class C>
BTables<C> prepare_tables(const BFactor<C>& f, const VarTablePtr& vt, long emax) {
  BTables<C> t;
  t.vt = vt;
  t.wcap = static_cast<int>(2 * f.jmax - 1 + emax + 2);
  if (t.wcap < 2) t.wcap = 2;
  // log S(w) has rational coefficients
  {
    auto local = make_vars({"w"}, {0}, {t.wcap});
    Series<Rat> sser(local);
    for (int a = 0; a <= t.wcap; a += 2) sser.add_term({a}, pow(Rat(1, 2), a) / factorial(a + 1));
    Series<Rat> ls = sser.log();
    t.logS.assign(t.wcap + 1, Series<C>(vt));
    for (int a = 0; a <= t.wcap; ++a) {
      Rat c = ls.coeff({a});
      if (!c.is_zero()) t.logS[a] = Series<C>::constant(vt, C(c));
    }
  }
  // S(w)^Z = exp(Z log S(w)), coefficients polynomial in the argument
  {
    Series<C> zs = z_series(f, vt);
    std::vector<Series<C>> acc(t.wcap + 1, Series<C>(vt));  // (Z log S)^m / m! accumulated
    std::vector<Series<C>> cur(t.wcap + 1, Series<C>(vt));
    acc[0] = cur[0] = Series<C>::constant(vt, C(Rat(1)));
    // multiply repeatedly by Z log S / m
    std::vector<Series<C>> zlog(t.wcap + 1, Series<C>(vt));
    for (int a = 0; a <= t.wcap; ++a) zlog[a] = t.logS[a] * zs;
    for (int m = 1; 2 * m <= t.wcap; ++m) {
      std::vector<Series<C>> nxt(t.wcap + 1, Series<C>(vt));
      for (int a = 0; a <= t.wcap; ++a) {
        if (cur[a].is_zero()) continue;
        for (int b = 2; a + b <= t.wcap; ++b) {
          if (zlog[b].is_zero()) continue;
          nxt[a + b] += (cur[a] * zlog[b]).scaled(C(Rat(1, m)));
        }
      }
      cur = std::move(nxt);
      bool all_zero = true;
      for (int a = 0; a <= t.wcap; ++a)
        if (!cur[a].is_zero()) {
          acc[a] += cur[a];
          all_zero = false;
        }
      if (all_zero) break;
    }
    t.s_pow_z = std::move(acc);
  }
  // exp(U Z^2 / 12)
  {
    Series<C> zs = z_series(f, vt);
    Series<C> u = Series<C>::monomial(vt, f.uexp, f.uscale);
    t.prefactor = (u * zs * zs).scaled(C(Rat(1, 12))).exp();
  }
  t.cothq = coth_quarter_coeffs(t.wcap);
  return t;
}

/// S(w)^Z sigma(w)^k as a w-slice (valuation k for k < 0, else k).
template <class C>
const WSlice<C>& t_slice(BTables<C>& t, long k) {
  auto it = t.t_k.find(k);
  if (it != t.t_k.end()) return it->second;
  // sigma(w)^k = w^k g(w)^k with g = sigma/w a unit even series
  auto local = make_vars({"w"}, {0}, {t.wcap});
  Series<Rat> g(local);
  for (int a = 0; a + 1 <= t.wcap + 1; a += 2) g.add_term({a}, HyperPoly::sigma().taylor_coeff(a + 1));
  Series<Rat> gk = g.pow_int(k);
  WSlice<C> slice;
  slice.val = k;
  slice.c.assign(t.wcap + 1, Series<C>(t.vt));
  for (int a = 0; a <= t.wcap; ++a) {
    Rat gc = gk.coeff({a});
    if (gc.is_zero()) continue;
    for (int b = 0; a + b <= t.wcap; ++b) {
      if (t.s_pow_z[b].is_zero()) continue;
      slice.c[a + b] += t.s_pow_z[b].scaled(C(gc));
    }
  }
  return t.t_k.emplace(k, std::move(slice)).first->second;
}

template <class C>
const Series<C>& gamma_coeff(BTables<C>& t, const BFactor<C>& f, long k, long j) {
  auto key = std::make_pair(k, j);
  auto it = t.gamma.find(key);
  if (it != t.gamma.end()) return it->second;
  Series<C> g = gamma_ratio(f, t.vt, false, 2 * j, k + 1) * gamma_ratio(f, t.vt, true, 1, j + 1);
  return t.gamma.emplace(key, std::move(g)).first->second;
}

/// [w^{2j-1}] (slice * exp(c w)) with c = (2l - k)/2.
template <class C>
Series<C> extract_weight(BTables<C>& t, const WSlice<C>& slice, long k, long l, long j) {
  Series<C> out(t.vt);
  long target = 2 * j - 1;
  Rat c(2 * l - k, 2);
  Rat cp(1);  // c^m / m!
  for (long m = 0; target - m >= slice.val; ++m) {
    long a = target - m - slice.val;
    if (a <= t.wcap && !slice.c[a].is_zero()) out += slice.c[a].scaled(C(cp));
    cp *= c / Rat(m + 1);
  }
  return out;
}

}  // namespace hodge_detail

/// Applies B(Z, U) to a vector, keeping only target energies within
/// [target_lo, target_hi]. Exact: the only truncations are the variable
/// windows and the declared jmax ladder cap.
template <class C>
FockVector<Series<C>> apply_b_factor(const BFactor<C>& f, hodge_detail::BTables<C>& t,
                                     const FockVector<Series<C>>& v, long target_lo, long target_hi) {
  using namespace hodge_detail;
  using S = Series<C>;
  const VarTablePtr& vt = t.vt;
  FockVector<S> out;
  // for a positive odd integer argument every band below -Z vanishes
  // identically (the linear factors of the ratio coefficients hit zero);
  // cutting there is a shortcut, not a truncation
  long k_floor = std::numeric_limits<long>::min() / 4;
  if (!f.z_is_formal()) {
    Rat z = rat_of(f.zscale);
    if (z.is_integer() && z.sign() > 0 && z.num() % 2 != 0) k_floor = -z.to_long();
  }
  long j_floor = std::numeric_limits<long>::min() / 4;
  if (f.z_is_formal()) j_floor = vt->lo[f.zvar];  // the declared ladder floor
  for (auto& [s, coeff] : v.t) {
    long e = s.energy();
    long kmin = std::max(e - target_hi, k_floor);
    long kmax = std::min(e - target_lo, 2L * f.jmax - 1);
    for (long k = kmin; k <= kmax; ++k) {
      if (jmin_for(k) > f.jmax) continue;
      const WSlice<C>& slice = t_slice(t, k);
      // diagonal correction at k = 0
      if (k == 0) {
        S corr(vt);
        for (long j = jmin_for(0); j <= f.jmax; ++j) {
          // [w^{2j-1}] S^Z * qoppa/sigma
          S w_extract(vt);
          long target = 2 * j - 1;
          for (long i = 0; i < static_cast<long>(t.cothq.size()); ++i) {
            long a = target - (i - 1);  // cothq[i] multiplies w^{i-1}
            if (a < 0 || a > t.wcap) continue;
            if (t.cothq[i].is_zero() || t.s_pow_z[a].is_zero()) continue;
            w_extract += t.s_pow_z[a].scaled(C(t.cothq[static_cast<size_t>(i)]));
          }
          if (w_extract.is_zero()) continue;
          Expo ue(vt->names.size(), 0);
          for (size_t x = 0; x < ue.size(); ++x) ue[x] = f.uexp[x] * static_cast<int>(j);
          S term = (gamma_coeff(t, f, 0, j) * w_extract).mul_monomial(ue, pow_c(f.uscale, j));
          corr += term;
        }
        if (!corr.is_zero()) out.add(s, coeff * corr);
      }
      int L = s.max_part() + static_cast<int>(std::abs(k)) + 2;
      for (int l = -L; l <= L; ++l) {
        auto [word, contraction] = quad_on_state(static_cast<int>(l - k), l, s);
        if (!word && contraction.is_zero()) continue;
        Rat half(l % 2 == 0 ? 1 : -1, 2);
        S acc(vt);
        for (long j = std::max(jmin_for(k), j_floor); j <= f.jmax; ++j) {
          S w = extract_weight(t, slice, k, l, j);
          if (w.is_zero()) continue;
          Expo ue(vt->names.size(), 0);
          for (size_t x = 0; x < ue.size(); ++x) ue[x] = f.uexp[x] * static_cast<int>(j);
          acc += (gamma_coeff(t, f, k, j) * w).mul_monomial(ue, pow_c(f.uscale, j));
        }
        if (acc.is_zero()) continue;
        if (word) out.add(word->second, coeff * acc.scaled(C(half * word->first)));
        if (!contraction.is_zero()) out.add(s, coeff * acc.scaled(C(-(half * contraction))));
      }
    }
  }
  // the exponential prefactor
  FockVector<S> scaled_out;
  for (auto& [s2, c2] : out.t) scaled_out.add(s2, c2 * t.prefactor);
  scaled_out.prune_energy(target_lo, target_hi);
  return scaled_out;
}

/// Vacuum expectation of a product of generating-operator factors, given
/// left to right. Intermediate energies are bounded by the declared ladder
/// caps of the remaining factors.
template <class C>
Series<C> b_correlator(const std::vector<BFactor<C>>& factors, const VarTablePtr& vt) {
  using S = Series<C>;
  size_t n = factors.size();
  // energy allowed after application step j (which applies factors[n-1-j]):
  // bounded by the lowering capacity of the factors still to the left and by
  // the raising capacity of the factors already applied
  std::vector<long> cap_after(n, 0);
  long raised = 0;
  for (size_t j = 0; j < n; ++j) {
    long lower = 0;
    for (size_t i = 0; i + j + 1 < n; ++i) lower += 2 * factors[i].jmax - 1;
    raised += factors[n - 1 - j].raise_cap(vt);
    cap_after[j] = std::min(lower, raised);
  }
  FockVector<S> v = FockVector<S>::vacuum(S::constant(vt, C(Rat(1))));
  for (size_t j = 0; j < n; ++j) {
    const BFactor<C>& f = factors[n - 1 - j];
    long emax = std::max(v.max_energy(), cap_after[j]);
    auto tables = hodge_detail::prepare_tables(f, vt, emax);
    v = apply_b_factor(f, tables, v, 0, cap_after[j]);
  }
  return v.vacuum_coeff();
}

/// Matrix of one factor on an explicit window (targets capped at emax_out).
template <class C>
FockOp<Series<C>> b_factor_matrix(const BFactor<C>& f, const VarTablePtr& vt,
                                  const std::vector<FockState>& window, long emax_out) {
  auto tables = hodge_detail::prepare_tables(f, vt, emax_out + 2);
  FockOp<Series<C>> op;
  op.band_lo = -(2 * f.jmax - 1);
  op.band_hi = emax_out;
  for (auto& s : window) {
    FockVector<Series<C>> b;
    b.add(s, Series<C>::constant(vt, C(Rat(1))));
    op.col[s] = apply_b_factor(f, tables, b, 0, emax_out);
  }
  return op;
}

/// Disconnected generating series of double Hodge integrals at exact rational
/// arguments, as a Laurent series in one u-variable of the given table.
Series<Rat> double_hodge_series(const std::vector<Rat>& args, int u_order);

/// Table of psi/double-Hodge-class integrals, filled by polynomial
/// interpolation of the single spin Hurwitz numbers over odd grids; entries
/// are symmetric in the exponents.
class HodgeTable {
 public:
  /// integral of Lambda(2) Lambda(-1) psi^a over the (g, n) moduli space;
  /// throws outside the stable range.
  Rat integral(long g, const std::vector<long>& exponents);

 private:
  std::map<std::pair<long, std::vector<long>>, Rat> cache_;
  std::mutex mutex_;
  std::map<std::pair<long, long>, bool> filled_;
};

/// The interpolated polynomial values for one (g, n): map from exponent
/// tuples to integrals, oversampled one node beyond the degree for a
/// consistency check.
std::map<std::vector<long>, Rat> extract_hodge_integrals(long g, long n);

}  // namespace spinfock
