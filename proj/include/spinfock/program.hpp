#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "spinfock/fock.hpp"
#include "spinfock/series.hpp"

namespace spinfock {

constexpr long kEnergyInf = std::numeric_limits<long>::max() / 4;

struct EInterval {
  long lo = 0, hi = 0;
};

template <class C>
struct series_traits {
  static constexpr bool is_series = false;
};
template <class X>
struct series_traits<Series<X>> {
  static constexpr bool is_series = true;
  using inner = X;
};

inline Rat exp_scalar(const Rat& x) {
  if (!x.is_zero()) throw std::domain_error("exp of a nonzero exact scalar is not representable");
  return Rat(1);
}
template <class X>
Series<X> exp_scalar(const Series<X>& s) {
  return s.exp();
}
inline HyperPoly exp_scalar(const HyperPoly&) {
  throw std::domain_error("exp of a hyperbolic polynomial is not supported");
}

/// One primitive of an operator word. Every primitive declares its exact
/// energy-shift support; exponentials of raising modes are only admitted when
/// a later projector or energy-graded insertion bounds the window.
template <class C>
struct Prim {
  enum class Kind { Phi, Quad, Alpha, CutJoin, ExpAlpha, ExpCutJoin, EHyper, ESeries, Mat, Projector, PowH, Scale };
  Kind kind;
  int a = 0, b = 0;  // mode indices: Phi k / Quad (j,k) / Alpha m / CutJoin r1 / E m / Projector d
  bool corrected = false;
  int zvar = -1;
  C coeff{};
  Expo powh{};     // PowH: exponent added per unit of energy
  long clamp = -1; // PowH: maximal retained energy
  std::shared_ptr<const FockOp<C>> mat;

  EInterval shift() const {
    using K = Kind;
    switch (kind) {
      case K::Phi: return {a, a};
      case K::Quad: return {a - b, a - b};
      case K::Alpha: return {-a, -a};
      case K::CutJoin: return {0, 0};
      case K::ExpAlpha: return a > 0 ? EInterval{-kEnergyInf, 0} : EInterval{0, kEnergyInf};
      case K::ExpCutJoin: return {0, 0};
      case K::EHyper: return {-a, -a};
      case K::ESeries: return {-a, -a};
      case K::Mat: return {mat->band_lo, mat->band_hi};
      case K::Projector: return {0, 0};
      case K::PowH: return {0, 0};
      case K::Scale: return {0, 0};
    }
    return {0, 0};
  }
  bool is_diag_clamp() const { return kind == Kind::Projector || (kind == Kind::PowH && clamp >= 0); }
  EInterval clamp_range() const {
    if (kind == Kind::Projector) return {a, a};
    return {0, clamp};
  }
};

/// A right-to-left word of primitives; stored in written order, so the last
/// element acts first on the vacuum.
template <class C>
class OperatorProgram {
 public:
  OperatorProgram& phi(int k) { return push({Prim<C>::Kind::Phi, k}); }
  OperatorProgram& quad(int j, int k) { return push({Prim<C>::Kind::Quad, j, k}); }
  OperatorProgram& alpha(int m) { return push({Prim<C>::Kind::Alpha, m}); }
  OperatorProgram& cut_join(int r1) { return push({Prim<C>::Kind::CutJoin, r1}); }
  OperatorProgram& exp_alpha(int m, C c) {
    Prim<C> p{Prim<C>::Kind::ExpAlpha, m};
    p.coeff = std::move(c);
    return push(std::move(p));
  }
  OperatorProgram& exp_cut_join(int r1, C c) {
    Prim<C> p{Prim<C>::Kind::ExpCutJoin, r1};
    p.coeff = std::move(c);
    return push(std::move(p));
  }
  OperatorProgram& e_hyper(int m) { return push({Prim<C>::Kind::EHyper, m}); }
  OperatorProgram& e_series(int m, bool corrected, int zvar) {
    Prim<C> p{Prim<C>::Kind::ESeries, m};
    p.corrected = corrected;
    p.zvar = zvar;
    return push(std::move(p));
  }
  OperatorProgram& mat(std::shared_ptr<const FockOp<C>> op) {
    Prim<C> p{Prim<C>::Kind::Mat};
    p.mat = std::move(op);
    return push(std::move(p));
  }
  OperatorProgram& projector(int d) { return push({Prim<C>::Kind::Projector, d}); }
  OperatorProgram& pow_h(Expo per_energy, long max_energy) {
    Prim<C> p{Prim<C>::Kind::PowH};
    p.powh = std::move(per_energy);
    p.clamp = max_energy;
    return push(std::move(p));
  }
  OperatorProgram& scale(C c) {
    Prim<C> p{Prim<C>::Kind::Scale};
    p.coeff = std::move(c);
    return push(std::move(p));
  }

  const std::vector<Prim<C>>& ops() const { return ops_; }

  /// Energy interval allowed after each application step, inferred from the
  /// covacuum demand and the declared shifts/clamps. Index i is the state
  /// after the i-th applied primitive (application order). Throws when a
  /// raising exponential is not bounded by any later clamp.
  std::vector<EInterval> infer_window() const {
    size_t n = ops_.size();
    std::vector<EInterval> after(n);
    EInterval demand{0, 0};  // demand on the final vector (covacuum)
    // application step j uses written op ops_[n-1-j]
    for (size_t j = n; j-- > 0;) {
      const Prim<C>& p = ops_[n - 1 - j];
      after[j] = demand;
      if (p.kind == Prim<C>::Kind::ExpAlpha && p.a < 0 && demand.hi >= kEnergyInf)
        throw std::domain_error("OperatorProgram: raising exponential with an unbounded energy window");
      EInterval before;
      if (p.is_diag_clamp()) {
        EInterval c = p.clamp_range();
        before = {std::max(demand.lo, c.lo), std::min(demand.hi, c.hi)};
      } else {
        EInterval s = p.shift();
        long lo = (s.hi >= kEnergyInf || demand.lo <= -kEnergyInf) ? 0 : demand.lo - s.hi;
        long hi = (s.lo <= -kEnergyInf || demand.hi >= kEnergyInf) ? kEnergyInf : demand.hi - s.lo;
        if (hi > kEnergyInf) hi = kEnergyInf;
        before = {std::max(lo, 0L), hi};
      }
      demand = before;
    }
    if (demand.lo > 0 || demand.hi < 0)
      throw std::domain_error("OperatorProgram: vacuum is outside the inferred window");
    return after;
  }

  /// Applies the program to the vacuum (with the given unit coefficient)
  /// and returns the full final vector.
  FockVector<C> run(C one) const {
    auto after = infer_window();
    FockVector<C> v = FockVector<C>::vacuum(std::move(one));
    size_t n = ops_.size();
    for (size_t j = 0; j < n; ++j) {
      const Prim<C>& p = ops_[n - 1 - j];
      v = apply_prim(p, v, after[j]);
      v.prune_energy(after[j].lo, std::min(after[j].hi, kEnergyInf));
    }
    return v;
  }

  /// Vacuum expectation value of the word.
  C vev(C one) const { return run(std::move(one)).vacuum_coeff(); }
  C vev() const { return vev(C(Rat(1))); }

 private:
  OperatorProgram& push(Prim<C> p) {
    ops_.push_back(std::move(p));
    return *this;
  }

  static FockVector<C> apply_prim(const Prim<C>& p, const FockVector<C>& v, EInterval window) {
    using K = typename Prim<C>::Kind;
    switch (p.kind) {
      case K::Phi: return apply_phi(p.a, v);
      case K::Quad: return apply_quad(p.a, p.b, v);
      case K::Alpha: return apply_alpha(p.a, v);
      case K::CutJoin: return apply_cut_join(p.a, v);
      case K::ExpAlpha: {
        // raising modes are truncated by the demanded window (monotone in
        // energy); lowering modes terminate on their own and must keep the
        // intermediate high-energy states
        FockVector<C> acc = v, w = v;
        long j = 0;
        while (!w.is_zero()) {
          ++j;
          w = apply_alpha(p.a, w).scaled(p.coeff).scale_rat(Rat(1, j));
          if (p.a < 0) w.prune_energy(0, window.hi);
          acc += w;
        }
        return acc;
      }
      case K::ExpCutJoin: {
        FockVector<C> r;
        for (auto& [s, c] : v.t) {
          Rat eig(0);
          for (int q : s.parts)
            if (q > 0) eig += pow(Rat(q), p.a);
          r.add(s, c * exp_scalar(scale_by_rat(p.coeff, eig)));
        }
        return r;
      }
      case K::EHyper:
        if constexpr (std::is_same_v<C, HyperPoly>) {
          return apply_e_hyper(p.a, v);
        } else {
          throw std::domain_error("EHyper primitive needs hyperbolic coefficients");
        }
      case K::ESeries:
        if constexpr (series_traits<C>::is_series) {
          return apply_e_series<typename series_traits<C>::inner>(p.a, p.corrected, p.zvar, v);
        } else {
          throw std::domain_error("ESeries primitive needs series coefficients");
        }
      case K::Mat: return p.mat->apply(v);
      case K::Projector: {
        FockVector<C> r = v;
        r.prune_energy(p.a, p.a);
        return r;
      }
      case K::PowH:
        if constexpr (series_traits<C>::is_series) {
          FockVector<C> r;
          for (auto& [s, c] : v.t) {
            long e = s.energy();
            if (p.clamp >= 0 && e > p.clamp) continue;
            Expo shift(p.powh.size(), 0);
            for (size_t i = 0; i < shift.size(); ++i) shift[i] = p.powh[i] * static_cast<int>(e);
            r.add(s, c.mul_monomial(shift, typename series_traits<C>::inner(Rat(1))));
          }
          return r;
        } else {
          throw std::domain_error("PowH primitive needs series coefficients");
        }
      case K::Scale: return v.scaled(p.coeff);
    }
    throw std::logic_error("unknown primitive");
  }

  std::vector<Prim<C>> ops_;
};

}  // namespace spinfock
