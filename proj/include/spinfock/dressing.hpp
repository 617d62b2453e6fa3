#pragma once

#include <map>
#include <string>
#include <vector>

#include "spinfock/rational.hpp"

namespace spinfock {

/// Banded operator on formal monomials x^n, n in a bounded window, with
/// exact u-polynomial entries. Column validity is tracked explicitly: reading
/// or composing through a column outside the valid range is an error, never a
/// silent edge effect.
class LadderOp {
 public:
  LadderOp(int nlo, int nhi, int ucap);

  static LadderOp zero(int nlo, int nhi, int ucap) { return LadderOp(nlo, nhi, ucap); }
  static LadderOp identity(int nlo, int nhi, int ucap);
  static LadderOp shift(int nlo, int nhi, int ucap, int step);            // x^n -> x^{n+step}
  static LadderOp degree(int nlo, int nhi, int ucap);                     // x^n -> n x^n
  /// exp(c / S) = sum_j c^j S^{-j} / j!  (strictly lowering; finite on the window)
  static LadderOp exp_lowering(int nlo, int nhi, int ucap, const Rat& c);
  /// diagonal exp(c u n^3), truncated in u
  static LadderOp exp_u_cubed(int nlo, int nhi, int ucap, const Rat& c);

  int nlo() const { return nlo_; }
  int nhi() const { return nhi_; }
  int ucap() const { return ucap_; }
  int raise_budget() const { return up_; }

  /// Entry <x^m | O | x^n> as a u-polynomial. Exact iff the storage covers
  /// [min(m,n) - U, max(m,n) + U] for the accumulated raising capacity U:
  /// any contribution path must stay inside that strip, so dropped
  /// below-floor components can never return. Reads outside throw.
  std::vector<Rat> entry(int m, int n) const;
  void set_entry(int u, int n, int m, const Rat& c);

  LadderOp compose(const LadderOp& other) const;  // this after other
  LadderOp operator+(const LadderOp& o) const;
  LadderOp operator-(const LadderOp& o) const;
  LadderOp scaled(const Rat& c) const;
  /// Multiplication by c * u^k (entries shift in the u-grading).
  LadderOp mul_u(const Rat& c, int k) const;
  LadderOp anticommutator(const LadderOp& o) const { return compose(o) + o.compose(*this); }
  LadderOp commutator(const LadderOp& o) const { return compose(o) - o.compose(*this); }
  /// d/du: slice k of the result is (k+1) times slice k+1.
  LadderOp u_derivative() const;
  /// u-adic inverse; the u^0 slice must be the identity on the valid range.
  LadderOp inverse_unitriangular() const;
  LadderOp pow(int k) const;

  /// Exact equality of all entries with |m|,|n| <= ncheck up to u-order ucheck;
  /// throws when the requested columns are not valid on either side.
  bool equal_within(const LadderOp& o, int ncheck, int ucheck) const;
  bool is_zero_within(int ncheck, int ucheck) const;

  /// u^0 slice equals the identity within the window.
  bool is_unitriangular_within(int ncheck) const;

 private:
  int nlo_, nhi_, ucap_;
  int up_ = 0;  // accumulated raising capacity of the composition chain
  // slices_[u][n - nlo_]: map output-degree -> coefficient
  std::vector<std::vector<std::map<int, Rat>>> slices_;

  friend LadderOp solve_dressing(const LadderOp& e, const Rat& t);
};

/// The ladder generators at a rational parameter t != 0: X, E, D = S^{-1}+H,
/// and the deformed D~ = S^{-1}+X, all truncated at the given u-order.
struct LadderGenerators {
  LadderOp S, Sinv, H, X, E, D, Dt;
};
LadderGenerators build_generators(const Rat& t, int nlo, int nhi, int ucap);

/// The unique unitriangular-in-u solution of dW/du = (1/t) W E with W|_0 = 1.
LadderOp solve_dressing(const LadderOp& e, const Rat& t);

struct DressingCheck {
  std::string name;
  bool pass;
  std::string detail;
};
/// Full verification battery at one rational parameter value.
std::vector<DressingCheck> verify_dressing(const Rat& t, int ucap, int ncheck);

}  // namespace spinfock
