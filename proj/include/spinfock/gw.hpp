#pragma once

#include <string>
#include <vector>

#include "spinfock/hyperbolic.hpp"
#include "spinfock/ratfunc.hpp"
#include "spinfock/series.hpp"

namespace spinfock {

/// Sign and power-of-two bookkeeping between the geometric normalization and
/// the operator normalization, kept in one place.
inline Rat gw_sign_prefactor(long g, long d, long n, long m) {
  return Rat((g - 1 + d) % 2 == 0 ? 1 : -1) * pow2(3 * g - 3 + n + m + 2 * d);
}
/// Insertion weight on the cover side of the stationary correspondence.
inline Rat gwh_insertion_weight(long k) {
  return Rat(k % 2 == 0 ? 1 : -1) * factorial(k) / factorial(2 * k);
}
/// Stationary extraction weight k!/(-2)^k per point.
inline Rat stationary_weight(long k) { return factorial(k) / pow(Rat(-2), k); }

/// Disconnected stationary invariants of degree d with insertion exponents
/// ks; the degree-zero flag switches the corrected diagonal insertion on.
Rat stationary_disconnected(long d, const std::vector<long>& ks, bool include_degree_zero = false);

/// Connected stationary invariants (component sieve over labeled insertions
/// and degree splits, on the degree-zero-free family).
Rat stationary_connected(long d, const std::vector<long>& ks);

/// Closed product formulas for degrees one to three.
Rat closed_formula(long d, const std::vector<long>& ks);

/// One-point generating pair: the odd series from the diagonal insertion and
/// the even partner from the energy-raising index.
struct OnePointPair {
  HyperPoly u_series, v_series;
};
OnePointPair one_point_series(long d);

/// The stated matrix recursion for the one-point series, evaluated as
/// written, against the direct evaluation. Mismatches are reported exactly,
/// never patched.
struct RecursionRow {
  long d;
  HyperPoly direct, recursion;
  bool match;
};
std::vector<RecursionRow> one_point_recursion_table(long d_max);

/// Verifies the stationary correspondence between descendent insertions and
/// completed-cycle covers at one (d, ks); exact equality of both pipelines.
struct GwhResult {
  Rat gw_side, hurwitz_side;
  bool match;
};
GwhResult gwh_check(long d, const std::vector<long>& ks);

/// Equivariant request: degree, points over zero and infinity, parameter
/// value, and the retained orders. z_order applies to every point variable.
struct GwRequest {
  long d = 0;
  int n = 0;
  int m = 0;
  Rat t = Rat(1);
  int z_order = 4;
  int u_order = 3;
};

/// Variable table of a route result: u first (Laurent), then z_1..z_n,
/// then w_1..w_m. All routes use it so the outputs compare directly.
VarTablePtr gw_route_vars(const GwRequest& req);

/// The fixed-point sum over odd profiles of products of two correlators.
Series<Rat> localization_series(const GwRequest& req);
/// The quadratic form with the conjugated creation word per profile.
Series<Rat> quadratic_series(const GwRequest& req);
/// The single vacuum expectation with the energy-graded insertion; returns
/// the q-graded series (q is appended as the last variable).
Series<Rat> single_series(const GwRequest& req, int q_order);
/// The q^d coefficient of the single route, on the route table.
Series<Rat> single_series_degree(const GwRequest& req);

/// Localization with the equivariant parameter kept formal; coefficients are
/// exact rational functions of the parameter.
Series<RatFunc> localization_series_param(const GwRequest& req);

/// The divisor relation: [z0] G_{d}(z0, z, w) = 2 (1/24 + d + t sum z_i) G_d.
struct DivisorReport {
  bool match;
  std::string detail;
};
DivisorReport check_divisor(const GwRequest& req);

/// The string relation for one identity-class insertion, and its iterated
/// second order, checked coefficient-wise at the retained orders.
struct StringReport {
  bool match_first, match_second;
};
StringReport check_string(const GwRequest& req);

}  // namespace spinfock
