#pragma once

#include <vector>

#include "spinfock/partitions.hpp"
#include "spinfock/rational.hpp"

namespace spinfock {

/// Coefficient of the odd partition mu in the k-th completed cycle,
/// normalized so that the coefficient of (k) itself is 1. Vanishes for even k
/// and for |mu| >= k unless mu = (k).
Rat completed_cycle_kappa(long k, const Partition& mu);

/// Weight of mu when a completed cycle is inserted into profile-based counts:
/// 2^{-(k-1)/2} * kappa. This is the normalization under which the
/// multilinear profile expansion agrees with the operator evaluations; the
/// empty partition's term corresponds exactly to the degree-zero correction.
Rat completed_cycle_weight(long k, const Partition& mu);

struct HurwitzInfo {
  bool feasible = true;
  long b = -1;      // number of completed-cycle insertions
  long genus = -1;  // echo of the request
};

/// Single spin Hurwitz numbers with (r+1)-completed cycles: profile mu (odd),
/// genus g, r positive even. Disconnected by default; connected via the
/// component sieve. Infeasible ramification data yields 0 with a flag.
Rat single_hurwitz(long g, long r, const Partition& mu, bool connected, HurwitzInfo* info = nullptr);

/// Disconnected mixed completed-cycle numbers of degree d with insertions
/// cbar_{2k+1} for each k in ks. include_degree_zero switches the corrected
/// diagonal insertion on.
Rat mixed_hurwitz(long d, const std::vector<long>& ks, bool include_degree_zero = false);

/// Disconnected n-point numbers for explicit full profiles (each odd, of size
/// exactly d), evaluated by the character sum over strict partitions.
Rat profile_hurwitz_disconnected(long d, const std::vector<Partition>& profiles);

/// Connected counterpart (component sieve over simultaneous profile splits).
Rat profile_hurwitz_connected(long d, const std::vector<Partition>& profiles);

/// Character-sum ingredients, exposed for cross-checks: the squared vacuum
/// weight of a strict partition and the normalized central character of an
/// odd profile nu with |nu| = |lambda|.
Rat character_weight_sq(const Partition& lambda);
Rat character_ratio(const Partition& lambda, const Partition& nu);

/// [z^m] of qoppa(z)/sigma(z) (Laurent, m >= -1).
Rat degree_zero_insertion_coeff(long m);

}  // namespace spinfock
