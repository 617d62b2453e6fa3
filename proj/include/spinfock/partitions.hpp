#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "spinfock/rational.hpp"

namespace spinfock {

/// Integer partition: weakly decreasing positive parts. The empty partition
/// is valid and counts as both odd and strict.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<long> parts);

  const std::vector<long>& parts() const { return parts_; }
  long size() const;              // |mu|
  long length() const { return static_cast<long>(parts_.size()); }
  long mult(long k) const;        // m_k(mu)
  bool empty() const { return parts_.empty(); }
  bool is_odd() const;            // all parts odd
  bool is_strict() const;         // all parts distinct

  friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
  friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }
  friend bool operator<(const Partition& a, const Partition& b);  // reverse-lexicographic

  std::string str() const;

 private:
  std::vector<long> parts_;
};

enum class PartitionClass { All, Odd, Strict };

/// All partitions of d in the fixed enumeration order: reverse-lexicographic,
/// i.e. (d) first and (1,...,1) last.
std::vector<Partition> enumerate_partitions(long d, PartitionClass cls = PartitionClass::All);

/// |Aut(mu)| = prod over part values of m_k(mu)!.
Rat aut_order(const Partition& mu);

/// z_mu = |Aut(mu)| * prod mu_i: order of the centralizer of a permutation of
/// cycle type mu.
Rat z_aut(const Partition& mu);

/// Parity l(lambda) mod 2 of a strict partition; throws on non-strict input.
int partition_parity(const Partition& lambda);

/// p_r(lambda) = sum lambda_i^r.
Rat power_sum(const Partition& lambda, long r);

/// Pads mu with 1's up to size d and returns the multiplicity factor
/// binom(m_1(padded), m_1(mu)). Nothing when |mu| > d (the padded count is 0).
std::optional<std::pair<Partition, Rat>> pad_to_degree(const Partition& mu, long d);

}  // namespace spinfock
