#include "spinfock/partitions.hpp"

#include <algorithm>
#include <stdexcept>

namespace spinfock {

Partition::Partition(std::vector<long> parts) : parts_(std::move(parts)) {
  for (long p : parts_)
    if (p <= 0) throw std::invalid_argument("Partition: parts must be positive");
  std::sort(parts_.begin(), parts_.end(), std::greater<long>());
}

long Partition::size() const {
  long s = 0;
  for (long p : parts_) s += p;
  return s;
}

long Partition::mult(long k) const {
  long m = 0;
  for (long p : parts_) m += (p == k);
  return m;
}

bool Partition::is_odd() const {
  for (long p : parts_)
    if (p % 2 == 0) return false;
  return true;
}

bool Partition::is_strict() const {
  for (size_t i = 1; i < parts_.size(); ++i)
    if (parts_[i] == parts_[i - 1]) return false;
  return true;
}

bool operator<(const Partition& a, const Partition& b) {
  // reverse-lexicographic: larger leading parts come first
  return std::lexicographical_compare(a.parts_.begin(), a.parts_.end(), b.parts_.begin(), b.parts_.end(),
                                      std::greater<long>());
}

std::string Partition::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
  os << ")";
  return os.str();
}

namespace {

void enumerate_rec(long remaining, long max_part, PartitionClass cls, std::vector<long>& stack,
                   std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(stack);
    return;
  }
  for (long p = std::min(remaining, max_part); p >= 1; --p) {
    if (cls == PartitionClass::Odd && p % 2 == 0) continue;
    stack.push_back(p);
    long next_max = (cls == PartitionClass::Strict) ? p - 1 : p;
    enumerate_rec(remaining - p, next_max, cls, stack, out);
    stack.pop_back();
  }
}

}  // namespace

std::vector<Partition> enumerate_partitions(long d, PartitionClass cls) {
  if (d < 0) throw std::invalid_argument("enumerate_partitions: negative size");
  std::vector<Partition> out;
  std::vector<long> stack;
  enumerate_rec(d, d, cls, stack, out);
  return out;
}

Rat aut_order(const Partition& mu) {
  Rat a(1);
  long run = 1;
  const auto& p = mu.parts();
  for (size_t i = 1; i <= p.size(); ++i) {
    if (i < p.size() && p[i] == p[i - 1]) {
      ++run;
    } else {
      a *= factorial(run);
      run = 1;
    }
  }
  return a;
}

Rat z_aut(const Partition& mu) {
  Rat z = aut_order(mu);
  for (long p : mu.parts()) z *= Rat(p);
  return z;
}

int partition_parity(const Partition& lambda) {
  if (!lambda.is_strict()) throw std::invalid_argument("partition_parity: partition is not strict");
  return static_cast<int>(lambda.length() % 2);
}

Rat power_sum(const Partition& lambda, long r) {
  Rat s(0);
  for (long p : lambda.parts()) s += pow(Rat(p), r);
  return s;
}

std::optional<std::pair<Partition, Rat>> pad_to_degree(const Partition& mu, long d) {
  long sz = mu.size();
  if (sz > d) return std::nullopt;
  std::vector<long> parts = mu.parts();
  for (long i = 0; i < d - sz; ++i) parts.push_back(1);
  Partition padded(std::move(parts));
  return std::make_pair(padded, binomial(padded.mult(1), mu.mult(1)));
}

}  // namespace spinfock
