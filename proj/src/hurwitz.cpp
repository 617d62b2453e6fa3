#include "spinfock/hurwitz.hpp"

#include <map>
#include <mutex>

#include "spinfock/fock.hpp"
#include "spinfock/series.hpp"

namespace spinfock {

namespace {

/// S(z) = sinh(z/2)/(z/2) as a truncated even series.
Series<Rat> sseries(const VarTablePtr& vt, long scale_num = 1) {
  Series<Rat> s(vt);
  int cap = vt->hi[0];
  Rat sc(scale_num);
  for (int a = 0; a <= cap; a += 2) {
    // [z^a] sinh(z/2)/(z/2) = (1/2)^a / (a+1)!
    s.add_term({a}, pow(sc, a) * pow(Rat(1, 2), a) / factorial(a + 1));
  }
  return s;
}

std::mutex cov_mutex;
std::map<FockState, Rat> cov_cache;
long cov_emax = -1;

Rat covacuum(const FockState& s) {
  std::lock_guard<std::mutex> lock(cov_mutex);
  long e = s.energy();
  if (e > cov_emax) {
    cov_cache = covacuum_exp_alpha1(std::max(e, 2 * std::max(cov_emax, 8L)));
    cov_emax = std::max(e, 2 * std::max(cov_emax, 8L));
  }
  auto it = cov_cache.find(s);
  return it == cov_cache.end() ? Rat(0) : it->second;
}

FockVector<Rat> bosonic_profile_state(const Partition& mu) {
  FockVector<Rat> v = FockVector<Rat>::vacuum();
  for (long p : mu.parts()) v = apply_alpha(static_cast<int>(-p), v);
  return v;
}

/// Disconnected count with the profile mu over one point and b labeled
/// completed-cycle points, normalized as a plain cover count.
Rat labeled_disconnected(long r, const Partition& mu, long b) {
  long d = mu.size(), l = mu.length();
  FockVector<Rat> v = bosonic_profile_state(mu);
  Rat acc(0);
  for (auto& [s, c] : v.t) {
    Rat y(0);
    for (int p : s.parts)
      if (p > 0) y += pow(Rat(p), r + 1);
    y = y / (Rat(r + 1) * pow2(r / 2));
    acc += c * covacuum(s) * pow(y, b);
  }
  return pow2((l + d) / 2) / z_aut(mu) * acc;
}

using Multiset = std::vector<long>;  // sorted descending

Multiset to_multiset(const Partition& p) { return p.parts(); }
Partition to_partition(const Multiset& m) { return Partition(std::vector<long>(m.begin(), m.end())); }

void distinct_submultisets_rec(const std::vector<std::pair<long, long>>& groups, size_t i, Multiset& cur,
                               std::vector<Multiset>& out) {
  if (i == groups.size()) {
    Multiset sorted = cur;
    std::sort(sorted.begin(), sorted.end(), std::greater<long>());
    out.push_back(std::move(sorted));
    return;
  }
  auto [value, count] = groups[i];
  for (long take = 0; take <= count; ++take) {
    for (long t = 0; t < take; ++t) cur.push_back(value);
    distinct_submultisets_rec(groups, i + 1, cur, out);
    for (long t = 0; t < take; ++t) cur.pop_back();
  }
}

/// Distinct sub-multisets containing at least one copy of the largest part.
/// The component sieve weighs each by its anchor multiplicity, never by
/// selection counts (the profile parts are fiber points, not labels).
std::vector<Multiset> submultisets_with_anchor(const Multiset& m) {
  std::vector<std::pair<long, long>> groups;  // (value, count)
  for (long p : m) {
    if (!groups.empty() && groups.back().first == p)
      ++groups.back().second;
    else
      groups.emplace_back(p, 1);
  }
  long anchor = groups.front().first;
  --groups.front().second;  // one anchor copy is always taken
  std::vector<Multiset> out;
  Multiset cur{anchor};
  distinct_submultisets_rec(groups, groups.front().second == 0 ? 1 : 0, cur, out);
  return out;
}

long anchor_mult(const Multiset& m, long a) {
  long c = 0;
  for (long p : m) c += (p == a);
  return c;
}

Multiset multiset_difference(const Multiset& a, const Multiset& b) {
  Multiset out;
  size_t j = 0;
  for (long p : a) {
    if (j < b.size() && b[j] == p)
      ++j;
    else
      out.push_back(p);
  }
  return out;
}

std::mutex conn_mutex;
std::map<std::tuple<long, Multiset, long>, Rat> conn_cache;

Rat labeled_connected(long r, const Multiset& mu, long b);

Rat labeled_disconnected_ms(long r, const Multiset& mu, long b) {
  if (mu.empty()) return b == 0 ? Rat(1) : Rat(0);
  return labeled_disconnected(r, to_partition(mu), b);
}

Rat labeled_connected(long r, const Multiset& mu, long b) {
  if (mu.empty()) return Rat(0);
  {
    std::lock_guard<std::mutex> lock(conn_mutex);
    auto it = conn_cache.find({r, mu, b});
    if (it != conn_cache.end()) return it->second;
  }
  // pointing at one copy of the largest part a:
  // m_a(mu) D(mu,b) = sum_{sigma,j} m_a(sigma) binom(b,j) C(sigma,j) D(mu\sigma, b-j)
  long a = mu.front();
  Rat total = Rat(anchor_mult(mu, a)) * labeled_disconnected_ms(r, mu, b);
  for (auto& sigma : submultisets_with_anchor(mu)) {
    for (long j = 0; j <= b; ++j) {
      if (sigma.size() == mu.size() && j == b) continue;  // the full term is the target
      Rat rest = labeled_disconnected_ms(r, multiset_difference(mu, sigma), b - j);
      if (rest.is_zero()) continue;
      total -= Rat(anchor_mult(sigma, a)) * binomial(b, j) * labeled_connected(r, sigma, j) * rest;
    }
  }
  total /= Rat(anchor_mult(mu, a));
  std::lock_guard<std::mutex> lock(conn_mutex);
  conn_cache.emplace(std::make_tuple(r, mu, b), total);
  return total;
}

}  // namespace

Rat completed_cycle_kappa(long k, const Partition& mu) {
  if (k <= 0) throw std::invalid_argument("completed_cycle_kappa: k must be positive");
  if (!mu.is_odd()) throw std::invalid_argument("completed_cycle_kappa: mu must be odd");
  if (k % 2 == 0) return Rat(0);
  long idx = k + 1 - mu.size() - mu.length();
  if (idx < 0) return Rat(0);
  auto vt = make_vars({"z"}, {0}, {static_cast<int>(idx)});
  Series<Rat> f = sseries(vt, 2);  // S(2z)
  // S(z)^(|mu| - 2)
  f *= sseries(vt).pow_int(mu.size() - 2);
  for (long p : mu.parts()) f *= sseries(vt, p).scaled(Rat(2));
  Rat coeff = f.coeff({static_cast<int>(idx)});
  Rat pre = factorial(k - 1) / (Rat(2) * factorial(mu.size()));
  for (long p : mu.parts()) pre *= Rat(p);
  return pre * coeff;
}

Rat completed_cycle_weight(long k, const Partition& mu) {
  if (k % 2 == 0) return Rat(0);
  // the class-basis normalization: 2^{(|mu| - l(mu))/2} per class against
  // 2^{-(k-1)/2} per cycle index, so the top coefficient stays 1
  return completed_cycle_kappa(k, mu) * pow2((mu.size() - mu.length() - (k - 1)) / 2);
}

Rat single_hurwitz(long g, long r, const Partition& mu, bool connected, HurwitzInfo* info) {
  if (r <= 0 || r % 2 != 0) throw std::invalid_argument("single_hurwitz: r must be a positive even integer");
  if (!mu.is_odd()) throw std::invalid_argument("single_hurwitz: the profile must be odd");
  long rb = 2 * g - 2 + mu.length() + mu.size();
  HurwitzInfo local;
  local.genus = g;
  if (rb < 0 || rb % r != 0) {
    local.feasible = false;
    if (info) *info = local;
    return Rat(0);
  }
  long b = rb / r;
  local.b = b;
  if (info) *info = local;
  Rat labeled = connected ? labeled_connected(r, to_multiset(mu), b) : labeled_disconnected_ms(r, to_multiset(mu), b);
  return aut_order(mu) / factorial(b) * labeled;
}

Rat degree_zero_insertion_coeff(long m) {
  if (m < -1) return Rat(0);
  static std::mutex mtx;
  static std::vector<Rat> cache;  // cache[i] = [z^{i-1}]
  std::lock_guard<std::mutex> lock(mtx);
  if (static_cast<long>(cache.size()) < m + 2) cache = coth_quarter_coeffs(static_cast<int>(m) + 4);
  return cache[static_cast<size_t>(m + 1)];
}

Rat mixed_hurwitz(long d, const std::vector<long>& ks, bool include_degree_zero) {
  if (d < 0) throw std::invalid_argument("mixed_hurwitz: negative degree");
  FockVector<Rat> v = FockVector<Rat>::vacuum();
  for (long i = 1; i <= d; ++i) v = apply_alpha(-1, v).scaled(Rat(1, i));
  Rat acc(0);
  for (auto& [s, c] : v.t) {
    Rat term = c * covacuum(s);
    for (long k : ks) {
      Rat w = Rat(0);
      for (int p : s.parts)
        if (p > 0) w += pow(Rat(p), 2 * k + 1);
      w = w / (Rat(2 * k + 1) * pow2(k));
      if (include_degree_zero) w += factorial(2 * k) / pow2(k) * degree_zero_insertion_coeff(2 * k + 1);
      term *= w;
    }
    acc += term;
  }
  return pow2(d) * acc;
}

Rat character_weight_sq(const Partition& lambda) {
  long d = lambda.size();
  std::vector<long> ones(static_cast<size_t>(d), 1);
  Rat zeta1 = sergeev_character(lambda.parts(), ones);
  int p = partition_parity(lambda);
  Rat t = zeta1 / factorial(d);
  return pow2(-p - d) * t * t;
}

Rat character_ratio(const Partition& lambda, const Partition& nu) {
  long d = lambda.size();
  if (nu.size() != d) throw std::invalid_argument("character_ratio: size mismatch");
  std::vector<long> ones(static_cast<size_t>(d), 1);
  Rat zeta1 = sergeev_character(lambda.parts(), ones);
  if (zeta1.is_zero()) throw std::logic_error("character_ratio: vanishing principal character");
  Rat zn = sergeev_character(lambda.parts(), nu.parts());
  return pow2((d - nu.length()) / 2) * zn / z_aut(nu) * factorial(d) / zeta1;
}

Rat profile_hurwitz_disconnected(long d, const std::vector<Partition>& profiles) {
  for (auto& nu : profiles)
    if (!nu.is_odd() || nu.size() != d)
      throw std::invalid_argument("profile_hurwitz_disconnected: profiles must be odd of full size");
  Rat acc(0);
  for (auto& lambda : enumerate_partitions(d, PartitionClass::Strict)) {
    Rat term = character_weight_sq(lambda);
    for (auto& nu : profiles) term *= character_ratio(lambda, nu);
    acc += term;
  }
  return acc;
}

namespace {

void sized_submultisets_rec(const std::vector<std::pair<long, long>>& groups, size_t i, long remaining, Multiset& cur,
                            std::vector<Multiset>& out) {
  if (i == groups.size()) {
    if (remaining == 0) {
      Multiset sorted = cur;
      std::sort(sorted.begin(), sorted.end(), std::greater<long>());
      out.push_back(std::move(sorted));
    }
    return;
  }
  auto [value, count] = groups[i];
  for (long take = 0; take <= count && take * value <= remaining; ++take) {
    for (long t = 0; t < take; ++t) cur.push_back(value);
    sized_submultisets_rec(groups, i + 1, remaining - take * value, cur, out);
    for (long t = 0; t < take; ++t) cur.pop_back();
  }
}

std::vector<Multiset> submultisets_of_size(const Multiset& m, long size, bool anchor) {
  std::vector<std::pair<long, long>> groups;
  for (long p : m) {
    if (!groups.empty() && groups.back().first == p)
      ++groups.back().second;
    else
      groups.emplace_back(p, 1);
  }
  std::vector<Multiset> out;
  Multiset cur;
  if (anchor) {
    if (m.empty()) return out;
    long a = groups.front().first;
    --groups.front().second;
    cur.push_back(a);
    if (size < a) return out;
    sized_submultisets_rec(groups, groups.front().second == 0 ? 1 : 0, size - a, cur, out);
  } else {
    sized_submultisets_rec(groups, 0, size, cur, out);
  }
  return out;
}

std::mutex pconn_mutex;
std::map<std::pair<long, std::vector<Multiset>>, Rat> pconn_cache;

Rat profile_connected_rec(long d, const std::vector<Multiset>& profiles);

Rat profile_disconnected_ms(long d, const std::vector<Multiset>& profiles) {
  if (d == 0) return Rat(1);
  std::vector<Partition> ps;
  for (auto& m : profiles) ps.push_back(to_partition(m));
  return profile_hurwitz_disconnected(d, ps);
}

Rat profile_connected_rec(long d, const std::vector<Multiset>& profiles) {
  if (d == 0) return Rat(0);
  {
    std::lock_guard<std::mutex> lock(pconn_mutex);
    auto it = pconn_cache.find({d, profiles});
    if (it != pconn_cache.end()) return it->second;
  }
  // pointing at one copy of the largest part a of the first profile:
  // m_a(nu1) D = sum over sub-profile tuples of m_a(sigma1) C(sigma) D(rest)
  long a = profiles[0].front();
  Rat total = Rat(anchor_mult(profiles[0], a)) * profile_disconnected_ms(d, profiles);
  for (long e = 1; e < d; ++e) {
    auto first = submultisets_of_size(profiles[0], e, true);
    for (auto& s0 : first) {
      std::vector<std::vector<Multiset>> rest;
      bool empty_choice = false;
      for (size_t i = 1; i < profiles.size(); ++i) {
        rest.push_back(submultisets_of_size(profiles[i], e, false));
        if (rest.back().empty()) empty_choice = true;
      }
      if (empty_choice) continue;
      std::vector<size_t> idx(rest.size(), 0);
      while (true) {
        std::vector<Multiset> sigma{s0}, remain{multiset_difference(profiles[0], s0)};
        for (size_t i = 0; i < rest.size(); ++i) {
          sigma.push_back(rest[i][idx[i]]);
          remain.push_back(multiset_difference(profiles[i + 1], rest[i][idx[i]]));
        }
        total -= Rat(anchor_mult(s0, a)) * profile_connected_rec(e, sigma) * profile_disconnected_ms(d - e, remain);
        size_t i = 0;
        while (i < rest.size()) {
          if (++idx[i] < rest[i].size()) break;
          idx[i] = 0;
          ++i;
        }
        if (rest.empty() || i == rest.size()) break;
      }
    }
  }
  total /= Rat(anchor_mult(profiles[0], a));
  std::lock_guard<std::mutex> lock(pconn_mutex);
  pconn_cache.emplace(std::make_pair(d, profiles), total);
  return total;
}

}  // namespace

Rat profile_hurwitz_connected(long d, const std::vector<Partition>& profiles) {
  if (profiles.empty()) {
    // log of the degree-generating series of the unramified counts 1/d!
    if (d <= 0) return Rat(0);
    return d == 1 ? Rat(1) : Rat(0);
  }
  std::vector<Multiset> ms;
  for (auto& p : profiles) {
    if (!p.is_odd() || p.size() != d)
      throw std::invalid_argument("profile_hurwitz_connected: profiles must be odd of full size");
    ms.push_back(to_multiset(p));
  }
  return profile_connected_rec(d, ms);
}

}  // namespace spinfock
