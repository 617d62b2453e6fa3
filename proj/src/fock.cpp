#include "spinfock/fock.hpp"

#include <mutex>

#include "spinfock/partitions.hpp"

namespace spinfock {

namespace {

void window_rec(long emax, int max_part, std::vector<int>& stack, std::vector<FockState>& out) {
  // stack holds a strictly decreasing word of positive parts; emit with and
  // without a trailing zero mode
  out.push_back(FockState{stack});
  {
    FockState z{stack};
    z.parts.push_back(0);
    out.push_back(std::move(z));
  }
  long used = 0;
  for (int p : stack) used += p;
  for (int p = std::min<long>(max_part, emax - used); p >= 1; --p) {
    stack.push_back(p);
    window_rec(emax, p - 1, stack, out);
    stack.pop_back();
  }
}

}  // namespace

std::vector<FockState> fock_window(long emax) {
  std::vector<FockState> out;
  std::vector<int> stack;
  window_rec(emax, static_cast<int>(emax), stack, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::map<FockState, Rat> covacuum_exp_alpha1(long emax) {
  std::map<FockState, Rat> c;
  c[fock_vacuum()] = Rat(1);
  std::vector<std::vector<FockState>> by_energy(static_cast<size_t>(emax) + 1);
  for (auto& s : fock_window(emax)) by_energy[static_cast<size_t>(s.energy())].push_back(s);
  for (long e = 1; e <= emax; ++e) {
    for (auto& t : by_energy[static_cast<size_t>(e)]) {
      // <0| alpha_1^e / e! |t> = (1/e) sum_s <0| alpha_1^{e-1}/(e-1)! |s> <s-coeff of alpha_1|t>>
      FockVector<Rat> down = apply_alpha(1, FockVector<Rat>{{{t, Rat(1)}}});
      Rat acc(0);
      for (auto& [s, a] : down.t) {
        auto it = c.find(s);
        if (it != c.end()) acc += it->second * a;
      }
      if (!acc.is_zero()) c[t] = acc / Rat(e);
    }
  }
  return c;
}

namespace {

std::mutex sergeev_mutex;
std::map<std::pair<std::vector<long>, std::vector<long>>, Rat> sergeev_cache;

}  // namespace

Rat sergeev_character(const std::vector<long>& lambda, const std::vector<long>& mu) {
  {
    std::lock_guard<std::mutex> lock(sergeev_mutex);
    auto it = sergeev_cache.find({lambda, mu});
    if (it != sergeev_cache.end()) return it->second;
  }
  long szl = 0, szm = 0;
  for (long p : lambda) szl += p;
  for (long p : mu) szm += p;
  if (szl != szm) throw std::invalid_argument("sergeev_character: size mismatch");
  for (long p : mu)
    if (p % 2 == 0) throw std::invalid_argument("sergeev_character: mu must be odd");
  for (size_t i = 1; i < lambda.size(); ++i)
    if (lambda[i] >= lambda[i - 1]) throw std::invalid_argument("sergeev_character: lambda must be strict");

  FockVector<Rat> v = FockVector<Rat>::vacuum();
  for (size_t i = mu.size(); i-- > 0;) v = apply_alpha(static_cast<int>(-mu[i]), v);

  // the word for |lambda>: append a zero mode when the length is odd
  FockState s;
  for (long p : lambda) s.parts.push_back(static_cast<int>(p));
  if (lambda.size() % 2 == 1) s.parts.push_back(0);

  Rat zeta = v.coeff(s) * pow2(static_cast<long>(mu.size()));
  std::lock_guard<std::mutex> lock(sergeev_mutex);
  sergeev_cache.emplace(std::make_pair(lambda, mu), zeta);
  return zeta;
}

}  // namespace spinfock
