#include "spinfock/hodge.hpp"

#include <algorithm>

#include "spinfock/hurwitz.hpp"

namespace spinfock {

Series<Rat> double_hodge_series(const std::vector<Rat>& args, int u_order) {
  size_t n = args.size();
  for (auto& a : args)
    if (a.is_zero()) throw std::domain_error("double_hodge_series: zero argument");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if ((args[i] + args[j]).is_zero()) throw std::domain_error("double_hodge_series: antidiagonal argument pair");

  long neg = 0;
  for (auto& a : args) {
    if (a.is_integer() && a.sign() > 0 && a.num() % 2 != 0)
      neg += (a.to_long() - 1) / 2;  // the ladder floor of an odd integer argument
    else
      neg += 2;
  }
  // internal headroom: coefficients above the certified order would be
  // corrupted by the Laurent tails of the other factors, so compute deeper
  // and drop the uncertified top afterwards
  int depth = static_cast<int>(neg) + static_cast<int>(n);
  int hi_internal = u_order + static_cast<int>(n) + depth;
  int jmax = hi_internal + 2;
  auto vt = make_vars({"u"}, {-depth - 1}, {hi_internal});

  std::vector<BFactor<Rat>> factors;
  for (auto& a : args) {
    BFactor<Rat> f;
    f.zscale = a;
    f.zvar = -1;
    f.uscale = a;
    f.uexp = {1};
    f.jmax = jmax;
    factors.push_back(std::move(f));
  }
  Series<Rat> corr = b_correlator(factors, vt);
  // <prod B(a_i, u a_i)> = u^n * (disconnected series)
  Expo shift{static_cast<int>(-static_cast<long>(n))};
  return corr.mul_monomial(shift, Rat(1)).drop_above(0, u_order);
}

namespace {

/// Polynomial part of the single spin Hurwitz numbers:
/// h^{+,2}_{g;mu} / (2^{g-1+n} prod mu^{mu'}/mu'!).
Rat elsv_poly_value(long g, const std::vector<long>& mu) {
  Partition p(std::vector<long>(mu.begin(), mu.end()));
  long n = p.length();
  Rat h = single_hurwitz(g, 2, p, true);
  Rat pre = pow2(g - 1 + n);
  for (long m : mu) {
    long half = (m - 1) / 2;
    pre *= pow(Rat(m), half) / factorial(half);
  }
  return h / pre;
}

/// Newton interpolation along one row of grid values; replaces values by
/// monomial coefficients.
void row_to_coefficients(std::vector<Rat>& row, const std::vector<Rat>& nodes) {
  long deg = static_cast<long>(row.size()) - 1;
  std::vector<Rat> dd = row;
  for (long j = 1; j <= deg; ++j)
    for (long i = deg; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - j]);
  std::vector<Rat> coeff(dd.size(), Rat(0));
  for (long i = deg; i >= 0; --i) {
    for (long a = deg; a >= 1; --a) coeff[a] = coeff[a - 1] - nodes[i] * coeff[a];
    coeff[0] = dd[i] - nodes[i] * coeff[0];
    if (i == 0) break;
  }
  row = coeff;
}

}  // namespace

std::map<std::vector<long>, Rat> extract_hodge_integrals(long g, long n) {
  if (n < 1 || (g == 0 && n < 3)) throw std::invalid_argument("extract_hodge_integrals: unstable range");
  long deg = 3 * g - 3 + n;  // per-variable degree bound
  std::vector<Rat> nodes;
  std::vector<long> node_vals;
  for (long i = 0; i <= deg; ++i) {
    node_vals.push_back(2 * i + 1);
    nodes.push_back(Rat(2 * i + 1));
  }

  std::map<std::vector<long>, Rat> value_cache;
  auto value_at = [&](const std::vector<long>& mu) {
    std::vector<long> key = mu;
    std::sort(key.begin(), key.end(), std::greater<long>());
    auto it = value_cache.find(key);
    if (it != value_cache.end()) return it->second;
    Rat v = elsv_poly_value(g, key);
    value_cache.emplace(key, v);
    return v;
  };

  size_t npoints = static_cast<size_t>(deg) + 1;
  size_t total = 1;
  for (long i = 0; i < n; ++i) total *= npoints;
  std::vector<Rat> grid(total);
  for (size_t idx = 0; idx < total; ++idx) {
    size_t rest = idx;
    std::vector<long> mu(n);
    for (long v = n - 1; v >= 0; --v) {
      mu[static_cast<size_t>(v)] = node_vals[rest % npoints];
      rest /= npoints;
    }
    grid[idx] = value_at(mu);
  }

  // interpolate variable by variable
  for (long v = n - 1; v >= 0; --v) {
    size_t stride = 1;
    for (long w = v + 1; w < n; ++w) stride *= npoints;
    for (size_t idx = 0; idx < total; ++idx) {
      if ((idx / stride) % npoints != 0) continue;
      std::vector<Rat> row(npoints);
      for (size_t a = 0; a < npoints; ++a) row[a] = grid[idx + a * stride];
      row_to_coefficients(row, nodes);
      for (size_t a = 0; a < npoints; ++a) grid[idx + a * stride] = row[a];
    }
  }

  // consistency: the polynomial must reproduce a held-out node
  {
    std::vector<long> probe(static_cast<size_t>(n), 2 * deg + 3);
    Rat direct = value_at(probe);
    Rat from_poly(0);
    for (size_t idx = 0; idx < total; ++idx) {
      if (grid[idx].is_zero()) continue;
      size_t rest = idx;
      Rat term = grid[idx];
      for (long v = n - 1; v >= 0; --v) {
        long expo = static_cast<long>(rest % npoints);
        rest /= npoints;
        term *= pow(Rat(probe[static_cast<size_t>(v)]), expo);
      }
      from_poly += term;
    }
    if (direct != from_poly)
      throw std::logic_error("extract_hodge_integrals: oversampled node mismatch (upstream inconsistency)");
  }

  std::map<std::vector<long>, Rat> out;
  for (size_t idx = 0; idx < total; ++idx) {
    if (grid[idx].is_zero()) continue;
    size_t rest = idx;
    std::vector<long> expo(static_cast<size_t>(n));
    for (long v = n - 1; v >= 0; --v) {
      expo[static_cast<size_t>(v)] = static_cast<long>(rest % npoints);
      rest /= npoints;
    }
    long tot = 0;
    for (long e : expo) tot += e;
    if (tot > deg) throw std::logic_error("extract_hodge_integrals: coefficient beyond the dimension bound");
    out.emplace(std::move(expo), grid[idx]);
  }
  return out;
}

Rat HodgeTable::integral(long g, const std::vector<long>& exponents) {
  long n = static_cast<long>(exponents.size());
  if (n < 1 || (g == 0 && n < 3)) throw std::invalid_argument("HodgeTable: unstable moduli range");
  std::vector<long> key = exponents;
  std::sort(key.begin(), key.end(), std::greater<long>());
  long tot = 0;
  for (long e : key) tot += e;
  if (tot > 3 * g - 3 + n) return Rat(0);
  std::lock_guard<std::mutex> lock(mutex_);
  if (!filled_[{g, n}]) {
    auto coeffs = extract_hodge_integrals(g, n);
    for (auto& [expo, c] : coeffs) {
      std::vector<long> k = expo;
      std::sort(k.begin(), k.end(), std::greater<long>());
      cache_[{g, k}] = c;  // permutations share one entry
    }
    filled_[{g, n}] = true;
  }
  auto it = cache_.find({g, key});
  return it == cache_.end() ? Rat(0) : it->second;
}

}  // namespace spinfock
