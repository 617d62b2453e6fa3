#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spinfock/hodge.hpp"
#include "spinfock/hurwitz.hpp"
#include "spinfock/program.hpp"

using namespace spinfock;
using SR = Series<Rat>;

TEST_CASE("one-point function of the banded operator, formal argument") {
  // <B(z, uz)>: u^0 part 1/(2z); u^1 part (z + z^2)/12
  auto vt = make_vars({"u", "z"}, {-3, -3}, {2, 3});
  BFactor<Rat> f;
  f.zscale = Rat(1);
  f.zvar = 1;
  f.uscale = Rat(1);
  f.uexp = {1, 1};  // the second argument is u * z
  f.jmax = 6;
  auto corr = b_correlator<Rat>({f}, vt);
  CHECK(corr.coeff({0, -1}) == Rat(1, 2));
  CHECK(corr.coeff({0, 0}) == Rat(0));
  CHECK(corr.coeff({0, 1}) == Rat(0));
  CHECK(corr.coeff({1, 1}) == Rat(1, 12));
  CHECK(corr.coeff({1, 2}) == Rat(1, 12));
  CHECK(corr.coeff({1, -1}) == Rat(0));
}

TEST_CASE("one-point function at rational arguments") {
  auto s = double_hodge_series({Rat(1)}, 2);
  // u^{-1}: 1/(2*1); u^0: the genus-one value (z + z^2)/12 at 1
  CHECK(s.coeff({-1}) == Rat(1, 2));
  CHECK(s.coeff({0}) == Rat(1, 6));

  auto s3 = double_hodge_series({Rat(3)}, 1);
  CHECK(s3.coeff({-1}) == Rat(1, 6));
  CHECK(s3.coeff({0}) == Rat(1));  // (z + z^2)/12 at z = 3

  CHECK_THROWS_AS(double_hodge_series({Rat(0)}, 1), std::domain_error);
  CHECK_THROWS_AS(double_hodge_series({Rat(3), Rat(-3)}, 1), std::domain_error);
}

TEST_CASE("two-point disconnected product of unstable pieces") {
  auto s = double_hodge_series({Rat(1), Rat(3)}, 1);
  // u^{-2}: 1/(2 z1) * 1/(2 z2)
  CHECK(s.coeff({-2}) == Rat(1, 12));
  // u^{-1}: cross terms with the genus-one one-point values plus the
  // connected genus-zero two-point piece z1 z2/(z1 + z2)
  Rat expect = Rat(1, 2) * Rat(1) + Rat(1, 6) * Rat(1, 6) + Rat(3, 4);
  CHECK(s.coeff({-1}) == expect);
}

TEST_CASE("conjugation identity at odd integer arguments") {
  // B(mu, u mu) = (mu'!/(u mu)^{mu'}) e^{a1} e^{uF3/3} a_{-mu} e^{-uF3/3} e^{-a1}
  auto window = fock_window(6);
  for (long mu : {1L, 3L, 5L}) {
    long half = (mu - 1) / 2;
    int ucap = 3;
    int hi = ucap + static_cast<int>(half);  // headroom for the Laurent shift
    auto vt = make_vars({"u"}, {static_cast<int>(-half)}, {hi});
    BFactor<Rat> f;
    f.zscale = Rat(mu);
    f.zvar = -1;
    f.uscale = Rat(mu);
    f.uexp = {1};
    f.jmax = hi + 2;
    auto op = b_factor_matrix(f, vt, window, 6 + mu);

    auto cu = SR::monomial(vt, {1}, Rat(1, 3));
    auto exp_f3 = [&](const FockVector<SR>& v, bool negative) {
      FockVector<SR> r;
      for (auto& [st, c] : v.t) {
        Rat eig(0);
        for (int p : st.parts)
          if (p > 0) eig += pow(Rat(p), 3);
        SR arg = negative ? (-cu).scaled(eig) : cu.scaled(eig);
        r.add(st, c * arg.exp());
      }
      return r;
    };
    auto exp_a1 = [&](const FockVector<SR>& v, bool negative) {
      FockVector<SR> acc = v, t = v;
      long j = 0;
      while (!t.is_zero()) {
        ++j;
        t = apply_alpha(1, t).scale_rat(Rat(negative ? -1 : 1, j));
        acc += t;
      }
      return acc;
    };

    for (auto& s : window) {
      FockVector<SR> v;
      v.add(s, SR::constant(vt, Rat(1)));
      auto w = exp_a1(exp_f3(apply_alpha(static_cast<int>(-mu), exp_f3(exp_a1(v, true), true)), false), false);
      w.prune_energy(0, 6 + mu);
      Expo shift{static_cast<int>(-half)};
      FockVector<SR> expect;
      for (auto& [st, c] : w.t)
        expect.add(st, c.mul_monomial(shift, factorial(half) / pow(Rat(mu), half)).drop_above(0, ucap));

      auto it = op.col.find(s);
      REQUIRE(it != op.col.end());
      FockVector<SR> got;
      for (auto& [st, c] : it->second.t) got.add(st, c.drop_above(0, ucap));
      CHECK(got.t == expect.t);
    }
  }
}

TEST_CASE("commutator corollaries at odd integer arguments") {
  // off-diagonal matrix elements of [B(3,3u), B(5,5u)] vanish at every
  // retained order
  int ucap = 2;
  int hi = ucap + 3;  // headroom across the two Laurent depths 1 and 2
  auto vt = make_vars({"u"}, {-4}, {hi});
  auto window = fock_window(10);
  auto mk = [&](long mu) {
    BFactor<Rat> f;
    f.zscale = Rat(mu);
    f.zvar = -1;
    f.uscale = Rat(mu);
    f.uexp = {1};
    f.jmax = hi + 3;
    return f;
  };
  auto b3 = b_factor_matrix(mk(3), vt, window, 10);
  auto b5 = b_factor_matrix(mk(5), vt, window, 10);
  auto comm = FockOp<SR>::compose(b3, b5.restrict_sources(5));
  comm -= FockOp<SR>::compose(b5, b3.restrict_sources(5));
  bool saw_offdiag = false;
  for (auto& [key, c] : comm.entries_within(5)) {
    if (key.first == key.second) continue;  // the diagonal carries the formal delta
    if (c.drop_above(0, ucap).is_zero()) continue;
    saw_offdiag = true;
  }
  CHECK_FALSE(saw_offdiag);
}

TEST_CASE("correlator symmetry at odd integer arguments") {
  // <B(a) B(b)> = <B(b) B(a)> away from the antidiagonal: the commutator is
  // supported on the diagonal of the state space but its vacuum element
  // vanishes for a != b
  int ucap = 3;
  auto vt = make_vars({"u"}, {-4}, {ucap + 3});
  auto mk = [&](long mu, int jmax) {
    BFactor<Rat> f;
    f.zscale = Rat(mu);
    f.zvar = -1;
    f.uscale = Rat(mu);
    f.uexp = {1};
    f.jmax = jmax;
    return f;
  };
  auto ab = b_correlator<Rat>({mk(3, 9), mk(5, 9)}, vt);
  auto ba = b_correlator<Rat>({mk(5, 9), mk(3, 9)}, vt);
  CHECK(ab.drop_above(0, ucap) == ba.drop_above(0, ucap));
}

TEST_CASE("cleared correlator is polynomial: interpolation across odd nodes") {
  // z1 z2 (z1+z2) <B(z1,u z1) B(z2,u z2)> at fixed u-order is a polynomial in
  // the arguments (the only poles are z_i = 0 and the antidiagonal); the
  // degree at u-order k is bounded by 3k + 7 here, so a fit through eight odd
  // nodes must reproduce the ninth
  int uord = 0;
  std::vector<long> odd_nodes{1, 3, 5, 7, 9, 11, 13, 15, 17};
  std::vector<std::map<int, Rat>> vals;
  for (long a : odd_nodes) {
    auto s = double_hodge_series({Rat(a), Rat(3)}, uord);
    std::map<int, Rat> by_order;
    for (int k : {-2, -1, 0}) by_order[k] = Rat(a) * Rat(3) * Rat(a + 3) * s.coeff({k});
    vals.push_back(std::move(by_order));
  }
  for (int k : {-2, -1, 0}) {
    std::vector<Rat> xs, ys;
    for (size_t i = 0; i < odd_nodes.size(); ++i) {
      xs.push_back(Rat(odd_nodes[i]));
      ys.push_back(vals[i].at(k));
    }
    size_t m = 8;
    std::vector<Rat> dd(ys.begin(), ys.begin() + static_cast<long>(m));
    for (size_t j = 1; j < m; ++j)
      for (size_t i = m - 1; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
    Rat acc = dd[m - 1];
    for (size_t i = m - 1; i-- > 0;) acc = acc * (xs[m] - xs[i]) + dd[i];
    CHECK(acc == ys[m]);
  }
}

TEST_CASE("spin ELSV round trip through the correlator") {
  // [u^{g-1}] of the disconnected series at (3,1) assembled from the single
  // numbers: connected piece plus the split into (3)- and (1)-components
  auto s = double_hodge_series({Rat(3), Rat(1)}, 2);
  auto conn_norm = [&](long g, const Partition& nu) {
    Rat n = pow2(g - 1);
    for (long p : nu.parts()) {
      long half = (p - 1) / 2;
      n *= Rat(p) * factorial(half) / pow(Rat(p), half);
    }
    return n;
  };
  for (long g = 0; g <= 2; ++g) {
    Rat total(0);
    for (long g1 = 0; g1 <= g + 1; ++g1) {
      long g2 = g + 1 - g1;  // u^{g1-1} u^{g2-1} = u^{g-1}
      if (g2 < 0) continue;
      total += conn_norm(g1, Partition({3})) * single_hurwitz(g1, 2, Partition({3}), true) *
               conn_norm(g2, Partition({1})) * single_hurwitz(g2, 2, Partition({1}), true);
    }
    total += conn_norm(g, Partition({3, 1})) * single_hurwitz(g, 2, Partition({3, 1}), true);
    CHECK(s.coeff({static_cast<int>(g) - 1}) == total);
  }
}

TEST_CASE("interpolated integrals: classical anchors") {
  auto c03 = extract_hodge_integrals(0, 3);
  REQUIRE(c03.size() == 1);
  CHECK(c03.at({0, 0, 0}) == Rat(1));

  auto c11 = extract_hodge_integrals(1, 1);
  CHECK(c11.at({0}) == Rat(1, 24));  // the Hodge-class term
  CHECK(c11.at({1}) == Rat(1, 24));  // the psi-class term

  auto c04 = extract_hodge_integrals(0, 4);
  CHECK(c04.at({1, 0, 0, 0}) == Rat(1));
  CHECK(c04.at({0, 1, 0, 0}) == Rat(1));
  CHECK(c04.at({0, 0, 1, 0}) == Rat(1));
  CHECK(c04.at({0, 0, 0, 1}) == Rat(1));

  HodgeTable table;
  CHECK(table.integral(1, {1}) == Rat(1, 24));
  CHECK(table.integral(1, {5}) == Rat(0));  // beyond the dimension bound
  CHECK_THROWS_AS(table.integral(0, {0}), std::invalid_argument);
}

TEST_CASE("difference-operator identities") {
  // Delta^j/j! l^a/a! = [w^a] sigma(w)^j/j! e^{w(l - j/2)}
  auto delta_pow = [](long j, long a, long l) {
    Rat acc(0);
    for (long i = 0; i <= j; ++i)
      acc += Rat(i % 2 == 0 ? 1 : -1) * binomial(j, i) * pow(Rat(l - i), a);
    return acc / (factorial(j) * factorial(a));
  };
  for (long j = 0; j <= 6; ++j)
    for (long a = 0; a <= 6; ++a)
      for (long l = -4; l <= 4; ++l) {
        auto vt = make_vars({"w"}, {0}, {static_cast<int>(a)});
        Series<Rat> sig(vt);
        for (int m = 0; m <= a; ++m) {
          Rat c = HyperPoly::sigma().taylor_coeff(m);
          if (!c.is_zero()) sig.add_term({m}, c);
        }
        Series<Rat> rhs = sig.pow_int(j);
        Series<Rat> expw(vt);
        Rat c(1);
        for (int m = 0; m <= a; ++m) {
          expw.add_term({m}, c);
          c *= Rat(2 * l - j, 2) / Rat(m + 1);
        }
        rhs *= expw;
        CHECK(delta_pow(j, a, l) == rhs.coeff({static_cast<int>(a)}) / factorial(j));
      }

  // the quadratic-form coefficient extraction:
  // a! [l^a] Q(l,mu)^p = sum_m binom(p,m) (2p-2m)!/(2p-2m-a)! (mu^2/12)^m (mu/2)^{2p-2m-a}
  for (long mu : {1L, 3L, 5L})
    for (long p = 0; p <= 4; ++p)
      for (long a = 0; a <= 2 * p; ++a) {
        std::vector<Rat> q(static_cast<size_t>(2 * p) + 1, Rat(0));
        q[0] = Rat(1);
        for (long rep = 0; rep < p; ++rep) {
          std::vector<Rat> nq(q.size(), Rat(0));
          for (size_t i = 0; i < q.size(); ++i) {
            if (q[i].is_zero()) continue;
            nq[i] += q[i] * Rat(mu * mu, 3);
            if (i + 1 < nq.size()) nq[i + 1] += q[i] * Rat(mu);
            if (i + 2 < nq.size()) nq[i + 2] += q[i];
          }
          q = nq;
        }
        Rat lhs = factorial(a) * q[static_cast<size_t>(a)];
        Rat rhs(0);
        for (long m = 0; m <= p; ++m) {
          if (2 * p - 2 * m - a < 0) continue;
          rhs += binomial(p, m) * factorial(2 * p - 2 * m) / factorial(2 * p - 2 * m - a) *
                 pow(Rat(mu * mu, 12), m) * pow(Rat(mu, 2), 2 * p - 2 * m - a);
        }
        CHECK(lhs == rhs);
      }
}
