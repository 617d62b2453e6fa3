#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spinfock/fock.hpp"
#include "spinfock/hurwitz.hpp"
#include "spinfock/program.hpp"

using namespace spinfock;

namespace {

// independent dense univariate series helpers for oracle values
using Dense = std::vector<Rat>;  // coefficients of z^0..z^n

Dense dense_mul(const Dense& a, const Dense& b, size_t cap) {
  Dense r(cap + 1, Rat(0));
  for (size_t i = 0; i < a.size() && i <= cap; ++i)
    for (size_t j = 0; j < b.size() && i + j <= cap; ++j) r[i + j] += a[i] * b[j];
  return r;
}

Dense dense_s(long scale, size_t cap) {  // sinh(s z/2)/(s z/2)
  Dense r(cap + 1, Rat(0));
  for (size_t a = 0; a <= cap; a += 2) r[a] = pow(Rat(scale, 2), static_cast<long>(a)) / factorial(static_cast<long>(a) + 1);
  return r;
}

Dense dense_inv(const Dense& a, size_t cap) {
  Dense r(cap + 1, Rat(0));
  r[0] = Rat(1) / a[0];
  for (size_t n = 1; n <= cap; ++n) {
    Rat acc(0);
    for (size_t k = 1; k <= n && k < a.size(); ++k) acc += a[k] * r[n - k];
    r[n] = -acc / a[0];
  }
  return r;
}

}  // namespace

TEST_CASE("completed cycle coefficients") {
  for (long k : {1L, 3L, 5L, 7L}) CHECK(completed_cycle_kappa(k, Partition({k})) == Rat(1));
  for (auto& mu : {Partition({1}), Partition({3, 1}), Partition()})
    CHECK(completed_cycle_kappa(2, mu) == Rat(0));

  // oracle for kappa_{3,(1)}: prefactor * [z^2] S(2z) S(z)^{-1} 2 S(z)
  {
    size_t cap = 2;
    Dense f = dense_mul(dense_s(2, cap), dense_inv(dense_s(1, cap), cap), cap);
    f = dense_mul(f, dense_s(1, cap), cap);
    Rat oracle = factorial(2) * Rat(1) / (Rat(2) * factorial(1)) * Rat(2) * f[2];
    CHECK(oracle == Rat(1, 3));
    CHECK(completed_cycle_kappa(3, Partition({1})) == oracle);
  }
  CHECK(completed_cycle_kappa(3, Partition()) == Rat(-1, 720));
  CHECK(completed_cycle_kappa(5, Partition({1})) == Rat(1, 5));

  // vanishing above the top: kappa_{k,mu} = 0 for |mu| >= k unless mu = (k)
  for (long k : {1L, 3L, 5L})
    for (long e = k; e <= k + 3; ++e)
      for (auto& mu : enumerate_partitions(e, PartitionClass::Odd))
        if (!(e == k && mu == Partition({k}))) CHECK(completed_cycle_kappa(k, mu) == Rat(0));
}

TEST_CASE("empty-profile weight matches the degree-zero insertion") {
  for (long k : {1L, 3L, 5L, 7L, 9L})
    CHECK(completed_cycle_kappa(k, Partition()) == factorial(k - 1) * degree_zero_insertion_coeff(k));
}

TEST_CASE("single numbers: anchors") {
  HurwitzInfo info;
  // trivial cover of degree one
  CHECK(single_hurwitz(0, 2, Partition({1}), true, &info) == Rat(1));
  CHECK(info.feasible);
  CHECK(info.b == 0);

  // genus one, profile (1): the classical value 2 (1/24 + 1/24)
  CHECK(single_hurwitz(1, 2, Partition({1}), true) == Rat(1, 6));
  CHECK(single_hurwitz(1, 2, Partition({1}), false) == Rat(1, 6));

  // infeasible ramification data yields zero with a flag
  CHECK(single_hurwitz(0, 4, Partition({3}), false, &info) == Rat(0));
  CHECK_FALSE(info.feasible);
}

TEST_CASE("mixed numbers: no insertions give 1/d!") {
  for (long d = 0; d <= 5; ++d) {
    // oracle: <alpha_1^d alpha_{-1}^d> = d!/2^d by the commutation relations,
    // so the global prefactor 2^d leaves 1/d!.
    CHECK(mixed_hurwitz(d, {}) == Rat(1) / factorial(d));
  }
}

TEST_CASE("mixed numbers agree with the multilinear profile expansion") {
  // d = 1, one third-cycle insertion
  {
    Rat multilinear(0);
    for (auto& nu : enumerate_partitions(1, PartitionClass::Odd)) {
      auto padded = pad_to_degree(nu, 1);
      REQUIRE(padded.has_value());
      multilinear +=
          completed_cycle_weight(3, nu) * padded->second * profile_hurwitz_disconnected(1, {padded->first});
    }
    CHECK(mixed_hurwitz(1, {1}) == multilinear);
    // with degree-zero contributions the empty partition's term enters
    Rat empty_term = completed_cycle_weight(3, Partition()) * profile_hurwitz_disconnected(1, {Partition({1})});
    CHECK(mixed_hurwitz(1, {1}, true) == multilinear + empty_term);
  }
  // d <= 3, up to two insertions
  for (long d = 1; d <= 3; ++d)
    for (std::vector<long> ks : std::vector<std::vector<long>>{{1}, {2}, {1, 1}, {1, 2}}) {
      Rat multilinear(0);
      std::vector<std::vector<std::pair<Rat, Partition>>> options;
      for (long k : ks) {
        std::vector<std::pair<Rat, Partition>> opt;
        for (long e = 1; e <= d; ++e)
          for (auto& nu : enumerate_partitions(e, PartitionClass::Odd)) {
            Rat w = completed_cycle_weight(2 * k + 1, nu);
            if (w.is_zero()) continue;
            auto padded = pad_to_degree(nu, d);
            REQUIRE(padded.has_value());
            opt.emplace_back(w * padded->second, padded->first);
          }
        options.push_back(std::move(opt));
      }
      std::vector<size_t> idx(options.size(), 0);
      while (true) {
        Rat w(1);
        std::vector<Partition> profs;
        for (size_t i = 0; i < options.size(); ++i) {
          w *= options[i][idx[i]].first;
          profs.push_back(options[i][idx[i]].second);
        }
        multilinear += w * profile_hurwitz_disconnected(d, profs);
        size_t i = 0;
        while (i < options.size()) {
          if (++idx[i] < options[i].size()) break;
          idx[i] = 0;
          ++i;
        }
        if (i == options.size()) break;
      }
      CHECK(mixed_hurwitz(d, ks) == multilinear);
    }
}

TEST_CASE("completed-cycle insertion eigenvalue identity") {
  // sum_nu weight(K,nu) pad R_lambda(padded) = p_K(lambda) / (K 2^{(K-1)/2})
  for (long d = 1; d <= 5; ++d)
    for (auto& lambda : enumerate_partitions(d, PartitionClass::Strict))
      for (long K : {1L, 3L, 5L, 7L}) {
        Rat lhs(0);
        for (long e = 1; e <= d; ++e)
          for (auto& nu : enumerate_partitions(e, PartitionClass::Odd)) {
            Rat w = completed_cycle_weight(K, nu);
            if (w.is_zero()) continue;
            auto padded = pad_to_degree(nu, d);
            lhs += w * padded->second * character_ratio(lambda, padded->first);
          }
        Rat rhs = power_sum(lambda, K) / (Rat(K) * pow2((K - 1) / 2));
        CHECK(lhs == rhs);
      }
}

TEST_CASE("character sum normalization") {
  // no-point counts: sum_lambda T^2 = 1/d!
  for (long d = 1; d <= 6; ++d) {
    Rat acc(0);
    for (auto& lambda : enumerate_partitions(d, PartitionClass::Strict)) acc += character_weight_sq(lambda);
    CHECK(acc == Rat(1) / factorial(d));
  }
  // a single marked point with a nontrivial profile admits no cover
  for (long d = 2; d <= 5; ++d)
    for (auto& nu : enumerate_partitions(d, PartitionClass::Odd)) {
      Rat expect = (nu.mult(1) == d) ? Rat(1) / factorial(d) : Rat(0);
      CHECK(profile_hurwitz_disconnected(d, {nu}) == expect);
    }
}

TEST_CASE("two-point anchors: cyclic covers") {
  // the unique totally ramified cover over two points has automorphism group
  // of order d and even parity
  for (long d : {1L, 3L, 5L}) {
    Partition full({d});
    CHECK(profile_hurwitz_connected(d, {full, full}) == Rat(1, d));
    CHECK(profile_hurwitz_disconnected(d, {full, full}) == Rat(1, d));
  }
  // mismatched cyclic profiles admit no cover
  CHECK(profile_hurwitz_disconnected(3, {Partition({3}), Partition({1, 1, 1})}) == Rat(0));
  CHECK(profile_hurwitz_connected(3, {Partition({3}), Partition({1, 1, 1})}) == Rat(0));
  // unramified connected covers exist only in degree one
  CHECK(profile_hurwitz_connected(1, {}) == Rat(1));
  for (long d = 2; d <= 4; ++d) CHECK(profile_hurwitz_connected(d, {}) == Rat(0));
}

TEST_CASE("connected sieve on the degree split") {
  // unramified double sheets: no connected cover, the disconnected count is
  // carried entirely by the split into two degree-one sheets
  Rat d2 = profile_hurwitz_disconnected(2, {Partition({1, 1})});
  Rat c2 = profile_hurwitz_connected(2, {Partition({1, 1})});
  CHECK(c2 == Rat(0));
  CHECK(d2 == Rat(1, 2));

  // single completed-cycle numbers: disconnected vs connected in degree 2
  for (long g = 0; g <= 2; ++g) {
    HurwitzInfo info;
    Rat disc = single_hurwitz(g, 2, Partition({1, 1}), false, &info);
    if (!info.feasible) continue;
    Rat conn = single_hurwitz(g, 2, Partition({1, 1}), true);
    long b = info.b;
    // split term: ordered pairs of degree-one sheets; the 1/2 for the
    // unordered pair cancels against |Aut(1,1)| = 2
    Rat split(0);
    for (long j = 0; j <= b; ++j)
      split += single_hurwitz(j, 2, Partition({1}), true) * single_hurwitz(b - j, 2, Partition({1}), true);
    CHECK(disc == conn + split);
  }
}

TEST_CASE("symmetrized evaluation of the single numbers") {
  // the conjugated per-part form evaluates to the same numbers
  for (long d = 1; d <= 4; ++d)
    for (auto& mu : enumerate_partitions(d, PartitionClass::Odd)) {
      for (long g = 0; g <= 2; ++g) {
        HurwitzInfo info;
        Rat plain = single_hurwitz(g, 2, mu, false, &info);
        if (!info.feasible) continue;
        auto vt = make_vars({"u"}, {0}, {static_cast<int>(info.b)});
        using SR = Series<Rat>;
        auto cu = SR::monomial(vt, {1}, Rat(1, 3));
        OperatorProgram<SR> prog;
        for (long p : mu.parts()) {
          prog.exp_alpha(1, SR::constant(vt, Rat(1)));
          prog.exp_cut_join(3, cu);
          prog.alpha(static_cast<int>(-p));
          prog.scale(SR::constant(vt, Rat(1, p)));
          prog.exp_cut_join(3, -cu);
          prog.exp_alpha(1, SR::constant(vt, Rat(-1)));
        }
        Rat sym = pow2(1 - g) * prog.vev(SR::constant(vt, Rat(1))).coeff({static_cast<int>(info.b)});
        CHECK(sym == plain);
      }
    }
}

TEST_CASE("rationality: all values are square-root free by construction") {
  // the engine computes over plain rationals; spot-check denominators divide
  // factorial products
  Rat v = single_hurwitz(2, 2, Partition({3, 1}), false);
  mpz_class den = v.den();
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), 16);
  f *= f;
  CHECK(mpz_class(f % den) == 0);
}
