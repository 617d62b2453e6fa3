#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spinfock/fock.hpp"
#include "spinfock/scalar.hpp"
#include "spinfock/partitions.hpp"
#include "spinfock/program.hpp"

using namespace spinfock;

namespace {

FockVector<Rat> basis(std::vector<int> parts) {
  FockVector<Rat> v;
  v.add(FockState{std::move(parts)}, Rat(1));
  return v;
}

Rat vev_phi_word(std::vector<int> ks) {
  FockVector<Rat> v = FockVector<Rat>::vacuum();
  for (size_t i = ks.size(); i-- > 0;) v = apply_phi(ks[i], v);
  return v.vacuum_coeff();
}

}  // namespace

TEST_CASE("vacuum pairings of quadratic words") {
  CHECK(vev_phi_word({0, 0}) == Rat(1, 2));
  CHECK(vev_phi_word({-1, 1}) == Rat(-1));
  CHECK(vev_phi_word({1, -1}) == Rat(0));
  for (int k = -6; k <= 6; ++k)
    for (int l = -6; l <= 6; ++l) {
      Rat expect(0);
      if (k + l == 0) {
        Rat u = l > 0 ? Rat(1) : (l == 0 ? Rat(1, 2) : Rat(0));
        expect = Rat(k % 2 == 0 ? 1 : -1) * u;
      }
      CHECK(vev_phi_word({k, l}) == expect);
    }
}

TEST_CASE("annihilation and creation basics") {
  CHECK(apply_phi(-2, FockVector<Rat>::vacuum()).is_zero());
  auto v3 = apply_phi(3, FockVector<Rat>::vacuum());
  REQUIRE(v3.t.size() == 1);
  CHECK(v3.coeff(FockState{{3}}) == Rat(1));

  // phi_0 twice halves any vector
  for (auto parts : std::vector<std::vector<int>>{{}, {3}, {3, 1}, {4, 2, 0}}) {
    auto v = basis(parts);
    auto w = apply_phi(0, apply_phi(0, v));
    REQUIRE(w.t.size() == 1);
    CHECK(w.coeff(FockState{parts}) == Rat(1, 2));
  }
}

TEST_CASE("canonical anticommutation relations on a window") {
  auto window = fock_window(8);
  for (int k = -6; k <= 6; ++k)
    for (int l = -6; l <= 6; ++l) {
      Rat car = (k + l == 0) ? Rat(k % 2 == 0 ? 1 : -1) : Rat(0);
      for (auto& s : window) {
        FockVector<Rat> v;
        v.add(s, Rat(1));
        auto lhs = apply_phi(k, apply_phi(l, v));
        lhs += apply_phi(l, apply_phi(k, v));
        FockVector<Rat> expect;
        expect.add(s, car);
        CHECK(lhs.t == expect.t);
      }
    }
}

TEST_CASE("bosonic modes: vanishing, creation, commutators") {
  CHECK(apply_alpha(3, FockVector<Rat>::vacuum()).is_zero());
  CHECK(apply_alpha(2, basis({3, 1})).is_zero());  // even modes act as zero

  auto a = apply_alpha(-1, FockVector<Rat>::vacuum());
  REQUIRE(a.t.size() == 1);
  CHECK(a.coeff(FockState{{1, 0}}) == Rat(1));

  // [alpha_m, alpha_n] = (m/2) delta_{m+n} on the energy window <= 8
  auto window = fock_window(8);
  for (int m = -7; m <= 7; m += 2)
    for (int n = -7; n <= 7; n += 2) {
      for (auto& s : window) {
        if (s.energy() + std::max({-m, -n, -m - n, 0}) > 10) continue;
        FockVector<Rat> v;
        v.add(s, Rat(1));
        auto lhs = apply_alpha(m, apply_alpha(n, v));
        lhs += apply_alpha(n, apply_alpha(m, v)).scaled(Rat(-1));
        FockVector<Rat> expect;
        if (m + n == 0) expect.add(s, Rat(m, 2));
        CHECK(lhs.t == expect.t);
      }
    }
}

TEST_CASE("cut-and-join eigenvalues are power sums") {
  auto f3 = apply_cut_join(3, basis({3, 1, 0}));
  REQUIRE(f3.t.size() == 1);
  CHECK(f3.coeff(FockState{{3, 1, 0}}) == Rat(28));
  CHECK(apply_cut_join(3, FockVector<Rat>::vacuum()).is_zero());
  auto f5 = apply_cut_join(5, basis({3}));
  CHECK(f5.coeff(FockState{{3}}) == Rat(243));
  CHECK(apply_cut_join(4, basis({3})).is_zero());

  // agreement with the Clifford-sum definition sum_{k>0} (-1)^k k^{r1} E_{k,k}
  for (auto& s : fock_window(6)) {
    FockVector<Rat> v;
    v.add(s, Rat(1));
    auto direct = apply_cut_join(3, v);
    FockVector<Rat> via_quads;
    for (int k = 1; k <= 6; ++k) {
      auto [word, contraction] = quad_on_state(k, k, s);
      Rat c = Rat(k % 2 == 0 ? 1 : -1) * pow(Rat(k), 3);
      if (word) via_quads.add(word->second, c * word->first);
      if (!contraction.is_zero()) via_quads.add(s, -c * contraction);
    }
    CHECK(direct.t == via_quads.t);
  }
}

TEST_CASE("diagonal generating operator: hyperbolic eigenvalues") {
  FockVector<HyperPoly> v;
  v.add(FockState{{3, 1}}, HyperPoly(Rat(1)));
  auto w = apply_e_hyper(0, v);
  REQUIRE(w.t.size() == 1);
  HyperPoly expect = HyperPoly::sinh_half(6) + HyperPoly::sinh_half(2);
  CHECK(w.coeff(FockState{{3, 1}}) == expect);

  // term-by-term match with the cut-and-join family up to z-order 9
  for (auto& s : fock_window(5)) {
    FockVector<HyperPoly> b;
    b.add(s, HyperPoly(Rat(1)));
    HyperPoly eig = apply_e_hyper(0, b).coeff(s);
    for (long r1 = 1; r1 <= 9; r1 += 2) {
      FockVector<Rat> br;
      br.add(s, Rat(1));
      Rat f = apply_cut_join(r1, br).coeff(s);
      CHECK(eig.taylor_coeff(r1) * factorial(r1) == f);
    }
    for (long r1 = 2; r1 <= 8; r1 += 2) CHECK(eig.taylor_coeff(r1) == Rat(0));
  }
}

TEST_CASE("vacuum expectation of the corrected generating operator") {
  // <E_0(z)> = qoppa/sigma: check via series and via the Laurent expansion of coth
  auto vt = make_vars({"z"}, {-1}, {9});
  FockVector<Series<Rat>> v = FockVector<Series<Rat>>::vacuum(Series<Rat>::constant(vt, Rat(1)));
  auto w = apply_e_series<Rat>(0, true, 0, v);
  auto val = w.coeff(fock_vacuum());
  CHECK(val.coeff({-1}) == Rat(1, 2));
  CHECK(val.coeff({1}) == Rat(1, 24));
  CHECK(val.coeff({3}) == Rat(-1, 1440));
  CHECK(val.coeff({0}) == Rat(0));
  // non-corrected variant has vanishing vacuum expectation
  CHECK(apply_e_series<Rat>(0, false, 0, v).coeff(fock_vacuum()).is_zero());
}

namespace {

using SR = Series<Rat>;

FockOp<SR> e_matrix(int m, const LinForm& form, const VarTablePtr& vt, const std::vector<FockState>& window) {
  return FockOp<SR>::build(window, -m, -m, [&](const FockState& s) {
    FockVector<SR> b;
    b.add(s, SR::constant(vt, Rat(1)));
    return apply_e_series<Rat>(m, false, form, b);
  });
}

}  // namespace

TEST_CASE("parity relation of the generating operators") {
  auto vt = make_vars({"z"}, {0}, {6});
  auto window = fock_window(5);
  for (int m : {-3, -2, -1, 0, 1, 2, 3}) {
    auto plus = e_matrix(m, {{0, Rat(1)}}, vt, window);
    auto minus = e_matrix(m, {{0, Rat(-1)}}, vt, window);
    auto flipped = plus.scaled(SR::constant(vt, Rat(m % 2 == 0 ? -1 : 1)));
    for (auto& [key, c] : minus.entries_within(5 + std::abs(m))) {
      auto ref = flipped.entries_within(5 + std::abs(m));
      auto it = ref.find(key);
      REQUIRE(it != ref.end());
      CHECK(c == it->second);
    }
  }
}

TEST_CASE("commutator of generating operators") {
  // [E_m(z), E_n(w)] against the structure constants, checked on matrix
  // elements within energy 6 at z,w-orders <= 6. The m+n = 0 case is compared
  // after clearing by sigma(z+w) sigma(z-w).
  auto vt = make_vars({"z", "w"}, {0, 0}, {6, 6});
  long pad = 4;
  auto window = fock_window(6 + 2 * pad);
  LinForm fz{{0, Rat(1)}}, fw{{1, Rat(1)}};
  LinForm fzw{{0, Rat(1)}, {1, Rat(1)}};   // z + w
  LinForm fzmw{{0, Rat(1)}, {1, Rat(-1)}}; // z - w

  for (int m = -3; m <= 3; ++m)
    for (int n = -3; n <= 3; ++n) {
      if (std::abs(m + n) > 4) continue;
      auto Em = e_matrix(m, fz, vt, window);
      auto En = e_matrix(n, fw, vt, window);
      auto comm = FockOp<SR>::compose(Em, En.restrict_sources(6));
      comm -= FockOp<SR>::compose(En, Em.restrict_sources(6));

      SR s1 = hyper_on_form<Rat>(HyperPoly::sigma(), vt, {{0, Rat(-n)}, {1, Rat(m)}});  // sigma(mw - nz)
      SR s2 = hyper_on_form<Rat>(HyperPoly::sigma(), vt, {{0, Rat(n)}, {1, Rat(m)}});    // sigma(mw + nz)
      SR half = SR::constant(vt, Rat(1, 2));
      SR sgn = SR::constant(vt, Rat(n % 2 == 0 ? 1 : -1));

      if (m + n != 0) {
        auto rhs = e_matrix(m + n, fzw, vt, window).restrict_sources(6).scaled(half * s1);
        rhs += e_matrix(m + n, fzmw, vt, window).restrict_sources(6).scaled(half * sgn * s2);
        auto le = comm.entries_within(6);
        auto re = rhs.entries_within(6);
        CHECK(le == re);
      } else {
        // multiply both sides by sigma(z+w) sigma(z-w); then
        // sigma(L) E_0(L) = sigma(L) Ehat_0(L) + qoppa(L) Id is entire
        SR sig_p = hyper_on_form<Rat>(HyperPoly::sigma(), vt, fzw);
        SR sig_m = hyper_on_form<Rat>(HyperPoly::sigma(), vt, fzmw);
        SR qop_p = hyper_on_form<Rat>(HyperPoly::qoppa(), vt, fzw);
        SR qop_m = hyper_on_form<Rat>(HyperPoly::qoppa(), vt, fzmw);
        auto lhs = comm.scaled(sig_p * sig_m);

        auto id = FockOp<SR>::build(fock_window(6), 0, 0, [&](const FockState& s) {
          FockVector<SR> b;
          b.add(s, SR::constant(vt, Rat(1)));
          return b;
        });
        auto t1 = e_matrix(0, fzw, vt, window).restrict_sources(6).scaled(sig_p);
        t1 += id.scaled(qop_p);
        t1 = t1.scaled(half * s1 * sig_m);
        auto t2 = e_matrix(0, fzmw, vt, window).restrict_sources(6).scaled(sig_m);
        t2 += id.scaled(qop_m);
        t2 = t2.scaled(half * sgn * s2 * sig_p);
        t1 += t2;
        CHECK(lhs.entries_within(6) == t1.entries_within(6));
      }
    }
}

TEST_CASE("sergeev characters") {
  CHECK(sergeev_character({1}, {1}) == Rat(2));
  CHECK(sergeev_character({}, {}) == Rat(1));

  // orthogonality: sum_mu 2^{-l(mu)} / z_mu zeta_mu(l1) zeta_mu(l2)
  //              = delta * 2^{(p1+p2)/2} ... evaluated as 2^{p} on the diagonal
  for (long d = 1; d <= 6; ++d) {
    auto strict = enumerate_partitions(d, PartitionClass::Strict);
    auto odd = enumerate_partitions(d, PartitionClass::Odd);
    for (auto& l1 : strict)
      for (auto& l2 : strict) {
        Rat acc(0);
        for (auto& mu : odd) {
          Rat w = pow2(-mu.length()) / z_aut(mu);
          acc += w * sergeev_character(l1.parts(), mu.parts()) * sergeev_character(l2.parts(), mu.parts());
        }
        if (l1 == l2) {
          int p = partition_parity(l1);
          CHECK(acc == pow2(p));
        } else {
          CHECK(acc == Rat(0));
        }
      }
  }
}

TEST_CASE("energy projector from the bosonic resolution") {
  // P_d = sum_{mu odd of d} 2^{l} / z_mu |alpha_-mu> <alpha_mu| acts as
  // delta_{energy,d}; checked against direct energy filtering for |lambda| <= 6
  auto window = fock_window(6);
  for (long d = 0; d <= 6; ++d) {
    auto odd = enumerate_partitions(d, PartitionClass::Odd);
    std::vector<std::pair<Rat, FockVector<Rat>>> kets;
    for (auto& mu : odd) {
      FockVector<Rat> ket = FockVector<Rat>::vacuum();
      for (long p : mu.parts()) ket = apply_alpha(static_cast<int>(-p), ket);
      kets.emplace_back(pow2(mu.length()) / z_aut(mu), ket);
    }
    auto apply_projector = [&](const FockVector<Rat>& v) {
      FockVector<Rat> out;
      size_t i = 0;
      for (auto& mu : odd) {
        FockVector<Rat> bra = v;
        const auto& parts = mu.parts();
        for (size_t j = parts.size(); j-- > 0;) bra = apply_alpha(static_cast<int>(parts[j]), bra);
        Rat overlap = bra.vacuum_coeff();
        out += kets[i].second.scaled(kets[i].first * overlap);
        ++i;
      }
      return out;
    };
    for (auto& s : window) {
      if (s.sector() != 0) continue;  // the resolution lives on the even sector
      FockVector<Rat> v;
      v.add(s, Rat(1));
      auto pv = apply_projector(v);
      auto ppv = apply_projector(pv);
      FockVector<Rat> expect;
      if (s.energy() == d) expect.add(s, Rat(1));
      CHECK(pv.t == expect.t);
      CHECK(ppv.t == pv.t);  // idempotence
    }
  }
  // resolution of the identity on energies <= 6
  for (auto& s : window) {
    FockVector<Rat> total;
    for (long d = 0; d <= 6; ++d) {
      if (s.energy() != d) continue;
      total.add(s, Rat(1));
    }
    CHECK(total.t.size() == 1);
  }
}

TEST_CASE("pairing is diagonal with half-weight on zero-mode words") {
  auto window = fock_window(5);
  for (auto& s : window)
    for (auto& t : window) {
      // <s|t> from the anti-automorphism phi_a -> (-1)^a phi_{-a}
      FockVector<Rat> v;
      v.add(t, Rat(1));
      long sum = 0;
      for (size_t i = 0; i < s.parts.size(); ++i) sum += s.parts[i];
      for (int p : s.parts) v = apply_phi(-p, v);
      Rat pair = Rat(sum % 2 == 0 ? 1 : -1) * v.vacuum_coeff();
      if (s == t)
        CHECK(pair == gram(s));
      else
        CHECK(pair == Rat(0));
    }
}

TEST_CASE("paper-basis conversion carries sqrt2 on odd lengths") {
  // alpha_{-1}|0> = (1/sqrt2) |{1}>: the internal word [1,0] with coefficient 1
  auto a = apply_alpha(-1, FockVector<Rat>::vacuum());
  CHECK(a.coeff(FockState{{1, 0}}) == Rat(1));
  // |{1}> = sqrt2 * [1,0], so the paper coefficient is 1/sqrt2
  Scalar paper_coeff = Scalar(a.coeff(FockState{{1, 0}})) / Scalar::sqrt2();
  CHECK(paper_coeff == Scalar(Rat(0), Rat(1, 2)));
}

TEST_CASE("operator programs: window inference and rejection") {
  // unbounded raising exponential is rejected
  {
    OperatorProgram<Series<Rat>> prog;
    auto vt = make_vars({"u"}, {0}, {3});
    prog.exp_alpha(1, Series<Rat>::constant(vt, Rat(1)));
    prog.exp_cut_join(3, Series<Rat>::monomial(vt, {1}, Rat(1, 3)));
    prog.exp_alpha(-1, Series<Rat>::constant(vt, Rat(1)));
    CHECK_THROWS_AS(prog.vev(Series<Rat>::constant(vt, Rat(1))), std::domain_error);
  }
  // the energy-graded insertion bounds the same program
  {
    auto vt = make_vars({"q", "u"}, {0, -3}, {3, 3});
    OperatorProgram<Series<Rat>> prog;
    prog.exp_alpha(1, Series<Rat>::constant(vt, Rat(1)));
    prog.pow_h({1, -1}, 3);
    prog.exp_alpha(-1, Series<Rat>::constant(vt, Rat(1)));
    auto val = prog.vev(Series<Rat>::constant(vt, Rat(1)));
    // <e^{alpha_1} (q/u)^H e^{alpha_{-1}}> = sum_d (q/u)^d / (2^d d!)
    CHECK(val.coeff({0, 0}) == Rat(1));
    CHECK(val.coeff({1, -1}) == Rat(1, 2));
    CHECK(val.coeff({2, -2}) == Rat(1, 8));
    CHECK(val.coeff({3, -3}) == Rat(1, 48));
  }
}

TEST_CASE("covacuum cache matches direct evaluation") {
  auto cache = covacuum_exp_alpha1(6);
  for (auto& s : fock_window(6)) {
    FockVector<Rat> v;
    v.add(s, Rat(1));
    long e = s.energy();
    for (long i = 0; i < e; ++i) v = apply_alpha(1, v);
    Rat direct = v.vacuum_coeff() / factorial(e);
    auto it = cache.find(s);
    Rat cached = it == cache.end() ? Rat(0) : it->second;
    CHECK(cached == direct);
  }
}
