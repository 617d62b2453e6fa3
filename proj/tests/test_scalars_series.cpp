#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "spinfock/hyperbolic.hpp"
#include "spinfock/rational.hpp"
#include "spinfock/ratfunc.hpp"
#include "spinfock/scalar.hpp"
#include "spinfock/series.hpp"

using namespace spinfock;

TEST_CASE("rationals are exact and reduced") {
  Rat a(6, 4);
  CHECK(a.num() == 3);
  CHECK(a.den() == 2);
  CHECK(a.str() == "3/2");
  CHECK(Rat(-6, 4).str() == "-3/2");
  CHECK(Rat::parse("22/7") == Rat(22, 7));
  CHECK(Rat::parse("-5") == Rat(-5));
  CHECK_THROWS_AS(Rat(1) / Rat(0), std::domain_error);
  CHECK(pow(Rat(2, 3), -2) == Rat(9, 4));
  CHECK(binomial(5, 2) == Rat(10));
}

TEST_CASE("quadratic extension arithmetic") {
  Scalar s2 = Scalar::sqrt2();
  CHECK(s2 * s2 == Scalar(Rat(2)));
  CHECK((Scalar(Rat(1)) / (Scalar(Rat(1)) + s2)) * (Scalar(Rat(1)) + s2) == Scalar(Rat(1)));
  CHECK(Scalar::sqrt2_pow(3) == Scalar(Rat(0), Rat(2)));
  CHECK(Scalar::sqrt2_pow(-1) == Scalar(Rat(0), Rat(1, 2)));
  CHECK(Scalar::sqrt2_pow(-2) == Scalar(Rat(1, 2)));
  CHECK(Scalar(Rat(3)).is_rational());
  CHECK_FALSE(s2.is_rational());
  CHECK_THROWS_AS(s2.rational(), std::domain_error);
}

TEST_CASE("half shift on exact inputs") {
  auto half_shift = [](const Rat& z) { return (z - Rat(1)) / Rat(2); };
  CHECK(half_shift(Rat(3)) == Rat(1));
  CHECK(half_shift(Rat(1)) == Rat(0));
  CHECK(half_shift(Rat(7)) == Rat(3));
}

TEST_CASE("series exp basics") {
  auto vt = make_vars({"u", "x"}, {0, 0}, {2, 2});
  Series<Rat> zero(vt);
  CHECK(zero.exp() == Series<Rat>::constant(vt, Rat(1)));

  Series<Rat> ux = Series<Rat>::monomial(vt, {1, 1}, Rat(1));
  Series<Rat> e = ux.exp();
  CHECK(e.coeff({0, 0}) == Rat(1));
  CHECK(e.coeff({1, 1}) == Rat(1));
  CHECK(e.coeff({2, 2}) == Rat(1, 2));

  // exp(u x^3 / 12) at u-order 1 in a table truncating x at 3
  auto vt2 = make_vars({"u", "z"}, {0, 0}, {1, 3});
  Series<Rat> m = Series<Rat>::monomial(vt2, {1, 3}, Rat(1, 12));
  Series<Rat> em = m.exp();
  CHECK(em.coeff({0, 0}) == Rat(1));
  CHECK(em.coeff({1, 3}) == Rat(1, 12));

  Series<Rat> bad = Series<Rat>::constant(vt, Rat(1));
  CHECK_THROWS_AS(bad.exp(), std::domain_error);
  auto vtl = make_vars({"w"}, {-1}, {2});
  CHECK_THROWS_AS(Series<Rat>::monomial(vtl, {-1}, Rat(1)).exp(), std::domain_error);
}

TEST_CASE("series ring laws at every retained order") {
  auto vt = make_vars({"x", "y"}, {0, 0}, {4, 3});
  std::mt19937 rng(7);
  auto rnd = [&]() {
    Series<Rat> s(vt);
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; j <= 3; ++j)
        if (rng() % 3 == 0) s.add_term({i, j}, Rat(static_cast<long>(rng() % 11) - 5, 1 + rng() % 4));
    return s;
  };
  for (int rep = 0; rep < 20; ++rep) {
    Series<Rat> f = rnd(), g = rnd(), h = rnd();
    CHECK((f + g) * h == f * h + g * h);
  }
}

TEST_CASE("log inverts exp") {
  auto vt = make_vars({"x", "y"}, {0, 0}, {4, 4});
  std::mt19937 rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    Series<Rat> f(vt);
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; j <= 4; ++j)
        if ((i || j) && rng() % 3 == 0) f.add_term({i, j}, Rat(static_cast<long>(rng() % 9) - 4, 1 + rng() % 3));
    CHECK(f.exp().log() == f);
  }
}

TEST_CASE("laurent window violations are errors") {
  auto vt = make_vars({"u"}, {-1}, {3});
  Series<Rat> um = Series<Rat>::monomial(vt, {-1}, Rat(1));
  CHECK_THROWS_AS(um * um, std::domain_error);
}

TEST_CASE("hyperbolic polynomials and parity") {
  HyperPoly sig = HyperPoly::sigma();
  HyperPoly qop = HyperPoly::qoppa();
  CHECK(sig.is_odd());
  CHECK(qop.is_even());
  CHECK((sig * qop).is_odd());
  // sigma * qoppa = sinh(z)/2
  HyperPoly half_sinh = HyperPoly::sinh_half(2) * HyperPoly(Rat(1, 2));
  CHECK(sig * qop == half_sinh);

  // Taylor anchors: sigma(z) = z + z^3/24 + ...
  CHECK(sig.taylor_coeff(1) == Rat(1));
  CHECK(sig.taylor_coeff(3) == Rat(1, 24));
  CHECK(qop.taylor_coeff(0) == Rat(1, 2));
}

TEST_CASE("sinh-basis decomposition") {
  // oracle: expand 2 sinh(z/2) cosh(z/2) / 2 = sinh(z)/2 in exponentials
  HyperPoly p = HyperPoly::sigma() * HyperPoly::qoppa();
  auto d = p.sinh_decompose();
  CHECK(d.size() == 1);
  CHECK(d.at(2) == Rat(1, 2));  // key 2 means sinh(1*z)

  CHECK(HyperPoly().sinh_decompose().empty());

  HyperPoly table_row = HyperPoly::sinh_half(6) * HyperPoly(Rat(1, 2)) +
                        HyperPoly::sinh_half(4) * HyperPoly(Rat(1, 4)) +
                        HyperPoly::sinh_half(2) * HyperPoly(Rat(1, 4));
  auto dr = table_row.sinh_decompose();
  CHECK(dr.at(6) == Rat(1, 2));
  CHECK(dr.at(4) == Rat(1, 4));
  CHECK(dr.at(2) == Rat(1, 4));

  CHECK_THROWS_AS(HyperPoly::cosh_half(2).sinh_decompose(), std::domain_error);
}

TEST_CASE("rational functions normalize and evaluate") {
  RatFunc t = RatFunc::param();
  RatFunc f = (t * t - RatFunc(Rat(1))) / (t - RatFunc(Rat(1)));  // reduces to t + 1
  CHECK(f == t + RatFunc(Rat(1)));
  CHECK(f.eval(Rat(3)) == Rat(4));
  CHECK_THROWS_AS((RatFunc(Rat(1)) / t).eval(Rat(0)), std::domain_error);

  std::mt19937 rng(3);
  for (int rep = 0; rep < 10; ++rep) {
    auto rnd = [&]() {
      poly::Poly num, den;
      for (int i = 0; i < 3; ++i) num.push_back(Rat(static_cast<long>(rng() % 7) - 3));
      den = {Rat(1 + rng() % 3), Rat(1)};
      return RatFunc(num, den);
    };
    RatFunc a = rnd(), b = rnd();
    Rat x(static_cast<long>(rng() % 5) + 2);
    CHECK((a * b + a).eval(x) == a.eval(x) * b.eval(x) + a.eval(x));
  }
}
