#include <doctest.h>

#include <random>

#include "apdelay/errors.hpp"
#include "oracles.hpp"

using namespace apdelay;
using namespace oracle;

namespace {

cplx scalar_at(const TrigPolynomial& f, double t) { return eval(f, t)(0); }

TrigPolynomial random_poly(std::mt19937_64& rng, const GeneratorBasis& b, Index dim, int terms) {
  return random_forcing(rng, b, dim, terms);
}

}  // namespace

TEST_CASE("generator basis invariants") {
  CHECK_THROWS_AS(GeneratorBasis({{"a", 1.0}, {"a", 2.0}}), ValidationError);
  CHECK_THROWS_AS(GeneratorBasis({{"a", 1.0}, {"b", 1.0}}), ValidationError);
  CHECK_THROWS_AS(GeneratorBasis({{"a", 0.0}}), ValidationError);
  CHECK_THROWS_AS(GeneratorBasis({{"a", std::nan("")}}), ValidationError);
  CHECK_THROWS_AS(GeneratorBasis({{"2x", 1.0}}), ValidationError);
  CHECK(basis_one_sqrt2().find("sqrt2") == 1u);
}

TEST_CASE("frequencies are canonical rationals") {
  const auto b = basis_one_sqrt2();
  const Frequency f = freq(b, {"2/4", "-3/6"});
  CHECK(format_rational(f.coords()[0]) == "1/2");
  CHECK(format_rational(f.coords()[1]) == "-1/2");
  CHECK(f == freq(b, {"1/2", "-1/2"}));
  CHECK(freq(b, {"0", "0/5"}).is_zero());
  CHECK(f.describe(b) == "1/2*one - 1/2*sqrt2");
  CHECK_THROWS_AS(parse_rational("0.5"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/-2"), ParseError);
  CHECK_THROWS_AS(Frequency(b, {Rational(1)}), BasisMismatch);
}

TEST_CASE("eval") {
  const auto b = basis_one();
  SUBCASE("zero polynomial") {
    const TrigPolynomial zero(b, 3);
    CHECK(eval(zero, 1.234).isZero(0.0));
    CHECK(eval(zero, 1.234).size() == 3);
  }
  SUBCASE("constant") { CHECK(scalar_at(scalar_poly(b, {{{"0"}, 1.0}}), 17.3) == cplx(1.0, 0.0)); }
  SUBCASE("cosine") {
    const auto f = scalar_poly(b, {{{"1"}, 1.0}, {{"-1"}, 1.0}});
    // Independent: 2 cos(pi/3) = 1.
    CHECK(std::abs(scalar_at(f, kPi / 3) - 1.0) < 1e-15);
  }
}

TEST_CASE("combine") {
  const auto b = basis_one_sqrt2();
  const auto f = scalar_poly(b, {{{"1", "0"}, 1.0}});
  const auto g = scalar_poly(b, {{{"0", "1"}, 1.0}});
  CHECK(combine(f, f, 1.0, -1.0).is_zero());
  const auto fg = combine(f, g, 1.0, 1.0);
  REQUIRE(fg.terms().size() == 2);
  CHECK(fg.terms()[0].freq.value() == doctest::Approx(1.0));
  CHECK(fg.terms()[1].freq.value() == doctest::Approx(kSqrt2));
  const auto three = combine(f, f, 1.0, 2.0);
  REQUIRE(three.terms().size() == 1);
  CHECK(three.terms()[0].coeff(0) == cplx(3.0, 0.0));

  CHECK_THROWS_AS(combine(f, scalar_poly(basis_one(), {{{"1"}, 1.0}}), 1.0, 1.0), BasisMismatch);
  CHECK_THROWS_AS(combine(f, TrigPolynomial(b, 2), 1.0, 1.0), DimMismatch);
}

TEST_CASE("pruning keeps sigma_b stable") {
  const auto b = basis_one();
  const auto f = scalar_poly(b, {{{"1"}, 1.0}, {{"2"}, 1e-15}});
  CHECK(f.terms().size() == 1);
  const auto g = scalar_poly(b, {{{"1"}, 1.0}, {{"2"}, 1e-13}});
  CHECK(g.terms().size() == 2);
}

TEST_CASE("derivative") {
  const auto b = basis_one();
  CHECK(derivative(scalar_poly(b, {{{"0"}, 4.0}})).is_zero());
  const auto d1 = derivative(scalar_poly(b, {{{"1"}, 1.0}}));
  REQUIRE(d1.terms().size() == 1);
  CHECK(d1.terms()[0].coeff(0) == cplx(0.0, 1.0));
  // d/dt 2 e^{3it} = 6i e^{3it}; checked against a central difference.
  const auto f = scalar_poly(b, {{{"3"}, 2.0}});
  const auto d = derivative(f);
  CHECK(d.terms()[0].coeff(0) == cplx(0.0, 6.0));
  const double t = 0.37, h = 1e-5;
  const cplx fd = (scalar_at(f, t + h) - scalar_at(f, t - h)) / (2 * h);
  CHECK(std::abs(fd - scalar_at(d, t)) < 1e-8);
}

TEST_CASE("bohr coefficients and spectrum") {
  const auto b = basis_one_sqrt2();
  const auto f = scalar_poly(b, {{{"1", "0"}, {0.3, 0.4}}});
  CHECK(bohr_coefficient(f, freq(b, {"1", "0"}))(0) == cplx(0.3, 0.4));
  CHECK(bohr_coefficient(f, freq(b, {"0", "1"}))(0) == cplx(0.0, 0.0));
  const auto g = scalar_poly(b, {{{"1", "0"}, 1.0}, {{"0", "1"}, 0.5}});
  CHECK(bohr_coefficient(g, freq(b, {"0", "1"}))(0) == cplx(0.5, 0.0));
  CHECK_THROWS_AS(bohr_coefficient(g, freq(basis_one(), {"1"})), BasisMismatch);

  CHECK(bohr_spectrum(TrigPolynomial(b, 1)).empty());
  const auto sp = bohr_spectrum(g);
  REQUIRE(sp.size() == 2);
  CHECK(sp[0] == freq(b, {"1", "0"}));
  CHECK(sp[1] == freq(b, {"0", "1"}));
  CHECK(bohr_spectrum(combine(f, f, 1.0, -1.0)).empty());
}

TEST_CASE("qp_order") {
  const auto b = basis_one_sqrt2();
  CHECK(qp_order(TrigPolynomial(b, 1)) == 0);
  CHECK(qp_order(scalar_poly(b, {{{"1", "0"}, 1.0}, {{"2", "0"}, 1.0}})) == 1);
  CHECK(qp_order(scalar_poly(b, {{{"1", "0"}, 1.0}, {{"0", "1"}, 1.0}})) == 2);
}

TEST_CASE("is_periodic decides exactly") {
  SUBCASE("sigma_b = {2pi, 4pi}, tau = 1") {
    const auto b = basis_one_pi();
    const auto f = scalar_poly(b, {{{"0", "2"}, 1.0}, {{"0", "4"}, 1.0}});
    CHECK(is_periodic(f, freq(b, {"1", "0"})));
    CHECK_FALSE(is_periodic(f, freq(b, {"2/3", "0"})));
  }
  SUBCASE("e^{it}, tau = 2 pi") {
    const auto b = basis_one_pi();
    const auto f = scalar_poly(b, {{{"1", "0"}, 1.0}});
    CHECK(is_periodic(f, freq(b, {"0", "2"})));
    CHECK_FALSE(is_periodic(f, freq(b, {"0", "1/3"})));
  }
  SUBCASE("tau = pi admits only even integer frequencies") {
    const auto b = basis_one_pi();
    const auto tau = freq(b, {"0", "1"});
    CHECK(angular_frequency_of_period(b, tau) == freq(b, {"2", "0"}));
    CHECK(angular_frequency_of_period(b, freq(b, {"0", "2/3"})) == freq(b, {"3", "0"}));
    CHECK(angular_frequency_of_period(b, freq(b, {"1/2", "0"})) == freq(b, {"0", "4"}));
    CHECK_FALSE(is_periodic(scalar_poly(b, {{{"1", "0"}, 1.0}}), tau));
    CHECK(is_periodic(scalar_poly(b, {{{"2", "0"}, 1.0}, {{"-6", "0"}, 1.0}}), tau));
  }
  SUBCASE("rank-2 module is never periodic") {
    const auto b = basis_one_sqrt2_pi();
    const auto f = scalar_poly(b, {{{"1", "0", "0"}, 1.0}, {{"0", "1", "0"}, 1.0}});
    for (const char* q : {"1", "2", "1/2", "3", "1/7"}) {
      CHECK_FALSE(is_periodic(f, freq(b, {"0", "0", q})));
      CHECK_FALSE(is_periodic(f, freq(b, {q, "0", "0"})));
    }
    CHECK_THROWS_AS(is_periodic(f, freq(b, {"0", "1", "0"})), IncommensurableTau);
    CHECK_THROWS_AS(is_periodic(f, freq(b, {"1", "0", "1"})), IncommensurableTau);
  }
  SUBCASE("no pi generator") {
    const auto b = basis_one();
    CHECK_THROWS_AS(is_periodic(scalar_poly(b, {{{"1"}, 1.0}}), freq(b, {"1"})), IncommensurableTau);
  }
}

TEST_CASE("property: combine is bilinear under evaluation") {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const auto b = basis_one_sqrt2();
  for (int trial = 0; trial < 200; ++trial) {
    const Index dim = 1 + trial % 3;
    const auto f = random_poly(rng, b, dim, 1 + trial % 4);
    const auto g = random_poly(rng, b, dim, 1 + (trial / 4) % 4);
    const cplx alpha{u(rng), u(rng)}, beta{u(rng), u(rng)};
    const double t = 10.0 * u(rng);
    const CVec lhs = eval(combine(f, g, alpha, beta), t);
    const CVec rhs = alpha * eval(f, t) + beta * eval(g, t);
    CHECK((lhs - rhs).norm() <= 1e-12 * std::max(1.0, rhs.norm() + (alpha * eval(f, t)).norm()));
  }
}

TEST_CASE("property: bohr_coefficient is linear and exact") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const auto b = basis_one_sqrt2();
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_poly(rng, b, 2, 3);
    const auto g = random_poly(rng, b, 2, 3);
    const cplx alpha{u(rng), u(rng)}, beta{u(rng), u(rng)};
    const auto h = combine(f, g, alpha, beta);
    for (const auto& s : {bohr_spectrum(f), bohr_spectrum(g)}) {
      for (const auto& lam : s) {
        const CVec expected = alpha * bohr_coefficient(f, lam) + beta * bohr_coefficient(g, lam);
        const CVec got = bohr_coefficient(h, lam);
        // Exact up to the rounding of the one multiply-add that forms it (or
        // pruned to zero when the sum cancels below the pruning threshold).
        CHECK((got - expected).norm() <= 4e-16 * (std::abs(alpha) + std::abs(beta)) * 4.0 + 1e-14);
      }
    }
  }
}

TEST_CASE("property: derivative multiplies coefficients by i lambda") {
  std::mt19937_64 rng(11);
  const auto b = basis_one_sqrt2();
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_poly(rng, b, 1 + trial % 2, 1 + trial % 3);
    const auto d = derivative(f);
    for (const auto& lam : bohr_spectrum(f)) {
      const CVec expected = (kI * lam.value()) * bohr_coefficient(f, lam);
      CHECK((bohr_coefficient(d, lam) - expected).norm() == 0.0);
    }
  }
}

TEST_CASE("property: qp_order bounded by |sigma_b| and scale invariant") {
  std::mt19937_64 rng(3);
  const auto b = basis_one_sqrt2_pi();
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_forcing(rng, b, 1, 1 + trial % 4);
    const int order = qp_order(f);
    CHECK(order <= static_cast<int>(bohr_spectrum(f).size()));
    CHECK(order <= 3);
    CHECK(qp_order(scaled(f, cplx(-2.5, 0.75))) == order);
  }
}

TEST_CASE("translate multiplies by exp(i lambda h)") {
  const auto b = basis_one_sqrt2();
  const auto f = scalar_poly(b, {{{"1", "0"}, 1.0}, {{"0", "1"}, {0.0, 2.0}}});
  const auto g = translate(f, 0.7);
  for (double t : {-1.0, 0.0, 2.5}) CHECK(std::abs(scalar_at(g, t) - scalar_at(f, t + 0.7)) < 1e-14);
}
