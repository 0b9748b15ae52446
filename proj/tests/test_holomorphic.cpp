#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "cmi/expr.hpp"
#include "cmi/laurent.hpp"
#include "cmi/rational.hpp"
#include "oracles.hpp"

using namespace cmi;

TEST_CASE("polynomial arithmetic and roots") {
  Poly p = Poly::fromRoots({Complex(1.0, 0.0), Complex(0.0, 2.0), Complex(-0.5, 0.5)});
  auto roots = p.roots();
  REQUIRE(roots.size() == 3);
  for (Complex r : roots) CHECK(std::abs(p(r)) < 1e-10);

  Poly a({1.0, 2.0, 3.0}), b({0.5, 1.0});
  auto [q, r] = a.divmod(b);
  // Reconstruction: a = q*b + r.
  for (Complex z : {Complex(0.3, 0.1), Complex(-1.0, 0.7)}) {
    CHECK(std::abs(a(z) - (q(z) * b(z) + r(z))) < 1e-12);
  }
  CHECK(r.degree() < b.degree());

  Poly d = a.derivative();
  CHECK(d.coeffs() == std::vector<Complex>{Complex(2.0), Complex(6.0)});
}

TEST_CASE("rational normal form cancels common roots") {
  // (z^2 - 1)/(z - 1) -> z + 1, finite at z = 1.
  RationalMap r(Poly({-1.0, 0.0, 1.0}), Poly({-1.0, 1.0}));
  CHECK(std::abs(r(Complex(1.0, 0.0)) - 2.0) < 1e-9);
  CHECK(r.den().degree() == 0);
}

TEST_CASE("normalization is idempotent") {
  RationalMap r(Poly({1.0, 2.0, 1.0}), Poly({2.0, 2.0}));
  RationalMap again(r.num(), r.den());
  auto close = [](const Poly& a, const Poly& b) {
    REQUIRE(a.coeffs().size() == b.coeffs().size());
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
      CHECK(std::abs(a.coeffs()[i] - b.coeffs()[i]) < 1e-14);
    }
  };
  close(r.num(), again.num());
  close(r.den(), again.den());
}

TEST_CASE("rational derivative matches finite differences") {
  RationalMap r(Poly({1.0, Complex(0.0, 1.0), 2.0}), Poly::fromRoots({Complex(2.0, 1.0)}));
  RationalMap d = r.derivative();
  Complex z(0.3, -0.4);
  double h = 1e-6;
  Complex fd = (r(z + h) - r(z - h)) / (2.0 * h);
  CHECK(std::abs(d(z) - fd) < 1e-8);
}

TEST_CASE("poles and zeros with multiplicity") {
  RationalMap r(Poly::fromRoots({Complex(0.5, 0.0), Complex(0.5, 0.0)}),
                Poly::fromRoots({Complex(0.0), Complex(2.0, 0.0)}));
  auto zeros = r.zeros();
  REQUIRE(zeros.size() == 1);
  CHECK(zeros[0].second == 2);
  auto poles = r.poles();
  REQUIRE(poles.size() == 2);
  CHECK_THROWS_AS(r(Complex(0.0)), NearPole);
}

TEST_CASE("residue oracle cross-check at a double pole") {
  // z/(z-c)^2 has residue 1 at c.
  Complex c(0.1, 0.05);
  RationalMap r(Poly::identity(), Poly::fromRoots({c, c}));
  HomologyLoop loop{Complex(0.0), 0.5, +1};
  CHECK(std::abs(cmitest::residueIntegralOracle(r, loop) - Complex(0.0, 2.0 * kPi)) < 1e-10);
}

TEST_CASE("Laurent expansion is linear in its coefficients") {
  CircularDomain two({{Complex(-0.4, 0.0), 0.15}, {Complex(0.45, 0.1), 0.12}});
  LaurentExpansion u = LaurentExpansion::forDomain(two, 4);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (std::size_t i = 0; i < u.size(); ++i) u.setCoefficient(i, Complex(d(rng), d(rng)));
  for (Complex z : {Complex(0.1, 0.6), Complex(-0.7, 0.2), Complex(0.8, -0.3)}) {
    Complex direct = u(z);
    Complex fromBasis = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) fromBasis += u.coefficient(i) * u.basis(i, z);
    CHECK(std::abs(direct - fromBasis) < 1e-12 * (1.0 + std::abs(direct)));
  }
}

TEST_CASE("raised expansion preserves values of existing coefficients") {
  CircularDomain ann({{Complex(0.0), 0.3}});
  LaurentExpansion u = LaurentExpansion::forDomain(ann, 2);
  u.setCoefficient(1, Complex(0.5, 0.25));
  u.setCoefficient(3, Complex(-0.2, 0.1));  // first kernel coefficient
  LaurentExpansion v = u.raised(5);
  CHECK(v.degree() == 5);
  for (Complex z : {Complex(0.5, 0.0), Complex(0.0, -0.7)}) {
    CHECK(std::abs(u(z) - v(z)) < 1e-14);
  }
}

TEST_CASE("expression parser") {
  RationalMap r = parseRational("(z^2 + 1)/(z - 2) + 3*z");
  Complex z(0.4, 0.3);
  Complex want = (z * z + 1.0) / (z - 2.0) + 3.0 * z;
  CHECK(std::abs(r(z) - want) < 1e-12);

  RationalMap ri = parseRational("i*z + 2.5e-1");
  CHECK(std::abs(ri(z) - (Complex(0.0, 1.0) * z + 0.25)) < 1e-14);

  CHECK_THROWS_AS(parseRational("exp(z)"), ParseError);
  CHECK_THROWS_AS(parseRational("z +"), ParseError);
  CHECK_THROWS_AS(parseRational("q + 1"), ParseError);

  auto f = parsePathFunction("exp(i*2*pi*s)");
  CHECK(std::abs(f(0.25) - Complex(0.0, 1.0)) < 1e-12);
}

TEST_CASE("exp multiplier and spray evaluation") {
  CircularDomain ann({{Complex(0.0), 0.3}});
  ExpMultiplier h;
  h.u = LaurentExpansion::forDomain(ann, 2);
  h.u.setCoefficient(1, Complex(0.3, 0.1));
  Complex z(0.5, 0.2);
  CHECK(std::abs(h(z) - std::exp(Complex(0.3, 0.1) * z)) < 1e-14);

  SprayMultiplier s;
  s.basis = {RationalMap::identity()};
  s.zeta = {Complex(0.0)};
  CHECK(std::abs(s(z) - 1.0) < 1e-15);  // Xi(0, .) == 1
  s.zeta = {Complex(0.5, 0.0)};
  CHECK(std::abs(s(z) - (1.0 + 0.5 * z)) < 1e-14);
}
