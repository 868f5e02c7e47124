#include "support.hpp"

using namespace dvl;
using namespace dvl::test;

namespace {

cplx brute_eval(const Polynomial& p, cplx z) {
  cplx acc{0.0};
  for (int k = 0; k <= p.degree(); ++k) acc += p[k] * std::pow(z, k);
  return acc;
}

Polynomial random_poly(std::mt19937_64& rng, int degree) {
  std::vector<cplx> c;
  for (int k = 0; k <= degree; ++k) c.push_back(random_point(rng, 2.0));
  return Polynomial(c);
}

}  // namespace

TEST_CASE("rat_eval on Blaschke factors and the identity") {
  const RationalMap b = RationalMap::blaschke_factor(0.5);
  CHECK(std::abs(rat_eval(b, 0.5)) < 1e-16);
  CHECK(close(rat_eval(b, 0.0), -0.5, 1e-16));
  CHECK(close(rat_eval(RationalMap::identity(), {0.3, 0.4}), {0.3, 0.4}, 0.0));
}

TEST_CASE("rat_eval throws at a pole") {
  const RationalMap b = RationalMap::blaschke_factor(0.5);
  CHECK_THROWS_AS(rat_eval(b, 2.0), PoleError);
  CHECK_THROWS_AS(RationalMap(Polynomial{1.0}, Polynomial{0.0}), DomainError);
}

TEST_CASE("rat_derivative") {
  const RationalMap z = RationalMap::identity();
  const RationalMap z2 = z * z;
  for (const cplx p : {cplx{0.3, -0.2}, cplx{0.9, 0.0}, cplx{-0.5, 0.5}})
    CHECK(close(rat_eval(rat_derivative(z2), p), 2.0 * p, 1e-15));

  const RationalMap b = RationalMap::blaschke_factor(0.5);
  CHECK(close(rat_eval(rat_derivative(b), 0.0), 0.75, 1e-15));

  const RationalMap c = RationalMap::constant({2.0, 1.0});
  CHECK(rat_derivative(c).num().is_zero());
}

TEST_CASE("rat_derivative agrees with central differences") {
  std::mt19937_64 rng(7);
  const RationalMap r = RationalMap::blaschke_factor(0.3) * RationalMap::blaschke_factor(-0.6) *
                        RationalMap(Polynomial{0.2, 0.0, 1.0});
  const RationalMap d = rat_derivative(r);
  for (int k = 0; k < 20; ++k) {
    const cplx z = random_point(rng, 0.9);
    const cplx fd = central_difference([&](cplx w) { return rat_eval(r, w); }, z);
    CHECK(close(rat_eval(d, z), fd, 1e-7));
  }
}

TEST_CASE("rat_jet matches the coefficient-level derivatives") {
  std::mt19937_64 rng(11);
  const RationalMap r = RationalMap::blaschke_factor(0.7) * RationalMap::blaschke_factor(0.7) *
                        RationalMap(Polynomial{0.0, 0.0, 0.0, 1.0});
  const RationalJetForm jet(r);
  const RationalMap d1 = rat_derivative(r);
  const RationalMap d2 = rat_derivative(d1);
  for (int k = 0; k < 20; ++k) {
    const cplx z = random_point(rng, 1.0);
    const auto v = rat_jet(jet, z);
    CHECK(close(v[0], rat_eval(r, z), 1e-12));
    CHECK(close(v[1], rat_eval(d1, z), 1e-10));
    CHECK(close(v[2], rat_eval(d2, z), 1e-8));
  }
}

TEST_CASE("rat_jet is accurate next to a pole outside the disc") {
  // b_r'(1) = (1 + r)/(1 - r), where the quotient-rule expansion loses digits.
  const double r = 0.9;
  const RationalJetForm jet(RationalMap::blaschke_factor(r) * RationalMap::blaschke_factor(r));
  const auto v = rat_jet(jet, 1.0);
  CHECK_THAT(v[0].real(), WithinAbs(1.0, 1e-15));
  CHECK_THAT(v[1].real(), WithinRel(2.0 * (1.0 + r) / (1.0 - r), 1e-14));
}

TEST_CASE("polynomial arithmetic against brute force") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Polynomial p = random_poly(rng, 4);
    const Polynomial q = random_poly(rng, 3);
    const cplx z = random_point(rng, 1.2);
    CHECK(close(p(z), brute_eval(p, z), 1e-12));
    CHECK(close((p + q)(z), brute_eval(p, z) + brute_eval(q, z), 1e-12));
    CHECK(close((p - q)(z), brute_eval(p, z) - brute_eval(q, z), 1e-12));
    CHECK(close((p * q)(z), brute_eval(p, z) * brute_eval(q, z), 1e-11));
    CHECK(close(p.pow(3)(z), std::pow(brute_eval(p, z), 3), 1e-9 * std::max(1.0, std::pow(std::abs(p(z)), 3))));
    CHECK(std::abs(p(z)) <= p.abs_bound(std::abs(z)) + 1e-12);
  }
  CHECK((Polynomial{1.0, 2.0, 0.0, 0.0}).degree() == 1);
  CHECK(Polynomial::monomial(3.0, 4).degree() == 4);
}

TEST_CASE("rat_compose") {
  const RationalMap b = RationalMap::blaschke_factor(0.5);
  const RationalMap bb = rat_compose(b, b);
  const RationalMap b45 = RationalMap::blaschke_factor(0.8);
  for (const cplx z : {cplx{0.0}, cplx{0.3, 0.4}, cplx{-0.7, 0.1}, cplx{1.0}})
    CHECK(close(rat_eval(bb, z), rat_eval(b45, z), 1e-14));

  const RationalMap r = b * RationalMap(Polynomial{0.1, 0.0, 1.0});
  const RationalMap ri = rat_compose(r, RationalMap::identity());
  for (const cplx z : {cplx{0.2, -0.1}, cplx{0.6, 0.6}}) CHECK(close(rat_eval(ri, z), rat_eval(r, z), 1e-15));

  const RationalMap z = RationalMap::identity();
  const RationalMap z6 = rat_compose(z * z, z * z * z);
  CHECK(z6.num() == Polynomial::monomial(1.0, 6));
  CHECK(z6.den() == Polynomial{1.0});
}

TEST_CASE("rat_compose evaluates as composition") {
  std::mt19937_64 rng(5);
  const RationalMap outer = RationalMap::blaschke_factor(0.4) * RationalMap(Polynomial{0.0, 0.0, 1.0});
  const RationalMap inner = RationalMap::blaschke_factor(-0.3);
  const RationalMap c = rat_compose(outer, inner);
  for (int k = 0; k < 20; ++k) {
    const cplx w = random_point(rng, 1.0);
    CHECK(close(rat_eval(c, w), rat_eval(outer, rat_eval(inner, w)), 1e-13));
  }
}

TEST_CASE("rat_compose refuses oversized degrees") {
  const RationalMap z = RationalMap::identity();
  const RationalMap big(Polynomial::monomial(1.0, 9));
  CHECK_THROWS_AS(rat_compose(big, big), DegreeOverflow);
  CHECK_NOTHROW(rat_compose(big, z * z));
}

TEST_CASE("Moebius normal form") {
  const Moebius id;
  for (const cplx z : {cplx{0.1, 0.2}, cplx{-0.9}, cplx{0.0, 1.0}}) CHECK(close(id(z), z, 1e-16));

  const Moebius b = Moebius::blaschke(0.5);
  CHECK(close(b(1.0), 1.0, 1e-15));
  CHECK(close(b(-1.0), -1.0, 1e-15));
  CHECK(close(b(0.5), 0.0, 1e-16));

  const Moebius inv = moebius_invert(b);
  CHECK(inv.parameter_distance(Moebius::blaschke(-0.5)) < 1e-15);

  const Moebius rot = Moebius::rotation(kOmega);
  CHECK(close(rot(1.0), kOmega, 1e-15));

  CHECK_THROWS_AS(Moebius(2.0, 0.0), DomainError);
  CHECK_THROWS_AS(Moebius(-1.0, 1.0), DomainError);
}

TEST_CASE("Moebius group identities") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Moebius m1 = random_moebius(rng);
    const Moebius m2 = random_moebius(rng);
    const cplx z = random_point(rng, 0.95);
    CHECK(close(moebius_compose(m1, m2)(z), m1(m2(z)), 1e-12));
    CHECK(close(moebius_invert(m1)(m1(z)), z, 1e-12));
    CHECK(moebius_compose(m1, moebius_invert(m1)).parameter_distance(Moebius::identity()) < 1e-12);
    CHECK(std::abs(m1(z)) < 1.0);
    const cplx xi = random_unimodular(rng);
    CHECK_THAT(std::abs(m1(xi)), WithinAbs(1.0, 1e-13));
    CHECK(close(m1.derivative(z), central_difference([&](cplx w) { return m1(w); }, z), 1e-6));
    CHECK(close(rat_eval(m1.as_rational(), z), m1(z), 1e-13));
  }
}

TEST_CASE("Moebius through three boundary points") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const Moebius m = random_moebius(rng);
    const std::array<cplx, 3> from{cplx{1.0}, kOmega, kOmega2};
    const std::array<cplx, 3> to{m(from[0]), m(from[1]), m(from[2])};
    CHECK(Moebius::through_points(from, to).parameter_distance(m) < 1e-10);
  }
  // Reversing the cyclic order cannot be done by a disc automorphism.
  CHECK_THROWS_AS(Moebius::through_points({cplx{1.0}, kOmega, kOmega2}, {cplx{1.0}, kOmega2, kOmega}), DomainError);
}

TEST_CASE("moebius_pair_reduction sends ±1 to the pair") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const cplx xi = random_unimodular(rng);
    const cplx zeta = random_unimodular(rng);
    const Moebius m = moebius_pair_reduction(xi, zeta);
    CHECK(close(m(1.0), xi, 1e-12));
    CHECK(close(m(-1.0), zeta, 1e-12));
  }
  CHECK(moebius_pair_reduction(1.0, -1.0).parameter_distance(Moebius::identity()) < 1e-15);
}
