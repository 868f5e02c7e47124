#include <algorithm>

#include "support.hpp"

using namespace dvl;
using namespace dvl::test;

namespace {

/// Greedy matching distance between two root multisets.
double match_error(std::vector<cplx> got, const std::vector<cplx>& want) {
  double worst = 0.0;
  for (const cplx w : want) {
    auto it = std::min_element(got.begin(), got.end(), [&](cplx a, cplx b) { return std::abs(a - w) < std::abs(b - w); });
    worst = std::max(worst, std::abs(*it - w));
    got.erase(it);
  }
  return worst;
}

}  // namespace

TEST_CASE("polynomial_roots recovers planted roots") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cplx> roots;
    const int n = 2 + trial % 9;
    for (int k = 0; k < n; ++k) roots.push_back(random_point(rng, 1.5));
    const Polynomial p = Polynomial::from_roots(roots, random_unimodular(rng));
    const std::vector<cplx> got = polynomial_roots(p);
    REQUIRE(got.size() == roots.size());
    CHECK(match_error(got, roots) < 1e-9);
  }
}

TEST_CASE("polynomial_roots on constants and linear factors") {
  CHECK(polynomial_roots(Polynomial{3.0}).empty());
  const std::vector<cplx> r = polynomial_roots(Polynomial{-0.5, 1.0});
  REQUIRE(r.size() == 1);
  CHECK(close(r[0], 0.5, 1e-15));
}

TEST_CASE("polynomial_roots on cube roots of unity") {
  const std::vector<cplx> r = polynomial_roots(Polynomial{-1.0, 0.0, 0.0, 1.0});
  CHECK(match_error(r, {cplx{1.0}, kOmega, kOmega2}) < 1e-14);
}

TEST_CASE("count_roots_in_disc agrees with the planted count") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<cplx> roots;
    int inside = 0;
    for (int k = 0; k < 6; ++k) {
      cplx z = random_point(rng, 2.0);
      if (std::abs(std::abs(z) - 1.0) < 0.01) z *= 1.05;
      inside += std::abs(z) < 1.0;
      roots.push_back(z);
    }
    CHECK(count_roots_in_disc(Polynomial::from_roots(roots)) == inside);
  }
}

TEST_CASE("count_roots_in_disc resolves clustered roots near the contour") {
  const std::vector<cplx> roots{cplx{0.999}, cplx{1.001}, cplx{0.0, 0.9995}, cplx{-0.5}};
  CHECK(count_roots_in_disc(Polynomial::from_roots(roots)) == 3);
}

TEST_CASE("count_roots_in_disc refuses roots on the contour") {
  CHECK_THROWS_AS(count_roots_in_disc(Polynomial::from_roots(std::vector<cplx>{cplx{1.0}, cplx{0.2}})), RootFindingFailure);
}

TEST_CASE("deflate divides out a root") {
  const std::vector<cplx> roots{cplx{0.3, 0.1}, cplx{-0.7}, cplx{2.0, -1.0}};
  const Polynomial p = Polynomial::from_roots(roots);
  const Polynomial q = deflate(p, roots[1]);
  CHECK(q.degree() == 2);
  for (const cplx z : {cplx{0.5}, cplx{0.1, 0.9}}) CHECK(close(q(z) * (z - roots[1]), p(z), 1e-13));
}

TEST_CASE("canonicalize cancels shared factors") {
  const RationalMap b = RationalMap::blaschke_factor(0.4);
  const RationalMap padded(b.num() * Polynomial{-0.25, 1.0}, b.den() * Polynomial{-0.25, 1.0});
  const RationalMap c = canonicalize(padded);
  CHECK(c.num().degree() == 1);
  CHECK(c.den().degree() == 1);
  for (const cplx z : {cplx{0.1, 0.2}, cplx{-0.6}}) CHECK(close(rat_eval(c, z), rat_eval(b, z), 1e-13));

  const RationalMap untouched = canonicalize(b);
  CHECK(untouched.num().degree() == 1);
}
