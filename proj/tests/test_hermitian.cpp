#include "psd_oracle.hpp"
#include "support.hpp"

using namespace dvl;
using namespace dvl::test;

namespace {

HermitianMatrix real2(double a, double b, double c) { return HermitianMatrix(2, {a, b, b, c}); }

}  // namespace

TEST_CASE("is_psd on small matrices") {
  CHECK(is_psd(HermitianMatrix(3, {1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0}), 1e-10));
  CHECK_FALSE(is_psd(real2(1.0, 2.0, 1.0), 1e-10));
  CHECK(is_psd(real2(1.0, 1.0, 1.0), 1e-10));
  CHECK(is_psd(real2(1.0, 1.0, 1.0), 0.0));
  CHECK(is_psd(HermitianMatrix(1, {0.0}), 0.0));
  CHECK_FALSE(is_psd(HermitianMatrix(1, {-1e-3}), 1e-10));
}

TEST_CASE("hermitian_eigenvalues on a 2x2 example") {
  const std::vector<double> ev = hermitian_eigenvalues(real2(1.0, 2.0, 1.0));
  REQUIRE(ev.size() == 2);
  CHECK_THAT(ev[0], WithinAbs(-1.0, 1e-14));
  CHECK_THAT(ev[1], WithinAbs(3.0, 1e-14));
}

TEST_CASE("hermitian_eigenvalues agree with the dense oracle") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 60; ++i) {
    const RandomHermitian r = random_hermitian(rng, i);
    const std::vector<double> ours = hermitian_eigenvalues(r.matrix);
    const std::vector<double> ref = eigen_eigenvalues(r.matrix);
    REQUIRE(ours.size() == ref.size());
    for (std::size_t k = 0; k < ours.size(); ++k) CHECK(std::abs(ours[k] - ref[k]) <= 1e-12 * std::max(1.0, r.matrix.norm_inf()));
  }
}

TEST_CASE("is_psd agrees with the dense oracle") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 200; ++i) {
    const RandomHermitian r = random_hermitian(rng, i);
    for (const double tol : {1e-10, 0.0}) {
      // Without slack the sign of a zero eigenvalue is rounding noise.
      if (tol == 0.0 && r.kind.find("singular") != std::string::npos) continue;
      INFO(r.kind << " dim " << r.matrix.dimension() << " tol " << tol);
      CHECK(is_psd(r.matrix, tol) == eigen_is_psd(r.matrix, tol));
    }
  }
}

TEST_CASE("psd_check reports its evidence") {
  const PsdReport clear = psd_check(real2(2.0, 0.5, 2.0), 1e-10);
  CHECK(clear.psd);
  CHECK_FALSE(clear.used_eigen_fallback);
  CHECK(clear.min_pivot > 1.0);

  const PsdReport marginal = psd_check(real2(1.0, 1.0, 1.0), 0.0);
  CHECK(marginal.psd);
  CHECK(marginal.used_eigen_fallback);
}

TEST_CASE("HermitianMatrix input checks") {
  CHECK_THROWS_AS(HermitianMatrix(2, {1.0, 2.0, 3.0, 1.0}), NonHermitianInput);
  CHECK_THROWS_AS(HermitianMatrix(2, {cplx{1.0, 1.0}, 0.0, 0.0, 1.0}), NonHermitianInput);
  CHECK_THROWS_AS(HermitianMatrix(2, {1.0, 0.0, 0.0}), DimensionMismatch);
  CHECK_THROWS_AS(HermitianMatrix(0, {}), DimensionMismatch);
  CHECK_THROWS_AS(HermitianMatrix::from_upper(kMaxDenseDimension + 1, [](std::size_t, std::size_t) { return cplx{0.0}; }),
                  DimensionMismatch);
}
