#pragma once

#include <complex>
#include <random>
#include <vector>

#include "catch_amalgamated.hpp"
#include "dvl/dvl.hpp"

namespace dvl::test {

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

inline bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

/// Central difference of a holomorphic function along the real axis.
template <typename F>
cplx central_difference(F&& f, cplx z, double h = 1e-5) {
  return (f(z + h) - f(z - h)) / (2.0 * h);
}

inline cplx random_point(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
}

inline cplx random_unimodular(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  return std::polar(1.0, u(rng));
}

inline Moebius random_moebius(std::mt19937_64& rng, double radius = 0.8) {
  return {random_unimodular(rng), random_point(rng, radius)};
}

inline EmbeddingMap identity_disc() { return {1.0, {RationalMap::identity()}}; }

}  // namespace dvl::test
