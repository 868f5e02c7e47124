#pragma once

// Polynomial root finding for the small systems this library needs: shared-root
// cancellation in rational maps and the injectivity screen of the three-point
// family. Degrees stay below a few dozen.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "dvl/complex_rational.hpp"

namespace dvl {

namespace detail {

inline cplx newton_polish(const Polynomial& p, const Polynomial& dp, cplx z, int steps) {
  for (int i = 0; i < steps; ++i) {
    const cplx v = p(z);
    const cplx d = dp(z);
    if (v == cplx{0.0} || d == cplx{0.0}) break;
    const cplx next = z - v / d;
    if (std::abs(p(next)) >= std::abs(v)) break;
    z = next;
  }
  return z;
}

}  // namespace detail

/// All roots of p with multiplicity (Aberth-Ehrlich iteration, Newton polish).
inline std::vector<cplx> polynomial_roots(const Polynomial& p) {
  const int n = p.degree();
  if (n <= 0) return {};
  const cplx lead = p.leading();
  std::vector<cplx> c(p.coeffs().begin(), p.coeffs().end());
  for (cplx& x : c) x /= lead;
  const Polynomial monic(c);
  const Polynomial dmonic = monic.derivative();

  // Fujiwara bound for the initial circle.
  double radius = 0.0;
  for (int k = 0; k < n; ++k) {
    radius = std::max(radius, std::pow(std::abs(c[static_cast<std::size_t>(k)]), 1.0 / (n - k)));
  }
  radius = std::max(radius, 1e-3);
  std::vector<cplx> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = std::polar(radius, 2.0 * kPi * k / n + 0.4);

  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < 1000; ++iter) {
    double max_step = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      const cplx v = monic(z[i]);
      if (v == cplx{0.0}) continue;
      const cplx ratio = v / dmonic(z[i]);
      cplx sum{0.0};
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      const cplx w = ratio / (1.0 - ratio * sum);
      z[i] -= w;
      max_step = std::max(max_step, std::abs(w) / std::max(1.0, std::abs(z[i])));
    }
    if (max_step <= 4.0 * eps) break;
  }
  for (cplx& r : z) r = detail::newton_polish(monic, dmonic, r, 3);
  std::sort(z.begin(), z.end(), [](cplx a, cplx b) {
    return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : std::arg(a) < std::arg(b);
  });
  return z;
}

/// Number of roots of p inside |z| < radius by the argument principle. An arc
/// is accepted once |p'|_max · (arc length) < |p| at its start, which keeps
/// the image inside a disc around p(start) missing 0, so the principal
/// argument of the quotient is the true change. Throws RootFindingFailure
/// when p vanishes (numerically) on the contour.
inline int count_roots_in_disc(const Polynomial& p, double radius = 1.0) {
  const double floor = 1e-13 * p.abs_bound(radius);
  const double lip = p.derivative().abs_bound(radius);
  auto value = [&](double theta) {
    const cplx v = p(std::polar(radius, theta));
    if (std::abs(v) <= floor) throw RootFindingFailure("polynomial vanishes on the counting contour");
    return v;
  };
  double total = 0.0;
  auto accumulate = [&](auto&& self, double t0, double t1, cplx v0, cplx v1, int depth) -> void {
    if (lip * radius * (t1 - t0) < std::abs(v0)) {
      total += std::arg(v1 / v0);
      return;
    }
    if (depth > 60) throw RootFindingFailure("argument principle subdivision did not resolve");
    const double tm = 0.5 * (t0 + t1);
    const cplx vm = value(tm);
    self(self, t0, tm, v0, vm, depth + 1);
    self(self, tm, t1, vm, v1, depth + 1);
  };
  constexpr int kSegments = 512;
  cplx prev = value(0.0);
  const cplx first = prev;
  for (int k = 1; k <= kSegments; ++k) {
    const double t0 = 2.0 * kPi * (k - 1) / kSegments;
    const double t1 = 2.0 * kPi * k / kSegments;
    const cplx cur = k == kSegments ? first : value(t1);
    accumulate(accumulate, t0, t1, prev, cur, 0);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

/// p / (z - r), discarding the remainder.
inline Polynomial deflate(const Polynomial& p, cplx r) {
  const int n = p.degree();
  if (n <= 0) return p;
  std::vector<cplx> q(static_cast<std::size_t>(n));
  cplx carry = p[n];
  for (int k = n - 1; k >= 0; --k) {
    q[static_cast<std::size_t>(k)] = carry;
    carry = p[k] + r * carry;
  }
  return Polynomial(std::move(q));
}

/// Cancels numerator/denominator roots that agree within tol.canonicalize
/// (relative to max(1, |root|)).
inline RationalMap canonicalize(const RationalMap& r, const Tolerances& tol = {}) {
  if (r.num().degree() < 1 || r.den().degree() < 1) return r;
  const std::vector<cplx> num_roots = polynomial_roots(r.num());
  std::vector<cplx> den_roots = polynomial_roots(r.den());
  std::vector<bool> used(den_roots.size(), false);
  Polynomial num = r.num();
  Polynomial den = r.den();
  for (const cplx zn : num_roots) {
    std::size_t best = den_roots.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < den_roots.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(zn - den_roots[j]);
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    if (best == den_roots.size() || best_dist > tol.canonicalize * std::max(1.0, std::abs(zn))) continue;
    used[best] = true;
    const cplx common = 0.5 * (zn + den_roots[best]);
    num = deflate(num, common);
    den = deflate(den, common);
  }
  return {num, den};
}

}  // namespace dvl
