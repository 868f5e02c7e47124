#pragma once

// Complex polynomials, rational maps and disc automorphisms.
//
// Coefficients are double-precision complex numbers, stored low degree first.
// Arithmetic never cancels common factors; see canonicalize() in roots.hpp for
// the opt-in reduction.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dvl/errors.hpp"
#include "dvl/tolerances.hpp"

namespace dvl {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Principal cube root of unity, built from exact constants rather than a
/// trigonometric call so that conj(ω) == ω² holds bit for bit.
inline const cplx kOmega{-0.5, 0.86602540378443864676};
inline const cplx kOmega2{-0.5, -0.86602540378443864676};

class Polynomial {
 public:
  Polynomial() : coeffs_{cplx{0.0}} {}
  Polynomial(std::initializer_list<cplx> coeffs) : coeffs_(coeffs) { trim(); }
  explicit Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Polynomial constant(cplx c) { return Polynomial{c}; }

  static Polynomial monomial(cplx c, int degree) {
    std::vector<cplx> v(static_cast<std::size_t>(degree) + 1, cplx{0.0});
    v.back() = c;
    return Polynomial(std::move(v));
  }

  /// lead * Π (z - r_k)
  static Polynomial from_roots(std::span<const cplx> roots, cplx lead = 1.0) {
    Polynomial p{lead};
    for (const cplx r : roots) p = p * Polynomial{-r, 1.0};
    return p;
  }

  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == cplx{0.0}; }
  [[nodiscard]] std::span<const cplx> coeffs() const { return coeffs_; }
  [[nodiscard]] cplx operator[](int k) const {
    return k >= 0 && k <= degree() ? coeffs_[static_cast<std::size_t>(k)] : cplx{0.0};
  }
  [[nodiscard]] cplx leading() const { return coeffs_.back(); }

  /// Horner evaluation.
  [[nodiscard]] cplx operator()(cplx z) const {
    cplx acc{0.0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  /// Σ |c_k| r^k, the natural scale for rounding error in operator()(z) at |z| = r.
  [[nodiscard]] double abs_bound(double r) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + std::abs(*it);
    return acc;
  }

  [[nodiscard]] double max_abs_coeff() const {
    double m = 0.0;
    for (const cplx c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  [[nodiscard]] Polynomial derivative() const {
    if (degree() == 0) return {};
    std::vector<cplx> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
    return Polynomial(std::move(d));
  }

  [[nodiscard]] Polynomial pow(int n) const {
    Polynomial out{1.0};
    for (int i = 0; i < n; ++i) out = out * *this;
    return out;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<cplx> v(std::max(a.coeffs_.size(), b.coeffs_.size()), cplx{0.0});
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) v[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) v[k] += b.coeffs_[k];
    return Polynomial(std::move(v));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<cplx> v(a.coeffs_.size() + b.coeffs_.size() - 1, cplx{0.0});
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(v));
  }

  friend Polynomial operator*(cplx s, const Polynomial& p) {
    std::vector<cplx> v(p.coeffs_);
    for (cplx& c : v) c *= s;
    return Polynomial(std::move(v));
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim() {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
    while (coeffs_.size() > 1 && coeffs_.back() == cplx{0.0}) coeffs_.pop_back();
  }

  std::vector<cplx> coeffs_;
};

/// num / den. The denominator is never the zero polynomial; common factors are
/// kept as constructed.
class RationalMap {
 public:
  RationalMap() : num_{0.0}, den_{1.0} {}
  RationalMap(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DomainError("rational map with zero denominator");
  }
  explicit RationalMap(Polynomial p) : num_(std::move(p)), den_{1.0} {}

  static RationalMap identity() { return RationalMap(Polynomial{0.0, 1.0}); }
  static RationalMap constant(cplx c) { return RationalMap(Polynomial{c}); }

  /// b_r(z) = (z - r) / (1 - r z)
  static RationalMap blaschke_factor(double r) {
    return {Polynomial{-r, 1.0}, Polynomial{1.0, -r}};
  }

  [[nodiscard]] const Polynomial& num() const { return num_; }
  [[nodiscard]] const Polynomial& den() const { return den_; }

  friend RationalMap operator*(const RationalMap& a, const RationalMap& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend RationalMap operator*(cplx s, const RationalMap& r) { return {s * r.num_, r.den_}; }

 private:
  Polynomial num_;
  Polynomial den_;
};

inline cplx rat_eval(const RationalMap& r, cplx z, const Tolerances& tol = {}) {
  const cplx d = r.den()(z);
  const double scale = r.den().abs_bound(std::abs(z));
  if (!(std::abs(d) > tol.pole * scale)) {
    throw PoleError("denominator vanishes at z = (" + std::to_string(z.real()) + ", " +
                    std::to_string(z.imag()) + ")");
  }
  return r.num()(z) / d;
}

/// Quotient rule at coefficient level: (n'd - nd') / d².
inline RationalMap rat_derivative(const RationalMap& r) {
  const Polynomial& n = r.num();
  const Polynomial& d = r.den();
  return {n.derivative() * d - n * d.derivative(), d * d};
}

/// Numerator and denominator with their first two derivatives, for
/// evaluating r, r', r'' from values of N and D instead of expanding the
/// quotient rule into coefficients (which cancels badly near poles).
struct RationalJetForm {
  Polynomial n0, n1, n2, d0, d1, d2;

  explicit RationalJetForm(const RationalMap& r)
      : n0(r.num()), n1(n0.derivative()), n2(n1.derivative()),
        d0(r.den()), d1(d0.derivative()), d2(d1.derivative()) {}
};

/// {r(z), r'(z), r''(z)}
inline std::array<cplx, 3> rat_jet(const RationalJetForm& j, cplx z, const Tolerances& tol = {}) {
  const cplx d = j.d0(z);
  if (!(std::abs(d) > tol.pole * j.d0.abs_bound(std::abs(z)))) {
    throw PoleError("denominator vanishes at z = (" + std::to_string(z.real()) + ", " +
                    std::to_string(z.imag()) + ")");
  }
  const cplx v = j.n0(z) / d;
  const cplx dd = j.d1(z);
  const cplx v1 = (j.n1(z) - v * dd) / d;
  const cplx v2 = (j.n2(z) - 2.0 * v1 * dd - v * j.d2(z)) / d;
  return {v, v1, v2};
}

inline constexpr int kMaxComposeDegree = 64;

/// outer ∘ inner by substitution, clearing the inner denominator.
inline RationalMap rat_compose(const RationalMap& outer, const RationalMap& inner) {
  const int n = std::max(outer.num().degree(), outer.den().degree());
  const int m = std::max(inner.num().degree(), inner.den().degree());
  if (n * m > kMaxComposeDegree) {
    throw DegreeOverflow("composition degree " + std::to_string(n * m) + " exceeds " +
                         std::to_string(kMaxComposeDegree));
  }
  std::vector<Polynomial> npow{Polynomial{1.0}};
  std::vector<Polynomial> dpow{Polynomial{1.0}};
  for (int k = 1; k <= n; ++k) {
    npow.push_back(npow.back() * inner.num());
    dpow.push_back(dpow.back() * inner.den());
  }
  auto substitute = [&](const Polynomial& p) {
    Polynomial acc;
    for (int k = 0; k <= p.degree(); ++k) {
      if (p[k] == cplx{0.0}) continue;
      acc = acc + p[k] * (npow[static_cast<std::size_t>(k)] * dpow[static_cast<std::size_t>(n - k)]);
    }
    return acc;
  };
  return {substitute(outer.num()), substitute(outer.den())};
}

/// 2×2 complex matrix acting as z ↦ (m00 z + m01) / (m10 z + m11).
using Mat2 = std::array<cplx, 4>;

inline Mat2 mat_mul(const Mat2& x, const Mat2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

inline Mat2 mat_adjugate(const Mat2& x) { return {x[3], -x[1], -x[2], x[0]}; }

/// Disc automorphism z ↦ λ (a - z) / (1 - ā z), |λ| = 1, |a| < 1.
/// The identity is (λ, a) = (-1, 0); b_r is (-1, r).
class Moebius {
 public:
  Moebius() = default;
  Moebius(cplx lambda, cplx a, const Tolerances& tol = {}) : lambda_(lambda), a_(a) {
    if (std::abs(std::abs(lambda) - 1.0) > tol.unimodular)
      throw DomainError("Moebius factor is not unimodular");
    if (!(std::abs(a) < 1.0)) throw DomainError("Moebius center must lie in the open disc");
  }

  static Moebius identity() { return {}; }
  /// z ↦ w z for |w| = 1.
  static Moebius rotation(cplx w) { return {-w / std::abs(w), 0.0}; }
  static Moebius blaschke(double r) { return {-1.0, r}; }

  /// Recovers (λ, a) from a matrix representative. Throws DomainError if the
  /// matrix is not a disc automorphism.
  static Moebius from_matrix(const Mat2& m) {
    const cplx p = m[0];
    const cplx q = m[1];
    const cplx s = m[3];
    if (s == cplx{0.0} || p == cplx{0.0}) throw DomainError("matrix is not a disc automorphism");
    cplx lambda = -p / s;
    const cplx a = -q / p;
    const double mod = std::abs(lambda);
    if (std::abs(mod - 1.0) > 1e-9 || !(std::abs(a) < 1.0))
      throw DomainError("matrix is not a disc automorphism");
    lambda /= mod;
    return {lambda, a};
  }

  /// The unique automorphism with from[k] ↦ to[k], k = 0, 1, 2. Throws
  /// DomainError when the assignment reverses orientation.
  static Moebius through_points(const std::array<cplx, 3>& from, const std::array<cplx, 3>& to) {
    auto to_standard = [](const std::array<cplx, 3>& z) -> Mat2 {
      // z0 ↦ 0, z1 ↦ ∞, z2 ↦ 1
      return {z[2] - z[1], -z[0] * (z[2] - z[1]), z[2] - z[0], -z[1] * (z[2] - z[0])};
    };
    Mat2 m = mat_mul(mat_adjugate(to_standard(to)), to_standard(from));
    return from_matrix(m);
  }

  [[nodiscard]] cplx lambda() const { return lambda_; }
  [[nodiscard]] cplx a() const { return a_; }

  [[nodiscard]] cplx operator()(cplx z) const { return lambda_ * (a_ - z) / (1.0 - std::conj(a_) * z); }

  [[nodiscard]] cplx derivative(cplx z) const {
    const cplx d = 1.0 - std::conj(a_) * z;
    return lambda_ * (std::norm(a_) - 1.0) / (d * d);
  }

  [[nodiscard]] Mat2 matrix() const { return {-lambda_, lambda_ * a_, -std::conj(a_), 1.0}; }

  [[nodiscard]] RationalMap as_rational() const {
    return {Polynomial{lambda_ * a_, -lambda_}, Polynomial{1.0, -std::conj(a_)}};
  }

  /// max(|Δλ|, |Δa|); (λ, a) is a unique normal form, so this is a distance.
  [[nodiscard]] double parameter_distance(const Moebius& other) const {
    return std::max(std::abs(lambda_ - other.lambda_), std::abs(a_ - other.a_));
  }

 private:
  cplx lambda_{-1.0};
  cplx a_{0.0};
};

inline cplx moebius_apply(const Moebius& m, cplx z) { return m(z); }

/// (m1 ∘ m2)(z) = m1(m2(z)).
inline Moebius moebius_compose(const Moebius& m1, const Moebius& m2) {
  return Moebius::from_matrix(mat_mul(m1.matrix(), m2.matrix()));
}

inline Moebius moebius_invert(const Moebius& m) {
  const cplx lc = std::conj(m.lambda());
  return {lc / std::abs(lc), m.lambda() * m.a()};
}

/// Canonical automorphism with 1 ↦ ξ, -1 ↦ ζ and i ↦ the midpoint of the
/// counterclockwise arc from ξ to ζ. Reduces to the identity for (1, -1).
inline Moebius moebius_pair_reduction(cplx xi, cplx zeta) {
  double t1 = std::arg(xi);
  double t2 = std::arg(zeta);
  if (t2 <= t1) t2 += 2.0 * kPi;
  const double mid = 0.5 * (t1 + t2);
  return Moebius::through_points({cplx{1.0}, cplx{-1.0}, cplx{0.0, 1.0}},
                                 {xi, zeta, std::polar(1.0, mid)});
}

}  // namespace dvl
