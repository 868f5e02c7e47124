#pragma once

// Embedding maps f = scale · (c_1, …, c_d): D → B_d built from rational
// components, their derivatives, numerical validation, and the
// boundary expansion constants at a crossing pair.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "dvl/complex_rational.hpp"

namespace dvl {

using CVec = std::vector<cplx>;

/// ⟨u, v⟩ = Σ u_j conj(v_j)
inline cplx inner(const CVec& u, const CVec& v) {
  cplx acc{0.0};
  for (std::size_t j = 0; j < u.size(); ++j) acc += u[j] * std::conj(v[j]);
  return acc;
}

inline double norm_sq(const CVec& u) {
  double acc = 0.0;
  for (const cplx x : u) acc += std::norm(x);
  return acc;
}

inline double distance(const CVec& u, const CVec& v) {
  double acc = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) acc += std::norm(u[j] - v[j]);
  return std::sqrt(acc);
}

class EmbeddingMap {
 public:
  EmbeddingMap(double scale, std::vector<RationalMap> components)
      : scale_(scale), components_(std::move(components)) {
    if (components_.empty()) throw DomainError("embedding map needs at least one component");
    if (!(scale_ > 0.0) || !std::isfinite(scale_)) throw DomainError("embedding scale must be positive");
    jets_.reserve(components_.size());
    for (const RationalMap& c : components_) jets_.emplace_back(c);
  }

  [[nodiscard]] int dim() const { return static_cast<int>(components_.size()); }
  [[nodiscard]] double scale() const { return scale_; }
  [[nodiscard]] const std::vector<RationalMap>& components() const { return components_; }
  [[nodiscard]] const std::vector<RationalJetForm>& jets() const { return jets_; }

 private:
  double scale_;
  std::vector<RationalMap> components_;
  std::vector<RationalJetForm> jets_;
};

namespace detail {

inline void check_closed_disc(cplx z) {
  if (std::abs(z) > 1.0 + 1e-9) throw DomainError("point lies outside the closed unit disc");
}

inline CVec eval_order(const EmbeddingMap& f, std::size_t order, cplx z, const Tolerances& tol) {
  check_closed_disc(z);
  CVec out(f.jets().size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = f.scale() * rat_jet(f.jets()[j], z, tol)[order];
  return out;
}

}  // namespace detail

inline CVec emb_eval(const EmbeddingMap& f, cplx z, const Tolerances& tol = {}) {
  return detail::eval_order(f, 0, z, tol);
}
inline CVec emb_deriv1(const EmbeddingMap& f, cplx z, const Tolerances& tol = {}) {
  return detail::eval_order(f, 1, z, tol);
}
inline CVec emb_deriv2(const EmbeddingMap& f, cplx z, const Tolerances& tol = {}) {
  return detail::eval_order(f, 2, z, tol);
}

/// ⟨f(z), f(w)⟩
inline cplx emb_inner(const EmbeddingMap& f, cplx z, cplx w, const Tolerances& tol = {}) {
  return inner(emb_eval(f, z, tol), emb_eval(f, w, tol));
}

/// f ∘ μ, composed at coefficient level.
inline EmbeddingMap emb_compose(const EmbeddingMap& f, const Moebius& mu) {
  const RationalMap m = mu.as_rational();
  std::vector<RationalMap> comps;
  comps.reserve(f.components().size());
  for (const RationalMap& c : f.components()) comps.push_back(rat_compose(c, m));
  return {f.scale(), std::move(comps)};
}

struct ValidationReport {
  bool sphere_attachment_ok = false;
  double max_boundary_deviation = 0.0;  // max | ‖f(e^{iθ})‖² - 1 |
  double max_interior_norm_sq = 0.0;    // over r ∈ {0.5, 0.9, 0.99}

  bool derivative_nonvanishing_ok = false;
  double min_derivative_norm = 0.0;

  bool injectivity_ok = false;
  cplx worst_pair_z{0.0};
  cplx worst_pair_w{0.0};
  double worst_pair_distance = std::numeric_limits<double>::infinity();

  bool transversality_ok = false;
  double min_a_invariant = 0.0;

  std::string pole_message;  // set when evaluation hit a pole

  [[nodiscard]] bool ok() const {
    return sphere_attachment_ok && derivative_nonvanishing_ok && injectivity_ok && transversality_ok;
  }
};

namespace detail {

struct CollisionResult {
  cplx z;
  cplx w;
  double distance;
  bool reached_boundary;  // a step tried to leave the open disc
};

/// Damped complex Gauss-Newton on f(z) - f(w) = 0. Stops as soon as a step
/// would leave |z| < 1 - 1e-6: such a pair is approaching a boundary
/// crossing rather than an interior collision.
inline CollisionResult refine_collision(const EmbeddingMap& f, cplx z, cplx w, const Tolerances& tol) {
  constexpr double kInteriorMargin = 1e-6;
  auto residual = [&](cplx a, cplx b) { return distance(emb_eval(f, a, tol), emb_eval(f, b, tol)); };
  double r = residual(z, w);
  for (int iter = 0; iter < 60 && r > 1e-15; ++iter) {
    const CVec fz = emb_eval(f, z, tol);
    const CVec fw = emb_eval(f, w, tol);
    const CVec dz = emb_deriv1(f, z, tol);
    const CVec dw = emb_deriv1(f, w, tol);
    CVec res(fz.size());
    CVec jw(fz.size());
    for (std::size_t k = 0; k < fz.size(); ++k) {
      res[k] = fz[k] - fw[k];
      jw[k] = -dw[k];
    }
    // Normal equations (J^H J + μI) δ = -J^H F, J = [f'(z), -f'(w)].
    // (J^H J)_{12} = Σ conj(J_z) J_w = inner(jw, dz); (J^H F)_k = inner(res, J_k).
    const double n11 = norm_sq(dz);
    const double n22 = norm_sq(jw);
    const cplx n12 = inner(jw, dz);
    const double mu = 1e-12 * (n11 + n22);
    const cplx rhs1 = -inner(res, dz);
    const cplx rhs2 = -inner(res, jw);
    const cplx det = (n11 + mu) * (n22 + mu) - std::norm(n12);
    if (std::abs(det) == 0.0) break;
    const cplx d1 = ((n22 + mu) * rhs1 - n12 * rhs2) / det;
    const cplx d2 = ((n11 + mu) * rhs2 - std::conj(n12) * rhs1) / det;
    double step = 1.0;
    bool improved = false;
    for (int h = 0; h < 30; ++h, step *= 0.5) {
      const cplx zn = z + step * d1;
      const cplx wn = w + step * d2;
      if (std::abs(zn) >= 1.0 - kInteriorMargin || std::abs(wn) >= 1.0 - kInteriorMargin) {
        return {z, w, r, true};
      }
      const double rn = residual(zn, wn);
      if (rn < r) {
        z = zn;
        w = wn;
        r = rn;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return {z, w, r, false};
}

}  // namespace detail

/// Numerical necessary-condition checks for an embedding map attached to the
/// unit sphere. Failures are reported, never thrown.
inline ValidationReport validate(const EmbeddingMap& f, int grid_size = 1024, const Tolerances& tol = {}) {
  if (grid_size < 256) throw DomainError("validation grid must have at least 256 points");
  ValidationReport rep;
  const int n = grid_size;
  try {
    // Boundary: sphere attachment and transversality.
    double max_dev = 0.0;
    double min_a = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
      const cplx xi = std::polar(1.0, 2.0 * kPi * k / n);
      const CVec v = emb_eval(f, xi, tol);
      const CVec d = emb_deriv1(f, xi, tol);
      max_dev = std::max(max_dev, std::abs(norm_sq(v) - 1.0));
      CVec dxi(d);
      for (cplx& x : dxi) x *= xi;
      min_a = std::min(min_a, inner(v, dxi).real());
    }
    rep.max_boundary_deviation = max_dev;
    rep.min_a_invariant = min_a;
    rep.transversality_ok = min_a > tol.transversality;

    double interior = 0.0;
    for (const double r : {0.5, 0.9, 0.99})
      for (int k = 0; k < n; ++k) interior = std::max(interior, norm_sq(emb_eval(f, std::polar(r, 2.0 * kPi * k / n), tol)));
    interior = std::max(interior, norm_sq(emb_eval(f, 0.0, tol)));
    rep.max_interior_norm_sq = interior;
    rep.sphere_attachment_ok = max_dev <= tol.sphere && interior < 1.0;

    // Derivative over the closed disc.
    double min_d = std::sqrt(norm_sq(emb_deriv1(f, 0.0, tol)));
    for (const double r : {0.25, 0.5, 0.75, 0.9, 0.99, 1.0})
      for (int k = 0; k < n; ++k)
        min_d = std::min(min_d, std::sqrt(norm_sq(emb_deriv1(f, std::polar(r, 2.0 * kPi * k / n), tol))));
    rep.min_derivative_norm = min_d;
    rep.derivative_nonvanishing_ok = min_d >= tol.derivative_min;

    // Injectivity: nearest-image scan on a polar mesh, then refinement.
    constexpr int kRadial = 20;
    constexpr int kAngular = 64;
    constexpr double kSeedSeparation = 0.1;
    constexpr double kDistinct = 1e-3;
    std::vector<cplx> mesh{0.0};
    for (int i = 1; i < kRadial; ++i)
      for (int k = 0; k < kAngular; ++k) mesh.push_back(std::polar(0.05 * i, 2.0 * kPi * k / kAngular));
    std::vector<CVec> images;
    std::vector<double> lip;
    images.reserve(mesh.size());
    for (const cplx z : mesh) {
      images.push_back(emb_eval(f, z, tol));
      lip.push_back(std::sqrt(norm_sq(emb_deriv1(f, z, tol))));
    }
    const double spacing = 2.0 * kPi * 0.95 / kAngular;
    rep.injectivity_ok = true;
    for (std::size_t i = 0; i < mesh.size(); ++i) {
      std::size_t best = mesh.size();
      double best_dist = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < mesh.size(); ++j) {
        if (j == i || std::abs(mesh[i] - mesh[j]) <= kSeedSeparation) continue;
        const double dd = distance(images[i], images[j]);
        if (dd < best_dist) {
          best_dist = dd;
          best = j;
        }
      }
      if (best == mesh.size() || best_dist > (lip[i] + lip[best]) * spacing) continue;
      const detail::CollisionResult c = detail::refine_collision(f, mesh[i], mesh[best], tol);
      if (c.reached_boundary || std::abs(c.z - c.w) <= kDistinct) continue;
      if (c.distance < rep.worst_pair_distance) {
        rep.worst_pair_distance = c.distance;
        rep.worst_pair_z = c.z;
        rep.worst_pair_w = c.w;
      }
      if (c.distance <= tol.injectivity) rep.injectivity_ok = false;
    }
  } catch (const PoleError& e) {
    rep.pole_message = e.what();
    rep.sphere_attachment_ok = false;
    rep.derivative_nonvanishing_ok = false;
    rep.injectivity_ok = false;
    rep.transversality_ok = false;
  }
  return rep;
}

/// Expansion constants of f at one boundary point ξ, read off f ∘ (z ↦ ξz) at 1.
struct BoundarySideData {
  cplx point{1.0};
  double A = 0.0;  // ⟨f(ξ), f'(ξ) ξ⟩
  double C = 0.0;  // ‖f'(ξ)‖²
  cplx F{0.0};     // ⟨f(ξ), f''(ξ) ξ²⟩ / 2
};

/// Constants A..G of the boundary expansion at a crossing pair, computed for
/// g = f ∘ μ where μ is the canonical automorphism with μ(1) = ξ, μ(-1) = ζ.
struct BoundaryPairData {
  cplx xi{1.0};
  cplx zeta{-1.0};
  Moebius reduction;
  double A = 0.0;  // ⟨g(1), g'(1)⟩
  double B = 0.0;  // -⟨g(-1), g'(-1)⟩
  double C = 0.0;  // ‖g'(1)‖²
  double D = 0.0;  // ‖g'(-1)‖²
  cplx E{0.0};     // ⟨g'(1), g'(-1)⟩
  cplx F{0.0};     // ⟨g(1), g''(1)⟩ / 2
  cplx G{0.0};     // ⟨g(-1), g''(-1)⟩ / 2
};

namespace detail {

struct Jet {
  CVec value, d1, d2;
};

/// Value and first two derivatives of f ∘ μ at z by the chain rule.
inline Jet composed_jet(const EmbeddingMap& f, const Moebius& mu, cplx z, const Tolerances& tol) {
  const cplx w = mu(z);
  const cplx den = 1.0 - std::conj(mu.a()) * z;
  const cplx m1 = mu.derivative(z);
  const cplx m2 = 2.0 * mu.lambda() * (std::norm(mu.a()) - 1.0) * std::conj(mu.a()) / (den * den * den);
  Jet j{emb_eval(f, w, tol), emb_deriv1(f, w, tol), emb_deriv2(f, w, tol)};
  for (std::size_t k = 0; k < j.d1.size(); ++k) {
    j.d2[k] = j.d2[k] * m1 * m1 + j.d1[k] * m2;
    j.d1[k] *= m1;
  }
  return j;
}

inline void check_unimodular(cplx xi, const Tolerances& tol) {
  if (std::abs(std::abs(xi) - 1.0) > tol.unimodular) throw DomainError("boundary point is not unimodular");
}

}  // namespace detail

inline BoundarySideData boundary_side_data(const EmbeddingMap& f, cplx xi, const Tolerances& tol = {}) {
  detail::check_unimodular(xi, tol);
  const detail::Jet j = detail::composed_jet(f, Moebius::rotation(xi), 1.0, tol);
  BoundarySideData s;
  s.point = xi;
  const cplx a = inner(j.value, j.d1);
  if (std::abs(a.imag()) > tol.a_imag || a.real() <= tol.transversality)
    throw TransversalityViolation("A_f is not positive at the boundary point");
  s.A = a.real();
  s.C = norm_sq(j.d1);
  s.F = 0.5 * inner(j.value, j.d2);
  return s;
}

inline BoundaryPairData boundary_pair_data(const EmbeddingMap& f, cplx xi, cplx zeta, const Tolerances& tol = {}) {
  detail::check_unimodular(xi, tol);
  detail::check_unimodular(zeta, tol);
  if (std::abs(xi - zeta) <= tol.class_identity) throw NotACrossing("crossing pair needs two distinct points");
  const double gap = distance(emb_eval(f, xi, tol), emb_eval(f, zeta, tol));
  if (gap > tol.crossing) throw NotACrossing("f(xi) and f(zeta) differ by " + std::to_string(gap));

  BoundaryPairData d;
  d.xi = xi;
  d.zeta = zeta;
  d.reduction = moebius_pair_reduction(xi, zeta);
  const detail::Jet p = detail::composed_jet(f, d.reduction, 1.0, tol);
  const detail::Jet m = detail::composed_jet(f, d.reduction, -1.0, tol);
  const cplx a = inner(p.value, p.d1);
  const cplx b = -inner(m.value, m.d1);
  if (std::abs(a.imag()) > tol.a_imag || std::abs(b.imag()) > tol.a_imag || a.real() <= tol.transversality ||
      b.real() <= tol.transversality) {
    throw TransversalityViolation("A or B is not positive at the crossing pair");
  }
  d.A = a.real();
  d.B = b.real();
  d.C = norm_sq(p.d1);
  d.D = norm_sq(m.d1);
  d.E = inner(p.d1, m.d1);
  d.F = 0.5 * inner(p.value, p.d2);
  d.G = 0.5 * inner(m.value, m.d2);
  return d;
}

}  // namespace dvl
