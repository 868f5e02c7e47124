#pragma once

// The kernel k^f(z, w) = 1 / (1 - ⟨f(z), f(w)⟩), its Gram and Pick matrices,
// the induced metric d_f, and the boundary path quantities near a crossing.

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "dvl/embedding.hpp"
#include "dvl/hermitian.hpp"

namespace dvl {

namespace detail {

inline void check_open_disc(cplx z) {
  if (!(std::abs(z) < 1.0)) throw DomainError("point must lie in the open unit disc");
}

inline void check_nodes(const std::vector<cplx>& nodes) {
  if (nodes.empty()) throw DimensionMismatch("no nodes");
  if (nodes.size() > kMaxDenseDimension) throw DimensionMismatch("dense dimension cap exceeded");
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    check_open_disc(nodes[j]);
    for (std::size_t k = 0; k < j; ++k)
      if (nodes[j] == nodes[k]) throw DomainError("nodes must be distinct");
  }
}

}  // namespace detail

inline cplx kernel_from_inner(cplx ip, const Tolerances& tol) {
  const cplx den = 1.0 - ip;
  if (std::abs(den) < tol.kernel_singularity) throw KernelSingularity("1 - <f(z), f(w)> vanishes");
  return 1.0 / den;
}

inline cplx kernel_eval(const EmbeddingMap& f, cplx z, cplx w, const Tolerances& tol = {}) {
  return kernel_from_inner(emb_inner(f, z, w, tol), tol);
}

/// [k(z_i, z_j)] for distinct interior nodes.
inline HermitianMatrix gram(const EmbeddingMap& f, const std::vector<cplx>& nodes, const Tolerances& tol = {}) {
  detail::check_nodes(nodes);
  std::vector<CVec> img;
  for (const cplx z : nodes) img.push_back(emb_eval(f, z, tol));
  return HermitianMatrix::from_upper(nodes.size(), [&](std::size_t j, std::size_t k) {
    return kernel_from_inner(inner(img[j], img[k]), tol);
  });
}

struct PickInstance {
  std::vector<cplx> nodes;
  std::vector<cplx> targets;
  HermitianMatrix matrix;
};

/// [(1 - w_i conj(w_j)) k(z_i, z_j)].
inline PickInstance pick_matrix(const EmbeddingMap& f, const std::vector<cplx>& nodes, const std::vector<cplx>& targets,
                                const Tolerances& tol = {}) {
  if (nodes.size() != targets.size()) throw DimensionMismatch("nodes and targets differ in length");
  detail::check_nodes(nodes);
  std::vector<CVec> img;
  for (const cplx z : nodes) img.push_back(emb_eval(f, z, tol));
  PickInstance p{nodes, targets, {}};
  p.matrix = HermitianMatrix::from_upper(nodes.size(), [&](std::size_t j, std::size_t k) {
    return (1.0 - targets[j] * std::conj(targets[k])) * kernel_from_inner(inner(img[j], img[k]), tol);
  });
  return p;
}

/// Solvability of the Pick problem: positive semidefiniteness of the Pick
/// matrix with relative tolerance `tol`.
inline bool pick_feasible(const PickInstance& p, double tol = Tolerances{}.psd) { return is_psd(p.matrix, tol); }

/// d_f(z, w) = sqrt(1 - |k(z,w)|² / (k(z,z) k(w,w))).
inline double metric_d(const EmbeddingMap& f, cplx z, cplx w, const Tolerances& tol = {}) {
  detail::check_open_disc(z);
  detail::check_open_disc(w);
  const CVec fz = emb_eval(f, z, tol);
  const CVec fw = emb_eval(f, w, tol);
  const cplx den = 1.0 - inner(fz, fw);
  if (std::abs(den) < tol.kernel_singularity) throw KernelSingularity("1 - <f(z), f(w)> vanishes");
  const double d2 = 1.0 - (1.0 - norm_sq(fz)) * (1.0 - norm_sq(fw)) / std::norm(den);
  return std::sqrt(std::clamp(d2, 0.0, 1.0));
}

/// Multipliers of t in the two path legs; {1, 1} is the natural
/// parametrization, other values probe a mismatched slope.
struct PathSlopes {
  double xi = 1.0;
  double zeta = 1.0;
};

/// The points μ(1 - t/(s_ξ A)) and μ(-1 + t/(s_ζ B)), μ the pair reduction.
inline std::pair<cplx, cplx> boundary_path_points(const BoundaryPairData& data, double t, PathSlopes slopes = {}) {
  if (!(t > 0.0) || !(slopes.xi > 0.0) || !(slopes.zeta > 0.0)) throw DomainError("path parameter and slopes must be positive");
  const double x = t / (slopes.xi * data.A);
  const double y = t / (slopes.zeta * data.B);
  if (!(t < 0.5 * std::min(data.A, data.B)) || x >= 1.0 || y >= 1.0)
    throw PathLeftDisc("path parameter t is too large for this crossing");
  return {data.reduction(cplx{1.0 - x}), data.reduction(cplx{-1.0 + y})};
}

/// d_f² along the boundary paths.
inline double boundary_path_metric(const EmbeddingMap& f, const BoundaryPairData& data, double t, PathSlopes slopes = {},
                                   const Tolerances& tol = {}) {
  const auto [z, w] = boundary_path_points(data, t, slopes);
  const double d = metric_d(f, z, w, tol);
  return d * d;
}

/// ‖k_z - k_w‖² = k(z,z) - 2 Re k(z,w) + k(w,w) along the boundary paths.
inline double kernel_diff_norm_sq(const EmbeddingMap& f, const BoundaryPairData& data, double t,
                                  const Tolerances& tol = {}) {
  const auto [z, w] = boundary_path_points(data, t);
  return kernel_eval(f, z, z, tol).real() - 2.0 * kernel_eval(f, z, w, tol).real() + kernel_eval(f, w, w, tol).real();
}

/// (1/4)(C/A² + D/B² + 2 Re E/(AB)), the limit of kernel_diff_norm_sq as t → 0.
inline double kernel_diff_limit(const BoundaryPairData& d) {
  return 0.25 * (d.C / (d.A * d.A) + d.D / (d.B * d.B) + 2.0 * d.E.real() / (d.A * d.B));
}

/// The limit of boundary_path_metric as t → 0 for slopes (s, u):
/// ((s - u)/(s + u))².
inline double boundary_path_metric_limit(PathSlopes slopes) {
  const double q = (slopes.xi - slopes.zeta) / (slopes.xi + slopes.zeta);
  return q * q;
}

struct ExpansionTerm {
  double x = 0.0;
  cplx numeric{0.0};
  cplx model{0.0};
  double residual = 0.0;
};

struct ExpansionCheck {
  ExpansionTerm xi_side;    // 1 - ‖g(1-x)‖²  vs  2Ax - (C + 2 Re F)x²
  ExpansionTerm zeta_side;  // 1 - ‖g(-1+x)‖² vs  2Bx - (D + 2 Re G)x²
  ExpansionTerm cross;      // 1 - ⟨g(1-x), g(-1+x)⟩ vs (A+B)x + (E - conj F - G)x²
};

namespace detail {

inline void check_expansion_step(double x) {
  if (!(x > 1e-6) || !(x < 1e-2)) throw DomainError("expansion step must lie in (1e-6, 1e-2)");
}

}  // namespace detail

/// Second-order boundary expansions of g = f ∘ μ against direct evaluation.
/// The residuals are O(x³).
inline ExpansionCheck expansion_coefficients_check(const EmbeddingMap& f, const BoundaryPairData& d, double x,
                                                   const Tolerances& tol = {}) {
  detail::check_expansion_step(x);
  const CVec gp = emb_eval(f, d.reduction(cplx{1.0 - x}), tol);
  const CVec gm = emb_eval(f, d.reduction(cplx{-1.0 + x}), tol);
  ExpansionCheck e;
  auto fill = [x](ExpansionTerm& t, cplx numeric, cplx model) {
    t.x = x;
    t.numeric = numeric;
    t.model = model;
    t.residual = std::abs(numeric - model);
  };
  fill(e.xi_side, 1.0 - norm_sq(gp), 2.0 * d.A * x - (d.C + 2.0 * d.F.real()) * x * x);
  fill(e.zeta_side, 1.0 - norm_sq(gm), 2.0 * d.B * x - (d.D + 2.0 * d.G.real()) * x * x);
  fill(e.cross, 1.0 - inner(gp, gm), (d.A + d.B) * x + (d.E - std::conj(d.F) - d.G) * x * x);
  return e;
}

/// One-sided version at a single boundary point: 1 - ‖f(ξ(1-x))‖² against
/// 2Ax - (C + 2 Re F)x².
inline ExpansionTerm expansion_side_check(const EmbeddingMap& f, const BoundarySideData& s, double x,
                                          const Tolerances& tol = {}) {
  detail::check_expansion_step(x);
  ExpansionTerm t;
  t.x = x;
  t.numeric = 1.0 - norm_sq(emb_eval(f, s.point * (1.0 - x), tol));
  t.model = 2.0 * s.A * x - (s.C + 2.0 * s.F.real()) * x * x;
  t.residual = std::abs(t.numeric - t.model);
  return t;
}

}  // namespace dvl
