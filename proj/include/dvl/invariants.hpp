#pragma once

// Boundary self-crossings, the semi-invariant A_f(ξ) = ⟨f(ξ), f'(ξ)ξ⟩, and the
// necessary conditions it gives for two multiplier algebras to be isomorphic.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "dvl/embedding.hpp"

namespace dvl {

/// A_f(ξ) = Re⟨f(ξ), f'(ξ)ξ⟩. Throws TransversalityViolation when the
/// imaginary part is not negligible or the value is not positive.
inline double a_invariant(const EmbeddingMap& f, cplx xi, const Tolerances& tol = {}) {
  if (std::abs(std::abs(xi) - 1.0) > tol.unimodular) throw DomainError("boundary point is not unimodular");
  CVec d = emb_deriv1(f, xi, tol);
  for (cplx& x : d) x *= xi;
  const cplx a = inner(emb_eval(f, xi, tol), d);
  if (std::abs(a.imag()) > tol.a_imag) throw TransversalityViolation("A_f has imaginary part " + std::to_string(a.imag()));
  if (a.real() <= tol.transversality) throw TransversalityViolation("A_f is not positive");
  return a.real();
}

/// (1 - |a|²) / |a - ξ|², the factor with A_{f∘μ}(ξ) = A_f(μ(ξ)) times it.
inline double moebius_a_factor(const Moebius& mu, cplx xi) {
  return (1.0 - std::norm(mu.a())) / std::norm(mu.a() - xi);
}

/// A_{f∘μ}(ξ) through the transformation law.
inline double a_under_moebius(const EmbeddingMap& f, const Moebius& mu, cplx xi, const Tolerances& tol = {}) {
  return a_invariant(f, mu(xi), tol) * moebius_a_factor(mu, xi);
}

/// Angle in [0, 2π), with values within 1e-12 of 2π folded to 0.
inline double boundary_angle(cplx xi) {
  double t = std::arg(xi);
  if (t < 0.0) t += 2.0 * kPi;
  if (t > 2.0 * kPi - 1e-12) t = 0.0;
  return t;
}

struct RefinementFailure {
  double theta0 = 0.0;
  double phi0 = 0.0;
  double residual = 0.0;
};

/// Boundary self-crossings grouped into classes (points with a common image).
/// Points inside a class and the classes themselves are sorted by angle.
struct CrossingPattern {
  std::vector<std::vector<cplx>> classes;
  std::vector<double> residuals;  // max ‖f(ξ) - f(ζ)‖ within each class
  std::vector<RefinementFailure> failures;
  int seeds = 0;
  int samples = 0;

  [[nodiscard]] std::size_t point_count() const {
    std::size_t n = 0;
    for (const auto& c : classes) n += c.size();
    return n;
  }
  [[nodiscard]] std::vector<std::size_t> class_sizes() const {
    std::vector<std::size_t> s;
    for (const auto& c : classes) s.push_back(c.size());
    std::sort(s.begin(), s.end());
    return s;
  }
};

namespace detail {

struct RefinedPair {
  double theta;
  double phi;
  double residual;
  double conditioning;  // smallest singular value of the final Jacobian
};

/// Gauss-Newton in (θ, φ) on f(e^{iθ}) - f(e^{iφ}) with step halving.
inline RefinedPair refine_crossing(const EmbeddingMap& f, double theta, double phi, const Tolerances& tol) {
  auto res_vec = [&](double t, double p) {
    CVec a = emb_eval(f, std::polar(1.0, t), tol);
    const CVec b = emb_eval(f, std::polar(1.0, p), tol);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
    return a;
  };
  CVec r = res_vec(theta, phi);
  double rn = std::sqrt(norm_sq(r));
  for (int iter = 0; iter < 100 && rn > 0.0; ++iter) {
    const cplx et = std::polar(1.0, theta);
    const cplx ep = std::polar(1.0, phi);
    CVec jt = emb_deriv1(f, et, tol);
    CVec jp = emb_deriv1(f, ep, tol);
    for (cplx& x : jt) x *= cplx{0.0, 1.0} * et;
    for (cplx& x : jp) x *= -cplx{0.0, 1.0} * ep;
    // Real least squares on the stacked real and imaginary parts.
    const double n11 = norm_sq(jt);
    const double n22 = norm_sq(jp);
    const double n12 = inner(jt, jp).real();
    const double g1 = inner(r, jt).real();
    const double g2 = inner(r, jp).real();
    const double det = n11 * n22 - n12 * n12;
    if (!(std::abs(det) > 0.0)) break;
    const double dt = -(n22 * g1 - n12 * g2) / det;
    const double dp = -(n11 * g2 - n12 * g1) / det;
    double step = 1.0;
    bool improved = false;
    for (int h = 0; h < 30; ++h, step *= 0.5) {
      const CVec rt = res_vec(theta + step * dt, phi + step * dp);
      const double rtn = std::sqrt(norm_sq(rt));
      if (rtn < rn) {
        theta += step * dt;
        phi += step * dp;
        r = rt;
        rn = rtn;
        improved = true;
        break;
      }
    }
    if (!improved) break;
    if (rn <= 1e-3 * tol.refine_residual) break;
  }
  CVec jt = emb_deriv1(f, std::polar(1.0, theta), tol);
  CVec jp = emb_deriv1(f, std::polar(1.0, phi), tol);
  for (cplx& x : jt) x *= cplx{0.0, 1.0} * std::polar(1.0, theta);
  for (cplx& x : jp) x *= -cplx{0.0, 1.0} * std::polar(1.0, phi);
  const double n11 = norm_sq(jt);
  const double n22 = norm_sq(jp);
  const double n12 = inner(jt, jp).real();
  const double half_trace = 0.5 * (n11 + n22);
  const double gap = std::sqrt(0.25 * (n11 - n22) * (n11 - n22) + n12 * n12);
  return {theta, phi, rn, std::sqrt(std::max(0.0, half_trace - gap))};
}

inline double circular_separation(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2.0 * kPi);
  return std::min(d, 2.0 * kPi - d);
}

}  // namespace detail

/// Coarse scan of all boundary sample pairs, then refinement of the flagged
/// local minima. A pair (i, j) is flagged when its image distance falls below
/// max(tol.detection, (‖f'(θ_i)‖ + ‖f'(θ_j)‖) h), h the grid spacing.
inline CrossingPattern find_self_crossings(const EmbeddingMap& f, int n_samples = 2048, const Tolerances& tol = {}) {
  if (n_samples < 1024) throw DomainError("crossing scan needs at least 1024 samples");
  constexpr double kMinSeparation = 1e-2;
  const std::size_t n = static_cast<std::size_t>(n_samples);
  const std::size_t d = static_cast<std::size_t>(f.dim());
  const double h = 2.0 * kPi / static_cast<double>(n);

  std::vector<cplx> vals(n * d);
  std::vector<double> lip(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx z = std::polar(1.0, h * static_cast<double>(i));
    const CVec v = emb_eval(f, z, tol);
    std::copy(v.begin(), v.end(), vals.begin() + static_cast<std::ptrdiff_t>(i * d));
    lip[i] = std::sqrt(norm_sq(emb_deriv1(f, z, tol)));
  }
  auto dist = [&](std::size_t i, std::size_t j) {
    double acc = 0.0;
    for (std::size_t k = 0; k < d; ++k) acc += std::norm(vals[i * d + k] - vals[j * d + k]);
    return std::sqrt(acc);
  };
  const std::size_t min_gap = static_cast<std::size_t>(std::floor(kMinSeparation / h)) + 1;

  // Parallel scan over i; per-thread results are concatenated in i order.
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), 16));
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> found(workers);
  auto scan = [&](std::size_t w) {
    const std::size_t lo = n * w / workers;
    const std::size_t hi = n * (w + 1) / workers;
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t j = i + min_gap; j + min_gap <= i + n && j < n; ++j) {
        const double dd = dist(i, j);
        if (dd >= std::max(tol.detection, (lip[i] + lip[j]) * h)) continue;
        bool minimal = true;
        for (int di = -1; di <= 1 && minimal; ++di) {
          for (int dj = -1; dj <= 1; ++dj) {
            if (di == 0 && dj == 0) continue;
            const std::size_t ii = (i + n + static_cast<std::size_t>(di + 1) - 1) % n;
            const std::size_t jj = (j + n + static_cast<std::size_t>(dj + 1) - 1) % n;
            if (dist(ii, jj) < dd) {
              minimal = false;
              break;
            }
          }
        }
        if (minimal) found[w].emplace_back(i, j);
      }
    }
  };
  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(scan, w);
    for (std::thread& t : pool) t.join();
  }

  CrossingPattern pat;
  pat.samples = n_samples;
  std::vector<double> angles;
  std::vector<std::size_t> parent;
  auto find_root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto point_index = [&](double t) {
    for (std::size_t k = 0; k < angles.size(); ++k)
      if (detail::circular_separation(angles[k], t) <= tol.crossing_merge) return k;
    angles.push_back(t);
    parent.push_back(angles.size() - 1);
    return angles.size() - 1;
  };
  for (const auto& part : found) {
    for (const auto& [i, j] : part) {
      ++pat.seeds;
      const double t0 = h * static_cast<double>(i);
      const double p0 = h * static_cast<double>(j);
      const detail::RefinedPair rp = detail::refine_crossing(f, t0, p0, tol);
      if (detail::circular_separation(rp.theta, rp.phi) <= kMinSeparation) continue;
      if (rp.residual > tol.refine_residual) {
        pat.failures.push_back({t0, p0, rp.residual});
        continue;
      }
      parent[find_root(point_index(rp.theta))] = find_root(point_index(rp.phi));
    }
  }

  std::vector<std::vector<double>> groups;
  std::vector<std::size_t> root_slot(angles.size(), angles.size());
  for (std::size_t k = 0; k < angles.size(); ++k) {
    const std::size_t r = find_root(k);
    if (root_slot[r] == angles.size()) {
      root_slot[r] = groups.size();
      groups.emplace_back();
    }
    groups[root_slot[r]].push_back(angles[k]);
  }
  for (auto& g : groups) {
    if (g.size() < 2) continue;
    // A tangential pair fixes its points only to about sqrt(eps); take each
    // point from the best-conditioned pair of its class.
    std::vector<double> best_cond(g.size(), -1.0);
    std::vector<double> best_angle(g);
    for (std::size_t a = 0; a < g.size(); ++a) {
      for (std::size_t b = a + 1; b < g.size(); ++b) {
        const detail::RefinedPair rp = detail::refine_crossing(f, g[a], g[b], tol);
        if (rp.residual > tol.refine_residual) continue;
        if (rp.conditioning > best_cond[a]) {
          best_cond[a] = rp.conditioning;
          best_angle[a] = rp.theta;
        }
        if (rp.conditioning > best_cond[b]) {
          best_cond[b] = rp.conditioning;
          best_angle[b] = rp.phi;
        }
      }
    }
    std::vector<cplx> cls;
    for (const double t : best_angle) cls.push_back(std::polar(1.0, t));
    std::sort(cls.begin(), cls.end(), [](cplx x, cplx y) { return boundary_angle(x) < boundary_angle(y); });
    pat.classes.push_back(std::move(cls));
  }
  std::sort(pat.classes.begin(), pat.classes.end(), [](const auto& x, const auto& y) {
    return boundary_angle(x.front()) < boundary_angle(y.front());
  });
  for (const auto& c : pat.classes) {
    double worst = 0.0;
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = a + 1; b < c.size(); ++b)
        worst = std::max(worst, distance(emb_eval(f, c[a], tol), emb_eval(f, c[b], tol)));
    pat.residuals.push_back(worst);
  }
  return pat;
}

/// A_f at each point of one crossing class, with its projective normal form.
struct RatioTuple {
  std::vector<cplx> points;
  std::vector<double> values;

  /// values / values[0]
  [[nodiscard]] std::vector<double> normalized() const {
    std::vector<double> out(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) out[k] = values[k] / values.front();
    return out;
  }
};

inline RatioTuple ratio_tuple(const EmbeddingMap& f, const std::vector<cplx>& crossing_class, const Tolerances& tol = {}) {
  if (crossing_class.size() < 2) throw NotACrossing("a crossing class has at least two points");
  const CVec base = emb_eval(f, crossing_class.front(), tol);
  for (const cplx z : crossing_class)
    if (distance(emb_eval(f, z, tol), base) > tol.crossing) throw NotACrossing("class points have different images");
  RatioTuple rt;
  rt.points = crossing_class;
  for (const cplx z : crossing_class) rt.values.push_back(a_invariant(f, z, tol));
  return rt;
}

inline std::vector<RatioTuple> ratio_tuples(const EmbeddingMap& f, const CrossingPattern& p, const Tolerances& tol = {}) {
  std::vector<RatioTuple> out;
  for (const auto& c : p.classes) out.push_back(ratio_tuple(f, c, tol));
  return out;
}

/// Parameters of the two candidate automorphisms between maps with the single
/// crossing pair {1, -1}: μ_α = (z ↦ (z - α)/(1 - αz)) = Moebius(-1, α) and
/// μ_β = (z ↦ (β - z)/(1 - βz)) = Moebius(1, β).
struct TwoPointCandidates {
  double alpha = 0.0;
  double beta = 0.0;
  Moebius mu_alpha;
  Moebius mu_beta;
};

/// α, β from the A-values at ±1 of f and of g.
inline std::pair<double, double> two_point_parameters(double af_1, double af_m1, double ag_1, double ag_m1) {
  const double p = std::sqrt(af_1 * ag_m1);
  const double q = std::sqrt(af_m1 * ag_1);
  const double r = std::sqrt(af_1 * ag_1);
  const double s = std::sqrt(af_m1 * ag_m1);
  return {(p - q) / (p + q), (r - s) / (r + s)};
}

inline TwoPointCandidates two_point_candidates(double af_1, double af_m1, double ag_1, double ag_m1) {
  const auto [alpha, beta] = two_point_parameters(af_1, af_m1, ag_1, ag_m1);
  return {alpha, beta, Moebius(-1.0, alpha), Moebius(1.0, beta)};
}

namespace detail {

inline std::optional<std::size_t> locate_pair_class(const CrossingPattern& p, const Tolerances& tol) {
  for (std::size_t k = 0; k < p.classes.size(); ++k) {
    const auto& c = p.classes[k];
    if (c.size() == 2 && std::abs(c[0] - cplx{1.0}) <= tol.class_identity &&
        std::abs(c[1] - cplx{-1.0}) <= tol.class_identity) {
      return k;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Candidates for maps whose only boundary self-crossing is f(1) = f(-1).
/// Throws PatternMismatch otherwise.
inline TwoPointCandidates iso_candidates_two_point(const EmbeddingMap& f, const EmbeddingMap& g, int n_samples = 2048,
                                                   const Tolerances& tol = {}) {
  const CrossingPattern pf = find_self_crossings(f, n_samples, tol);
  const CrossingPattern pg = find_self_crossings(g, n_samples, tol);
  if (pf.classes.size() != 1 || pg.classes.size() != 1 || !detail::locate_pair_class(pf, tol) ||
      !detail::locate_pair_class(pg, tol)) {
    throw PatternMismatch("both maps must have exactly the crossing pair {1, -1}");
  }
  return two_point_candidates(a_invariant(f, 1.0, tol), a_invariant(f, -1.0, tol), a_invariant(g, 1.0, tol),
                              a_invariant(g, -1.0, tol));
}

enum class VerdictKind { DistinctCrossingType, RatioObstruction, CandidateAutomorphisms };

/// Equality asks whether M_f = M_g (identity only); Isomorphism searches for
/// automorphisms μ with M_f = M_{g∘μ}.
enum class ClassifyMode { Isomorphism, Equality };

inline const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::DistinctCrossingType: return "DistinctCrossingType";
    case VerdictKind::RatioObstruction: return "RatioObstruction";
    case VerdictKind::CandidateAutomorphisms: return "CandidateAutomorphisms";
  }
  return "?";
}

inline const char* to_string(ClassifyMode m) { return m == ClassifyMode::Equality ? "equality" : "isomorphism"; }

/// One candidate μ (mapping f's crossing points to g's) and how it fared.
struct CandidateCheck {
  Moebius mu;
  std::string origin;
  bool maps_classes = false;
  double class_map_residual = std::numeric_limits<double>::infinity();
  bool ratios_match = false;
  double ratio_error = std::numeric_limits<double>::infinity();
};

struct ObstructionVerdict {
  VerdictKind kind = VerdictKind::DistinctCrossingType;
  ClassifyMode mode = ClassifyMode::Isomorphism;
  std::vector<Moebius> candidates;  // survivors of every necessary condition
  std::vector<CandidateCheck> checked;
  std::optional<CandidateCheck> identity_check;
  std::optional<std::pair<double, double>> alpha_beta;  // two-point case, reduced frame
  bool undecided = false;  // candidates pass necessary conditions only
  std::string note;
};

namespace detail {

inline std::optional<double> lookup_a(const std::vector<RatioTuple>& rts, cplx p, double tol) {
  for (const RatioTuple& rt : rts)
    for (std::size_t k = 0; k < rt.points.size(); ++k)
      if (std::abs(rt.points[k] - p) <= tol) return rt.values[k];
  return std::nullopt;
}

/// Class mapping and projective ratio test for one candidate.
inline CandidateCheck check_candidate(const Moebius& mu, std::string origin, const CrossingPattern& pf,
                                      const CrossingPattern& pg, const std::vector<RatioTuple>& rt_f,
                                      const std::vector<RatioTuple>& rt_g, const Tolerances& tol) {
  CandidateCheck c;
  c.mu = mu;
  c.origin = std::move(origin);
  double worst = 0.0;
  std::vector<bool> used(pg.classes.size(), false);
  bool all_mapped = true;
  for (const auto& cls : pf.classes) {
    bool mapped = false;
    for (std::size_t k = 0; k < pg.classes.size() && !mapped; ++k) {
      const auto& target = pg.classes[k];
      if (used[k] || target.size() != cls.size()) continue;
      double class_worst = 0.0;
      bool ok = true;
      for (const cplx z : cls) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const cplx w : target) nearest = std::min(nearest, std::abs(mu(z) - w));
        class_worst = std::max(class_worst, nearest);
        if (nearest > tol.moebius_match) ok = false;
      }
      if (ok) {
        used[k] = true;
        mapped = true;
        worst = std::max(worst, class_worst);
      }
    }
    if (!mapped) all_mapped = false;
  }
  c.maps_classes = all_mapped;
  if (!all_mapped) return c;
  c.class_map_residual = worst;

  double err = 0.0;
  for (const RatioTuple& rt : rt_f) {
    std::vector<double> target;
    for (const cplx z : rt.points) {
      const std::optional<double> ag = lookup_a(rt_g, mu(z), tol.moebius_match);
      if (!ag) return c;
      target.push_back(*ag * moebius_a_factor(mu, z));
    }
    for (std::size_t k = 1; k < target.size(); ++k) {
      const double u = rt.values[k] / rt.values[0];
      const double v = target[k] / target[0];
      err = std::max(err, std::abs(u - v) / std::abs(v));
    }
  }
  c.ratio_error = err;
  c.ratios_match = err <= tol.ratio;
  return c;
}

}  // namespace detail

/// Automorphisms mapping every class of pf onto a class of pg, for patterns
/// with at least three crossing points: the first three points of pf are sent
/// to every ordered triple of points of pg.
inline std::vector<Moebius> class_matching_automorphisms(const CrossingPattern& pf, const CrossingPattern& pg,
                                                         const Tolerances& tol = {}) {
  std::vector<cplx> from;
  for (const auto& c : pf.classes) from.insert(from.end(), c.begin(), c.end());
  std::vector<cplx> to;
  for (const auto& c : pg.classes) to.insert(to.end(), c.begin(), c.end());
  if (from.size() < 3 || from.size() != to.size()) return {};
  std::vector<Moebius> out;
  for (std::size_t a = 0; a < to.size(); ++a) {
    for (std::size_t b = 0; b < to.size(); ++b) {
      for (std::size_t c = 0; c < to.size(); ++c) {
        if (a == b || b == c || a == c) continue;
        Moebius mu;
        try {
          mu = Moebius::through_points({from[0], from[1], from[2]}, {to[a], to[b], to[c]});
        } catch (const DomainError&) {
          continue;
        }
        const CandidateCheck chk = detail::check_candidate(mu, "", pf, pg, {}, {}, tol);
        if (!chk.maps_classes) continue;
        bool dup = false;
        for (const Moebius& m : out) dup = dup || m.parameter_distance(mu) <= 1e-9;
        if (!dup) out.push_back(mu);
      }
    }
  }
  return out;
}

/// Necessary conditions for M_f ≅ M_g (or M_f = M_g) from crossing data.
inline ObstructionVerdict compare_patterns(const CrossingPattern& pf, const CrossingPattern& pg,
                                           const std::vector<RatioTuple>& rt_f, const std::vector<RatioTuple>& rt_g,
                                           ClassifyMode mode = ClassifyMode::Isomorphism, const Tolerances& tol = {}) {
  ObstructionVerdict v;
  v.mode = mode;
  if (pf.class_sizes() != pg.class_sizes()) {
    v.kind = VerdictKind::DistinctCrossingType;
    v.note = "crossing class sizes differ";
    return v;
  }
  v.identity_check = detail::check_candidate(Moebius::identity(), "identity", pf, pg, rt_f, rt_g, tol);

  if (pf.classes.size() == 1 && pf.classes[0].size() == 2) {
    const auto& cf = pf.classes[0];
    const auto& cg = pg.classes[0];
    const Moebius rf = moebius_pair_reduction(cf[0], cf[1]);
    const Moebius rg = moebius_pair_reduction(cg[0], cg[1]);
    const double af1 = rt_f[0].values[0] * moebius_a_factor(rf, 1.0);
    const double afm1 = rt_f[0].values[1] * moebius_a_factor(rf, -1.0);
    const double ag1 = rt_g[0].values[0] * moebius_a_factor(rg, 1.0);
    const double agm1 = rt_g[0].values[1] * moebius_a_factor(rg, -1.0);
    const TwoPointCandidates tp = two_point_candidates(af1, afm1, ag1, agm1);
    v.alpha_beta = std::make_pair(tp.alpha, tp.beta);
    if (mode == ClassifyMode::Isomorphism) {
      // In the reduced frame M_{f∘rf} = M_{g∘rg∘ν} for ν = μ_α or μ_β, so
      // μ = rg ∘ ν ∘ rf⁻¹ maps f's crossing points onto g's.
      const Moebius rf_inv = moebius_invert(rf);
      v.checked.push_back(detail::check_candidate(moebius_compose(rg, moebius_compose(tp.mu_alpha, rf_inv)), "alpha",
                                                  pf, pg, rt_f, rt_g, tol));
      v.checked.push_back(detail::check_candidate(moebius_compose(rg, moebius_compose(tp.mu_beta, rf_inv)), "beta",
                                                  pf, pg, rt_f, rt_g, tol));
    }
  } else if (mode == ClassifyMode::Isomorphism && pf.point_count() >= 3) {
    for (const Moebius& mu : class_matching_automorphisms(pf, pg, tol))
      v.checked.push_back(detail::check_candidate(mu, "class-matching", pf, pg, rt_f, rt_g, tol));
  }
  if (mode == ClassifyMode::Equality || pf.classes.empty()) v.checked.push_back(*v.identity_check);

  bool any_mapped = false;
  for (const CandidateCheck& c : v.checked) {
    any_mapped = any_mapped || c.maps_classes;
    if (c.maps_classes && c.ratios_match) v.candidates.push_back(c.mu);
  }
  if (!v.candidates.empty()) {
    v.kind = VerdictKind::CandidateAutomorphisms;
    v.undecided = true;
    v.note = pf.classes.empty() ? "no boundary self-crossings; necessary conditions are vacuous"
                                : "candidates satisfy the necessary conditions; isomorphism is not certified";
  } else if (any_mapped) {
    v.kind = VerdictKind::RatioObstruction;
    v.note = "A-ratios differ for every automorphism matching the crossing classes";
  } else {
    v.kind = VerdictKind::DistinctCrossingType;
    v.note = mode == ClassifyMode::Equality ? "crossing point sets differ"
                                            : "no disc automorphism maps the crossing classes onto each other";
  }
  return v;
}

struct Classification {
  CrossingPattern pattern_f;
  CrossingPattern pattern_g;
  std::vector<RatioTuple> ratios_f;
  std::vector<RatioTuple> ratios_g;
  ObstructionVerdict verdict;
};

inline Classification classify(const EmbeddingMap& f, const EmbeddingMap& g, ClassifyMode mode = ClassifyMode::Isomorphism,
                               int n_samples = 2048, const Tolerances& tol = {}) {
  Classification c;
  c.pattern_f = find_self_crossings(f, n_samples, tol);
  c.pattern_g = find_self_crossings(g, n_samples, tol);
  c.ratios_f = ratio_tuples(f, c.pattern_f, tol);
  c.ratios_g = ratio_tuples(g, c.pattern_g, tol);
  c.verdict = compare_patterns(c.pattern_f, c.pattern_g, c.ratios_f, c.ratios_g, mode, tol);
  return c;
}

}  // namespace dvl
