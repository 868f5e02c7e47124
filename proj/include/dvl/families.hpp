#pragma once

// Example families: f_r, f_{r,s}, the symmetric family f_{t,-t}, the cubic
// Blaschke products g_α with g_α(1) = g_α(ω) = g_α(ω²) = 1, and the maps with
// a single three-point self-crossing built from them.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "dvl/embedding.hpp"
#include "dvl/roots.hpp"

namespace dvl {

/// Catalog parameters for the three-point family (see data/catalog.json).
inline constexpr double kCatalogAlpha0 = 0.5;
inline constexpr double kCatalogAlpha1 = -0.49;
inline constexpr double kCatalogAlpha = 0.9;

/// g_α has all its zeros and poles off the closed disc boundary and inside
/// the disc only for α in this range (β = -α/(1+α) reaches 1 at α = -1/2).
inline constexpr double kThreeCrossingAlphaMin = -0.5;

namespace detail {

inline void require_open(double v, double lo, double hi, const char* name) {
  if (!(v > lo && v < hi)) {
    std::ostringstream os;
    os << name << " = " << v << " must lie in (" << lo << ", " << hi << ")";
    throw ParamOutOfRange(os.str());
  }
}

inline RationalMap squared(const RationalMap& r) { return r * r; }

}  // namespace detail

/// (1/√2)(z², b_r²)
inline EmbeddingMap make_f_r(double r) {
  detail::require_open(r, 0.0, 1.0, "r");
  const RationalMap z = RationalMap::identity();
  return {1.0 / std::sqrt(2.0), {z * z, detail::squared(RationalMap::blaschke_factor(r))}};
}

/// (1/√2)(b_r², b_s²)
inline EmbeddingMap make_f_rs(double r, double s) {
  detail::require_open(r, -1.0, 1.0, "r");
  detail::require_open(s, -1.0, 1.0, "s");
  if (r == s) throw DegeneratePair("r and s must differ");
  return {1.0 / std::sqrt(2.0),
          {detail::squared(RationalMap::blaschke_factor(r)), detail::squared(RationalMap::blaschke_factor(s))}};
}

/// f_{r,-r}
inline EmbeddingMap make_f_symmetric(double r) {
  detail::require_open(r, 0.0, 1.0, "r");
  return make_f_rs(r, -r);
}

/// (-1 + √(1 - ρ²)) / ρ, the t ∈ (-1, 0) with f_{0,ρ} ∘ b_t = f_{t,-t}.
inline double symmetric_parameter(double rho) {
  detail::require_open(rho, 0.0, 1.0, "rho");
  return (-1.0 + std::sqrt((1.0 - rho) * (1.0 + rho))) / rho;
}

struct SymmetricNormalization {
  double rho = 0.0;  // |s - r| / (1 - sr)
  double t = 0.0;
  Moebius map;  // f_{r,s} ∘ map = f_{t,-t}
};

/// f_{r,s} ∘ b_{-r} = f_{0,(s-r)/(1-sr)}; a reflection z ↦ -z makes that
/// parameter positive, and b_t finishes the reduction.
inline SymmetricNormalization normalize_to_symmetric_map(double r, double s) {
  detail::require_open(r, -1.0, 1.0, "r");
  detail::require_open(s, -1.0, 1.0, "s");
  if (r == s) throw DegeneratePair("r and s must differ");
  const double sigma = (s - r) / (1.0 - s * r);
  SymmetricNormalization n;
  n.rho = std::abs(sigma);
  n.t = symmetric_parameter(n.rho);
  const Moebius flip = sigma < 0.0 ? Moebius::rotation(-1.0) : Moebius::identity();
  n.map = moebius_compose(Moebius::blaschke(-r), moebius_compose(flip, Moebius::blaschke(n.t)));
  return n;
}

inline double normalize_to_symmetric(double r, double s) { return normalize_to_symmetric_map(r, s).t; }

/// β = -α / (1 + α)
inline double g_alpha_beta(double alpha) {
  detail::require_open(alpha, -1.0, 1.0, "alpha");
  return -alpha / (1.0 + alpha);
}

/// z b_α(z) b_β(z), built literally from its three factors.
inline RationalMap make_g_alpha(double alpha) {
  const double beta = g_alpha_beta(alpha);
  return RationalMap::identity() * RationalMap::blaschke_factor(alpha) * RationalMap::blaschke_factor(beta);
}

/// g'/g = 1/z + 1/(z-α) + 1/(z-β) + α/(1-αz) + β/(1-βz)
inline cplx log_derivative_g(double alpha, cplx z) {
  const double beta = g_alpha_beta(alpha);
  const cplx dens[] = {z, z - alpha, z - beta, 1.0 - alpha * z, 1.0 - beta * z};
  for (const cplx d : dens)
    if (std::abs(d) < 1e-14) throw PoleError("z is a zero or pole of g_alpha");
  return 1.0 / z + 1.0 / (z - alpha) + 1.0 / (z - beta) + alpha / (1.0 - alpha * z) + beta / (1.0 - beta * z);
}

struct InjectivityScreen {
  bool passed = false;
  std::vector<cplx> roots;          // nonzero solutions of g_{α₀}(z) = g_{α₀}(ωz) in the disc
  std::vector<double> separations;  // |g_{α₁}(z_j) - g_{α₁}(ωz_j)|
  int counted = 0;                  // argument-principle count, including z = 0
  double worst_separation = std::numeric_limits<double>::infinity();
};

/// Solutions of g_{α₀}(z) = g_{α₀}(ωz) come from N(z)D(ωz) - N(ωz)D(z) = 0.
/// The cube roots of unity always solve it and sit on the circle (ω twice),
/// so roots are counted inside |z| < 1 - 1e-4.
inline InjectivityScreen injectivity_screen(double alpha0, double alpha1, const Tolerances& tol = {}) {
  detail::require_open(alpha0, 0.0, 1.0, "alpha0");
  detail::require_open(alpha1, -1.0, 1.0, "alpha1");
  constexpr double kContour = 1.0 - 1e-4;
  constexpr double kZero = 1e-9;
  const RationalMap g0 = make_g_alpha(alpha0);
  auto rotate = [](const Polynomial& p) {
    std::vector<cplx> c(p.coeffs().begin(), p.coeffs().end());
    cplx w{1.0};
    for (cplx& x : c) {
      x *= w;
      w *= kOmega;
    }
    return Polynomial(std::move(c));
  };
  const Polynomial p = g0.num() * rotate(g0.den()) - rotate(g0.num()) * g0.den();

  InjectivityScreen s;
  s.counted = count_roots_in_disc(p, kContour);
  int found = 0;
  for (const cplx z : polynomial_roots(p)) {
    if (std::abs(z) >= kContour) continue;
    ++found;
    if (std::abs(z) <= kZero) continue;
    s.roots.push_back(z);
  }
  if (found != s.counted) {
    std::ostringstream os;
    os << "root finder located " << found << " roots inside the disc, argument principle counts " << s.counted;
    throw RootFindingFailure(os.str());
  }
  const RationalMap g1 = make_g_alpha(alpha1);
  s.passed = true;
  for (const cplx z : s.roots) {
    const double sep = std::abs(rat_eval(g1, z, tol) - rat_eval(g1, kOmega * z, tol));
    s.separations.push_back(sep);
    s.worst_separation = std::min(s.worst_separation, sep);
    if (sep < tol.screen_separation) s.passed = false;
  }
  return s;
}

struct Alpha1Choice {
  double alpha1 = 0.0;
  double worst_separation = 0.0;
  std::vector<std::pair<double, double>> grid;  // (α₁, worst separation)
};

/// Scans α₁ over (-1/2, 1) in steps of `step` and keeps the value with the
/// largest worst-case separation; ties go to the smaller α₁.
inline Alpha1Choice scan_alpha1(double alpha0, double step = 0.01, const Tolerances& tol = {}) {
  const int first = static_cast<int>(std::lround(kThreeCrossingAlphaMin / step)) + 1;
  const int last = static_cast<int>(std::lround(1.0 / step)) - 1;
  std::vector<std::pair<double, double>> grid;
  for (int k = first; k <= last; ++k) grid.emplace_back(k * step, 0.0);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), 16));
  auto work = [&](std::size_t w) {
    for (std::size_t i = w; i < grid.size(); i += workers)
      grid[i].second = injectivity_screen(alpha0, grid[i].first, tol).worst_separation;
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (std::thread& t : pool) t.join();
  }
  Alpha1Choice c;
  c.grid = grid;
  c.worst_separation = -1.0;
  for (const auto& [a, sep] : grid) {
    if (sep > c.worst_separation) {
      c.worst_separation = sep;
      c.alpha1 = a;
    }
  }
  return c;
}

/// (1/2)(z³, g_{α₀}, g_{α₁}, g_α). α₁ and α are restricted to (-1/2, 1),
/// where g is a genuine Blaschke product; α₁ must pass the injectivity screen.
inline EmbeddingMap make_f_three_crossing(double alpha0 = kCatalogAlpha0, double alpha1 = kCatalogAlpha1,
                                          double alpha = kCatalogAlpha, const Tolerances& tol = {}) {
  detail::require_open(alpha0, 0.0, 1.0, "alpha0");
  detail::require_open(alpha1, kThreeCrossingAlphaMin, 1.0, "alpha1");
  detail::require_open(alpha, kThreeCrossingAlphaMin, 1.0, "alpha");
  const InjectivityScreen s = injectivity_screen(alpha0, alpha1, tol);
  if (!s.passed) {
    std::ostringstream os;
    os << "alpha1 = " << alpha1 << " fails the injectivity screen (separation " << s.worst_separation << ")";
    throw InjectivityScreenFailed(os.str());
  }
  const RationalMap z = RationalMap::identity();
  return {0.5, {z * z * z, make_g_alpha(alpha0), make_g_alpha(alpha1), make_g_alpha(alpha)}};
}

/// {"kind": ..., "params": {...}} in code form.
struct FamilyRef {
  std::string kind;
  std::map<std::string, double> params;
};

namespace detail {

inline double param_or(const FamilyRef& s, const std::string& key, double fallback) {
  const auto it = s.params.find(key);
  return it == s.params.end() ? fallback : it->second;
}

inline double param(const FamilyRef& s, const std::string& key) {
  const auto it = s.params.find(key);
  if (it == s.params.end()) throw ParamOutOfRange("family " + s.kind + " needs parameter " + key);
  return it->second;
}

}  // namespace detail

inline const std::vector<std::string>& family_kinds() {
  static const std::vector<std::string> kinds{"f_r", "f_rs", "f_symmetric", "g_alpha", "f_three_crossing"};
  return kinds;
}

/// g_alpha is a scalar map; as an embedding it is the one-component map g_α.
inline EmbeddingMap make_family(const FamilyRef& s, const Tolerances& tol = {}) {
  if (s.kind == "f_r") return make_f_r(detail::param(s, "r"));
  if (s.kind == "f_rs") return make_f_rs(detail::param(s, "r"), detail::param(s, "s"));
  if (s.kind == "f_symmetric") return make_f_symmetric(detail::param(s, "r"));
  if (s.kind == "g_alpha") return {1.0, {make_g_alpha(detail::param(s, "alpha"))}};
  if (s.kind == "f_three_crossing") {
    return make_f_three_crossing(detail::param_or(s, "alpha0", kCatalogAlpha0),
                                 detail::param_or(s, "alpha1", kCatalogAlpha1),
                                 detail::param_or(s, "alpha", kCatalogAlpha), tol);
  }
  throw ParamOutOfRange("unknown family kind '" + s.kind + "'");
}

/// Parses "kind:key=value,key=value" (the parameter list may be empty).
inline FamilyRef parse_family_ref(const std::string& ref) {
  FamilyRef s;
  const auto colon = ref.find(':');
  s.kind = ref.substr(0, colon);
  if (colon == std::string::npos) return s;
  std::stringstream rest(ref.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParamOutOfRange("expected key=value in '" + item + "'");
    const std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty()) throw ParamOutOfRange("not a number: '" + value + "'");
    s.params[item.substr(0, eq)] = v;
  }
  return s;
}

}  // namespace dvl
