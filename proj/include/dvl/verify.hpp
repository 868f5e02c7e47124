#pragma once

// Numeric ladders for the boundary asymptotics and the Pick/metric duality,
// run over the built-in catalog. Shared by the CLI and the acceptance suite.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "dvl/families.hpp"
#include "dvl/kernel.hpp"

namespace dvl {

inline std::string format_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct CaseResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double bound = 0.0;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CaseResult> cases;

  [[nodiscard]] bool passed() const {
    return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.passed; });
  }
};

struct CrossingCase {
  std::string name;
  EmbeddingMap map;
  cplx xi;
  cplx zeta;
};

inline std::vector<CrossingCase> catalog_crossing_cases() {
  std::vector<CrossingCase> out;
  for (const double r : {0.3, 0.5, 0.7}) out.push_back({"f_r:r=" + format_g(r), make_f_r(r), 1.0, -1.0});
  out.push_back({"f_symmetric:r=0.3", make_f_symmetric(0.3), 1.0, -1.0});
  out.push_back({"f_three_crossing (1, w)", make_f_three_crossing(), 1.0, kOmega});
  return out;
}

/// residual(x) / residual(x/2)
inline double richardson_ratio(double coarse, double fine) {
  return fine == 0.0 ? std::numeric_limits<double>::infinity() : coarse / fine;
}

/// Richardson ratios residual(x)/residual(x/2) in [6, 10] for every term, or
/// both residuals at the rounding floor; residual(x) ≤ 10 x³ s^{3/2} with s
/// the largest expansion constant.
inline SuiteReport verify_expansion(double x = 1e-3, const Tolerances& tol = {}) {
  constexpr double kFloor = 1e-13;
  SuiteReport rep{"expansion", {}};
  for (const CrossingCase& c : catalog_crossing_cases()) {
    const BoundaryPairData d = boundary_pair_data(c.map, c.xi, c.zeta, tol);
    const ExpansionCheck coarse = expansion_coefficients_check(c.map, d, x, tol);
    const ExpansionCheck fine = expansion_coefficients_check(c.map, d, 0.5 * x, tol);
    const double s = std::max({1.0, d.A, d.B, d.C, d.D, std::abs(d.E), std::abs(d.F), std::abs(d.G)});
    const double scale_bound = 10.0 * x * x * x * std::pow(s, 1.5);
    const std::pair<const char*, std::pair<ExpansionTerm, ExpansionTerm>> terms[] = {
        {"xi", {coarse.xi_side, fine.xi_side}},
        {"zeta", {coarse.zeta_side, fine.zeta_side}},
        {"cross", {coarse.cross, fine.cross}}};
    for (const auto& [label, pair] : terms) {
      CaseResult r;
      r.name = c.name + " " + label;
      const bool exact = pair.first.residual <= kFloor && pair.second.residual <= kFloor;
      r.measured = richardson_ratio(pair.first.residual, pair.second.residual);
      r.bound = scale_bound;
      r.passed = exact || (r.measured >= 6.0 && r.measured <= 10.0 && pair.first.residual <= scale_bound);
      r.detail = exact ? "exact" : "residual " + format_g(pair.first.residual);
      rep.cases.push_back(r);
    }
  }
  return rep;
}

inline std::vector<double> decade_ladder(double from, double to) {
  std::vector<double> out;
  for (double t = from; t >= to * (1.0 - 1e-9); t /= 10.0) out.push_back(t);
  return out;
}

/// d_f² along the paths strictly decreasing over t ∈ {1e-2, …, 1e-6}, below
/// 0.01 at t = 1e-4; with the ξ-slope doubled it stays within 0.02 of 1/9.
inline SuiteReport verify_path_metric(const Tolerances& tol = {}) {
  SuiteReport rep{"path_metric", {}};
  for (const CrossingCase& c : catalog_crossing_cases()) {
    const BoundaryPairData d = boundary_pair_data(c.map, c.xi, c.zeta, tol);
    CaseResult dec;
    dec.name = c.name + " decay";
    dec.passed = true;
    double prev = std::numeric_limits<double>::infinity();
    for (const double t : decade_ladder(1e-2, 1e-6)) {
      const double v = boundary_path_metric(c.map, d, t, {}, tol);
      if (!(v < prev)) dec.passed = false;
      prev = v;
    }
    dec.measured = boundary_path_metric(c.map, d, 1e-4, {}, tol);
    dec.bound = 0.01;
    dec.passed = dec.passed && dec.measured < dec.bound;
    dec.detail = "d^2 at t = 1e-4; strictly decreasing on 1e-2..1e-6";
    rep.cases.push_back(dec);

    CaseResult slope;
    slope.name = c.name + " wrong slope";
    slope.measured = boundary_path_metric(c.map, d, 1e-4, {2.0, 1.0}, tol);
    slope.bound = 0.02;
    slope.passed = std::abs(slope.measured - boundary_path_metric_limit({2.0, 1.0})) <= slope.bound;
    slope.detail = "d^2 at t = 1e-4 with slope factor 2, target 1/9";
    rep.cases.push_back(slope);
  }
  return rep;
}

/// ‖k_z - k_w‖² ≤ limit + t on the halving ladder t = 1e-2 · 2^{-k} down to
/// 1e-5, so the allowed slack halves with every rung.
inline SuiteReport verify_kernel_diff(const Tolerances& tol = {}) {
  SuiteReport rep{"kernel_diff", {}};
  for (const CrossingCase& c : catalog_crossing_cases()) {
    const BoundaryPairData d = boundary_pair_data(c.map, c.xi, c.zeta, tol);
    const double limit = kernel_diff_limit(d);
    CaseResult r;
    r.name = c.name;
    r.passed = true;
    r.measured = -std::numeric_limits<double>::infinity();
    for (double t = 1e-2; t >= 1e-5; t *= 0.5) {
      const double excess = kernel_diff_norm_sq(c.map, d, t, tol) - limit;
      r.measured = std::max(r.measured, excess / t);
      if (excess > t) r.passed = false;
    }
    r.bound = 1.0;
    r.detail = "max (LHS - limit)/t over the ladder; limit " + format_g(limit);
    rep.cases.push_back(r);
  }
  return rep;
}

/// Largest |a| with {z, w} ↦ {a, 0} Pick-feasible, by bisection on [0, 1].
inline double pick_metric_sup(const EmbeddingMap& f, cplx z, cplx w, int iterations = 60, const Tolerances& tol = {}) {
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (pick_feasible(pick_matrix(f, {z, w}, {cplx{mid}, cplx{0.0}}, tol), 0.0))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// A point uniform in the disc of radius `radius`.
inline cplx random_disc_point(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  return std::polar(r, 2.0 * kPi * u(rng));
}

struct DualityFamily {
  std::string name;
  EmbeddingMap map;
};

inline std::vector<DualityFamily> duality_families() {
  return {{"f_r:r=0.5", make_f_r(0.5)},
          {"f_rs:r=0.2,s=0.6", make_f_rs(0.2, 0.6)},
          {"f_symmetric:r=0.3", make_f_symmetric(0.3)},
          {"f_three_crossing", make_f_three_crossing()}};
}

/// |sup − d_f(z, w)| ≤ 1e-8 on `pairs` random interior pairs per family.
inline SuiteReport verify_duality(std::uint64_t seed = 0, int pairs = 100, const Tolerances& tol = {}) {
  SuiteReport rep{"duality", {}};
  std::mt19937_64 rng(seed);
  for (const DualityFamily& fam : duality_families()) {
    CaseResult r;
    r.name = fam.name;
    r.bound = 1e-8;
    for (int k = 0; k < pairs; ++k) {
      const cplx z = random_disc_point(rng, 0.95);
      const cplx w = random_disc_point(rng, 0.95);
      r.measured = std::max(r.measured, std::abs(pick_metric_sup(fam.map, z, w, 60, tol) - metric_d(fam.map, z, w, tol)));
    }
    r.passed = r.measured <= r.bound;
    r.detail = std::to_string(pairs) + " pairs, max |sup - d|";
    rep.cases.push_back(r);
  }
  return rep;
}

}  // namespace dvl
