#pragma once

#include <cstdlib>
#include <string>

namespace dvl {

/// Every numeric threshold the library uses, in one place. Operations take a
/// `const Tolerances&` defaulting to the documented values; the CLI scales
/// them uniformly from the DVL_TOL_SCALE environment variable.
struct Tolerances {
  double pole = 1e-14;              // |den(z)| relative to Σ|d_k||z|^k
  double unimodular = 1e-12;        // | |ξ| - 1 | for boundary points, | |λ| - 1 |
  double crossing = 1e-9;           // ‖f(ξ) - f(ζ)‖ for a crossing pair
  double detection = 1e-3;          // coarse-grid flagging distance (lower bound)
  double refine_residual = 1e-12;   // accepted Gauss-Newton residual
  double class_identity = 1e-8;     // two boundary points are the same point
  double crossing_merge = 1e-6;     // refined crossing estimates merged into one point
  double ratio = 1e-8;              // projective ratio equality, relative
  double a_imag = 1e-9;             // |Im A_f(ξ)|
  double transversality = 1e-10;    // A_f(ξ) must exceed this
  double sphere = 1e-9;             // | ‖f(e^{iθ})‖² - 1 |
  double derivative_min = 1e-8;     // min ‖f'‖ over the closed disc
  double injectivity = 1e-9;        // image distance of a colliding pair
  double kernel_singularity = 1e-14;
  double hermitian = 1e-12;
  double psd = 1e-10;               // eigenvalues >= -psd * ‖M‖_inf
  double canonicalize = 1e-12;      // shared-root matching
  double screen_separation = 1e-8;  // injectivity screen
  double moebius_match = 1e-9;      // class-onto-class mapping of candidates

  [[nodiscard]] Tolerances scaled(double s) const {
    Tolerances t = *this;
    for (double* p : {&t.pole, &t.unimodular, &t.crossing, &t.detection, &t.refine_residual,
                      &t.class_identity, &t.crossing_merge, &t.ratio, &t.a_imag, &t.transversality, &t.sphere,
                      &t.derivative_min, &t.injectivity, &t.kernel_singularity, &t.hermitian,
                      &t.psd, &t.canonicalize, &t.screen_separation, &t.moebius_match}) {
      *p *= s;
    }
    return t;
  }

  /// Defaults scaled by DVL_TOL_SCALE when it is set to a positive number.
  [[nodiscard]] static Tolerances from_environment() {
    const char* env = std::getenv("DVL_TOL_SCALE");
    if (env == nullptr || *env == '\0') return {};
    char* end = nullptr;
    const double s = std::strtod(env, &end);
    if (end == env || !(s > 0.0)) return {};
    return Tolerances{}.scaled(s);
  }
};

}  // namespace dvl
