#pragma once

// Small dense Hermitian matrices: eigenvalues by cyclic complex Jacobi and a
// positive-semidefiniteness test by pivoted Cholesky with an eigenvalue
// fallback for borderline pivots.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "dvl/complex_rational.hpp"

namespace dvl {

inline constexpr std::size_t kMaxDenseDimension = 64;

class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  /// Row-major entries. Throws NonHermitianInput if entries[j][k] and
  /// conj(entries[k][j]) differ by more than tol.hermitian (relative to the
  /// largest entry once that exceeds 1).
  HermitianMatrix(std::size_t n, std::vector<cplx> entries, const Tolerances& tol = {})
      : n_(n), a_(std::move(entries)) {
    if (n_ == 0 || a_.size() != n_ * n_) throw DimensionMismatch("entry count does not match dimension");
    if (n_ > kMaxDenseDimension) throw DimensionMismatch("dense dimension cap exceeded");
    double scale = 1.0;
    for (const cplx x : a_) scale = std::max(scale, std::abs(x));
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t k = j; k < n_; ++k) {
        if (std::abs(at(j, k) - std::conj(at(k, j))) > tol.hermitian * scale)
          throw NonHermitianInput("matrix is not Hermitian at (" + std::to_string(j) + ", " +
                                  std::to_string(k) + ")");
      }
    }
    for (std::size_t j = 0; j < n_; ++j) {
      at(j, j) = at(j, j).real();
      for (std::size_t k = j + 1; k < n_; ++k) at(k, j) = std::conj(at(j, k));
    }
  }

  /// Builds from the upper triangle; entry(j, k) is called for j <= k only.
  template <typename F>
  static HermitianMatrix from_upper(std::size_t n, F&& entry) {
    if (n == 0) throw DimensionMismatch("empty matrix");
    if (n > kMaxDenseDimension) throw DimensionMismatch("dense dimension cap exceeded");
    HermitianMatrix m;
    m.n_ = n;
    m.a_.assign(n * n, cplx{0.0});
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j; k < n; ++k) {
        const cplx v = entry(j, k);
        m.at(j, k) = j == k ? cplx{v.real()} : v;
        m.at(k, j) = std::conj(m.at(j, k));
      }
    }
    return m;
  }

  [[nodiscard]] std::size_t dimension() const { return n_; }
  [[nodiscard]] cplx operator()(std::size_t j, std::size_t k) const { return a_[j * n_ + k]; }
  [[nodiscard]] const std::vector<cplx>& entries() const { return a_; }

  /// Max absolute row sum.
  [[nodiscard]] double norm_inf() const {
    double best = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      double row = 0.0;
      for (std::size_t k = 0; k < n_; ++k) row += std::abs((*this)(j, k));
      best = std::max(best, row);
    }
    return best;
  }

 private:
  cplx& at(std::size_t j, std::size_t k) { return a_[j * n_ + k]; }
  [[nodiscard]] cplx at(std::size_t j, std::size_t k) const { return a_[j * n_ + k]; }

  std::size_t n_ = 0;
  std::vector<cplx> a_;
};

/// Eigenvalues in ascending order.
inline std::vector<double> hermitian_eigenvalues(const HermitianMatrix& m) {
  const std::size_t n = m.dimension();
  std::vector<cplx> a = m.entries();
  auto A = [&](std::size_t j, std::size_t k) -> cplx& { return a[j * n + k]; };

  double frob = 0.0;
  for (const cplx x : a) frob += std::norm(x);
  frob = std::sqrt(frob);
  const double stop = std::numeric_limits<double>::epsilon() * 1e-2 * frob;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(A(p, q));
    if (std::sqrt(off) <= stop) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double r = std::abs(A(p, q));
        if (r == 0.0) continue;
        // Rotate the phase out of a_pq, then apply a real Jacobi rotation.
        const cplx phase = A(p, q) / r;
        for (std::size_t k = 0; k < n; ++k) A(k, q) *= std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) A(q, k) *= phase;

        const double app = A(p, p).real();
        const double aqq = A(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = theta == 0.0 ? 1.0
                                      : std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const cplx kp = A(k, p);
          const cplx kq = A(k, q);
          A(k, p) = c * kp - s * kq;
          A(k, q) = s * kp + c * kq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx pk = A(p, k);
          const cplx qk = A(q, k);
          A(p, k) = c * pk - s * qk;
          A(q, k) = s * pk + c * qk;
        }
        A(p, q) = 0.0;
        A(q, p) = 0.0;
        A(p, p) = A(p, p).real();
        A(q, q) = A(q, q).real();
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t j = 0; j < n; ++j) eig[j] = A(j, j).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

inline double min_eigenvalue(const HermitianMatrix& m) { return hermitian_eigenvalues(m).front(); }

struct PsdReport {
  bool psd = false;
  double threshold = 0.0;  // eigenvalues must be >= -threshold
  bool used_eigen_fallback = false;
  double min_pivot = 0.0;  // smallest pivot seen in the shifted factorization
};

/// PSD iff every eigenvalue >= -tol * ‖M‖_inf. Pivoted Cholesky of the
/// shifted matrix M + tol‖M‖ I decides clear cases; pivots within a few
/// hundred ulps of zero defer to the Jacobi eigenvalues.
inline PsdReport psd_check(const HermitianMatrix& m, double tol) {
  const std::size_t n = m.dimension();
  PsdReport rep;
  const double norm = m.norm_inf();
  rep.threshold = tol * norm;
  if (norm == 0.0) {
    rep.psd = true;
    return rep;
  }
  const double band = 64.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * norm;

  std::vector<cplx> a = m.entries();
  auto A = [&](std::size_t j, std::size_t k) -> cplx& { return a[j * n + k]; };
  for (std::size_t j = 0; j < n; ++j) A(j, j) += rep.threshold;

  std::vector<std::size_t> order(n);
  for (std::size_t j = 0; j < n; ++j) order[j] = j;
  rep.min_pivot = std::numeric_limits<double>::infinity();
  bool ambiguous = false;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = step;
    for (std::size_t j = step + 1; j < n; ++j)
      if (A(order[j], order[j]).real() > A(order[best], order[best]).real()) best = j;
    std::swap(order[step], order[best]);
    const std::size_t p = order[step];
    const double pivot = A(p, p).real();
    rep.min_pivot = std::min(rep.min_pivot, pivot);
    if (pivot < -band) {
      rep.psd = false;
      return rep;
    }
    if (pivot <= band) {
      ambiguous = true;
      break;
    }
    const double root = std::sqrt(pivot);
    for (std::size_t j = step + 1; j < n; ++j) A(order[j], p) /= root;
    for (std::size_t j = step + 1; j < n; ++j) {
      const std::size_t rj = order[j];
      for (std::size_t k = step + 1; k < n; ++k) {
        const std::size_t rk = order[k];
        A(rj, rk) -= A(rj, p) * std::conj(A(rk, p));
      }
    }
  }
  if (!ambiguous) {
    rep.psd = true;
    return rep;
  }
  rep.used_eigen_fallback = true;
  rep.psd = min_eigenvalue(m) >= -rep.threshold;
  return rep;
}

inline bool is_psd(const HermitianMatrix& m, double tol) { return psd_check(m, tol).psd; }

}  // namespace dvl
