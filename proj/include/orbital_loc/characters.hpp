#pragma once

// Weyl character formula, Weyl dimension, and the Kirillov factors.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

#include "orbital_loc/errors.hpp"
#include "orbital_loc/lie_core.hpp"
#include "orbital_loc/quadrature.hpp"

namespace orbital_loc {

/// Dominant integral weight m together with its rho-shift m + rho.
struct HighestWeight {
  Vec coords;   // m
  Vec shifted;  // m + rho (regular)

  static HighestWeight from_dynkin(const RootSystem& rs, const std::vector<double>& labels) {
    for (double l : labels)
      if (l < 0 || std::abs(l - std::round(l)) > 1e-12)
        fail(Errc::NonDominant, "highest weight labels must be non-negative integers");
    HighestWeight hw;
    hw.coords = rs.from_dynkin(labels);
    hw.shifted = hw.coords + rs.rho;
    return hw;
  }
};

struct CharacterValue {
  cplx value;
  CartanElement at;
  HighestWeight hw;
};

namespace detail {
inline void require_regular(const RootSystem& rs, const Vec& x) {
  if (x.size() != rs.rank) fail(Errc::RankMismatch, "Cartan element rank mismatch");
  if (!rs.is_regular(x)) fail(Errc::NonRegularPoint, "X lies on a root hyperplane");
}

/// Sum_w eps(w) exp(i <w lambda, X>).
inline cplx alternating_sum(const RootSystem& rs, const Vec& lambda, const Vec& x) {
  const cplx I(0, 1);
  cplx s = 0;
  for (const auto& w : rs.weyl_elements) s += double(w.sign) * std::exp(I * (w.matrix * lambda).dot(x));
  return s;
}

/// sin(a/2)/(a/2) with the removable singularity filled in.
inline double sinc_half(double a) {
  const double h = 0.5 * a;
  if (std::abs(h) < 1e-4) return 1.0 - h * h / 6.0 + h * h * h * h / 120.0;
  return std::sin(h) / h;
}
}  // namespace detail

/// Tr T(e^X) = Sum_w eps(w) e^{i<w(m+rho),X>} / Prod_{alpha>0} (e^{i a/2} - e^{-i a/2}).
inline CharacterValue weyl_character(const RootSystem& rs, const HighestWeight& hw, const CartanElement& x) {
  detail::require_regular(rs, x.coords);
  const cplx I(0, 1);
  cplx den = 1.0;
  for (const auto& a : rs.positive_roots) {
    const double t = a.dot(x.coords);
    den *= std::exp(I * 0.5 * t) - std::exp(-I * 0.5 * t);
  }
  return {detail::alternating_sum(rs, hw.shifted, x.coords) / den, x, hw};
}

/// Exact Weyl dimension Prod (lambda, alpha) / (rho, alpha).
inline double weyl_dimension_product(const RootSystem& rs, const HighestWeight& hw) {
  double d = 1.0;
  for (const auto& a : rs.positive_roots) d *= hw.shifted.dot(a) / rs.rho.dot(a);
  return d;
}

/// Dimension as the limit of the character along X = t rho, t -> 0
/// (Richardson-extrapolated on the real part, which is even in t).
inline long weyl_dimension(const RootSystem& rs, const HighestWeight& hw) {
  // Phases are t <w(m+rho), rho>. Smaller t loses digits to cancellation in
  // the alternating sum, so start at phase 2 and take four halvings.
  std::vector<double> samples;
  double t = 2.0 / hw.shifted.dot(rs.rho);
  for (int k = 0; k < 4; ++k, t *= 0.5) samples.push_back(weyl_character(rs, hw, {t * rs.rho}).value.real());
  const double est = richardson(samples, 2.0, 2.0);
  const double coarse = richardson(std::vector<double>(samples.begin(), samples.end() - 1), 2.0, 2.0);
  const double r = std::round(est);
  const double scale = std::max(1.0, std::abs(est));
  if (std::abs(est - r) >= 1e-6 * scale || std::abs(est - coarse) > 1e-2 * scale)
    fail(Errc::ExtrapolationFailure, "character limit did not stabilise at an integer: " + std::to_string(est));
  return static_cast<long>(r);
}

/// J^{1/2}(X) = Prod_{alpha>0} sin(a/2)/(a/2), a = <alpha, X>.
inline double j_half(const RootSystem& rs, const CartanElement& x) {
  if (x.coords.size() != rs.rank) fail(Errc::RankMismatch, "Cartan element rank mismatch");
  double p = 1.0;
  for (const auto& a : rs.positive_roots) p *= detail::sinc_half(a.dot(x.coords));
  return p;
}

/// J(X) = det( sinh(ad X/2) / (ad X/2) ) from the eigenvalues of ad X.
inline double j_factor_matrix(const MatrixAlgebra& alg, const CMat& x) {
  const Mat ad = alg.ad_matrix(x);
  const Eigen::EigenSolver<Mat> es(ad, false);
  cplx p = 1.0;
  for (Eigen::Index k = 0; k < ad.rows(); ++k) {
    const cplx z = es.eigenvalues()(k);
    if (std::abs(z) < 1e-10) continue;
    p *= std::sinh(0.5 * z) / (0.5 * z);
  }
  return p.real();
}

/// J^{1/2}(X) Tr T(e^X).
inline cplx kirillov_lhs(const RootSystem& rs, const HighestWeight& hw, const CartanElement& x) {
  return j_half(rs, x) * weyl_character(rs, hw, x).value;
}

}  // namespace orbital_loc
