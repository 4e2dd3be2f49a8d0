#pragma once

// Coadjoint orbits of U(1), SU(2), SU(3): Liouville-measure integration,
// the Harish-Chandra closed form of the orbit Fourier transform, and the
// disintegration of Lebesgue measure on g* into orbit measures.
//
// The Liouville measure is sigma^d / (d! (2 pi)^d). Its total mass on the
// orbit through a dominant F is Prod_{alpha in P_F} (F, alpha)/(rho, alpha),
// which is the Weyl dimension when F = m + rho.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "orbital_loc/errors.hpp"
#include "orbital_loc/lie_core.hpp"
#include "orbital_loc/quadrature.hpp"

namespace orbital_loc {

struct CoadjointOrbit {
  Group group{};
  Vec base_point;                 // F in Cartan coordinates (dominant)
  std::vector<Vec> roots;         // P_F
  int dim = 0;                    // 2 |P_F|
  double normalization_factor = 1.0;  // Liouville mass
};

struct SU2GaussLegendre {
  int n_z = 64;
  int n_phi = 64;
};
struct HaarMC {
  std::int64_t samples = 100000;
  std::uint64_t seed = 0x5eedULL;
  double tolerance = 0.0;  // > 0: fail with MCVarianceOverflow above this standard error
};
struct PointMass {};
using QuadratureScheme = std::variant<SU2GaussLegendre, HaarMC, PointMass>;

struct IntegralEstimate {
  cplx value;
  double error = 0.0;  // deterministic refinement difference or MC standard error
};

enum class FourierMethod { ClosedForm, Quadrature };

struct OrbitFourierValue {
  cplx value;
  CartanElement at;
  FourierMethod method = FourierMethod::ClosedForm;
};

/// Function on g* taking orthonormal full-algebra coordinates.
using DualFunction = std::function<cplx(const Vec&)>;

inline RootSystem root_system_of(Group g) {
  const auto f = family_of(g);
  if (!f) fail(Errc::UnsupportedFamily, "group has no roots");
  return build_root_system(*f);
}

inline CoadjointOrbit make_orbit(Group group, const Weight& f) {
  CoadjointOrbit o;
  o.group = group;
  o.base_point = f.coords;
  if (group == Group::U1) {
    if (f.coords.size() != 1) fail(Errc::RankMismatch, "u(1) covector has one coordinate");
    return o;
  }
  const RootSystem rs = root_system_of(group);
  if (f.coords.size() != rs.rank) fail(Errc::RankMismatch, "covector rank mismatch");
  if (!rs.is_dominant(f.coords)) fail(Errc::NonDominant, "orbit base point must lie in the closed dominant chamber");
  o.roots = nonorthogonal_positive_roots(rs, f.coords);
  o.dim = 2 * static_cast<int>(o.roots.size());
  for (const auto& a : o.roots) o.normalization_factor *= f.coords.dot(a) / rs.rho.dot(a);
  return o;
}

/// Haar-distributed unitary via QR of a complex Ginibre matrix with the
/// phases of diag(R) folded into Q.
template <class Rng>
CMat haar_unitary(int n, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  CMat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cplx(nd(rng), nd(rng));
  Eigen::HouseholderQR<CMat> qr(a);
  CMat q = qr.householderQ();
  const CMat& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const cplx d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

namespace detail {

inline IntegralEstimate su2_sphere_mean(double radius, const DualFunction& f, int n_z, int n_phi) {
  const Rule gl = gauss_legendre(n_z);
  std::vector<cplx> terms;
  terms.reserve(static_cast<std::size_t>(n_z) * n_phi);
  for (int i = 0; i < n_z; ++i) {
    const double u = gl.nodes[i], s = std::sqrt(std::max(0.0, 1.0 - u * u));
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / n_phi;
      Vec xi(3);
      xi << radius * s * std::cos(phi), radius * s * std::sin(phi), radius * u;
      terms.push_back(0.5 * gl.weights[i] / n_phi * f(xi));
    }
  }
  return {pairwise_sum(terms), 0.0};
}

}  // namespace detail

/// Integral of f against the Liouville measure of the orbit.
inline IntegralEstimate liouville_integral(const CoadjointOrbit& orbit, const DualFunction& f,
                                           const QuadratureScheme& scheme) {
  const MatrixAlgebra alg(orbit.group);
  const CMat fmat = alg.from_cartan(orbit.base_point);

  if (orbit.dim == 0) {
    if (std::holds_alternative<SU2GaussLegendre>(scheme) && orbit.group != Group::SU2)
      fail(Errc::SchemeMismatch, "Gauss-Legendre sphere rule needs an SU(2) orbit");
    return {f(alg.coords(fmat)), 0.0};
  }

  if (const auto* gl = std::get_if<SU2GaussLegendre>(&scheme)) {
    if (orbit.group != Group::SU2) fail(Errc::SchemeMismatch, "Gauss-Legendre sphere rule needs an SU(2) orbit");
    if (gl->n_z < 8 || gl->n_phi < 8) fail(Errc::SchemeMismatch, "need n_z, n_phi >= 8");
    // Under the -tr identification the orbit is the round sphere of radius |F|.
    const double r = orbit.base_point.norm();
    const auto fine = detail::su2_sphere_mean(r, f, gl->n_z, gl->n_phi);
    const auto coarse = detail::su2_sphere_mean(r, f, std::max(8, gl->n_z / 2), std::max(8, gl->n_phi / 2));
    return {orbit.normalization_factor * fine.value,
            orbit.normalization_factor * std::abs(fine.value - coarse.value)};
  }
  if (const auto* mc = std::get_if<HaarMC>(&scheme)) {
    if (mc->samples < 1000) fail(Errc::SchemeMismatch, "Monte Carlo needs at least 1000 samples");
    std::mt19937_64 rng(mc->seed);
    std::vector<cplx> vals;
    vals.reserve(static_cast<std::size_t>(mc->samples));
    for (std::int64_t k = 0; k < mc->samples; ++k) {
      const CMat g = haar_unitary(alg.matrix_size(), rng);
      vals.push_back(f(alg.coords(g * fmat * g.adjoint())));
    }
    const double n = static_cast<double>(vals.size());
    const cplx mean = pairwise_sum(vals) / n;
    std::vector<double> sq;
    sq.reserve(vals.size());
    for (const auto& v : vals) sq.push_back(std::norm(v - mean));
    const double var = pairwise_sum(sq) / (n - 1.0);
    const double se = orbit.normalization_factor * std::sqrt(var / n);
    if (mc->tolerance > 0 && se > mc->tolerance)
      fail(Errc::MCVarianceOverflow, "standard error " + std::to_string(se) + " exceeds tolerance");
    return {orbit.normalization_factor * mean, se};
  }
  fail(Errc::SchemeMismatch, "point-mass scheme on a positive-dimensional orbit");
}

/// Harish-Chandra coset form: Sum_{W/W_l} e^{i<w l, X>} / Prod_{alpha in P_l} i<w alpha, X>.
inline OrbitFourierValue harish_chandra_ft(const RootSystem& rs, const Weight& lambda, const CartanElement& x) {
  if (lambda.coords.size() != rs.rank || x.coords.size() != rs.rank) fail(Errc::RankMismatch, "rank mismatch");
  const cplx I(0, 1);
  // dominant representative
  Vec lam = lambda.coords;
  for (const auto& w : rs.weyl_elements) {
    const Vec c = w.matrix * lambda.coords;
    if (rs.is_dominant(c)) {
      lam = c;
      break;
    }
  }
  const auto pl = nonorthogonal_positive_roots(rs, lam);
  std::vector<Vec> seen;
  cplx sum = 0;
  for (const auto& w : rs.weyl_elements) {
    const Vec wl = w.matrix * lam;
    if (detail::contains(seen, wl, 1e-10)) continue;
    seen.push_back(wl);
    cplx den = 1.0;
    for (const auto& a : pl) {
      const double t = (w.matrix * a).dot(x.coords);
      if (std::abs(t) <= 1e-8) fail(Errc::NonRegularPoint, "X is singular for this orbit");
      den *= I * t;
    }
    sum += std::exp(I * wl.dot(x.coords)) / den;
  }
  return {sum, x, FourierMethod::ClosedForm};
}

/// Regular-orbit form: Prod_{alpha>0} (i<alpha,X>)^{-1} Sum_w eps(w) e^{i<w l, X>}.
inline cplx harish_chandra_ft_signed(const RootSystem& rs, const Weight& lambda, const CartanElement& x) {
  if (!rs.is_regular(x.coords)) fail(Errc::NonRegularPoint, "X lies on a root hyperplane");
  const cplx I(0, 1);
  cplx den = 1.0, num = 0.0;
  for (const auto& a : rs.positive_roots) den *= I * a.dot(x.coords);
  for (const auto& w : rs.weyl_elements) num += double(w.sign) * std::exp(I * (w.matrix * lambda.coords).dot(x.coords));
  return num / den;
}

/// The orbit Fourier transform by quadrature of e^{i<xi, X>} over the orbit.
inline OrbitFourierValue orbit_ft_quadrature(const CoadjointOrbit& orbit, const CartanElement& x,
                                             const QuadratureScheme& scheme, double* error = nullptr) {
  const MatrixAlgebra alg(orbit.group);
  const Vec xfull = alg.embed_cartan(x.coords);
  const cplx I(0, 1);
  const auto est = liouville_integral(orbit, [&](const Vec& xi) { return std::exp(I * xi.dot(xfull)); }, scheme);
  if (error) *error = est.error;
  return {est.value, x, FourierMethod::Quadrature};
}

/// Density p on the closed dominant chamber (orthonormal Cartan coordinates)
/// such that Lebesgue measure on g* equals Int p(F) beta_F dF:
/// p(F) = (2 pi)^{|P|} Prod_{alpha>0} (F, alpha).
struct PlancherelDensity {
  Group group{};
  std::vector<Vec> positive_roots;

  double operator()(const Vec& f) const {
    double p = 1.0;
    for (const auto& a : positive_roots) p *= 2.0 * std::numbers::pi * f.dot(a);
    return p;
  }
};

inline PlancherelDensity plancherel_disintegration(Group group) {
  PlancherelDensity p;
  p.group = group;
  if (group != Group::U1) p.positive_roots = root_system_of(group).positive_roots;
  return p;
}

}  // namespace orbital_loc
