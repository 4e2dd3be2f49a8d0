#pragma once

// Reduction of a circle action at a level c of the moment map, the Witten
// deformation of the equivariant integral and the two closed expressions for
// its t -> infinity limit.
//
// Quantitative routines cover S^1 acting on S^2 (reduced space a point).
// The diagonal circle on S^2 x S^2 shares the level bookkeeping and the
// numeric Fourier side of the Jeffrey-Kirwan check; its reduced-space side
// lives with the connection data in chern_weil.hpp.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orbital_loc/cartan_model.hpp"
#include "orbital_loc/orbits.hpp"

namespace orbital_loc {

template <int N>
using HamiltonianSpace = GroupAction<N>;

namespace detail {
inline constexpr double kTau = 2.0 * std::numbers::pi;

template <int N>
void require_circle(const GroupAction<N>& a) {
  if (a.group != ActionGroup::S1) fail(Errc::SchemeMismatch, "quantitative reduction needs a circle action");
}

inline Vec unit_x() { return Vec::Ones(1); }
}  // namespace detail

// ---------------------------------------------------------------------------
// Test functions on a rank-one algebra

/// Phi(X) = exp(-X^2 / (2 s^2)) * Sum_k poly[k] X^k. The invariant variant
/// uses |X|^2 in the exponent and the polynomial in |X|^2.
struct TestFunction {
  double scale = 1.0;
  std::vector<double> poly{1.0};

  int degree() const { return poly.empty() ? 0 : static_cast<int>(poly.size()) - 1; }

  double polynomial(double x) const {
    double v = 0.0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) v = v * x + *it;
    return v;
  }
  double operator()(double x) const { return std::exp(-x * x / (2.0 * scale * scale)) * polynomial(x); }
  double invariant(const Vec& x) const {
    const double r2 = x.squaredNorm();
    return std::exp(-r2 / (2.0 * scale * scale)) * polynomial(r2);
  }
  double at_zero() const { return poly.empty() ? 0.0 : poly[0]; }
  double derivative_at_zero() const { return poly.size() > 1 ? poly[1] : 0.0; }

  /// Beyond this frequency the transform is below e^{-50} times the
  /// polynomial's size, and is dropped.
  double frequency_cutoff() const { return (10.0 + degree()) / scale; }
  double truncation_radius() const { return (10.0 + degree()) * scale; }

  TestFunction scaled(double a) const {
    TestFunction f = *this;
    for (auto& c : f.poly) c *= a;
    return f;
  }
};

/// Gauss-Hermite rule for Int e^{-X^2/(2 s^2)} g(X) dX resolving frequencies
/// up to omega.
inline Rule gaussian_rule(double s, double omega) {
  const double wx = omega * std::sqrt(2.0) * s;
  const int n = static_cast<int>(std::ceil(0.65 * wx * wx + 40.0));
  Rule r = gauss_hermite(n);
  for (std::size_t k = 0; k < r.size(); ++k) {
    r.nodes[k] *= std::sqrt(2.0) * s;
    r.weights[k] *= std::sqrt(2.0) * s;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Catalog of closed equivariant forms used on the reduction side

enum class AlphaKind { One, ExpISigma, SigmaG };

struct CatalogAlpha {
  AlphaKind kind = AlphaKind::One;
  cplx scale = 1.0;

  std::string name() const {
    switch (kind) {
      case AlphaKind::One: return "1";
      case AlphaKind::ExpISigma: return "exp(i sigma_g)";
      case AlphaKind::SigmaG: return "sigma_g";
    }
    return "?";
  }

  template <int N>
  auto form(const GroupAction<N>& a) const {
    return [e = exp_i_sigma_g_form(a), g = sigma_g_form(a), k = kind, s = scale](const auto& p, const Vec& x) {
      using T = scalar_of<decltype(p)>;
      switch (k) {
        case AlphaKind::ExpISigma: return e(p, x) * s;
        case AlphaKind::SigmaG: return g(p, x) * s;
        default: return Form<T, N>::scalar(T(s));
      }
    };
  }

  /// Bound on |d phase / dX| of the form's X dependence.
  template <int N>
  double frequency(const GroupAction<N>& a) const {
    if (kind != AlphaKind::ExpISigma) return 0.0;
    double r = 0.0;
    for (int f = 0; f < N / 2; ++f) r += a.manifold.radii[f];
    return r;
  }
};

// ---------------------------------------------------------------------------
// Levels

struct CriticalRadius {
  double value = 0.0;
  std::vector<double> location;  // z-coordinates of a minimizing critical point
};

namespace detail {

/// Riemannian gradient of f = (mu - c)^2 in the z-coordinates, where the
/// metric is R^2/(R^2 - z^2) dz^2 per sphere factor.
template <int N>
std::vector<double> level_gradient(const GroupAction<N>& a, double c, const std::vector<double>& z) {
  std::vector<double> g(z.size());
  double mu = 0.0;
  for (double v : z) mu += v;
  for (std::size_t k = 0; k < z.size(); ++k) {
    const double r2 = a.manifold.radii[k] * a.manifold.radii[k];
    g[k] = (r2 - z[k] * z[k]) / r2 * 2.0 * (mu - c);
  }
  return g;
}

inline double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

}  // namespace detail

/// Smallest positive critical value of |mu - c|^2. Critical points are
/// located on a grid over the z-box and refined by Newton's method on the
/// Riemannian gradient; the angular coordinates do not enter.
template <int N>
CriticalRadius critical_radius(const GroupAction<N>& a, double c) {
  detail::require_circle(a);
  constexpr int D = N / 2;
  const auto [lo, hi] = moment_range(a, 0);
  if (!(c > lo && c < hi)) fail(Errc::NoRegularLevel, "level " + std::to_string(c) + " outside the moment image");
  const int g = D == 1 ? 2001 : 201;
  std::vector<std::vector<double>> candidates;
  std::vector<int> idx(D, 0);
  const auto point = [&](const std::vector<int>& i) {
    std::vector<double> z(D);
    for (int k = 0; k < D; ++k) z[k] = -a.manifold.radii[k] + 2.0 * a.manifold.radii[k] * i[k] / (g - 1);
    return z;
  };
  const auto gnorm = [&](const std::vector<int>& i) { return detail::norm2(detail::level_gradient(a, c, point(i))); };
  for (;;) {
    const double here = gnorm(idx);
    bool minimum = true;
    for (int k = 0; k < D && minimum; ++k)
      for (int s : {-1, 1}) {
        auto j = idx;
        j[k] += s;
        if (j[k] < 0 || j[k] >= g) continue;
        if (gnorm(j) < here) minimum = false;
      }
    if (minimum) candidates.push_back(point(idx));
    int k = D - 1;
    while (k >= 0 && ++idx[k] == g) idx[k--] = 0;
    if (k < 0) break;
  }
  std::optional<CriticalRadius> best;
  for (auto z : candidates) {
    for (int it = 0; it < 60 && detail::norm2(detail::level_gradient(a, c, z)) > 1e-30; ++it) {
      const auto v = detail::level_gradient(a, c, z);
      Eigen::MatrixXd J(D, D);
      for (int k = 0; k < D; ++k) {
        auto zp = z, zm = z;
        const double h = 1e-7;
        zp[k] += h;
        zm[k] -= h;
        const auto vp = detail::level_gradient(a, c, zp), vm = detail::level_gradient(a, c, zm);
        for (int i = 0; i < D; ++i) J(i, k) = (vp[i] - vm[i]) / (2 * h);
      }
      Eigen::VectorXd rhs(D);
      for (int i = 0; i < D; ++i) rhs(i) = -v[i];
      const Eigen::VectorXd step = J.completeOrthogonalDecomposition().solve(rhs);
      for (int k = 0; k < D; ++k)
        z[k] = std::clamp(z[k] + step(k), -a.manifold.radii[k], a.manifold.radii[k]);
    }
    if (std::sqrt(detail::norm2(detail::level_gradient(a, c, z))) > 1e-8) continue;
    double mu = 0.0;
    for (double v : z) mu += v;
    const double value = (mu - c) * (mu - c);
    if (value <= 1e-12) continue;
    if (!best || value < best->value) best = CriticalRadius{value, z};
  }
  if (!best) fail(Errc::NoCriticalValue, "no positive critical value of |mu_O|^2");
  return *best;
}

/// Smooth step: 0 for x <= 0, 1 for x >= 1.
inline double smooth_step(double x) {
  const auto f = [](double y) { return y > 0.0 ? std::exp(-1.0 / y) : 0.0; };
  return f(x) / (f(x) + f(1.0 - x));
}

struct ReductionLevel {
  double c = 0.0;
  double critical_value = 0.0;  // R
  std::vector<double> critical_point;
  double r = 0.0;
  double cutoff = 0.25;  // eps_cut

  /// chi_O as a function of |mu_O|.
  double chi(double dist) const { return 1.0 - smooth_step((std::abs(dist) - 0.5 * cutoff) / (0.5 * cutoff)); }
};

/// Throws NonRegularLevel when the level meets a fixed point.
template <int N>
void require_regular_level(const GroupAction<N>& a, double c) {
  const auto [lo, hi] = moment_range(a, 0);
  if (c < lo || c > hi) fail(Errc::NoRegularLevel, "level outside the moment image");
  for (const auto& fp : a.fixed_points())
    if (std::abs(fp.moment(0) - c) < 1e-9)
      fail(Errc::NonRegularLevel, "the level contains a fixed point of the action");
}

template <int N>
ReductionLevel make_level(const GroupAction<N>& a, double c, std::optional<double> r = std::nullopt,
                          double cutoff = 0.25) {
  require_regular_level(a, c);
  const auto cr = critical_radius(a, c);
  ReductionLevel l;
  l.c = c;
  l.critical_value = cr.value;
  l.critical_point = cr.location;
  l.r = r.value_or(0.5 * cr.value);
  l.cutoff = cutoff;
  if (!(l.r > 0.0 && l.r < cr.value)) fail(Errc::NonRegularLevel, "need 0 < r < R");
  if (!(cutoff > 0.0)) fail(Errc::NonRegularLevel, "cutoff width must be positive");
  return l;
}

// ---------------------------------------------------------------------------
// The Witten one-form

/// H_O = sgrad(|mu_O|^2 / 2) = mu_O X_M(1) and lambda = (H_O, .).
template <int N>
struct WittenOneForm {
  GroupAction<N> action;
  double c = 0.0;

  template <class T>
  T mu_o(const std::array<T, N>& p) const {
    return action.moment(p)[0] - c;
  }
  template <class T>
  std::array<T, N> field(const std::array<T, N>& p) const {
    auto v = action.vector_field(p, detail::unit_x());
    const T m = mu_o(p);
    for (auto& x : v) x = x * m;
    return v;
  }
  template <class T>
  Form<T, N> lambda(const std::array<T, N>& p) const {
    const auto v = field(p);
    const auto g = action.manifold.metric_diag(p);
    Form<T, N> f;
    for (int k = 0; k < N; ++k) f[1 << k] = g[k] * v[k];
    return f;
  }
  /// f_lambda(X) = lambda(X_M), linear in X; its coefficient.
  cplx f_lambda(const std::array<cplx, N>& p) const {
    return contract(action.vector_field(p, detail::unit_x()), lambda(p))[0];
  }
  /// <f_lambda, mu_O>
  cplx pairing(const std::array<cplx, N>& p) const { return f_lambda(p) * mu_o(p); }
  cplx norm2(const std::array<cplx, N>& p) const {
    const auto v = field(p);
    const auto g = action.manifold.metric_diag(p);
    cplx s = 0.0;
    for (int k = 0; k < N; ++k) s += g[k] * v[k] * v[k];
    return s;
  }
  /// d lambda at p.
  Form<cplx, N> d_lambda(const std::array<cplx, N>& p) const {
    return exterior_d<N>([this](const auto& q) { return lambda(q); }, p);
  }
};

/// exp(-i t d_X lambda) = e^{i t X f_lambda} Sum_k (-i t d lambda)^k / k!.
/// Returned without the X-dependent phase; `rate` receives t f_lambda.
template <int N>
Form<cplx, N> deformation_factor(const WittenOneForm<N>& w, const std::array<cplx, std::size_t(N)>& p, double t, double* rate) {
  *rate = t * w.f_lambda(p).real();
  const auto dl = w.d_lambda(p);
  auto term = Form<cplx, N>::scalar(1.0);
  auto acc = term;
  for (int k = 1; k <= N / 2; ++k) {
    term = wedge(term, dl) * (cplx(0, -t) / double(k));
    acc += term;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Outer quadrature along z

namespace detail {

template <class F>
cplx line_sum(const Rule& r, const F& f) {
  std::vector<cplx> terms(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) terms[i] = r.weights[i] * f(r.nodes[i]);
  return pairwise_sum(terms);
}

/// Composite Gauss-Legendre on [a,b] with panel doubling.
template <class F>
cplx adaptive_line(double a, double b, const F& f, double tol, int panels = 8, int max_panels = 8192) {
  if (!(b > a)) return 0.0;
  cplx prev = line_sum(composite_gauss(a, b, panels, 8), f);
  while (panels < max_panels) {
    panels *= 2;
    const cplx cur = line_sum(composite_gauss(a, b, panels, 8), f);
    if (std::abs(cur - prev) < tol * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  fail(Errc::QuadratureFailure, "outer quadrature did not converge");
}

inline std::vector<std::pair<double, double>> z_intervals(double lo, double hi, double c, double w, int region) {
  // region: 0 all, 1 inner |z - c| < w, 2 outer
  if (region == 0) return {{lo, hi}};
  const double a = std::clamp(c - w, lo, hi), b = std::clamp(c + w, lo, hi);
  if (region == 1) return {{a, b}};
  return {{lo, a}, {b, hi}};
}

}  // namespace detail

enum class Region { All, Inner, Outer };

inline std::string to_string(Region r) { return r == Region::All ? "all" : r == Region::Inner ? "inner" : "outer"; }

struct ThetaOptions {
  double tol = 1e-12;
  bool use_cutoff = false;  // weight by chi_O(mu_O) over |mu_O| < eps_cut instead of a sharp region
};

/// <Theta(M,t), Phi> = Int_g Phi(X) Int_region e^{-i t d_X lambda} alpha(X) dX for
/// S^1 on S^2. The angular integral is done with one node: every catalog
/// integrand is rotation invariant.
inline cplx theta_t(const GroupAction<2>& a, const ReductionLevel& level, Region region, double t,
                    const TestFunction& phi, const CatalogAlpha& alpha, const ThetaOptions& opt = {}) {
  detail::require_circle(a);
  if (t < 0) fail(Errc::QuadratureFailure, "t must be non-negative");
  const WittenOneForm<2> w{a, level.c};
  const auto af = alpha.form(a);
  const double afreq = alpha.frequency(a);
  const double cap = phi.frequency_cutoff();
  const Rule gh = gaussian_rule(phi.scale, cap + 2.0 * afreq);
  std::vector<double> poly(gh.size());
  for (std::size_t k = 0; k < gh.size(); ++k) poly[k] = gh.weights[k] * phi.polynomial(gh.nodes[k]);
  const double rad = a.manifold.radii[0];

  const auto integrand = [&](double z) -> cplx {
    const std::array<cplx, 2> p{z, 0.0};
    double rate = 0.0;
    const auto e = deformation_factor(w, p, t, &rate);
    if (std::abs(rate) - afreq > cap) return 0.0;
    std::vector<cplx> terms(gh.size());
    for (std::size_t k = 0; k < gh.size(); ++k) {
      const double x = gh.nodes[k];
      terms[k] = poly[k] * std::exp(cplx(0, rate * x)) * wedge(e, af(p, Vec::Constant(1, x))).top();
    }
    cplx v = detail::kTau * double(a.manifold.orientation) * pairwise_sum(terms);
    if (opt.use_cutoff) v *= level.chi(z - level.c);
    return v;
  };
  std::vector<std::pair<double, double>> parts;
  if (opt.use_cutoff)
    parts = detail::z_intervals(-rad, rad, level.c, level.cutoff, 1);
  else
    parts = detail::z_intervals(-rad, rad, level.c, std::sqrt(level.r), static_cast<int>(region));
  cplx total = 0.0;
  for (const auto& [lo, hi] : parts) total += detail::adaptive_line(lo, hi, integrand, opt.tol);
  return total;
}

struct TLimit {
  std::vector<double> t;
  std::vector<cplx> values;
  bool converged = false;
  cplx limit;
};

/// theta_t on a t-ladder; converged when the last two values differ < tol.
inline TLimit theta_limit(const GroupAction<2>& a, const ReductionLevel& level, const TestFunction& phi,
                          const CatalogAlpha& alpha, std::vector<double> ladder = {10, 20, 40}, double tol = 1e-5,
                          const ThetaOptions& opt = {}) {
  TLimit out;
  out.t = ladder;
  for (double t : ladder) out.values.push_back(theta_t(a, level, Region::Inner, t, phi, alpha, opt));
  const auto n = out.values.size();
  out.limit = out.values.back();
  out.converged = n >= 2 && std::abs(out.values[n - 1] - out.values[n - 2]) < tol;
  return out;
}

// ---------------------------------------------------------------------------
// Theta_0: the reduced expression and the Kirillov expression

struct Theta0Bookkeeping {
  double vol_g = detail::kTau;         // vol(S^1)
  double fiber_volume = detail::kTau;  // Int vol_omega over a fiber of P^O
  bool vol_g_absorbed = true;          // vol(G) counted once, through the fiber
};

namespace detail {
/// Int over the level circle of alpha_red vol_omega, with X -> Omega = 0 on
/// the point M_red.
inline cplx fiber_integral(const GroupAction<2>& a, double c, const CatalogAlpha& alpha) {
  const auto af = alpha.form(a);
  const int n = 64;
  std::vector<cplx> terms(n);
  for (int i = 0; i < n; ++i) {
    const std::array<cplx, 2> p{c, kTau * (i + 0.5) / n};
    terms[i] = af(p, Vec::Zero(1))[0] * (kTau / n);
  }
  return pairwise_sum(terms);
}
}  // namespace detail

/// (2 pi i) Int_{P^O} alpha_red Phi(Omega) vol_omega for S^1 on S^2, where
/// M_red is a point so Phi(Omega) = Phi(0).
inline cplx theta0_reduced(const GroupAction<2>& a, const ReductionLevel& level, const TestFunction& phi,
                           const CatalogAlpha& alpha) {
  detail::require_circle(a);
  require_regular_level(a, level.c);
  return cplx(0, detail::kTau) * phi.at_zero() * detail::fiber_integral(a, level.c, alpha);
}

/// Int_R dxi e^{-i Omega xi} Int_g e^{i xi X} Phi(X) dX as A0 + A1 Omega, by
/// nested quadrature. Fourier inversion gives 2 pi (Phi(0) + Phi'(0) Omega).
inline std::pair<cplx, cplx> kirillov_inner_rank1(const TestFunction& phi) {
  const double cap = phi.frequency_cutoff();
  const Rule gh = gaussian_rule(phi.scale, cap);
  const auto inner = [&](double xi) {
    std::vector<cplx> t(gh.size());
    for (std::size_t k = 0; k < gh.size(); ++k)
      t[k] = gh.weights[k] * phi.polynomial(gh.nodes[k]) * std::exp(cplx(0, xi * gh.nodes[k]));
    return pairwise_sum(t);
  };
  const Rule outer = composite_gauss(-cap, cap, 64, 8);
  std::vector<cplx> a0(outer.size()), a1(outer.size());
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const cplx v = outer.weights[i] * inner(outer.nodes[i]);
    a0[i] = v;
    a1[i] = cplx(0, -outer.nodes[i]) * v;
  }
  return {pairwise_sum(a0), pairwise_sum(a1)};
}

/// The Kirillov-formula expression for S^1: J = 1, orbits are points and
/// dP(O) = d xi, so the inner double integral is Fourier inversion. The
/// prefactor is i^{dim G}; the (2 pi)^{dim G} comes out of the inversion.
inline cplx theta0_kirillov(const GroupAction<2>& a, const ReductionLevel& level, const TestFunction& phi,
                            const CatalogAlpha& alpha) {
  detail::require_circle(a);
  require_regular_level(a, level.c);
  const auto [a0, a1] = kirillov_inner_rank1(phi);
  (void)a1;  // Omega = 0 on a point
  return cplx(0, 1) * a0 * detail::fiber_integral(a, level.c, alpha);
}

struct StructuralIdentity {
  cplx lhs;
  double rhs = 0.0;
  double rel_err = 0.0;
};

/// SU(2): Int dP(O) Int_O e^{-i(w0, xi)} (Int_g e^{i<xi,X>} Phi(X) dX) dbeta_O(xi)
/// against (2 pi)^3 Phi(w0), for Phi = exp(-|X|^2/(2 s^2)). The integrand is
/// fed as J^{-1/2} Psi with Psi = Phi J^{1/2}, so only Phi enters.
inline StructuralIdentity su2_kirillov_identity(double s, const Vec& w0, int n_f = 160) {
  const MatrixAlgebra alg(Group::SU2);
  const auto density = plancherel_disintegration(Group::SU2);
  const TestFunction phi{s, {1.0}};
  const double fmax = phi.frequency_cutoff();
  const Rule gh = gaussian_rule(s, fmax);
  // Phi is a product of one-dimensional Gaussians in orthonormal coordinates.
  const auto phi_hat = [&](const Vec& xi) {
    cplx v = 1.0;
    for (int d = 0; d < xi.size(); ++d) {
      std::vector<cplx> t(gh.size());
      for (std::size_t k = 0; k < gh.size(); ++k) t[k] = gh.weights[k] * std::exp(cplx(0, xi(d) * gh.nodes[k]));
      v *= pairwise_sum(t);
    }
    return v;
  };
  const Rule fr = composite_gauss(0.0, fmax, n_f / 8, 8);
  std::vector<cplx> terms(fr.size());
  for (std::size_t i = 0; i < fr.size(); ++i) {
    const Vec f = Vec::Constant(1, fr.nodes[i]);
    const auto orbit = make_orbit(Group::SU2, {f});
    // Phi_hat is invariant, hence constant on the orbit
    const cplx ph = phi_hat(alg.coords(alg.from_cartan(f)));
    const auto est = liouville_integral(
        orbit, [&](const Vec& xi) { return std::exp(cplx(0, -xi.dot(w0))); }, SU2GaussLegendre{48, 48});
    terms[i] = fr.weights[i] * density(f) * ph * est.value;
  }
  StructuralIdentity out;
  out.lhs = pairwise_sum(terms);
  out.rhs = std::pow(detail::kTau, 3) * phi.invariant(w0);
  out.rel_err = std::abs(out.lhs - out.rhs) / std::abs(out.rhs);
  return out;
}

// ---------------------------------------------------------------------------
// Witten's Gaussian-regularized integral

/// Z(eps) = Int_M Int_g e^{i sigma_g(X) - i c X} beta(X) e^{-eps X^2/2} dX,
/// with the moment shifted to the level. Inner integral by Gauss-Hermite.
inline cplx witten_Z(const GroupAction<2>& a, const ReductionLevel& level, double eps, const CatalogAlpha& beta,
                     double tol = 1e-12) {
  detail::require_circle(a);
  if (!(eps > 0)) fail(Errc::QuadratureFailure, "eps must be positive");
  const double rad = a.manifold.radii[0];
  const double s = 1.0 / std::sqrt(eps);
  const Rule gh = gaussian_rule(s, rad + std::abs(level.c) + beta.frequency(a));
  const auto e = exp_i_sigma_g_form(a);
  const auto bf = beta.form(a);
  const auto integrand = [&](double z) -> cplx {
    const std::array<cplx, 2> p{z, 0.0};
    std::vector<cplx> terms(gh.size());
    for (std::size_t k = 0; k < gh.size(); ++k) {
      const Vec x = Vec::Constant(1, gh.nodes[k]);
      terms[k] = gh.weights[k] * std::exp(cplx(0, -level.c * gh.nodes[k])) * wedge(e(p, x), bf(p, x)).top();
    }
    return detail::kTau * double(a.manifold.orientation) * pairwise_sum(terms);
  };
  return detail::adaptive_line(-rad, rad, integrand, tol);
}

/// beta = 1 fast path: the X integral is Gaussian,
/// Int e^{i u X - eps X^2/2} dX = sqrt(2 pi / eps) e^{-u^2/(2 eps)}.
inline cplx witten_Z_closed(const GroupAction<2>& a, const ReductionLevel& level, double eps, double tol = 1e-12) {
  detail::require_circle(a);
  const double rad = a.manifold.radii[0];
  const auto integrand = [&](double z) -> cplx {
    const double u = z - level.c;
    return detail::kTau * double(a.manifold.orientation) * cplx(0, 1) * std::sqrt(detail::kTau / eps) *
           std::exp(-u * u / (2 * eps));
  };
  return detail::adaptive_line(-rad, rad, integrand, tol);
}

struct ExponentialFit {
  cplx limit;
  cplx amplitude;
  double kappa = 0.0;
};

/// Fit z_k = L + C e^{-kappa a_k} through three points (a increasing).
inline ExponentialFit exponential_extrapolation(std::span<const double> a, std::span<const cplx> z) {
  if (a.size() != 3 || z.size() != 3) fail(Errc::ExtrapolationFailure, "need three points");
  const double ratio = ((z[0] - z[1]) / (z[1] - z[2])).real();
  const auto g = [&](double k) { return std::expm1(k * (a[1] - a[0])) / -std::expm1(-k * (a[2] - a[1])) - ratio; };
  double lo = 1e-8, hi = 100.0;
  if (!(g(lo) < 0 && g(hi) > 0)) fail(Errc::ExtrapolationFailure, "differences are not geometric");
  for (int i = 0; i < 200; ++i) {
    const double m = std::sqrt(lo * hi);
    (g(m) < 0 ? lo : hi) = m;
  }
  ExponentialFit f;
  f.kappa = std::sqrt(lo * hi);
  f.amplitude = (z[1] - z[2]) / (std::exp(-f.kappa * a[1]) - std::exp(-f.kappa * a[2]));
  f.limit = z[2] - f.amplitude * std::exp(-f.kappa * a[2]);
  return f;
}

struct WittenLadder {
  std::vector<double> eps;
  std::vector<cplx> values;       // quadrature
  std::vector<cplx> closed_form;  // fast path, beta = 1 only
  double fast_path_residual = 0.0;
  cplx leading;                   // theta0_reduced with Phi(0) = 1
  cplx richardson;                // polynomial Richardson in eps
  ExponentialFit fit;             // exponential model on the last three rungs
  double decay_rate = 0.0;        // -slope of log|Z - leading| against 1/eps
  double rel_err = 0.0;           // |fit.limit - leading| / |leading|
};

inline WittenLadder witten_ladder(const GroupAction<2>& a, const ReductionLevel& level, std::vector<double> eps,
                                  const CatalogAlpha& beta = {}) {
  if (eps.size() < 3) fail(Errc::ExtrapolationFailure, "eps ladder needs at least three rungs");
  WittenLadder w;
  w.eps = eps;
  for (double e : eps) {
    w.values.push_back(witten_Z(a, level, e, beta));
    if (beta.kind == AlphaKind::One) {
      w.closed_form.push_back(beta.scale * witten_Z_closed(a, level, e));
      w.fast_path_residual = std::max(w.fast_path_residual, std::abs(w.closed_form.back() - w.values.back()));
    }
  }
  w.leading = theta0_reduced(a, level, TestFunction{1.0, {1.0}}, beta);
  {
    std::vector<double> re, im;
    for (const auto& v : w.values) {
      re.push_back(v.real());
      im.push_back(v.imag());
    }
    w.richardson = {richardson(re, 2.0, 1.0), richardson(im, 2.0, 1.0)};
  }
  const auto n = eps.size();
  const std::vector<double> inv{1.0 / eps[n - 3], 1.0 / eps[n - 2], 1.0 / eps[n - 1]};
  const std::vector<cplx> last{w.values[n - 3], w.values[n - 2], w.values[n - 1]};
  w.fit = exponential_extrapolation(inv, last);
  w.rel_err = std::abs(w.fit.limit - w.leading) / std::max(1e-300, std::abs(w.leading));
  // least-squares slope of log|N| against 1/eps
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = 1.0 / eps[k], y = std::log(std::abs(w.values[k] - w.leading));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  w.decay_rate = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
  return w;
}

// ---------------------------------------------------------------------------
// Jeffrey-Kirwan: numeric Fourier transform of X -> Int_M alpha(X)

struct JKRow {
  double xi = 0.0;
  cplx lhs, rhs;
  double abs_err = 0.0;
  double rel_err = 0.0;
};

struct JKLhs {
  std::vector<double> xi;
  std::vector<cplx> values;
  double eta = 0.0;
  double window = 0.0;  // half-length of the X grid
  long nodes = 0;
};

/// F(h)(xi) = (2 pi)^{-1} Int h(X) e^{-eta X^2/2} e^{-i xi X} dX for
/// h(X) = Int_M a e^{i sigma_g(X)}. The damping e^{-eta X^2/2} smooths the
/// transform at scale sqrt(eta).
template <int N>
JKLhs jk_fourier_lhs(const GroupAction<N>& a, std::span<const double> xis, const CatalogAlpha& alpha,
                     double eta = 1e-3) {
  detail::require_circle(a);
  if (alpha.kind != AlphaKind::ExpISigma)
    fail(Errc::SchemeMismatch, "the Jeffrey-Kirwan transform is set up for a e^{i sigma_g}");
  constexpr int D = N / 2;
  // |h(X)| <~ vol (2/|X|)^{D}; stop once the damped tail is below 1e-7
  double L = 10.0;
  while (std::pow(2.0 / L, D) * std::exp(-0.5 * eta * L * L) / (eta * L) > 1e-7) L += 1.0;
  double rmax = 0.0;
  for (int f = 0; f < D; ++f) rmax = std::max(rmax, a.manifold.radii[f]);
  const int nz = static_cast<int>(std::ceil(0.75 * L * rmax + 24));
  // chart grid with one angular node per factor (the integrand is invariant)
  std::vector<double> mu, w;
  std::vector<cplx> top;
  const auto af = alpha.form(a);
  std::array<Rule, D> rules;
  for (int f = 0; f < D; ++f) rules[f] = mapped(gauss_legendre(nz), -a.manifold.radii[f], a.manifold.radii[f]);
  std::array<int, D> idx{};
  for (;;) {
    std::array<cplx, N> p{};
    double weight = 1.0;
    for (int f = 0; f < D; ++f) {
      p[2 * f] = rules[f].nodes[idx[f]];
      weight *= rules[f].weights[idx[f]] * detail::kTau;
    }
    mu.push_back(a.moment(p)[0].real());
    w.push_back(weight * a.manifold.orientation);
    top.push_back(af(p, Vec::Zero(1)).top());
    int f = D - 1;
    while (f >= 0 && ++idx[f] == nz) idx[f--] = 0;
    if (f < 0) break;
  }
  const Rule xr = composite_gauss(-L, L, static_cast<int>(2 * L), 8);
  std::vector<cplx> h(xr.size());
  for (std::size_t k = 0; k < xr.size(); ++k) {
    std::vector<cplx> t(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) t[i] = w[i] * top[i] * std::exp(cplx(0, xr.nodes[k] * mu[i]));
    h[k] = pairwise_sum(t) * std::exp(-0.5 * eta * xr.nodes[k] * xr.nodes[k]);
  }
  JKLhs out;
  out.eta = eta;
  out.window = L;
  out.nodes = static_cast<long>(xr.size() * mu.size());
  for (double xi : xis) {
    std::vector<cplx> t(xr.size());
    for (std::size_t k = 0; k < xr.size(); ++k) t[k] = xr.weights[k] * h[k] * std::exp(cplx(0, -xi * xr.nodes[k]));
    out.xi.push_back(xi);
    out.values.push_back(pairwise_sum(t) / detail::kTau);
  }
  return out;
}

inline std::vector<JKRow> make_jk_rows(const JKLhs& lhs, const std::vector<cplx>& rhs) {
  std::vector<JKRow> rows;
  for (std::size_t k = 0; k < lhs.xi.size(); ++k) {
    JKRow r{lhs.xi[k], lhs.values[k], rhs[k]};
    r.abs_err = std::abs(r.lhs - r.rhs);
    r.rel_err = r.abs_err / std::max(1e-300, std::abs(r.rhs));
    rows.push_back(r);
  }
  return rows;
}

/// S^1 on S^2: right-hand side i Int_{P^O} alpha_red e^{-i(xi, Omega)} vol_omega
/// with M_red a point, so Omega = 0.
inline std::vector<JKRow> jeffrey_kirwan_ft(const GroupAction<2>& a, std::span<const double> xis,
                                            const CatalogAlpha& alpha, double eta = 1e-3) {
  std::vector<cplx> rhs;
  for (double xi : xis) {
    require_regular_level(a, xi);
    rhs.push_back(cplx(0, 1) * detail::fiber_integral(a, xi, alpha));
  }
  return make_jk_rows(jk_fourier_lhs(a, xis, alpha, eta), rhs);
}

}  // namespace orbital_loc
