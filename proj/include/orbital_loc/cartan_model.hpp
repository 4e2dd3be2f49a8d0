#pragma once

// Equivariant Cartan model on a small catalog of Hamiltonian G-manifolds:
// the spheres S^2(R), products S^2 x S^2, and the disk, with S^1, T^2 and
// SU(2) actions. Charts are Darboux: (z, phi) on a sphere and (s, phi) with
// s = |x|^2 / 2 on the disk, so sigma = dz ^ dphi (resp. ds ^ dphi).
//
// Sign conventions: X_M(m) = d/dt exp(-tX) m at t = 0, iota(X_M) sigma =
// d<mu, X>, and d_X = d - iota(X_M).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "orbital_loc/errors.hpp"
#include "orbital_loc/forms.hpp"
#include "orbital_loc/jet.hpp"
#include "orbital_loc/lie_core.hpp"
#include "orbital_loc/quadrature.hpp"

namespace orbital_loc {

template <int N>
using ChartPoint = std::array<double, std::size_t(N)>;

template <class P>
using scalar_of = typename std::decay_t<P>::value_type;

enum class ManifoldKind { Sphere2, ProductS2xS2, Disk2 };

template <int N>
struct CatalogManifold {
  static constexpr int kDim = N;
  ManifoldKind kind{};
  std::array<double, 2> radii{1.0, 1.0};
  std::array<double, N> lo{}, hi{};
  std::array<bool, N> periodic{};
  int orientation = 1;
  bool closed = true;

  std::string name() const {
    switch (kind) {
      case ManifoldKind::Sphere2: return "S2(" + fmt(radii[0]) + ")";
      case ManifoldKind::ProductS2xS2: return "S2(" + fmt(radii[0]) + ")xS2(" + fmt(radii[1]) + ")";
      case ManifoldKind::Disk2: return "D2(" + fmt(radii[0]) + ")";
    }
    return "?";
  }

  /// sigma = sum of dz_k ^ dphi_k over the factors.
  template <class T>
  Form<T, N> sigma(const std::array<T, N>&) const {
    Form<T, N> f;
    f[0b11] = T(1.0);
    if constexpr (N == 4) f[0b1100] = T(1.0);
    return f;
  }

  /// Int sigma^k / k! with k = N / 2.
  double symplectic_volume() const {
    const double tau = 2.0 * std::numbers::pi;
    switch (kind) {
      case ManifoldKind::Sphere2: return 2.0 * tau * radii[0];
      case ManifoldKind::ProductS2xS2: return 4.0 * tau * tau * radii[0] * radii[1];
      case ManifoldKind::Disk2: return tau * 0.5 * radii[0] * radii[0];
    }
    return 0.0;
  }

  /// Diagonal of the round (resp. flat) metric in chart coordinates.
  template <class T>
  std::array<T, N> metric_diag(const std::array<T, N>& p) const {
    std::array<T, N> g;
    if (kind == ManifoldKind::Disk2) {
      g[0] = T(1.0) / (2.0 * p[0]);
      g[1] = 2.0 * p[0];
      return g;
    }
    for (int f = 0; f < N / 2; ++f) {
      const double r2 = radii[f] * radii[f];
      const T w = r2 - p[2 * f] * p[2 * f];
      g[2 * f] = r2 / w;
      g[2 * f + 1] = w;
    }
    return g;
  }

 private:
  static std::string fmt(double x) {
    std::string s = std::to_string(x);
    while (s.size() > 1 && s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    return s;
  }
};

inline CatalogManifold<2> sphere2(double radius = 1.0) {
  CatalogManifold<2> m;
  m.kind = ManifoldKind::Sphere2;
  m.radii = {radius, radius};
  m.lo = {-radius, 0.0};
  m.hi = {radius, 2.0 * std::numbers::pi};
  m.periodic = {false, true};
  return m;
}

inline CatalogManifold<4> product_s2xs2(double r1 = 1.0, double r2 = 1.0) {
  CatalogManifold<4> m;
  m.kind = ManifoldKind::ProductS2xS2;
  m.radii = {r1, r2};
  m.lo = {-r1, 0.0, -r2, 0.0};
  m.hi = {r1, 2.0 * std::numbers::pi, r2, 2.0 * std::numbers::pi};
  m.periodic = {false, true, false, true};
  return m;
}

inline CatalogManifold<2> disk2(double radius = 1.0) {
  CatalogManifold<2> m;
  m.kind = ManifoldKind::Disk2;
  m.radii = {radius, radius};
  m.lo = {0.0, 0.0};
  m.hi = {0.5 * radius * radius, 2.0 * std::numbers::pi};
  m.periodic = {false, true};
  m.closed = false;
  return m;
}

enum class ActionGroup { S1, T2, SU2 };

template <int N>
struct FixedPoint {
  ChartPoint<N> point{};
  Vec moment;                // mu(p)
  std::vector<Vec> weights;  // isotropy weights, one covector per complex direction
};

/// Hamiltonian action of S^1 (rotation or diagonal rotation), T^2 (one
/// circle per factor) or SU(2) (rotation of S^2) on a catalog manifold.
template <int N>
struct GroupAction {
  ActionGroup group{};
  CatalogManifold<N> manifold;

  int algebra_dim() const { return group == ActionGroup::S1 ? 1 : group == ActionGroup::T2 ? 2 : 3; }

  void require_x(const Vec& x) const {
    if (x.size() != algebra_dim()) fail(Errc::RankMismatch, "Lie algebra element has the wrong dimension");
  }

  /// X_M in chart components.
  template <class T>
  std::array<T, N> vector_field(const std::array<T, N>& p, const Vec& x) const {
    std::array<T, N> v;
    v.fill(T(0.0));
    switch (group) {
      case ActionGroup::S1:
        for (int f = 0; f < N / 2; ++f) v[2 * f + 1] = T(-x(0));
        break;
      case ActionGroup::T2:
        for (int f = 0; f < N / 2; ++f) v[2 * f + 1] = T(-x(f));
        break;
      case ActionGroup::SU2:
        if constexpr (N == 2) {
          // v = -X x p written in (z, phi)
          using std::cos, std::sin, std::sqrt;
          const double r = manifold.radii[0];
          const T rho = sqrt(r * r - p[0] * p[0]);
          const T c = cos(p[1]), s = sin(p[1]);
          v[0] = rho * (x(1) * c - x(0) * s);
          v[1] = -x(2) + p[0] * (x(0) * c + x(1) * s) / rho;
        }
        break;
    }
    return v;
  }

  /// Components of mu(p) in the basis dual to the one used for X.
  template <class T>
  std::vector<T> moment(const std::array<T, N>& p) const {
    switch (group) {
      case ActionGroup::S1: {
        T s = p[0];
        if constexpr (N == 4) s = s + p[2];
        return {s};
      }
      case ActionGroup::T2:
        if constexpr (N == 4) return {p[0], p[2]};
        break;
      case ActionGroup::SU2: {
        using std::cos, std::sin, std::sqrt;
        const double r = manifold.radii[0];
        const T rho = sqrt(r * r - p[0] * p[0]);
        return {rho * cos(p[1]), rho * sin(p[1]), p[0]};
      }
    }
    fail(Errc::RankMismatch, "action does not fit the manifold");
  }

  /// f_X = <mu, X>.
  template <class T>
  T moment_pairing(const std::array<T, N>& p, const Vec& x) const {
    const auto m = moment(p);
    T s(0.0);
    for (std::size_t k = 0; k < m.size(); ++k) s = s + x(static_cast<Eigen::Index>(k)) * m[k];
    return s;
  }

  /// exp(-tX) . p in chart coordinates.
  ChartPoint<N> flow(const ChartPoint<N>& p, const Vec& x, double t) const {
    const double tau = 2.0 * std::numbers::pi;
    ChartPoint<N> q = p;
    if (group == ActionGroup::SU2) {
      const double r = manifold.radii[0];
      const double rho = std::sqrt(std::max(0.0, r * r - p[0] * p[0]));
      const Eigen::Vector3d v(rho * std::cos(p[1]), rho * std::sin(p[1]), p[0]);
      const double nrm = x.norm();
      if (nrm == 0.0) return q;
      const Eigen::Vector3d axis = Eigen::Vector3d(x(0), x(1), x(2)) / nrm;
      const Eigen::Vector3d w = Eigen::AngleAxisd(-t * nrm, axis) * v;
      q[0] = w.z();
      q[1] = std::fmod(std::atan2(w.y(), w.x()) + tau, tau);
      return q;
    }
    for (int f = 0; f < N / 2; ++f) {
      const double speed = group == ActionGroup::S1 ? x(0) : x(f);
      q[2 * f + 1] = std::fmod(std::fmod(p[2 * f + 1] - t * speed, tau) + tau, tau);
    }
    return q;
  }

  /// Fixed points with isotropy weights (torus actions only).
  std::vector<FixedPoint<N>> fixed_points() const {
    if (group == ActionGroup::SU2) fail(Errc::SchemeMismatch, "fixed-point data is listed for torus actions only");
    if (manifold.kind == ManifoldKind::Disk2) {
      FixedPoint<N> c;
      c.moment = Vec::Zero(1);
      c.weights = {Vec::Constant(1, 1.0)};
      return {c};
    }
    std::vector<FixedPoint<N>> out;
    const int factors = N / 2;
    for (int signs = 0; signs < (1 << factors); ++signs) {
      FixedPoint<N> fp;
      fp.moment = Vec::Zero(algebra_dim());
      for (int f = 0; f < factors; ++f) {
        const double s = (signs >> f) & 1 ? -1.0 : 1.0;
        fp.point[2 * f] = s * manifold.radii[f];
        Vec w = Vec::Zero(algebra_dim());
        w(group == ActionGroup::T2 ? f : 0) = s;
        fp.weights.push_back(w);
        fp.moment(group == ActionGroup::T2 ? f : 0) += s * manifold.radii[f];
      }
      out.push_back(fp);
    }
    return out;
  }
};

inline GroupAction<2> circle_action(const CatalogManifold<2>& m) { return {ActionGroup::S1, m}; }
inline GroupAction<4> diagonal_circle_action(const CatalogManifold<4>& m) { return {ActionGroup::S1, m}; }
inline GroupAction<4> torus_action(const CatalogManifold<4>& m) { return {ActionGroup::T2, m}; }
inline GroupAction<2> su2_action(const CatalogManifold<2>& m) {
  if (m.kind != ManifoldKind::Sphere2) fail(Errc::SchemeMismatch, "SU(2) acts on the sphere only");
  return {ActionGroup::SU2, m};
}

// ---------------------------------------------------------------------------
// Verification residuals (central differences, relative step 1e-5)

namespace detail {
inline double fd_step(double x) { return 1e-5 * std::max(1.0, std::abs(x)); }

template <int N>
Eigen::Matrix<double, N, N> flow_jacobian(const GroupAction<N>& a, const ChartPoint<N>& p, const Vec& x, double t) {
  Eigen::Matrix<double, N, N> j;
  for (int k = 0; k < N; ++k) {
    const double h = fd_step(p[k]);
    auto pp = p, pm = p;
    pp[k] += h;
    pm[k] -= h;
    const auto qp = a.flow(pp, x, t), qm = a.flow(pm, x, t);
    for (int i = 0; i < N; ++i) {
      double d = qp[i] - qm[i];
      if (a.manifold.periodic[i]) d = std::remainder(d, 2.0 * std::numbers::pi);
      j(i, k) = d / (2.0 * h);
    }
  }
  return j;
}
}  // namespace detail

/// |iota(X_M) sigma - d f_X| with d f_X by central differences.
template <int N>
double moment_map_residual(const GroupAction<N>& a, const ChartPoint<N>& p, const Vec& x) {
  using C = std::array<cplx, N>;
  C pc;
  for (int k = 0; k < N; ++k) pc[k] = p[k];
  const auto lhs = contract(a.vector_field(pc, x), a.manifold.sigma(pc));
  double worst = 0.0;
  for (int k = 0; k < N; ++k) {
    const double h = detail::fd_step(p[k]);
    C pp = pc, pm = pc;
    pp[k] += h;
    pm[k] -= h;
    const cplx df = (a.moment_pairing(pp, x) - a.moment_pairing(pm, x)) / (2.0 * h);
    worst = std::max(worst, std::abs(lhs[1 << k] - df));
  }
  return worst;
}

/// |d/dt exp(-tX) p - X_M(p)| by central differences in t.
template <int N>
double vector_field_residual(const GroupAction<N>& a, const ChartPoint<N>& p, const Vec& x) {
  const double h = 1e-5;
  const auto qp = a.flow(p, x, h), qm = a.flow(p, x, -h);
  std::array<cplx, N> pc;
  for (int k = 0; k < N; ++k) pc[k] = p[k];
  const auto v = a.vector_field(pc, x);
  double worst = 0.0;
  for (int i = 0; i < N; ++i) {
    double d = qp[i] - qm[i];
    if (a.manifold.periodic[i]) d = std::remainder(d, 2.0 * std::numbers::pi);
    worst = std::max(worst, std::abs(d / (2.0 * h) - v[i]));
  }
  return worst;
}

/// |J^T Omega J - Omega| for the time-t flow, Omega the (constant) matrix of sigma.
template <int N>
double symplectic_residual(const GroupAction<N>& a, const ChartPoint<N>& p, const Vec& x, double t) {
  Eigen::Matrix<double, N, N> omega = Eigen::Matrix<double, N, N>::Zero();
  for (int f = 0; f < N / 2; ++f) {
    omega(2 * f, 2 * f + 1) = 1.0;
    omega(2 * f + 1, 2 * f) = -1.0;
  }
  const auto j = detail::flow_jacobian(a, p, x, t);
  return (j.transpose() * omega * j - omega).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Equivariant forms: callables (p, X) -> Form<T, N>, generic in the scalar T.

/// An equivariant form known only through values; it has no exact derivative.
template <int N>
struct SampledForm {
  std::function<Form<cplx, N>(const std::array<cplx, N>&, const Vec&)> eval;
  Form<cplx, N> operator()(const std::array<cplx, N>& p, const Vec& x) const { return eval(p, x); }
};

template <int N>
auto constant_form(cplx c) {
  return [c](const auto& p, const Vec&) {
    using T = scalar_of<decltype(p)>;
    return Form<T, N>::scalar(T(c));
  };
}

/// sigma_g(X) = <mu, X> + sigma.
template <int N>
auto sigma_g_form(const GroupAction<N>& a) {
  return [a](const auto& p, const Vec& x) {
    auto f = a.manifold.sigma(p);
    f[0] = a.moment_pairing(p, x);
    return f;
  };
}

/// exp(i s sigma_g(X)) = e^{i s <mu,X>} Sum_k (i s sigma)^k / k!.
template <int N>
auto exp_i_sigma_g_form(const GroupAction<N>& a, double s = 1.0) {
  return [a, s](const auto& p, const Vec& x) {
    using T = scalar_of<decltype(p)>;
    using std::exp;
    const auto sig = a.manifold.sigma(p);
    auto term = Form<T, N>::scalar(T(1.0));
    auto acc = term;
    for (int k = 1; k <= N / 2; ++k) {
      term = wedge(term, sig) * (cplx(0, s) / double(k));
      acc += term;
    }
    return acc * exp(cplx(0, s) * a.moment_pairing(p, x));
  };
}

/// sigma_g(X)^k.
template <int N>
auto sigma_g_power_form(const GroupAction<N>& a, int k) {
  return [a, k](const auto& p, const Vec& x) {
    using T = scalar_of<decltype(p)>;
    auto sg = a.manifold.sigma(p);
    sg[0] = a.moment_pairing(p, x);
    auto acc = Form<T, N>::scalar(T(1.0));
    for (int i = 0; i < k; ++i) acc = wedge(acc, sg);
    return acc;
  };
}

/// The metric dual of X_M: an invariant 1-form for every catalog action.
template <int N>
auto metric_dual_form(const GroupAction<N>& a) {
  return [a](const auto& p, const Vec& x) {
    using T = scalar_of<decltype(p)>;
    const auto v = a.vector_field(p, x);
    const auto g = a.manifold.metric_diag(p);
    Form<T, N> f;
    for (int k = 0; k < N; ++k) f[1 << k] = g[k] * v[k];
    return f;
  };
}

/// a(p) dz + b(p) (R^2 - z^2) dphi on the first sphere factor; smooth
/// across the poles for smooth a, b. Invariant under rotation when a, b
/// depend on z only.
template <int N, class A, class B>
auto sphere_one_form(const CatalogManifold<N>& m, A a, B b) {
  return [r2 = m.radii[0] * m.radii[0], a, b](const auto& p, const Vec&) {
    using T = scalar_of<decltype(p)>;
    Form<T, N> f;
    f[0b01] = a(p);
    f[0b10] = b(p) * (r2 - p[0] * p[0]);
    return f;
  };
}

template <class A, class B>
auto eq_add(A a, B b) {
  return [a, b](const auto& p, const Vec& x) { return a(p, x) + b(p, x); };
}
template <class A, class B>
auto eq_wedge(A a, B b) {
  return [a, b](const auto& p, const Vec& x) { return wedge(a(p, x), b(p, x)); };
}
/// Multiply by a polynomial (or any function) of X.
template <class A>
auto eq_times(std::function<cplx(const Vec&)> poly, A a) {
  return [poly, a](const auto& p, const Vec& x) { return a(p, x) * poly(x); };
}

/// d_g alpha(X) = d(alpha(X)) - iota(X_M) alpha(X).
template <int N, class A>
auto d_g(A alpha, const GroupAction<N>& act) {
  return [alpha, act](const auto& p, const Vec& x) {
    using T = scalar_of<decltype(p)>;
    using JP = std::array<Jet<T, N>, N>;
    if constexpr (std::is_invocable_v<const A&, const JP&, const Vec&>) {
      const auto da = exterior_d<N>([&](const auto& q) { return alpha(q, x); }, p);
      return da - contract(act.vector_field(p, x), alpha(p, x));
    } else {
      fail(Errc::UnregisteredDerivative, "form has no registered exact exterior derivative");
      return alpha(p, x);
    }
  };
}

// ---------------------------------------------------------------------------
// Integration

struct FormIntegral {
  cplx value;
  double error = 0.0;  // difference of the last two refinements
  long nodes = 0;
};

namespace detail {
template <int N>
std::array<Rule, N> chart_rules(const CatalogManifold<N>& m, int n) {
  std::array<Rule, N> rules;
  for (int k = 0; k < N; ++k) {
    if (m.periodic[k]) {
      // uniform rule: the Gauss rule for trigonometric polynomials
      Rule r;
      for (int i = 0; i < n; ++i) {
        r.nodes.push_back(m.lo[k] + (m.hi[k] - m.lo[k]) * (i + 0.5) / n);
        r.weights.push_back((m.hi[k] - m.lo[k]) / n);
      }
      rules[k] = r;
    } else {
      rules[k] = mapped(gauss_legendre(n), m.lo[k], m.hi[k]);
    }
  }
  return rules;
}

template <int N, class F>
cplx tensor_sum(const std::array<Rule, N>& rules, const F& f) {
  std::array<std::size_t, N> idx{};
  std::vector<cplx> terms;
  std::size_t total = 1;
  for (const auto& r : rules) total *= r.size();
  terms.reserve(total);
  for (std::size_t n = 0; n < total; ++n) {
    std::array<cplx, N> p;
    double w = 1.0;
    for (int k = 0; k < N; ++k) {
      p[k] = rules[k].nodes[idx[k]];
      w *= rules[k].weights[idx[k]];
    }
    terms.push_back(w * f(p));
    for (int k = N - 1; k >= 0; --k) {
      if (++idx[k] < rules[k].size()) break;
      idx[k] = 0;
    }
  }
  return pairwise_sum(terms);
}
}  // namespace detail

/// Int_M alpha(X) = Int_M alpha(X)_[top], by tensor quadrature in the chart,
/// doubling the nodes per axis until successive values agree.
template <int N, class A>
FormIntegral equivariant_integral(const CatalogManifold<N>& m, const A& alpha, const Vec& x, double tol = 1e-8,
                                  long max_nodes = 1L << 20) {
  const auto top = [&](const std::array<cplx, N>& p) { return double(m.orientation) * alpha(p, x).top(); };
  int n = 8;
  cplx prev = detail::tensor_sum<N>(detail::chart_rules(m, n), top);
  for (;;) {
    n *= 2;
    long nodes = 1;
    for (int k = 0; k < N; ++k) nodes *= n;
    if (nodes > max_nodes) break;
    const cplx cur = detail::tensor_sum<N>(detail::chart_rules(m, n), top);
    const double diff = std::abs(cur - prev);
    if (diff < tol * std::max(1.0, std::abs(cur))) return {cur, diff, nodes};
    prev = cur;
  }
  fail(Errc::QuadratureFailure, "equivariant integral did not converge within the node budget");
}

// ---------------------------------------------------------------------------
// Pushforward of the Liouville measure under one moment component

struct PushforwardDensity {
  double lo = 0.0, hi = 0.0;
  std::vector<double> density;  // per bin, mass / width
  double total_mass = 0.0;

  double width() const { return (hi - lo) / static_cast<double>(density.size()); }
};

template <int N>
std::pair<double, double> moment_range(const GroupAction<N>& a, int component) {
  const auto& m = a.manifold;
  if (m.kind == ManifoldKind::Disk2) return {0.0, 0.5 * m.radii[0] * m.radii[0]};
  if (a.group == ActionGroup::S1 && N == 4) return {-(m.radii[0] + m.radii[1]), m.radii[0] + m.radii[1]};
  if (a.group == ActionGroup::T2) return {-m.radii[component], m.radii[component]};
  return {-m.radii[0], m.radii[0]};
}

/// Histogram density of mu_k pushed forward from sigma^n / n!.
///
/// For torus actions mu_k is z_L plus a function of the other coordinates,
/// so the z_L direction is integrated exactly as interval overlaps with the
/// bins; the remaining directions use composite Gauss-Legendre. SU(2)
/// components are binned node by node.
template <int N>
PushforwardDensity pushforward_density(const GroupAction<N>& a, int component, int n_bins) {
  if (n_bins < 1) fail(Errc::QuadratureFailure, "need at least one bin");
  if (component < 0 || component >= a.algebra_dim()) fail(Errc::RankMismatch, "moment component out of range");
  const auto [lo, hi] = moment_range(a, component);
  PushforwardDensity out;
  out.lo = lo;
  out.hi = hi;
  std::vector<std::vector<double>> bins(n_bins);
  const auto& m = a.manifold;
  const bool torus = a.group != ActionGroup::SU2;
  const int line = a.group == ActionGroup::T2 ? 2 * component : N - 2;

  std::array<Rule, N> rules;
  for (int k = 0; k < N; ++k) {
    if (torus && k == line) {
      rules[k] = Rule{{0.0}, {1.0}};
    } else if (m.periodic[k]) {
      const int n = torus ? 1 : 64;
      Rule r;
      for (int i = 0; i < n; ++i) {
        r.nodes.push_back(m.lo[k] + (m.hi[k] - m.lo[k]) * (i + 0.5) / n);
        r.weights.push_back((m.hi[k] - m.lo[k]) / n);
      }
      rules[k] = r;
    } else {
      rules[k] = composite_gauss(m.lo[k], m.hi[k], torus ? 8 * n_bins : n_bins, 4);
    }
  }
  std::array<std::size_t, N> idx{};
  std::size_t total = 1;
  for (const auto& r : rules) total *= r.size();
  const double width = (hi - lo) / n_bins;
  for (std::size_t n = 0; n < total; ++n) {
    std::array<double, N> p;
    double w = 1.0;
    for (int k = 0; k < N; ++k) {
      p[k] = rules[k].nodes[idx[k]];
      w *= rules[k].weights[idx[k]];
    }
    const double mu = a.moment(p)[component];
    if (torus) {
      // mu ranges over [mu + lo_L, mu + hi_L] as z_L does
      const double a0 = mu + m.lo[line], a1 = mu + m.hi[line];
      const int b0 = std::clamp(static_cast<int>(std::floor((a0 - lo) / width)), 0, n_bins - 1);
      const int b1 = std::clamp(static_cast<int>(std::floor((a1 - lo) / width)), 0, n_bins - 1);
      for (int b = b0; b <= b1; ++b) {
        const double e0 = lo + width * b, e1 = e0 + width;
        const double len = std::min(a1, e1) - std::max(a0, e0);
        if (len > 0) bins[b].push_back(w * len);
      }
    } else {
      const int b = std::clamp(static_cast<int>(std::floor((mu - lo) / width)), 0, n_bins - 1);
      bins[b].push_back(w);
    }
    for (int k = N - 1; k >= 0; --k) {
      if (++idx[k] < rules[k].size()) break;
      idx[k] = 0;
    }
  }
  std::vector<double> masses;
  for (const auto& b : bins) {
    const double mass = pairwise_sum(b);
    masses.push_back(mass);
    out.density.push_back(mass / width);
  }
  out.total_mass = pairwise_sum(masses);
  return out;
}

// ---------------------------------------------------------------------------
// Duistermaat-Heckman localization for torus actions

/// Sum over fixed points of e^{i<mu(p),X>} Prod_j 2 pi / <w_j, X>; equals
/// Int_M exp(i sigma_g(X)).
template <int N>
cplx dh_localization(const GroupAction<N>& a, const Vec& x) {
  a.require_x(x);
  const cplx I(0, 1);
  cplx sum = 0.0;
  for (const auto& fp : a.fixed_points()) {
    cplx term = std::exp(I * fp.moment.dot(x));
    for (const auto& w : fp.weights) {
      const double t = w.dot(x);
      if (std::abs(t) < 1e-12) fail(Errc::NonRegularPoint, "X annihilates an isotropy weight");
      term *= 2.0 * std::numbers::pi / t;
    }
    sum += term;
  }
  return sum;
}

/// Int_{S^2(R)} e^{i t z} sigma = 4 pi sin(tR) / t.
inline double sphere_dh_closed_form(double radius, double t) {
  if (t == 0.0) return 4.0 * std::numbers::pi * radius;
  return 4.0 * std::numbers::pi * std::sin(t * radius) / t;
}

struct DhRow {
  std::string manifold;
  Vec x;
  cplx quadrature;
  cplx closed_form;
  double abs_err = 0.0;
};

/// Quadrature of Int_M exp(i sigma_g(X)) against the fixed-point sum.
template <int N>
DhRow dh_check(const GroupAction<N>& a, const Vec& x) {
  DhRow row;
  row.manifold = a.manifold.name();
  row.x = x;
  row.quadrature = equivariant_integral(a.manifold, exp_i_sigma_g_form(a), x, 1e-10).value;
  row.closed_form = dh_localization(a, x);
  row.abs_err = std::abs(row.quadrature - row.closed_form);
  return row;
}

// ---------------------------------------------------------------------------
// Berline-Vergne: integrals of closed forms depend only on the fixed set

struct BerlineVergneReport {
  cplx integral1, integral2;
  double difference = 0.0;
  double restriction_mismatch = 0.0;  // max |alpha1 - alpha2| at fixed points
  bool pass = false;
};

template <int N, class A>
double closedness_residual(const GroupAction<N>& act, const A& alpha, const Vec& x, int samples,
                           std::uint64_t seed) {
  const auto dga = d_g(alpha, act);
  std::mt19937_64 rng(seed);
  const auto& m = act.manifold;
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    std::array<cplx, N> p;
    for (int k = 0; k < N; ++k) {
      // keep away from chart edges
      std::uniform_real_distribution<double> u(m.lo[k] + 0.05 * (m.hi[k] - m.lo[k]),
                                               m.hi[k] - 0.05 * (m.hi[k] - m.lo[k]));
      p[k] = u(rng);
    }
    worst = std::max(worst, max_abs(dga(p, x)));
  }
  return worst;
}

template <int N, class A1, class A2>
BerlineVergneReport berline_vergne_dependence_check(const GroupAction<N>& act, const A1& a1, const A2& a2,
                                                    const Vec& x, double tol = 1e-6) {
  act.require_x(x);
  for (double r : {closedness_residual(act, a1, x, 20, 1), closedness_residual(act, a2, x, 20, 2)})
    if (r > 1e-8) fail(Errc::NotClosed, "form is not d_g-closed on samples (residual " + std::to_string(r) + ")");
  BerlineVergneReport rep;
  for (const auto& fp : act.fixed_points()) {
    std::array<cplx, N> p;
    for (int k = 0; k < N; ++k) p[k] = fp.point[k];
    rep.restriction_mismatch = std::max(rep.restriction_mismatch, std::abs(a1(p, x)[0] - a2(p, x)[0]));
  }
  rep.integral1 = equivariant_integral(act.manifold, a1, x, 1e-10).value;
  rep.integral2 = equivariant_integral(act.manifold, a2, x, 1e-10).value;
  rep.difference = std::abs(rep.integral1 - rep.integral2);
  rep.pass = rep.difference < tol;
  return rep;
}

// ---------------------------------------------------------------------------
// Rank-one duals: Fourier pair and the local Fourier transform V

/// The single place where the Fourier normalization lives:
///   F(Phi)(xi) = (2 pi)^{-dim} Int Phi(X) e^{-i<xi,X>} dX,
///   Phi(X)     = Int e^{i<xi,X>} F(Phi)(xi) dxi.
struct FourierConvention {
  static double forward_scale(int dim) { return std::pow(2.0 * std::numbers::pi, -dim); }
  static double inverse_scale(int) { return 1.0; }
};

/// Forward transform of Phi on R by composite Gauss-Legendre on [-L, L].
inline cplx fourier_forward_rank1(const std::function<cplx(double)>& phi, double xi, double half_width = 14.0,
                                  int panels = 64) {
  const Rule r = composite_gauss(-half_width, half_width, panels, 16);
  std::vector<cplx> t;
  t.reserve(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) t.push_back(r.weights[i] * phi(r.nodes[i]) * std::exp(cplx(0, -xi * r.nodes[i])));
  return FourierConvention::forward_scale(1) * pairwise_sum(t);
}

inline cplx fourier_inverse_rank1(const std::function<cplx(double)>& f, double x, double half_width = 14.0,
                                  int panels = 64) {
  const Rule r = composite_gauss(-half_width, half_width, panels, 16);
  std::vector<cplx> t;
  t.reserve(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) t.push_back(r.weights[i] * f(r.nodes[i]) * std::exp(cplx(0, x * r.nodes[i])));
  return FourierConvention::inverse_scale(1) * pairwise_sum(t);
}

/// One term P(X) alpha(xi) dxi, with P given by coefficients p_0 + p_1 X + ...
struct DualTerm {
  std::vector<cplx> poly;
  std::vector<cplx> samples;
};

/// Top-degree part of a form on the rank-one dual sampled on xi_k = xi0 + k h.
struct PolyFormOnDual {
  double xi0 = 0.0;
  double h = 0.0;
  std::vector<DualTerm> terms;

  std::size_t size() const { return terms.empty() ? 0 : terms.front().samples.size(); }
  double node(std::size_t k) const { return xi0 + h * static_cast<double>(k); }
};

struct DualDensity {
  double xi0 = 0.0;
  double h = 0.0;
  std::vector<cplx> values;
  double error_estimate = 0.0;
};

/// Finite-difference weights for the m-th derivative at 0 on the given
/// offsets (Fornberg's recursion).
inline std::vector<double> fd_weights(int m, const std::vector<double>& x) {
  const int n = static_cast<int>(x.size()) - 1;
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0, c4 = x[0];
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i];
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n + 1);
  for (int i = 0; i <= n; ++i) w[i] = c[i][m];
  return w;
}

namespace detail {
/// m-th derivative of compactly supported samples by a central stencil of
/// the given accuracy order; samples outside the grid are zero.
inline std::vector<cplx> central_derivative(const std::vector<cplx>& f, double h, int m, int accuracy) {
  if (m == 0) return f;
  const int half = (m + 1) / 2 - 1 + accuracy / 2;
  std::vector<double> off;
  for (int k = -half; k <= half; ++k) off.push_back(k);
  const auto w = fd_weights(m, off);
  const double scale = std::pow(h, -m);
  const int n = static_cast<int>(f.size());
  std::vector<cplx> out(f.size());
  for (int i = 0; i < n; ++i) {
    cplx s = 0;
    for (int k = -half; k <= half; ++k) {
      const int j = i + k;
      if (j >= 0 && j < n) s += w[k + half] * f[j];
    }
    out[i] = s * scale;
  }
  return out;
}

inline std::vector<cplx> apply_poly_operator(const PolyFormOnDual& a, int accuracy) {
  std::vector<cplx> out(a.size(), cplx(0.0));
  const cplx I(0, 1);
  for (const auto& t : a.terms)
    for (std::size_t k = 0; k < t.poly.size(); ++k) {
      if (t.poly[k] == cplx(0.0)) continue;
      const auto d = central_derivative(t.samples, a.h, static_cast<int>(k), accuracy);
      const cplx c = t.poly[k] * std::pow(I, static_cast<int>(k));
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * d[i];
    }
  return out;
}
}  // namespace detail

/// V(alpha) = (Sum_a P_a(i d/dxi) alpha_a(xi)) dxi on the grid.
inline DualDensity local_fourier_V(const PolyFormOnDual& a, double tol = 1e-6, int accuracy = 8) {
  for (const auto& t : a.terms) {
    if (t.poly.size() > 7) fail(Errc::DegreeOverflow, "polynomial degree above 6");
    if (t.samples.size() != a.size()) fail(Errc::GridTooCoarse, "terms sampled on different grids");
  }
  if (a.size() < 2 * accuracy + 2 || a.h <= 0) fail(Errc::GridTooCoarse, "grid has too few nodes");
  DualDensity out;
  out.xi0 = a.xi0;
  out.h = a.h;
  out.values = detail::apply_poly_operator(a, accuracy);
  const auto lower = detail::apply_poly_operator(a, accuracy - 2);
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.error_estimate = std::max(out.error_estimate, std::abs(out.values[i] - lower[i]));
  if (out.error_estimate > tol)
    fail(Errc::GridTooCoarse, "finite-difference error estimate " + std::to_string(out.error_estimate) +
                                  " exceeds tolerance");
  return out;
}

/// Top part of d_g(e^{i xi X} P(X) b(xi)) on the rank-one dual with trivial
/// coadjoint action, divided by e^{i xi X}: i X P(X) b(xi) + P(X) b'(xi), with
/// b' exact. b is a generic callable of one scalar.
template <class B>
PolyFormOnDual rank1_dg_top(const std::vector<cplx>& poly, const B& b, double xi0, double h, std::size_t n) {
  PolyFormOnDual out;
  out.xi0 = xi0;
  out.h = h;
  DualTerm shifted, deriv;
  shifted.poly.assign(poly.size() + 1, cplx(0.0));
  for (std::size_t k = 0; k < poly.size(); ++k) shifted.poly[k + 1] = cplx(0, 1) * poly[k];
  deriv.poly = poly;
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = xi0 + h * static_cast<double>(i);
    const auto j = b(Jet<cplx, 1>::variable(cplx(xi), 0));
    shifted.samples.push_back(j.v);
    deriv.samples.push_back(j.d[0]);
  }
  out.terms = {shifted, deriv};
  return out;
}

}  // namespace orbital_loc
