#pragma once

// Circle bundles with connection: the Hopf fibration S^3 -> S^2 and the level
// circles mu^{-1}(c) -> M_red of the catalog circle actions. Curvature, the
// horizontal projector, the Chern-Weil map and the reduced-space side of the
// localization formulas.
//
// Charts. Hopf: (eta, xi1, xi2) with (z1, z2) = (cos eta e^{i xi1},
// sin eta e^{i xi2}), base (eta, psi = xi2 - xi1). Level circle on S^2 x S^2:
// (z1, phi1, phi2) with z2 = c - z1, base (z1, psi = phi2 - phi1). Level
// circle on S^2: (phi), base a point. The generator is X_P = -(d/dxi1 +
// d/dxi2) (resp. -d/dphi), matching X_M = -X d/dphi on the catalog.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "orbital_loc/reduction.hpp"

namespace orbital_loc {

/// Pullback of a form under a linear map y -> x with Jacobian J = dx/dy.
template <int NB, int NP, class T>
Form<T, NB> pullback(const Form<T, NP>& f, const Eigen::Matrix<double, NP, NB>& J) {
  Form<T, NB> r;
  for (int I = 0; I < Form<T, NP>::kCount; ++I) {
    const int k = form_degree(I);
    if (k > NB) continue;
    std::vector<int> rows;
    for (int i = 0; i < NP; ++i)
      if (I & (1 << i)) rows.push_back(i);
    for (int K = 0; K < Form<T, NB>::kCount; ++K) {
      if (form_degree(K) != k) continue;
      std::vector<int> cols;
      for (int j = 0; j < NB; ++j)
        if (K & (1 << j)) cols.push_back(j);
      Eigen::MatrixXd m(k, k);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) m(a, b) = J(rows[a], cols[b]);
      const double det = k == 0 ? 1.0 : m.determinant();
      if (det != 0.0) r.c[K] = r.c[K] + det * f.c[I];
    }
  }
  return r;
}

/// The value of a 2-form on (v1, v2).
template <int N>
cplx evaluate_two_form(const Form<cplx, N>& f, const std::array<double, N>& v1, const std::array<double, N>& v2) {
  cplx s = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) s += f[(1 << i) | (1 << j)] * (v1[i] * v2[j] - v1[j] * v2[i]);
  return s;
}

/// A principal S^1 bundle in a chart of dimension NP over a base chart of
/// dimension NB, with connection form `omega` (a callable generic in the
/// scalar type).
template <int NP, int NB, class Omega>
struct CircleBundle {
  static constexpr int kTotal = NP;
  static constexpr int kBase = NB;

  std::string name;
  Omega omega;
  std::array<double, NP> generator{};  // X_P for X = 1, constant in the chart
  std::array<double, NP> lo{}, hi{};
  std::array<bool, NP> periodic{};
  std::array<double, NB> base_lo{}, base_hi{};
  std::array<bool, NB> base_periodic{};
  Eigen::Matrix<double, NP, NB> section_jacobian = Eigen::Matrix<double, NP, NB>::Zero();
  Eigen::Matrix<double, NB, NP> projection_jacobian = Eigen::Matrix<double, NB, NP>::Zero();
  std::array<double, NP> section_origin{};
  int base_orientation = 1;
  int total_orientation = 1;  // orientation of P: base orientation, then omega
  double fiber_length = 2.0 * std::numbers::pi;

  std::array<double, NP> section(const std::array<double, NB>& b) const {
    std::array<double, NP> p = section_origin;
    for (int i = 0; i < NP; ++i)
      for (int j = 0; j < NB; ++j) p[i] += section_jacobian(i, j) * b[j];
    return p;
  }
  std::array<double, NP> flow(std::array<double, NP> p, double t) const {
    for (int i = 0; i < NP; ++i) p[i] += t * generator[i];
    return p;
  }

  template <class T>
  Form<T, NP> curvature_form(const std::array<T, NP>& p) const {
    // abelian: Omega = d omega
    return exterior_d<NP>([this](const auto& q) { return omega(q); }, p);
  }
};

namespace detail {

template <int N>
std::array<cplx, N> to_complex(const std::array<double, N>& p) {
  std::array<cplx, N> q;
  for (int i = 0; i < N; ++i) q[i] = p[i];
  return q;
}

template <int NP, int NB, class O>
void set_total_orientation(CircleBundle<NP, NB, O>& b, const std::array<double, std::size_t(NP)>& sample) {
  Form<cplx, NB> vol;
  vol[Form<cplx, NB>::kTop] = double(b.base_orientation);
  const auto up = pullback<NP, NB>(vol, b.projection_jacobian);
  const double s = wedge(up, b.omega(to_complex<NP>(sample))).top().real();
  b.total_orientation = s > 0 ? 1 : -1;
}

}  // namespace detail

/// Hopf bundle with connection -(cos^2 eta dxi1 + sin^2 eta dxi2), optionally
/// shifted by the basic 1-form a sin^2(2 eta)(1 + cos(psi)/2) dpsi.
/// orientation = +1 orients the base by d eta ^ d psi.
inline auto hopf_bundle(double perturbation = 0.0, int orientation = 1) {
  const auto omega = [a = perturbation](const auto& p) {
    using T = std::decay_t<decltype(p[0])>;
    using std::cos;
    using std::sin;
    Form<T, 3> f;
    const T ce = cos(p[0]), se = sin(p[0]);
    const T b = a * sin(2.0 * p[0]) * sin(2.0 * p[0]) * (1.0 + 0.5 * cos(p[2] - p[1]));
    f[0b010] = -(ce * ce) - b;
    f[0b100] = -(se * se) + b;
    return f;
  };
  CircleBundle<3, 2, decltype(omega)> b{"hopf", omega};
  const double pi = std::numbers::pi;
  b.generator = {0.0, -1.0, -1.0};
  b.lo = {0.0, 0.0, 0.0};
  b.hi = {0.5 * pi, 2 * pi, 2 * pi};
  b.periodic = {false, true, true};
  b.base_lo = {0.0, 0.0};
  b.base_hi = {0.5 * pi, 2 * pi};
  b.base_periodic = {false, true};
  b.section_jacobian << 1, 0, 0, 0, 0, 1;
  b.projection_jacobian << 1, 0, 0, 0, -1, 1;
  b.base_orientation = orientation;
  detail::set_total_orientation(b, {0.4, 0.1, 0.2});
  return b;
}

/// Signed Chern number convention of the Hopf bundle for orientation = +1.
inline constexpr int kHopfChernNumber = -1;

/// mu^{-1}(c) -> M_red for a catalog circle action, with the metric
/// connection omega = g(X_M, .) / g(X_M, X_M) restricted to the level.
template <int N>
struct LevelCircle;

template <>
struct LevelCircle<2> {
  GroupAction<2> action;
  double c = 0.0;

  /// level point phi -> (c, phi)
  Eigen::Matrix<double, 2, 1> inclusion_jacobian() const { return (Eigen::Matrix<double, 2, 1>() << 0, 1).finished(); }
  template <class T>
  std::array<T, 2> include(const std::array<T, 1>& p) const {
    return {T(c), p[0]};
  }

  auto bundle() const {
    const auto omega = [](const auto& p) {
      using T = std::decay_t<decltype(p[0])>;
      Form<T, 1> f;
      f[1] = T(-1.0);
      return f;
    };
    CircleBundle<1, 0, decltype(omega)> b{"level circle on " + action.manifold.name(), omega};
    b.generator = {-1.0};
    b.lo = {0.0};
    b.hi = {2 * std::numbers::pi};
    b.periodic = {true};
    detail::set_total_orientation(b, {0.3});
    return b;
  }
};

template <>
struct LevelCircle<4> {
  GroupAction<4> action;
  double c = 0.0;

  /// (z1, phi1, phi2) -> (z1, phi1, c - z1, phi2)
  Eigen::Matrix<double, 4, 3> inclusion_jacobian() const {
    Eigen::Matrix<double, 4, 3> j;
    j << 1, 0, 0, 0, 1, 0, -1, 0, 0, 0, 0, 1;
    return j;
  }
  template <class T>
  std::array<T, 4> include(const std::array<T, 3>& p) const {
    return {p[0], p[1], c - p[0], p[2]};
  }
  std::pair<double, double> z1_range() const {
    const auto& r = action.manifold.radii;
    return {std::max(-r[0], c - r[1]), std::min(r[0], c + r[1])};
  }

  auto bundle() const {
    const auto omega = [act = action, lvl = *this](const auto& p) {
      using T = std::decay_t<decltype(p[0])>;
      const auto q = lvl.include(p);
      const auto v = act.vector_field(q, detail::unit_x());
      const auto g = act.manifold.metric_diag(q);
      T norm = T(0.0);
      Form<T, 4> f;
      for (int k = 0; k < 4; ++k) {
        f[1 << k] = g[k] * v[k];
        norm = norm + g[k] * v[k] * v[k];
      }
      return pullback<3, 4>(f, lvl.inclusion_jacobian()) * (T(1.0) / norm);
    };
    CircleBundle<3, 2, decltype(omega)> b{"level circle on " + action.manifold.name(), omega};
    const auto [a, z] = z1_range();
    const double tau = 2 * std::numbers::pi;
    b.generator = {0.0, -1.0, -1.0};
    b.lo = {a, 0.0, 0.0};
    b.hi = {z, tau, tau};
    b.periodic = {false, true, true};
    b.base_lo = {a, 0.0};
    b.base_hi = {z, tau};
    b.base_periodic = {false, true};
    b.section_jacobian << 1, 0, 0, 0, 0, 1;
    b.projection_jacobian << 1, 0, 0, 0, -1, 1;
    // orient M_red by the reduced symplectic form
    const std::array<double, 3> sample{0.5 * (a + z), 0.1, 0.2};
    const auto sig = pullback<3, 4>(action.manifold.sigma(include(detail::to_complex<3>(sample))), inclusion_jacobian());
    b.base_orientation = pullback<2, 3>(sig, b.section_jacobian).top().real() > 0 ? 1 : -1;
    detail::set_total_orientation(b, sample);
    return b;
  }
};

template <int N>
LevelCircle<N> level_circle(const GroupAction<N>& a, double c) {
  detail::require_circle(a);
  require_regular_level(a, c);
  return {a, c};
}

// ---------------------------------------------------------------------------
// Pointwise operations

/// Omega(v1, v2) at p.
template <class B>
double curvature(const B& b, const std::array<double, B::kTotal>& p, const std::array<double, B::kTotal>& v1,
                 const std::array<double, B::kTotal>& v2) {
  const auto om = b.curvature_form(detail::to_complex<B::kTotal>(p));
  return evaluate_two_form<B::kTotal>(om, v1, v2).real();
}

/// h = 1 - omega ^ iota(E) for a single generator.
template <class B, class T>
Form<T, B::kTotal> horizontal_project(const B& b, const std::array<T, B::kTotal>& p, const Form<T, B::kTotal>& f) {
  std::array<T, B::kTotal> gen;
  for (int i = 0; i < B::kTotal; ++i) gen[i] = T(b.generator[i]);
  return f - wedge(b.omega(p), contract(gen, f));
}

/// Truncated Taylor coefficients of Phi at 0 up to `order`.
inline std::vector<cplx> taylor_coefficients(const TestFunction& phi, int order) {
  std::vector<double> g(order + 1, 0.0);
  double term = 1.0;
  for (int j = 0; 2 * j <= order; ++j) {
    g[2 * j] = term;
    term *= -1.0 / (2.0 * phi.scale * phi.scale) / (j + 1);
  }
  std::vector<cplx> out(order + 1, 0.0);
  for (int i = 0; i <= order; ++i)
    for (int k = 0; k <= i && k < static_cast<int>(phi.poly.size()); ++k) out[i] += phi.poly[k] * g[i - k];
  return out;
}

/// Sum_k a_k Omega^k; the series stops at the form dimension.
template <int N, class T>
Form<T, N> curvature_polynomial(const Form<T, N>& omega2, std::span<const cplx> coeffs) {
  Form<T, N> acc;
  auto power = Form<T, N>::scalar(T(1.0));
  for (std::size_t k = 0; k < coeffs.size() && 2 * static_cast<int>(k) <= N; ++k) {
    acc += power * coeffs[k];
    power = wedge(power, omega2);
  }
  return acc;
}

/// W(Phi) = h(Phi(Omega)) on the total space; basic, so it descends.
template <class B>
auto chern_weil_W_total(const B& b, std::vector<cplx> coeffs) {
  return [b, coeffs](const auto& p) {
    return horizontal_project(b, p, curvature_polynomial<B::kTotal>(b.curvature_form(p), coeffs));
  };
}

/// W(Phi) on the base, pulled back by the section.
template <class B>
auto chern_weil_W(const B& b, std::vector<cplx> coeffs) {
  return [b, w = chern_weil_W_total(b, coeffs)](const std::array<double, B::kBase>& x) {
    return pullback<B::kBase, B::kTotal>(w(detail::to_complex<B::kTotal>(b.section(x))), b.section_jacobian);
  };
}

// ---------------------------------------------------------------------------
// Integration over base and total space

namespace detail {

template <int N>
std::array<Rule, N> box_rules(const std::array<double, N>& lo, const std::array<double, N>& hi,
                              const std::array<bool, N>& periodic, const std::array<int, N>& n) {
  std::array<Rule, N> rules;
  for (int k = 0; k < N; ++k) {
    if (periodic[k]) {
      Rule r;
      for (int i = 0; i < n[k]; ++i) {
        r.nodes.push_back(lo[k] + (hi[k] - lo[k]) * (i + 0.5) / n[k]);
        r.weights.push_back((hi[k] - lo[k]) / n[k]);
      }
      rules[k] = r;
    } else {
      rules[k] = mapped(gauss_legendre(n[k]), lo[k], hi[k]);
    }
  }
  return rules;
}

// Axis-wise doubling: an axis is refined only while refining it moves the sum.
template <int N, class F>
cplx box_integral(const std::array<double, N>& lo, const std::array<double, N>& hi,
                  const std::array<bool, N>& periodic, const F& top, double tol = 1e-13) {
  if constexpr (N == 0) {
    return top(std::array<cplx, 0>{});
  } else {
    constexpr int kMax = 512;
    std::array<int, N> n;
    n.fill(8);
    cplx cur = tensor_sum<N>(box_rules<N>(lo, hi, periodic, n), top);
    for (bool moved = true; moved;) {
      moved = false;
      for (int k = 0; k < N; ++k) {
        auto m = n;
        m[k] *= 2;
        const cplx next = tensor_sum<N>(box_rules<N>(lo, hi, periodic, m), top);
        const bool changed = std::abs(next - cur) >= tol * std::max(1.0, std::abs(next));
        cur = next;
        if (!changed) continue;
        if (m[k] >= kMax) fail(Errc::QuadratureFailure, "bundle integral did not converge");
        n = m;
        moved = true;
      }
    }
    return cur;
  }
}

template <int N>
std::array<double, N> real_point(const std::array<cplx, N>& p) {
  std::array<double, N> q;
  for (int i = 0; i < N; ++i) q[i] = p[i].real();
  return q;
}

}  // namespace detail

/// Int over the base of a form field x -> Form<cplx, NB>.
template <class B, class F>
cplx base_integral(const B& b, const F& f) {
  return double(b.base_orientation) *
         detail::box_integral<B::kBase>(b.base_lo, b.base_hi, b.base_periodic, [&](const auto& x) {
           return f(detail::real_point<B::kBase>(x)).top();
         });
}

/// Int over the total space of a form field p -> Form<cplx, NP>.
template <class B, class F>
cplx total_integral(const B& b, const F& f) {
  return double(b.total_orientation) *
         detail::box_integral<B::kTotal>(b.lo, b.hi, b.periodic, [&](const auto& p) { return f(p).top(); });
}

template <class B>
double chern_number(const B& b) {
  const auto w = chern_weil_W(b, {0.0, 1.0});
  return base_integral(b, w).real() / (2.0 * std::numbers::pi);
}

/// Int_{M_red} sigma_red for a level circle.
template <int N>
double reduced_volume(const LevelCircle<N>& l) {
  const auto b = l.bundle();
  if constexpr (N == 2) {
    return 1.0;
  } else {
    return base_integral(b, [&](const std::array<double, 2>& x) {
             const auto p = detail::to_complex<3>(b.section(x));
             const auto sig = pullback<3, 4>(l.action.manifold.sigma(l.include(p)), l.inclusion_jacobian());
             return pullback<2, 3>(sig, b.section_jacobian);
           }).real();
  }
}

// ---------------------------------------------------------------------------
// Residual checks

struct ConnectionReport {
  double vertical = 0.0;      // |omega(X_P) - 1|
  double invariance = 0.0;    // |omega(flow p) - omega(p)|
  double horizontality = 0.0; // |iota(X_P) Omega|
};

template <class B>
ConnectionReport connection_residuals(const B& b, std::span<const std::array<double, B::kTotal>> samples) {
  constexpr int N = B::kTotal;
  ConnectionReport r;
  std::array<cplx, N> gen;
  for (int i = 0; i < N; ++i) gen[i] = b.generator[i];
  for (const auto& s : samples) {
    const auto p = detail::to_complex<N>(s);
    const auto om = b.omega(p);
    r.vertical = std::max(r.vertical, std::abs(contract(gen, om)[0] - 1.0));
    r.invariance = std::max(r.invariance, max_abs(om - b.omega(detail::to_complex<N>(b.flow(s, 0.7)))));
    r.horizontality = std::max(r.horizontality, max_abs(contract(gen, b.curvature_form(p))));
  }
  return r;
}

struct ProjectorReport {
  double idempotence = 0.0;  // |h h f - h f|
  double annihilation = 0.0; // |iota(X_P) h f|
};

template <class B>
ProjectorReport projector_residuals(const B& b, std::span<const std::array<double, B::kTotal>> samples,
                                    std::span<const Form<cplx, B::kTotal>> forms) {
  constexpr int N = B::kTotal;
  ProjectorReport r;
  std::array<cplx, N> gen;
  for (int i = 0; i < N; ++i) gen[i] = b.generator[i];
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto p = detail::to_complex<N>(samples[k]);
    const auto h1 = horizontal_project(b, p, forms[k]);
    r.idempotence = std::max(r.idempotence, max_abs(horizontal_project(b, p, h1) - h1));
    r.annihilation = std::max(r.annihilation, max_abs(contract(gen, h1)));
  }
  return r;
}

/// Associated line bundle of weight k: sections are functions with
/// f(flow_t p) = e^{-i k t} f(p), so rho(E) = i k. Compares h d f with
/// d f + omega rho(E) f on a section of the form F(base) e^{i k xi1}, and on
/// the basic 1-form h(e^{i k xi1} beta0).
struct CovariantReport {
  double function_residual = 0.0;
  double one_form_residual = 0.0;
  double leibniz_residual = 0.0;
};

template <class B, class Fn, class G>
CovariantReport covariant_derivative_check(const B& b, int k, const Fn& section,
                                           std::span<const std::array<double, B::kTotal>> samples, const G& basic_fn) {
  constexpr int N = B::kTotal;
  const cplx rho(0, k);
  CovariantReport r;
  const auto as_form = [](const auto& f) {
    return [f](const auto& q) {
      using T = std::decay_t<decltype(q[0])>;
      return Form<T, N>::scalar(f(q));
    };
  };
  // a horizontal, equivariant 1-form built from the section and the connection
  const auto one_form = [&b, &section](const auto& q) {
    using T = std::decay_t<decltype(q[0])>;
    Form<T, N> f;
    for (int i = 0; i < N; ++i) f[1 << i] = section(q) * (1.0 + 0.25 * double(i));
    return horizontal_project(b, q, f);
  };
  for (const auto& s : samples) {
    const auto p = detail::to_complex<N>(s);
    const auto ds = exterior_d<N>(as_form(section), p);
    const auto nabla = ds + b.omega(p) * (rho * section(p));
    r.function_residual = std::max(r.function_residual, max_abs(horizontal_project(b, p, ds) - nabla));

    const auto da = exterior_d<N>(one_form, p);
    const auto nabla1 = da + wedge(b.omega(p), one_form(p)) * rho;
    r.one_form_residual = std::max(r.one_form_residual, max_abs(horizontal_project(b, p, da) - nabla1));

    // Leibniz with a basic function g: nabla(g s) = dg s + g nabla s, with the
    // left side differentiated by central differences
    const auto gs = [&](const std::array<cplx, N>& q) { return basic_fn(q) * section(q); };
    Form<cplx, N> dgs;
    for (int i = 0; i < N; ++i) {
      const double h = 1e-5;
      auto qp = p, qm = p;
      qp[i] += h;
      qm[i] -= h;
      dgs[1 << i] = (gs(qp) - gs(qm)) / (2 * h);
    }
    const auto lhs = dgs + b.omega(p) * (rho * gs(p));
    const auto dg = exterior_d<N>(as_form(basic_fn), p);
    const auto rhs = dg * section(p) + nabla * basic_fn(p);
    r.leibniz_residual = std::max(r.leibniz_residual, max_abs(lhs - rhs));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Reduced-space side of the localization formulas

/// alpha_red = h(alpha(Omega)) on the level: X is replaced by the curvature,
/// the moment by its value c.
template <int N, class T>
Form<T, N - 1> alpha_of_curvature(const LevelCircle<N>& l, const CatalogAlpha& alpha, const std::array<T, N - 1>& p,
                                  const Form<T, N - 1>& omega2) {
  constexpr int NP = N - 1;
  const auto sig = pullback<NP, N>(l.action.manifold.sigma(l.include(p)), l.inclusion_jacobian());
  Form<T, NP> s = omega2 * l.c + sig;
  switch (alpha.kind) {
    case AlphaKind::One: return Form<T, NP>::scalar(T(alpha.scale));
    case AlphaKind::SigmaG: return s * alpha.scale;
    case AlphaKind::ExpISigma: {
      s *= cplx(0, 1);
      auto term = Form<T, NP>::scalar(T(1.0));
      auto acc = term;
      for (int k = 1; 2 * k <= NP; ++k) {
        term = wedge(term, s) * (1.0 / k);
        acc += term;
      }
      return acc * alpha.scale;
    }
  }
  return Form<T, NP>{};
}

/// (prefactor) Int_{P^O} alpha_red ^ (Sum_k a_k Omega^k) ^ omega.
template <int N>
cplx level_integral(const LevelCircle<N>& l, const CatalogAlpha& alpha, std::vector<cplx> coeffs) {
  const auto b = l.bundle();
  return total_integral(b, [&](const std::array<cplx, N - 1>& p) {
    const auto om = b.curvature_form(p);
    const auto ar = horizontal_project(b, p, alpha_of_curvature(l, alpha, p, om));
    return wedge(wedge(ar, curvature_polynomial<N - 1>(om, coeffs)), b.omega(p));
  });
}

/// theta0 for the diagonal circle on S^2 x S^2: (2 pi i) Int_{P^O} alpha_red
/// Phi(Omega) ^ vol_omega, Phi(Omega) truncated at degree dim(M_red)/2.
inline cplx theta0_reduced(const GroupAction<4>& a, double c, const TestFunction& phi, const CatalogAlpha& alpha) {
  const auto l = level_circle(a, c);
  return cplx(0, 2 * std::numbers::pi) * level_integral(l, alpha, taylor_coefficients(phi, 1));
}

struct MainTheoremReport {
  std::string space;
  double c = 0.0;
  cplx theta0;        // from the reduction side
  cplx chern_weil;    // (2 pi i) vol(G) Int_{M_red} alpha_red W(Phi)
  double residual = 0.0;
  double vol_g = 2.0 * std::numbers::pi;
};

/// (2 pi i)^{dim G} vol(G) Int_{M_red} alpha_red W(Phi) against theta0.
template <int N>
MainTheoremReport main_theorem_check(const GroupAction<N>& a, double c, const TestFunction& phi,
                                     const CatalogAlpha& alpha) {
  const auto l = level_circle(a, c);
  const auto b = l.bundle();
  constexpr int NB = N - 2;
  const auto coeffs = taylor_coefficients(phi, NB / 2);
  const auto w = chern_weil_W(b, coeffs);
  MainTheoremReport r;
  r.space = a.manifold.name();
  r.c = c;
  const cplx integral = base_integral(b, [&](const std::array<double, NB>& x) {
    const auto p = detail::to_complex<N - 1>(b.section(x));
    const auto om = b.curvature_form(p);
    const auto ar = horizontal_project(b, p, alpha_of_curvature(l, alpha, p, om));
    return wedge(pullback<NB, N - 1>(ar, b.section_jacobian), w(x));
  });
  r.chern_weil = cplx(0, 2 * std::numbers::pi) * r.vol_g * integral;
  if constexpr (N == 2)
    r.theta0 = theta0_reduced(a, make_level(a, c), phi, alpha);
  else
    r.theta0 = theta0_reduced(a, c, phi, alpha);
  r.residual = std::abs(r.theta0 - r.chern_weil);
  return r;
}

/// S^2 x S^2: right-hand side i Int_{P^O} alpha_red e^{-i(xi, Omega)} vol_omega.
inline std::vector<JKRow> jeffrey_kirwan_ft(const GroupAction<4>& a, std::span<const double> xis,
                                            const CatalogAlpha& alpha, double eta = 1e-3) {
  std::vector<cplx> rhs;
  for (double xi : xis)
    rhs.push_back(cplx(0, 1) * level_integral(level_circle(a, xi), alpha, {1.0, cplx(0, -xi)}));
  return make_jk_rows(jk_fourier_lhs(a, xis, alpha, eta), rhs);
}

}  // namespace orbital_loc
