#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "orbital_loc/chern_weil.hpp"

using namespace orbital_loc;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTau = 2.0 * kPi;
const cplx I(0, 1);

template <class B>
std::vector<std::array<double, B::kTotal>> samples(const B& b, int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::array<double, B::kTotal>> out;
  for (int k = 0; k < n; ++k) {
    std::array<double, B::kTotal> p;
    for (int i = 0; i < B::kTotal; ++i) {
      // stay off the chart boundary where polar coordinates degenerate
      const double w = b.hi[i] - b.lo[i];
      std::uniform_real_distribution<double> u(b.lo[i] + 0.02 * w, b.hi[i] - 0.02 * w);
      p[i] = u(rng);
    }
    out.push_back(p);
  }
  return out;
}

template <int N>
std::vector<Form<cplx, N>> random_forms(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Form<cplx, N>> out(n);
  for (auto& f : out)
    for (auto& c : f.c) c = cplx(g(rng), g(rng));
  return out;
}

template <class F>
void expect_error(Errc code, F&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(Pullback, LinearMapDeterminants) {
  // (u, v) -> (u + v, 2v, u): dx^0 ^ dx^1 pulls back to 2 du ^ dv
  Eigen::Matrix<double, 3, 2> j;
  j << 1, 1, 0, 2, 1, 0;
  const auto f = Form<cplx, 3>::monomial(0b011, 1.0);
  EXPECT_NEAR(std::abs(pullback<2, 3>(f, j)[0b11] - 2.0), 0.0, 1e-15);
  const auto g = Form<cplx, 3>::monomial(0b101, 1.0);  // dx^0 ^ dx^2 -> (du + dv) ^ du = -du ^ dv
  EXPECT_NEAR(std::abs(pullback<2, 3>(g, j)[0b11] + 1.0), 0.0, 1e-15);
}

TEST(Hopf, ConnectionInvariants) {
  for (double a : {0.0, 0.3}) {
    const auto b = hopf_bundle(a);
    const auto s = samples(b, 100, 1);
    const auto r = connection_residuals(b, std::span(s));
    EXPECT_LT(r.vertical, 1e-9);
    EXPECT_LT(r.invariance, 1e-9);
    EXPECT_LT(r.horizontality, 1e-9);
  }
}

TEST(Hopf, CurvatureIsAntisymmetric) {
  const auto b = hopf_bundle();
  const std::array<double, 3> p{0.5, 0.2, 1.1}, v{0.3, -1.0, 0.4}, w{-0.2, 0.5, 0.9};
  EXPECT_EQ(curvature(b, p, v, v), 0.0);
  EXPECT_NEAR(curvature(b, p, v, w), -curvature(b, p, w, v), 1e-15);
  // Omega = -sin(2 eta) d eta ^ (dxi2 - dxi1)
  EXPECT_NEAR(curvature(b, p, {1, 0, 0}, {0, 0, 1}), -std::sin(1.0), 1e-14);
  EXPECT_NEAR(curvature(b, p, {1, 0, 0}, {0, 1, 0}), std::sin(1.0), 1e-14);
}

TEST(Hopf, ChernNumber) {
  EXPECT_NEAR(chern_number(hopf_bundle()), double(kHopfChernNumber), 1e-9);
  EXPECT_NEAR(chern_number(hopf_bundle(0.0, -1)), -double(kHopfChernNumber), 1e-9);
}

TEST(Hopf, ClassIndependence) {
  const auto round = hopf_bundle(0.0);
  const auto bent = hopf_bundle(0.3);
  for (const std::vector<cplx>& phi : {std::vector<cplx>{1.0}, {0.0, 1.0}, {0.0, 0.0, 1.0}, {0.5, -2.0, 3.0}}) {
    const cplx a = base_integral(round, chern_weil_W(round, phi));
    const cplx b = base_integral(bent, chern_weil_W(bent, phi));
    EXPECT_LT(std::abs(a - b), 1e-8);
  }
  // the perturbation really changes Omega pointwise
  const std::array<double, 3> p{0.4, 0.3, 1.7};
  EXPECT_GT(std::abs(curvature(round, p, {1, 0, 0}, {0, 0, 1}) - curvature(bent, p, {1, 0, 0}, {0, 0, 1})), 1e-2);
}

TEST(Hopf, HorizontalProjector) {
  const auto b = hopf_bundle(0.3);
  const auto s = samples(b, 100, 2);
  const auto forms = random_forms<3>(100, 3);
  const auto r = projector_residuals(b, std::span(s), std::span(forms));
  EXPECT_LT(r.idempotence, 1e-9);
  EXPECT_LT(r.annihilation, 1e-9);
  for (const auto& x : s) {
    std::array<cplx, 3> p{x[0], x[1], x[2]};
    EXPECT_LT(max_abs(horizontal_project(b, p, b.omega(p))), 1e-14);
    const auto om = b.curvature_form(p);
    EXPECT_LT(max_abs(horizontal_project(b, p, om) - om), 1e-14);
  }
}

TEST(ChernWeil, SimpleValues) {
  const auto b = hopf_bundle();
  const std::array<double, 2> x{0.6, 1.0};
  const auto one = chern_weil_W(b, {1.0})(x);
  EXPECT_EQ(one[0], cplx(1.0));
  EXPECT_LT(max_abs(one - Form<cplx, 2>::scalar(1.0)), 1e-15);
  const auto lin = chern_weil_W(b, {0.0, 1.0})(x);
  EXPECT_NEAR(std::abs(lin[0b11] + std::sin(1.2)), 0.0, 1e-14);
  EXPECT_LT(max_abs(chern_weil_W(b, {0.0, 0.0, 1.0})(x)), 1e-15);
  EXPECT_NEAR(base_integral(b, chern_weil_W(b, {0.0, 1.0})).real() / kTau, -1.0, 1e-9);
}

TEST(ChernWeil, FormsAreClosed) {
  const auto b = hopf_bundle(0.3);
  const auto w = chern_weil_W_total(b, {0.7, -1.3, 2.0});
  for (const auto& x : samples(b, 20, 4)) {
    const std::array<cplx, 3> p{x[0], x[1], x[2]};
    EXPECT_LT(max_abs(exterior_d<3>(w, p)), 1e-12);
  }
  const auto l = level_circle(diagonal_circle_action(product_s2xs2()), 0.5).bundle();
  const auto wl = chern_weil_W_total(l, {1.0, 0.4});
  for (const auto& x : samples(l, 20, 5)) {
    const std::array<cplx, 3> p{x[0], x[1], x[2]};
    EXPECT_LT(max_abs(exterior_d<3>(wl, p)), 1e-12);
  }
}

TEST(ChernWeil, TaylorCoefficients) {
  const auto t = taylor_coefficients({1.0, {1.0, 0.5}}, 3);
  EXPECT_NEAR(std::abs(t[0] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(t[1] - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(t[2] + 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(t[3] + 0.25), 0.0, 1e-15);
}

TEST(LevelCircle, ProductBundle) {
  const auto a = diagonal_circle_action(product_s2xs2());
  for (double c : {0.5, 1.2, -0.7}) {
    const auto l = level_circle(a, c);
    const auto b = l.bundle();
    const auto s = samples(b, 50, 6);
    const auto r = connection_residuals(b, std::span(s));
    EXPECT_LT(r.vertical, 1e-9);
    EXPECT_LT(r.invariance, 1e-9);
    EXPECT_LT(r.horizontality, 1e-9);
    // M_red is the z1-interval times the psi-circle: volume 2 pi (2 - |c|)
    EXPECT_NEAR(reduced_volume(l), kTau * (2 - std::abs(c)), 1e-10);
    EXPECT_NEAR(chern_number(b), c > 0 ? 1.0 : -1.0, 1e-9);
    // Int Omega = -d vol_red / dc
    const double h = 1e-4;
    const double dv = (reduced_volume(level_circle(a, c + h)) - reduced_volume(level_circle(a, c - h))) / (2 * h);
    EXPECT_NEAR(base_integral(b, chern_weil_W(b, {0.0, 1.0})).real(), -dv, 1e-6);
  }
  expect_error(Errc::NonRegularLevel, [&] { level_circle(a, 0.0); });
}

TEST(LevelCircle, SphereBundleOverAPoint) {
  const auto l = level_circle(circle_action(sphere2()), 0.0);
  const auto b = l.bundle();
  const auto s = samples(b, 20, 7);
  const auto r = connection_residuals(b, std::span(s));
  EXPECT_LT(r.vertical, 1e-12);
  // a point carries no 2-form, and the reduced volume is constant in c
  EXPECT_EQ(base_integral(b, chern_weil_W(b, {0.0, 1.0})), cplx(0.0));
  EXPECT_EQ(reduced_volume(l), reduced_volume(level_circle(circle_action(sphere2()), 0.3)));
}

TEST(CovariantDerivative, HopfLineBundles) {
  const auto b = hopf_bundle(0.3);
  const auto s = samples(b, 50, 8);
  const auto basic = [](const auto& q) {
    using std::cos;
    using std::sin;
    return cos(q[0]) * (2.0 + sin(q[2] - q[1]));
  };
  for (int k : {0, 1, 2}) {
    const auto constant = [k](const auto& q) {
      using std::exp;
      return exp(cplx(0, k) * q[1]);
    };
    const auto r = covariant_derivative_check(b, k, constant, std::span(s), basic);
    EXPECT_LT(r.function_residual, 1e-8) << k;
    EXPECT_LT(r.one_form_residual, 1e-8) << k;
    EXPECT_LT(r.leibniz_residual, 1e-8) << k;
    const auto varying = [k](const auto& q) {
      using std::cos;
      using std::exp;
      return cos(2.0 * q[0]) * (1.0 + 0.3 * cos(q[2] - q[1])) * exp(cplx(0, k) * q[1]);
    };
    const auto r2 = covariant_derivative_check(b, k, varying, std::span(s), basic);
    EXPECT_LT(r2.function_residual, 1e-8) << k;
    EXPECT_LT(r2.one_form_residual, 1e-8) << k;
    EXPECT_LT(r2.leibniz_residual, 1e-8) << k;
  }
  // trivial rep: nabla = d
  const auto f = [](const auto& q) {
    using std::sin;
    return sin(q[0]) * sin(q[0]) + 0.0 * q[1];
  };
  const std::array<cplx, 3> p{s[0][0], s[0][1], s[0][2]};
  const auto df = exterior_d<3>([&](const auto& q) {
    using T = std::decay_t<decltype(q[0])>;
    return Form<T, 3>::scalar(f(q));
  }, p);
  EXPECT_LT(max_abs(horizontal_project(b, p, df) - df), 1e-14);
}

TEST(MainTheorem, SphereLevel) {
  const auto a = circle_action(sphere2());
  const TestFunction phi{1.0, {1.0}};
  for (auto kind : {AlphaKind::One, AlphaKind::ExpISigma}) {
    const auto r = main_theorem_check(a, 0.0, phi, {kind});
    EXPECT_LT(r.residual, 1e-6);
    EXPECT_NEAR(std::abs(r.chern_weil - I * kTau * kTau), 0.0, 1e-10);
  }
  const auto zero = main_theorem_check(a, 0.0, {1.0, {0.0}}, {});
  EXPECT_EQ(zero.theta0, cplx(0.0));
  EXPECT_EQ(zero.chern_weil, cplx(0.0));
  const auto one = main_theorem_check(a, 0.2, phi, {});
  const auto three = main_theorem_check(a, 0.2, phi, {AlphaKind::One, 3.0});
  EXPECT_NEAR(std::abs(three.theta0 - 3.0 * one.theta0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(three.chern_weil - 3.0 * one.chern_weil), 0.0, 1e-12);
  expect_error(Errc::NonRegularLevel, [&] { main_theorem_check(a, 1.0, phi, {}); });
}

TEST(MainTheorem, ProductLevel) {
  const auto a = diagonal_circle_action(product_s2xs2());
  const TestFunction phi{1.0, {1.0, 0.3}};
  for (double c : {0.5, -1.1}) {
    const auto r = main_theorem_check(a, c, phi, {AlphaKind::ExpISigma});
    EXPECT_LT(r.residual, 1e-6);
    // 2 pi i . 2 pi Int_{M_red} [i Phi(0)(sigma_red + c Omega) + Phi'(0) Omega]
    const double vol = kTau * (2 - std::abs(c)), om = c > 0 ? kTau : -kTau;
    const cplx oracle = I * kTau * kTau * (I * (vol + c * om) + 0.3 * om);
    EXPECT_NEAR(std::abs(r.theta0 - oracle), 0.0, 1e-8) << c;
  }
  const auto one = main_theorem_check(a, 0.5, phi, {AlphaKind::SigmaG});
  const auto three = main_theorem_check(a, 0.5, phi, {AlphaKind::SigmaG, 3.0});
  EXPECT_LT(one.residual, 1e-6);
  EXPECT_NEAR(std::abs(three.chern_weil - 3.0 * one.chern_weil), 0.0, 1e-9);
}

TEST(JeffreyKirwan, ProductWindow) {
  const auto a = diagonal_circle_action(product_s2xs2());
  std::vector<double> xis;
  for (int k = 0; k < 5; ++k) {
    xis.push_back(0.2 + 1.6 * k / 4);
    xis.push_back(-0.2 - 1.6 * k / 4);
  }
  const auto rows = jeffrey_kirwan_ft(a, xis, {AlphaKind::ExpISigma});
  for (const auto& r : rows) {
    EXPECT_NEAR(std::abs(r.rhs + kTau * kTau * (2 - std::abs(r.xi))), 0.0, 1e-9) << r.xi;
    EXPECT_LT(r.rel_err, 1e-3) << r.xi;
  }
}
