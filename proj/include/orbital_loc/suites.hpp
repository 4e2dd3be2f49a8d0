#pragma once

#include <cstdarg>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "orbital_loc/chern_weil.hpp"
#include "orbital_loc/characters.hpp"
#include "orbital_loc/orbits.hpp"
#include "orbital_loc/reduction.hpp"
#include "orbital_loc/report.hpp"

namespace orbital_loc::suites {

inline constexpr std::uint64_t kDefaultSeed = 20240917ULL;

struct Tolerances {
  double scale = 1.0;  // multiplies every deterministic tolerance
  double mc_k = 3.0;   // Monte Carlo checks pass within mc_k standard errors
};

namespace detail {

inline std::string format(const char* fmt, ...) {
  char buf[256];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

inline nlohmann::json to_json(const Vec& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

inline nlohmann::json to_json(cplx z) { return {z.real(), z.imag()}; }

inline nlohmann::json to_json(const std::vector<cplx>& zs) {
  nlohmann::json a = nlohmann::json::array();
  for (auto z : zs) a.push_back(to_json(z));
  return a;
}

inline Vec random_regular(const RootSystem& rs, std::mt19937_64& rng, double scale = 1.0, double margin = 0.05) {
  std::normal_distribution<double> nd(0.0, scale);
  for (;;) {
    Vec x(rs.rank);
    for (int i = 0; i < rs.rank; ++i) x(i) = nd(rng);
    if (rs.is_regular(x, margin)) return x;
  }
}

inline std::vector<std::vector<double>> dominant_labels(int rank, int max_entry) {
  std::vector<std::vector<double>> out;
  if (rank == 1) {
    for (int a = 0; a <= max_entry; ++a) out.push_back({double(a)});
  } else {
    for (int a = 0; a <= max_entry; ++a)
      for (int b = 0; b <= max_entry; ++b) out.push_back({double(a), double(b)});
  }
  return out;
}

inline std::string labels_name(const std::vector<double>& l) {
  std::string s = "(";
  for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + std::to_string(int(l[i]));
  return s + ")";
}

template <class Suite>
VerificationReport guarded(const std::string& name, Suite&& body) {
  VerificationReport rep;
  rep.suite = name;
  try {
    body(rep);
  } catch (const Error& e) {
    rep.error = e.what();
  }
  return rep;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline VerificationReport roots(Family family) {
  return detail::guarded("roots", [&](VerificationReport& rep) {
    const auto rs = build_root_system(family);
    const int expected_pos[] = {1, 3, 4, 6};
    const int expected_w[] = {2, 6, 8, 12};
    const int k = int(family);
    rep.add(abs_check("positive_root_count", double(rs.positive_roots.size()), double(expected_pos[k]), 0.5));
    rep.add(abs_check("weyl_order", double(rs.weyl_elements.size()), double(expected_w[k]), 0.5));
    Vec half = Vec::Zero(rs.rank);
    for (const auto& a : rs.positive_roots) half += 0.5 * a;
    rep.add(abs_check("rho_half_sum", (half - rs.rho).norm(), 0.0, 1e-14));
    rep.add(abs_check("all_roots_count", double(rs.all_roots.size()), 2.0 * rs.positive_roots.size(), 0.5));

    nlohmann::json pos = nlohmann::json::array(), simple = nlohmann::json::array(), all = nlohmann::json::array();
    for (const auto& a : rs.positive_roots) pos.push_back(detail::to_json(a));
    for (const auto& a : rs.simple_roots) simple.push_back(detail::to_json(a));
    for (const auto& a : rs.all_roots) all.push_back(detail::to_json(a));
    nlohmann::json weyl = nlohmann::json::array();
    for (const auto& w : rs.weyl_elements) {
      nlohmann::json m = nlohmann::json::array();
      for (int i = 0; i < rs.rank; ++i) m.push_back(detail::to_json(Vec(w.matrix.row(i).transpose())));
      weyl.push_back({{"matrix", m}, {"sign", w.sign}, {"word", w.word}});
    }
    rep.data = {{"family", std::string(to_string(family))},
                {"rank", rs.rank},
                {"simple_roots", simple},
                {"positive_roots", pos},
                {"all_roots", all},
                {"rho", detail::to_json(rs.rho)},
                {"weyl_order", rs.weyl_elements.size()},
                {"weyl_elements", weyl}};
  });
}

inline VerificationReport character(Group group, const std::vector<double>& labels, const Vec& point,
                                    const Tolerances& tol = {}) {
  return detail::guarded("character", [&](VerificationReport& rep) {
    if (group == Group::U1) fail(Errc::UsageError, "characters are evaluated for su2 and su3");
    const auto rs = root_system_of(group);
    const auto hw = HighestWeight::from_dynkin(rs, labels);
    const CartanElement x{point};
    const auto chi = weyl_character(rs, hw, x);
    const double jh = j_half(rs, x);
    const cplx lhs = jh * chi.value;
    const cplx rhs = harish_chandra_ft(rs, {hw.shifted}, x).value;
    const MatrixAlgebra alg(group);
    const double jm = j_factor_matrix(alg, alg.from_cartan(point));
    rep.add(abs_check("kirillov", lhs, rhs, 1e-8 * tol.scale));
    rep.add(abs_check("j_factor", jh * jh, jm, 1e-10 * tol.scale));
    rep.data = {{"value_re", chi.value.real()},
                {"value_im", chi.value.imag()},
                {"j_half", jh},
                {"kirillov_residual", std::abs(lhs - rhs)},
                {"dimension", weyl_dimension(rs, hw)}};
    rep.environment = {{"group", std::string(to_string(group))}, {"highest_weight", labels},
                       {"point", detail::to_json(point)}};
  });
}

struct OrbitFtConfig {
  std::int64_t mc_samples = 100000;
  std::uint64_t seed = kDefaultSeed;
  Tolerances tol;
};

/// SU(2): closed form against Gauss-Legendre on the sphere; SU(3): Haar Monte Carlo.
inline VerificationReport orbit_ft(const OrbitFtConfig& cfg = {}) {
  return detail::guarded("orbit-ft", [&](VerificationReport& rep) {
    const SU2GaussLegendre gl{64, 64};
    const auto a1 = build_root_system(Family::A1);
    std::vector<double> radii{1.0, 2.5};
    for (int m = 0; m <= 3; ++m) radii.push_back((m + 1) / std::sqrt(2.0));
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const auto o = make_orbit(Group::SU2, {Vec::Constant(1, radii[i])});
      for (int k = 0; k < 20; ++k) {
        const CartanElement x{Vec::Constant(1, 0.2 * (k + 1))};
        double err = 0;
        const cplx q = orbit_ft_quadrature(o, x, gl, &err).value;
        const cplx c = harish_chandra_ft(a1, {o.base_point}, x).value;
        rep.add(rel_check(detail::format("su2/r%zu/x%02d", i, k), q, c, 1e-6 * cfg.tol.scale));
        rows.push_back({{"group", "su2"}, {"lambda", radii[i]}, {"X", x.coords(0)}, {"closed_form", detail::to_json(c)},
                        {"quadrature", detail::to_json(q)}, {"abs_err", std::abs(q - c)}, {"stderr", err}});
      }
    }
    const auto a2 = build_root_system(Family::A2);
    const std::vector<Vec> bases = {a2.rho, a2.rho + a2.from_dynkin({1, 2}), a2.fundamental_weights()[0],
                                    2.0 * a2.fundamental_weights()[1]};
    std::vector<Vec> xs(3, Vec(2));
    xs[0] << 0.9, -0.35;
    xs[1] << 0.3, 0.7;
    xs[2] << -1.1, 0.4;
    for (std::size_t i = 0; i < bases.size(); ++i) {
      const auto o = make_orbit(Group::SU3, {bases[i]});
      for (std::size_t k = 0; k < xs.size(); ++k) {
        double se = 0;
        const HaarMC mc{cfg.mc_samples, cfg.seed + 97 * i + k, 0.0};
        const cplx q = orbit_ft_quadrature(o, {xs[k]}, mc, &se).value;
        const cplx c = harish_chandra_ft(a2, {bases[i]}, {xs[k]}).value;
        rep.add(mc_check(detail::format("su3/f%zu/x%zu", i, k), q, c, se, cfg.tol.mc_k));
        rows.push_back({{"group", "su3"}, {"lambda", detail::to_json(bases[i])}, {"X", detail::to_json(xs[k])},
                        {"closed_form", detail::to_json(c)}, {"quadrature", detail::to_json(q)},
                        {"abs_err", std::abs(q - c)}, {"stderr", se}});
      }
    }
    rep.data = {{"rows", rows}};
    rep.environment = {{"seed", cfg.seed}, {"su2_nodes", {gl.n_z, gl.n_phi}}, {"mc_samples", cfg.mc_samples},
                       {"mc_k", cfg.tol.mc_k}};
  });
}

struct KirillovConfig {
  std::vector<Group> groups{Group::SU2, Group::SU3};
  int max_weight = 3;
  int points = 50;
  std::uint64_t seed = kDefaultSeed;
  Tolerances tol;
};

/// J^{1/2}(X) chi(e^X) against the orbit transform of m + rho, and the two
/// routes to the J-factor.
inline VerificationReport kirillov_check(const KirillovConfig& cfg = {}) {
  return detail::guarded("kirillov-check", [&](VerificationReport& rep) {
    if (cfg.max_weight < 0 || cfg.points < 1) fail(Errc::UsageError, "max-weight >= 0 and points >= 1");
    std::mt19937_64 rng(cfg.seed);
    long identities = 0;
    for (Group g : cfg.groups) {
      if (g == Group::U1) fail(Errc::UsageError, "kirillov-check runs on su2 and su3");
      const auto rs = root_system_of(g);
      const std::string gname(to_string(g));
      for (const auto& labels : detail::dominant_labels(rs.rank, cfg.max_weight)) {
        const auto hw = HighestWeight::from_dynkin(rs, labels);
        for (int k = 0; k < cfg.points; ++k) {
          const CartanElement x{detail::random_regular(rs, rng)};
          const cplx lhs = kirillov_lhs(rs, hw, x);
          const cplx rhs = harish_chandra_ft(rs, {hw.shifted}, x).value;
          rep.add(abs_check(gname + "/m" + detail::labels_name(labels) + detail::format("/x%03d", k), lhs, rhs,
                            1e-8 * cfg.tol.scale));
          ++identities;
        }
      }
      const MatrixAlgebra alg(g);
      std::normal_distribution<double> nd;
      for (int k = 0; k < 100; ++k) {
        Vec c(alg.dim());
        for (int i = 0; i < alg.dim(); ++i) c(i) = nd(rng);
        const CMat x = alg.from_coords(c);
        const double jh = j_half(rs, {alg.conjugate_to_cartan(x)});
        rep.add(abs_check(gname + detail::format("/j_factor/x%03d", k), jh * jh, j_factor_matrix(alg, x),
                          1e-10 * cfg.tol.scale));
      }
    }
    rep.data = {{"identity_checks", identities}};
    nlohmann::json groups = nlohmann::json::array();
    for (Group g : cfg.groups) groups.push_back(std::string(to_string(g)));
    rep.environment = {{"seed", cfg.seed}, {"groups", groups}, {"max_weight", cfg.max_weight},
                       {"points", cfg.points}};
  });
}

struct DhConfig {
  int samples = 50;
  std::uint64_t seed = kDefaultSeed;
  Tolerances tol;
};

namespace detail {

template <int N>
std::array<cplx, N> random_interior(const CatalogManifold<N>& m, std::mt19937_64& rng) {
  std::array<cplx, N> p;
  for (int k = 0; k < N; ++k) {
    const double pad = 0.05 * (m.hi[k] - m.lo[k]);
    p[k] = std::uniform_real_distribution<double>(m.lo[k] + pad, m.hi[k] - pad)(rng);
  }
  return p;
}

inline Vec random_x(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Vec x(dim);
  for (int i = 0; i < dim; ++i) x(i) = nd(rng);
  return x;
}

template <int N, class A>
double dg_squared_residual(const GroupAction<N>& act, const A& alpha, int samples, std::mt19937_64& rng) {
  const auto dd = d_g(d_g(alpha, act), act);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const auto p = random_interior(act.manifold, rng);
    worst = std::max(worst, max_abs(dd(p, random_x(act.algebra_dim(), rng))));
  }
  return worst;
}

}  // namespace detail

/// Cartan-model checks: d_g^2 = 0, Stokes, Archimedes and Duistermaat-Heckman.
inline VerificationReport dh_check_suite(const DhConfig& cfg = {}) {
  return detail::guarded("dh-check", [&](VerificationReport& rep) {
    std::mt19937_64 rng(cfg.seed);
    const double s = cfg.tol.scale;
    const auto s2 = circle_action(sphere2());
    const auto su2 = su2_action(sphere2(1.3));
    const auto diag = diagonal_circle_action(product_s2xs2(1.0, 0.6));
    const auto t2 = torus_action(product_s2xs2(1.0, 0.6));

    const auto dg2 = [&](const std::string& name, const auto& act) {
      rep.add(abs_check("dg_squared/" + name + "/sigma_g", detail::dg_squared_residual(act, sigma_g_form(act), cfg.samples, rng), 0.0, 1e-8 * s));
      rep.add(abs_check("dg_squared/" + name + "/exp_i_sigma_g",
                        detail::dg_squared_residual(act, exp_i_sigma_g_form(act, 0.8), cfg.samples, rng), 0.0, 1e-8 * s));
      rep.add(abs_check("dg_squared/" + name + "/metric_dual",
                        detail::dg_squared_residual(act, metric_dual_form(act), cfg.samples, rng), 0.0, 1e-8 * s));
    };
    dg2("s2", s2);
    dg2("su2", su2);
    dg2("diag", diag);
    dg2("t2", t2);

    const auto stokes = [&](const std::string& name, const auto& act, const auto& beta) {
      for (int k = 0; k < 3; ++k) {
        const Vec x = detail::random_x(act.algebra_dim(), rng);
        rep.add(abs_check(detail::format("stokes/%s/%d", name.c_str(), k),
                          equivariant_integral(act.manifold, d_g(beta, act), x).value, 0.0, 1e-7 * s));
      }
    };
    stokes("s2", s2, metric_dual_form(s2));
    stokes("su2", su2, eq_wedge(metric_dual_form(su2), sigma_g_form(su2)));
    stokes("diag", diag, eq_wedge(metric_dual_form(diag), sigma_g_form(diag)));

    const auto push = pushforward_density(s2, 0, 40);
    const double flat = 2.0 * std::numbers::pi;
    for (std::size_t b = 0; b < push.density.size(); ++b)
      rep.add(rel_check(detail::format("archimedes/bin%02zu", b), push.density[b], flat, 0.01));

    nlohmann::json rows = nlohmann::json::array();
    for (double t : {0.5, 1.0, 2.0, 5.0}) {
      const cplx q = equivariant_integral(s2.manifold, exp_i_sigma_g_form(s2), Vec::Constant(1, t), 1e-12).value /
                     cplx(0, 1);
      const double exact = sphere_dh_closed_form(1.0, t);
      rep.add(rel_check(detail::format("dh/s2/t%.1f", t), q, exact, 1e-6 * s));
      rows.push_back({{"manifold", s2.manifold.name()}, {"X", t}, {"quadrature", detail::to_json(q)},
                      {"closed_form", exact}, {"abs_err", std::abs(q - exact)}});
    }
    for (double t : {0.5, 1.3, 3.0}) {
      const auto row = dh_check(diag, Vec::Constant(1, t));
      rep.add(rel_check(detail::format("dh/diag/t%.1f", t), row.quadrature, row.closed_form, 1e-6 * s));
      rows.push_back({{"manifold", row.manifold}, {"X", t}, {"quadrature", detail::to_json(row.quadrature)},
                      {"closed_form", detail::to_json(row.closed_form)}, {"abs_err", row.abs_err}});
    }
    rep.data = {{"rows", rows}};
    rep.environment = {{"seed", cfg.seed}, {"samples", cfg.samples}, {"pushforward_bins", 40}};
  });
}

struct WittenConfig {
  double level = 0.0;
  std::vector<double> eps_ladder{0.5, 0.25, 0.125, 0.0625};
  std::vector<double> t_ladder{10, 20, 40};
  double phi_scale = 1.0;
  int jk_points = 10;
  std::uint64_t seed = kDefaultSeed;
  Tolerances tol;
};

/// S^1 on S^2: reduced and Kirillov Theta_0, the t-limit of the inner term,
/// Witten's Z(eps), additivity of the decomposition and the JK windows.
inline VerificationReport witten_check(const WittenConfig& cfg = {}) {
  return detail::guarded("witten-check", [&](VerificationReport& rep) {
    if (!(cfg.phi_scale > 0)) fail(Errc::UsageError, "phi-scale must be positive");
    const double s = cfg.tol.scale;
    const auto a = circle_action(sphere2());
    const auto level = make_level(a, cfg.level);
    const TestFunction phi{cfg.phi_scale, {1.0}};
    nlohmann::json data = nlohmann::json::object();
    data["critical_value"] = level.critical_value;
    data["r"] = level.r;
    data["cutoff"] = level.cutoff;

    for (auto kind : {AlphaKind::One, AlphaKind::ExpISigma}) {
      const std::string k = kind == AlphaKind::One ? "alpha_one" : "alpha_exp_i_sigma";
      const CatalogAlpha alpha{kind};
      const cplx red = theta0_reduced(a, level, phi, alpha);
      const cplx kir = theta0_kirillov(a, level, phi, alpha);
      rep.add(abs_check(k + "/theta0_kirillov", kir, red, 1e-6 * s));
      const auto lim = theta_limit(a, level, phi, alpha, cfg.t_ladder);
      rep.add(abs_check(k + "/theta_t_limit", lim.limit, red, 1e-4 * s));
      rep.add(abs_check(k + "/theta_t_limit_kirillov", lim.limit, kir, 1e-4 * s));
      const auto w = witten_ladder(a, level, cfg.eps_ladder, alpha);
      rep.add(rel_check(k + "/witten_extrapolation", w.fit.limit, red * (1.0 / phi.at_zero()), 1e-3 * s));
      rep.add(rel_check(k + "/witten_extrapolation_kirillov", w.fit.limit, kir * (1.0 / phi.at_zero()), 1e-3 * s));
      rep.add(lower_bound_check(k + "/witten_decay_rate", w.decay_rate, 0.5 * level.r - 0.1));
      if (kind == AlphaKind::One) rep.add(abs_check(k + "/witten_closed_form", w.fast_path_residual, 0.0, 1e-9 * s));
      data[k] = {{"theta0_reduced", detail::to_json(red)},
                 {"theta0_kirillov", detail::to_json(kir)},
                 {"t_ladder", lim.t},
                 {"theta_t_inner", detail::to_json(lim.values)},
                 {"theta_t_converged", lim.converged},
                 {"eps_ladder", w.eps},
                 {"Z", detail::to_json(w.values)},
                 {"Z_closed_form", detail::to_json(w.closed_form)},
                 {"Z_leading", detail::to_json(w.leading)},
                 {"Z_richardson", detail::to_json(w.richardson)},
                 {"Z_fit_limit", detail::to_json(w.fit.limit)},
                 {"Z_fit_kappa", w.fit.kappa},
                 {"decay_rate", w.decay_rate}};
    }

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> tt(0, 8), ss(0.5, 1.5), cc(-0.5, 0.5);
    for (int k = 0; k < 10; ++k) {
      const double t = tt(rng);
      const TestFunction f{ss(rng), {1.0, cc(rng), cc(rng)}};
      const CatalogAlpha alpha{k % 2 ? AlphaKind::ExpISigma : AlphaKind::One};
      const cplx all = theta_t(a, level, Region::All, t, f, alpha);
      const cplx in = theta_t(a, level, Region::Inner, t, f, alpha);
      const cplx out = theta_t(a, level, Region::Outer, t, f, alpha);
      rep.add(abs_check(detail::format("additivity/%02d", k), in + out, all, 1e-9 * s));
    }

    Vec w0(3);
    w0 << 0.2, -0.1, 0.3;
    const auto si = su2_kirillov_identity(cfg.phi_scale, w0);
    rep.add(rel_check("su2_structural_identity", si.lhs, si.rhs, 1e-4 * s));

    const int n = std::max(cfg.jk_points, 2);
    std::vector<double> xis;
    for (int k = 0; k < n; ++k) xis.push_back(-0.75 + 1.5 * k / (n - 1));
    nlohmann::json jk = nlohmann::json::array();
    for (const auto& r : jeffrey_kirwan_ft(a, xis, {AlphaKind::ExpISigma})) {
      rep.add(rel_check(detail::format("jk/s2/xi%+.4f", r.xi), r.lhs, r.rhs, 1e-3 * s));
      jk.push_back({{"space", "s2"}, {"xi", r.xi}, {"lhs", detail::to_json(r.lhs)}, {"rhs", detail::to_json(r.rhs)}});
    }
    const auto prod = diagonal_circle_action(product_s2xs2());
    xis.clear();
    for (int k = 0; k < n; ++k) xis.push_back(0.2 + 1.6 * k / (n - 1));
    for (const auto& r : jeffrey_kirwan_ft(prod, xis, {AlphaKind::ExpISigma})) {
      rep.add(rel_check(detail::format("jk/s2xs2/xi%+.4f", r.xi), r.lhs, r.rhs, 1e-3 * s));
      jk.push_back({{"space", "s2xs2"}, {"xi", r.xi}, {"lhs", detail::to_json(r.lhs)}, {"rhs", detail::to_json(r.rhs)}});
    }
    data["jeffrey_kirwan"] = jk;
    rep.data = data;
    rep.environment = {{"seed", cfg.seed},          {"level", cfg.level},
                       {"eps_ladder", cfg.eps_ladder}, {"t_ladder", cfg.t_ladder},
                       {"phi_scale", cfg.phi_scale},   {"jk_points", n}};
  });
}

struct ChernWeilConfig {
  double perturbation = 0.3;
  int samples = 100;
  std::uint64_t seed = kDefaultSeed;
  Tolerances tol;
};

namespace detail {

template <class B>
std::vector<std::array<double, B::kTotal>> bundle_samples(const B& b, int n, std::mt19937_64& rng) {
  std::vector<std::array<double, B::kTotal>> out;
  for (int k = 0; k < n; ++k) {
    std::array<double, B::kTotal> p;
    for (int i = 0; i < B::kTotal; ++i) {
      const double w = b.hi[i] - b.lo[i];
      p[i] = std::uniform_real_distribution<double>(b.lo[i] + 0.02 * w, b.hi[i] - 0.02 * w)(rng);
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace detail

/// Hopf bundle Chern number and class independence, the horizontal
/// projector, hdh against the covariant derivative, and the main theorem.
inline VerificationReport chern_weil_check(const ChernWeilConfig& cfg = {}) {
  return detail::guarded("chern-weil-check", [&](VerificationReport& rep) {
    const double s = cfg.tol.scale;
    std::mt19937_64 rng(cfg.seed);
    const auto round = hopf_bundle(0.0);
    const auto bent = hopf_bundle(cfg.perturbation);
    const double chern = chern_number(round);
    rep.add(abs_check("hopf/chern_number", chern, double(kHopfChernNumber), 1e-9 * s));
    rep.add(abs_check("hopf/chern_number_reversed", chern_number(hopf_bundle(0.0, -1)), -double(kHopfChernNumber),
                      1e-9 * s));
    rep.add(abs_check("hopf/chern_number_perturbed", chern_number(bent), double(kHopfChernNumber), 1e-9 * s));

    double independence = 0.0;
    const std::vector<std::vector<cplx>> polys{{1.0}, {0.0, 1.0}, {0.0, 0.0, 1.0}, {0.5, -2.0, 3.0}};
    for (const auto& p : polys)
      independence = std::max(independence, std::abs(base_integral(round, chern_weil_W(round, p)) -
                                                      base_integral(bent, chern_weil_W(bent, p))));
    rep.add(abs_check("hopf/class_independence", independence, 0.0, 1e-8 * s));

    const auto pts = detail::bundle_samples(bent, cfg.samples, rng);
    const auto conn = connection_residuals(bent, std::span(pts));
    rep.add(abs_check("hopf/connection_vertical", conn.vertical, 0.0, 1e-9 * s));
    rep.add(abs_check("hopf/connection_invariance", conn.invariance, 0.0, 1e-9 * s));
    rep.add(abs_check("hopf/curvature_horizontal", conn.horizontality, 0.0, 1e-9 * s));
    std::normal_distribution<double> g;
    std::vector<Form<cplx, 3>> forms(pts.size());
    for (auto& f : forms)
      for (auto& c : f.c) c = cplx(g(rng), g(rng));
    const auto proj = projector_residuals(bent, std::span(pts), std::span(forms));
    rep.add(abs_check("hopf/projector_idempotent", proj.idempotence, 0.0, 1e-9 * s));
    rep.add(abs_check("hopf/projector_annihilates_vertical", proj.annihilation, 0.0, 1e-9 * s));

    double covariant = 0.0;
    const auto basic = [](const auto& q) {
      using std::cos;
      using std::sin;
      return cos(q[0]) * (2.0 + sin(q[2] - q[1]));
    };
    for (int k : {0, 1, 2}) {
      const auto section = [k](const auto& q) {
        using std::cos;
        using std::exp;
        return cos(2.0 * q[0]) * (1.0 + 0.3 * cos(q[2] - q[1])) * exp(cplx(0, k) * q[1]);
      };
      const auto r = covariant_derivative_check(bent, k, section, std::span(pts), basic);
      rep.add(abs_check(detail::format("hopf/covariant/k%d/function", k), r.function_residual, 0.0, 1e-8 * s));
      rep.add(abs_check(detail::format("hopf/covariant/k%d/one_form", k), r.one_form_residual, 0.0, 1e-8 * s));
      rep.add(abs_check(detail::format("hopf/covariant/k%d/leibniz", k), r.leibniz_residual, 0.0, 1e-8 * s));
      covariant = std::max({covariant, r.function_residual, r.one_form_residual, r.leibniz_residual});
    }

    const auto prod = diagonal_circle_action(product_s2xs2());
    for (double c : {0.5, -0.7}) {
      const auto l = level_circle(prod, c);
      rep.add(abs_check(detail::format("level_circle/c%+.1f/chern_number", c), chern_number(l.bundle()),
                        c > 0 ? 1.0 : -1.0, 1e-9 * s));
      rep.add(abs_check(detail::format("level_circle/c%+.1f/reduced_volume", c), reduced_volume(l),
                        2.0 * std::numbers::pi * (2.0 - std::abs(c)), 1e-9 * s));
    }

    double main_residual = 0.0;
    nlohmann::json main = nlohmann::json::array();
    const auto record = [&](const std::string& name, const MainTheoremReport& r) {
      rep.add(abs_check("main_theorem/" + name, r.chern_weil, r.theta0, 1e-6 * s));
      main_residual = std::max(main_residual, r.residual);
      main.push_back({{"case", name}, {"space", r.space}, {"c", r.c}, {"theta0", detail::to_json(r.theta0)},
                      {"chern_weil", detail::to_json(r.chern_weil)}, {"residual", r.residual}});
    };
    const auto s2 = circle_action(sphere2());
    const TestFunction gauss{1.0, {1.0}};
    record("s2/alpha_one", main_theorem_check(s2, 0.0, gauss, {AlphaKind::One}));
    record("s2/alpha_exp_i_sigma", main_theorem_check(s2, 0.0, gauss, {AlphaKind::ExpISigma}));
    record("s2xs2/alpha_exp_i_sigma", main_theorem_check(prod, 0.5, {1.0, {1.0, 0.3}}, {AlphaKind::ExpISigma}));
    record("s2xs2/alpha_sigma_g", main_theorem_check(prod, 0.5, {1.0, {1.0, 0.3}}, {AlphaKind::SigmaG}));

    rep.data = {{"chern_number", chern},
                {"class_independence_residual", independence},
                {"covariant_residual", covariant},
                {"main_theorem_residual", main_residual},
                {"main_theorem", main}};
    rep.environment = {{"seed", cfg.seed}, {"perturbation", cfg.perturbation}, {"samples", cfg.samples}};
  });
}

struct AllConfig {
  std::uint64_t seed = kDefaultSeed;
  Tolerances tol;
};

inline VerificationReport all(const AllConfig& cfg = {}) {
  std::vector<VerificationReport> parts;
  for (Family f : {Family::A1, Family::A2, Family::B2, Family::G2}) {
    auto r = roots(f);
    r.suite = "roots-" + std::string(to_string(f));
    parts.push_back(std::move(r));
  }
  parts.push_back(orbit_ft({100000, cfg.seed, cfg.tol}));
  parts.push_back(kirillov_check({{Group::SU2, Group::SU3}, 3, 50, cfg.seed, cfg.tol}));
  DhConfig dh;
  dh.seed = cfg.seed;
  dh.tol = cfg.tol;
  parts.push_back(dh_check_suite(dh));
  WittenConfig w;
  w.seed = cfg.seed;
  w.tol = cfg.tol;
  parts.push_back(witten_check(w));
  ChernWeilConfig cw;
  cw.seed = cfg.seed;
  cw.tol = cfg.tol;
  parts.push_back(chern_weil_check(cw));
  auto out = merge_reports("all", parts);
  out.environment = {{"seed", cfg.seed}, {"tolerance_scale", cfg.tol.scale}, {"mc_k", cfg.tol.mc_k}};
  return out;
}

}  // namespace orbital_loc::suites
