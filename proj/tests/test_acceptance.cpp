// Acceptance criteria: one PASS/FAIL line each, exit status 1 if any fails.
//
//   test_acceptance [path-to-cli]
//
// With a CLI path the determinism criterion runs the binary twice and
// compares the report files byte for byte; without one it compares two
// in-process runs of the `all` suite.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>

#include "orbital_loc/suites.hpp"

using namespace orbital_loc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("raised ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = limit_s <= 0 || dt < limit_s;
  const bool ok = o.pass && in_time;
  if (!ok) ++failures;
  std::printf("[%s] %d. %s: %s; %.2f s", ok ? "PASS" : "FAIL", id, title, o.detail.c_str(), dt);
  if (limit_s > 0) std::printf(" (limit %.0f s%s)", limit_s, in_time ? "" : ", exceeded");
  std::printf("\n");
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t seed = suites::kDefaultSeed;

  criterion(1, "Kirillov identity, SU(2) and SU(3), weights <= 3, 50 X each", 10.0, [&] {
    std::mt19937_64 rng(seed);
    double worst = 0;
    long n = 0;
    for (Group g : {Group::SU2, Group::SU3}) {
      const auto rs = root_system_of(g);
      for (const auto& labels : suites::detail::dominant_labels(rs.rank, 3)) {
        const auto hw = HighestWeight::from_dynkin(rs, labels);
        for (int k = 0; k < 50; ++k) {
          const CartanElement x{suites::detail::random_regular(rs, rng)};
          worst = std::max(worst, std::abs(kirillov_lhs(rs, hw, x) - harish_chandra_ft(rs, {hw.shifted}, x).value));
          ++n;
        }
      }
    }
    return Outcome{worst < 1e-8, fmt("%.0f identities, max |err| = %.3e (tol 1e-8)", double(n), worst)};
  });

  criterion(2, "orbit Fourier transform: SU(2) quadrature and SU(3) Haar MC", 60.0, [&] {
    const auto rep = suites::orbit_ft({100000, seed, {}});
    double su2 = 0, su3 = 0;
    for (const auto& r : rep.records) {
      if (r.name.rfind("su2/", 0) == 0) su2 = std::max(su2, r.rel_err);
      if (r.name.rfind("su3/", 0) == 0) su3 = std::max(su3, r.abs_err / (r.tolerance / 3.0));
    }
    return Outcome{rep.pass(), fmt("SU(2) max rel err %.3e (tol 1e-6), SU(3) max |err|/stderr %.2f (tol 3)", su2, su3) +
                                   (rep.error.empty() ? "" : "; " + rep.error)};
  });

  criterion(3, "J-factor double route, 100 X per algebra", 1.0, [&] {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    double worst = 0;
    for (Group g : {Group::SU2, Group::SU3}) {
      const MatrixAlgebra alg(g);
      const auto rs = root_system_of(g);
      for (int k = 0; k < 100; ++k) {
        Vec c(alg.dim());
        for (int i = 0; i < alg.dim(); ++i) c(i) = nd(rng);
        const CMat x = alg.from_coords(c);
        const double jh = j_half(rs, {alg.conjugate_to_cartan(x)});
        worst = std::max(worst, std::abs(jh * jh - j_factor_matrix(alg, x)));
      }
    }
    return Outcome{worst < 1e-10, fmt("max |j_half^2 - J| = %.3e (tol 1e-10)", worst)};
  });

  criterion(4, "Cartan model: d_g^2, Stokes, Archimedes, Duistermaat-Heckman", 30.0, [&] {
    suites::DhConfig cfg;
    cfg.seed = seed;
    const auto rep = suites::dh_check_suite(cfg);
    double dg = 0, stokes = 0, arch = 0, dh = 0;
    for (const auto& r : rep.records) {
      if (r.name.rfind("dg_squared/", 0) == 0) dg = std::max(dg, r.abs_err);
      if (r.name.rfind("stokes/", 0) == 0) stokes = std::max(stokes, r.abs_err);
      if (r.name.rfind("archimedes/", 0) == 0) arch = std::max(arch, r.rel_err);
      if (r.name.rfind("dh/s2/", 0) == 0) dh = std::max(dh, r.rel_err);
    }
    std::ostringstream s;
    s.precision(3);
    s << std::scientific << "d_g^2 " << dg << " (1e-8), Stokes " << stokes << " (1e-7), Archimedes " << arch
      << " (1e-2), DH " << dh << " (1e-6)";
    if (!rep.error.empty()) s << "; " << rep.error;
    return Outcome{rep.pass(), s.str()};
  });

  criterion(5, "main theorem on S^2 at c = 0: reduced, Kirillov, t-limit, Witten", 300.0, [&] {
    const auto a = circle_action(sphere2());
    const auto level = make_level(a, 0.0);
    const TestFunction phi{1.0, {1.0}};
    double kir = 0, tlim = 0, zrel = 0, add = 0, decay = 1e300;
    bool ok = true;
    for (auto kind : {AlphaKind::One, AlphaKind::ExpISigma}) {
      const CatalogAlpha alpha{kind};
      const cplx red = theta0_reduced(a, level, phi, alpha);
      const cplx k = theta0_kirillov(a, level, phi, alpha);
      const auto lim = theta_limit(a, level, phi, alpha, {10, 20, 40});
      const auto w = witten_ladder(a, level, {0.5, 0.25, 0.125, 0.0625}, alpha);
      kir = std::max(kir, std::abs(red - k));
      tlim = std::max({tlim, std::abs(lim.limit - red), std::abs(lim.limit - k)});
      zrel = std::max({zrel, std::abs(w.fit.limit - red) / std::abs(red), std::abs(w.fit.limit - k) / std::abs(k)});
      decay = std::min(decay, w.decay_rate - (0.5 * level.r - 0.1));
      ok = ok && lim.converged;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> tt(0, 8), ss(0.5, 1.5), cc(-0.5, 0.5);
    for (int k = 0; k < 10; ++k) {
      const double t = tt(rng);
      const TestFunction f{ss(rng), {1.0, cc(rng), cc(rng)}};
      const CatalogAlpha alpha{k % 2 ? AlphaKind::ExpISigma : AlphaKind::One};
      const cplx all = theta_t(a, level, Region::All, t, f, alpha);
      const cplx sum = theta_t(a, level, Region::Inner, t, f, alpha) + theta_t(a, level, Region::Outer, t, f, alpha);
      add = std::max(add, std::abs(all - sum));
    }
    ok = ok && kir < 1e-6 && tlim < 1e-4 && zrel < 1e-3 && add < 1e-9 && decay >= 0;
    std::ostringstream s;
    s.precision(3);
    s << std::scientific << "reduced vs Kirillov " << kir << " (1e-6), t-limit " << tlim << " (1e-4), Z(eps) rel "
      << zrel << " (1e-3), additivity " << add << " (1e-9), decay margin over r/2 - 0.1 " << decay << " (>= 0)";
    return Outcome{ok, s.str()};
  });

  criterion(6, "Jeffrey-Kirwan window, 10 xi on S^2 and on S^2 x S^2", 120.0, [&] {
    std::vector<double> xs, xp;
    for (int k = 0; k < 10; ++k) {
      xs.push_back(-0.75 + 1.5 * k / 9);
      xp.push_back(0.2 + 1.6 * k / 9);
    }
    double worst = 0;
    for (const auto& r : jeffrey_kirwan_ft(circle_action(sphere2()), xs, {AlphaKind::ExpISigma}))
      worst = std::max(worst, r.rel_err);
    for (const auto& r : jeffrey_kirwan_ft(diagonal_circle_action(product_s2xs2()), xp, {AlphaKind::ExpISigma}))
      worst = std::max(worst, r.rel_err);
    return Outcome{worst < 1e-3, fmt("max rel err %.3e (tol 1e-3)", worst)};
  });

  criterion(7, "Chern-Weil: Hopf number, class independence, hdh, main theorem", 30.0, [&] {
    suites::ChernWeilConfig cfg;
    cfg.seed = seed;
    const auto rep = suites::chern_weil_check(cfg);
    std::ostringstream s;
    s.precision(3);
    if (!rep.error.empty()) return Outcome{false, rep.error};
    s << "Chern number " << rep.data["chern_number"].get<double>() << std::scientific << ", class independence "
      << rep.data["class_independence_residual"].get<double>() << " (1e-8), hdh vs nabla "
      << rep.data["covariant_residual"].get<double>() << " (1e-8), main theorem "
      << rep.data["main_theorem_residual"].get<double>() << " (1e-6)";
    return Outcome{rep.pass(), s.str()};
  });

  criterion(8, "determinism of two consecutive `all` runs", 0.0, [&] {
    std::string a, b;
    if (argc > 1) {
      const std::string cli = argv[1];
      const std::string base = "acceptance_all_";
      for (int k : {1, 2}) {
        const std::string cmd = "\"" + cli + "\" all --output " + base + std::to_string(k) + ".json";
        if (std::system(cmd.c_str()) != 0) return Outcome{false, "`all` did not pass: " + cmd};
      }
      a = read_file(base + "1.json");
      b = read_file(base + "2.json");
    } else {
      a = suites::all({seed, {}}).to_json().dump(2);
      b = suites::all({seed, {}}).to_json().dump(2);
    }
    return Outcome{!a.empty() && a == b, a == b ? "byte-identical reports (" + std::to_string(a.size()) + " bytes)"
                                                : std::string("reports differ")};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
