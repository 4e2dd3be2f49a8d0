// Command-line front end for the verification suites.
//
//   orbital_loc <subcommand> [flags] [--format json|csv] [--output PATH]
//
// Exit status: 0 when every check passes, 1 when a check fails or a suite
// raises, 2 on bad usage.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "orbital_loc/suites.hpp"

namespace {

using namespace orbital_loc;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ORBITAL_LOC_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used, 0);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw CLI::ValidationError("ORBITAL_LOC_SEED", "not an unsigned integer: " + std::string(env));
  }
  return suites::kDefaultSeed;
}

Vec to_vec(const std::vector<double>& v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

int emit(const VerificationReport& rep, const std::string& format, const std::string& path) {
  const std::string text = format == "csv" ? rep.to_csv() : rep.to_json().dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << path << "\n";
      return 1;
    }
    out << text;
  }
  if (!rep.error.empty()) std::cerr << rep.suite << ": " << rep.error << "\n";
  return rep.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks of orbit-method and localization identities"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  std::string output;
  std::optional<std::uint64_t> seed_flag;
  suites::Tolerances tol;
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output,-o", output, "report path (stdout when omitted)");
  app.add_option("--seed", seed_flag, "RNG seed (default: $ORBITAL_LOC_SEED or a fixed constant)");
  app.add_option("--tol-scale", tol.scale, "factor applied to deterministic tolerances")->check(CLI::PositiveNumber);
  app.add_option("--mc-k", tol.mc_k, "Monte Carlo acceptance in standard errors")->check(CLI::PositiveNumber);

  auto* roots = app.add_subcommand("roots", "root system, Weyl group and rho");
  std::string family = "a2";
  roots->add_option("--family", family, "a1, a2, b2 or g2")->check(CLI::IsMember({"a1", "a2", "b2", "g2"}, CLI::ignore_case));

  auto* character = app.add_subcommand("character", "Weyl character and the Kirillov residual at one point");
  std::string char_group = "su2";
  std::vector<double> labels{1};
  std::vector<double> point{0.7};
  character->add_option("--group", char_group)->check(CLI::IsMember({"su2", "su3"}, CLI::ignore_case));
  character->add_option("--highest-weight", labels, "Dynkin labels")->delimiter(',');
  character->add_option("--point", point, "Cartan coordinates of X")->delimiter(',');

  auto* orbit = app.add_subcommand("orbit-ft", "orbit Fourier transforms: closed form against quadrature");
  std::int64_t mc_samples = 100000;
  orbit->add_option("--samples", mc_samples, "Haar samples for SU(3)")->check(CLI::PositiveNumber);

  auto* kirillov = app.add_subcommand("kirillov-check", "character formula against orbit transforms");
  std::vector<std::string> kir_groups{"su2", "su3"};
  suites::KirillovConfig kcfg;
  kirillov->add_option("--group", kir_groups, "su2 and/or su3")
      ->delimiter(',')
      ->check(CLI::IsMember({"su2", "su3"}, CLI::ignore_case));
  kirillov->add_option("--max-weight", kcfg.max_weight)->check(CLI::NonNegativeNumber);
  kirillov->add_option("--points", kcfg.points, "random regular X per weight")->check(CLI::PositiveNumber);

  auto* dh = app.add_subcommand("dh-check", "Cartan model, Stokes, Archimedes and Duistermaat-Heckman");
  suites::DhConfig dcfg;
  dh->add_option("--samples", dcfg.samples)->check(CLI::PositiveNumber);

  auto* witten = app.add_subcommand("witten-check", "reduction, deformation limits and Witten's integral");
  suites::WittenConfig wcfg;
  witten->add_option("--level", wcfg.level, "moment level c");
  witten->add_option("--eps-ladder", wcfg.eps_ladder)->delimiter(',');
  witten->add_option("--t-ladder", wcfg.t_ladder)->delimiter(',');
  witten->add_option("--phi-scale", wcfg.phi_scale)->check(CLI::PositiveNumber);
  witten->add_option("--jk-points", wcfg.jk_points)->check(CLI::Range(2, 200));
  witten->add_option("--seed", seed_flag, "RNG seed");

  auto* cw = app.add_subcommand("chern-weil-check", "curvature, Chern-Weil forms and the reduced integral");
  suites::ChernWeilConfig ccfg;
  cw->add_option("--perturbation", ccfg.perturbation, "amplitude of the basic shift of the Hopf connection");

  auto* all = app.add_subcommand("all", "every suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::uint64_t seed = 0;
  try {
    seed = seed_flag ? *seed_flag : default_seed();
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  VerificationReport rep;
  try {
    if (*roots) {
      rep = suites::roots(parse_family(family));
    } else if (*character) {
      rep = suites::character(parse_group(char_group), labels, to_vec(point), tol);
    } else if (*orbit) {
      rep = suites::orbit_ft({mc_samples, seed, tol});
    } else if (*kirillov) {
      kcfg.groups.clear();
      for (const auto& g : kir_groups) kcfg.groups.push_back(parse_group(g));
      kcfg.seed = seed;
      kcfg.tol = tol;
      rep = suites::kirillov_check(kcfg);
    } else if (*dh) {
      dcfg.seed = seed;
      dcfg.tol = tol;
      rep = suites::dh_check_suite(dcfg);
    } else if (*witten) {
      wcfg.seed = seed;
      wcfg.tol = tol;
      rep = suites::witten_check(wcfg);
    } else if (*cw) {
      ccfg.seed = seed;
      ccfg.tol = tol;
      rep = suites::chern_weil_check(ccfg);
    } else if (*all) {
      rep = suites::all({seed, tol});
    }
  } catch (const Error& e) {
    // errors raised while interpreting flags
    std::cerr << e.what() << "\n";
    return 2;
  }
  return emit(rep, format, output);
}
