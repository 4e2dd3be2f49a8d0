#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "orbital_loc/characters.hpp"
#include "orbital_loc/orbits.hpp"
#include "test_helpers.hpp"

using namespace orbital_loc;
using orbital_loc::testing::random_regular;
using orbital_loc::testing::random_vec;

namespace {

constexpr double kPi = std::numbers::pi;

// su(2): X = theta diag(i,-i) has orthonormal Cartan coordinate sqrt(2) theta.
CartanElement su2_point(double theta) { return {Vec::Constant(1, std::sqrt(2.0) * theta)}; }

// Character oracle for su(2): trace of exp of the spin-m/2 weight matrix,
// diag(m, m-2, ..., -m) * i theta.
cplx su2_spin_trace(int m, double theta) {
  CMat x = CMat::Zero(m + 1, m + 1);
  for (int k = 0; k <= m; ++k) x(k, k) = cplx(0, (m - 2 * k) * theta);
  return expm_anti_hermitian(x).trace();
}

}  // namespace

TEST(WeylCharacter, Su2FundamentalAtPiOverThree) {
  const auto rs = build_root_system(Family::A1);
  const auto hw = HighestWeight::from_dynkin(rs, {1});
  // trace of diag(e^{i pi/3}, e^{-i pi/3}) = 2 cos(pi/3)
  EXPECT_NEAR(std::abs(weyl_character(rs, hw, su2_point(kPi / 3)).value - 1.0), 0.0, 1e-12);
}

TEST(WeylCharacter, TrivialRepresentationIsOne) {
  std::mt19937_64 rng(1);
  for (auto f : {Family::A1, Family::A2, Family::B2, Family::G2}) {
    const auto rs = build_root_system(f);
    const auto hw = HighestWeight::from_dynkin(rs, std::vector<double>(rs.rank, 0.0));
    for (int k = 0; k < 10; ++k)
      EXPECT_NEAR(std::abs(weyl_character(rs, hw, {random_regular(rs, rng)}).value - 1.0), 0.0, 1e-10);
  }
}

TEST(WeylCharacter, Su2MatchesSpinMatrices) {
  const auto rs = build_root_system(Family::A1);
  for (int m = 0; m <= 6; ++m)
    for (double theta : {0.3, 1.1, 2.9}) {
      const auto hw = HighestWeight::from_dynkin(rs, {double(m)});
      EXPECT_NEAR(std::abs(weyl_character(rs, hw, su2_point(theta)).value - su2_spin_trace(m, theta)), 0.0, 1e-10);
    }
}

TEST(WeylCharacter, Su3FundamentalMatchesMatrixExponential) {
  const auto rs = build_root_system(Family::A2);
  const MatrixAlgebra su3(Group::SU3);
  const auto hw = HighestWeight::from_dynkin(rs, {1, 0});
  std::mt19937_64 rng(2);
  for (int k = 0; k < 50; ++k) {
    const Vec h = random_regular(rs, rng, 1.5);
    const cplx oracle = expm_anti_hermitian(su3.from_cartan(h)).trace();
    EXPECT_NEAR(std::abs(weyl_character(rs, hw, {h}).value - oracle), 0.0, 1e-10);
  }
}

TEST(WeylCharacter, Su3AdjointMatchesAdRepresentation) {
  const auto rs = build_root_system(Family::A2);
  const MatrixAlgebra su3(Group::SU3);
  const auto hw = HighestWeight::from_dynkin(rs, {1, 1});
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const Vec h = random_regular(rs, rng);
    const Eigen::EigenSolver<Mat> es(su3.ad_matrix(su3.from_cartan(h)));
    cplx tr = 0;
    for (int i = 0; i < 8; ++i) tr += std::exp(es.eigenvalues()(i));
    EXPECT_NEAR(std::abs(weyl_character(rs, hw, {h}).value - tr), 0.0, 1e-10);
  }
}

TEST(WeylCharacter, NonRegularPointThrows) {
  const auto rs = build_root_system(Family::A2);
  const auto hw = HighestWeight::from_dynkin(rs, {1, 0});
  try {
    weyl_character(rs, hw, {rs.fundamental_weights()[0]});  // orthogonal to alpha_2
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonRegularPoint);
  }
}

TEST(WeylCharacter, WeylInvariantAndConjugateSymmetric) {
  std::mt19937_64 rng(4);
  for (auto f : {Family::A1, Family::A2, Family::B2, Family::G2}) {
    const auto rs = build_root_system(f);
    const auto hw = HighestWeight::from_dynkin(rs, std::vector<double>(rs.rank, 1.0));
    for (int k = 0; k < 10; ++k) {
      const Vec x = random_regular(rs, rng, 1.0, 0.05);
      const cplx v = weyl_character(rs, hw, {x}).value;
      const double tol = 1e-10 * (1.0 + std::abs(v));
      for (const auto& w : rs.weyl_elements)
        EXPECT_NEAR(std::abs(weyl_character(rs, hw, {w.matrix * x}).value - v), 0.0, tol);
      EXPECT_NEAR(std::abs(weyl_character(rs, hw, {-x}).value - std::conj(v)), 0.0, tol);
    }
  }
}

TEST(WeylCharacter, SelfConjugateRepresentationsAreReal) {
  std::mt19937_64 rng(5);
  const std::pair<Family, std::vector<double>> cases[] = {
      {Family::A1, {3}}, {Family::A2, {2, 2}}, {Family::B2, {1, 2}}, {Family::G2, {1, 1}}};
  for (const auto& [f, labels] : cases) {
    const auto rs = build_root_system(f);
    const auto hw = HighestWeight::from_dynkin(rs, labels);
    for (int k = 0; k < 10; ++k)
      EXPECT_LT(std::abs(weyl_character(rs, hw, {random_regular(rs, rng)}).value.imag()), 1e-9);
  }
}

TEST(WeylDimension, KnownValues) {
  const auto a1 = build_root_system(Family::A1);
  for (int m = 0; m <= 8; ++m) EXPECT_EQ(weyl_dimension(a1, HighestWeight::from_dynkin(a1, {double(m)})), m + 1);
  const auto a2 = build_root_system(Family::A2);
  EXPECT_EQ(weyl_dimension(a2, HighestWeight::from_dynkin(a2, {1, 1})), 8);
  EXPECT_EQ(weyl_dimension(a2, HighestWeight::from_dynkin(a2, {0, 0})), 1);
  EXPECT_EQ(weyl_dimension(a2, HighestWeight::from_dynkin(a2, {3, 0})), 10);
}

TEST(WeylDimension, AgreesWithProductFormula) {
  for (auto f : {Family::B2, Family::G2}) {
    const auto rs = build_root_system(f);
    for (double a = 0; a <= 2; ++a)
      for (double b = 0; b <= 2; ++b) {
        const auto hw = HighestWeight::from_dynkin(rs, {a, b});
        EXPECT_EQ(weyl_dimension(rs, hw), std::lround(weyl_dimension_product(rs, hw)));
      }
  }
  // B2 (1,0) is the 5-dim vector or 4-dim spin depending on the labelling;
  // fundamental dimensions are {4, 5} and G2 fundamentals are {7, 14}.
  const auto b2 = build_root_system(Family::B2);
  const long d1 = weyl_dimension(b2, HighestWeight::from_dynkin(b2, {1, 0}));
  const long d2 = weyl_dimension(b2, HighestWeight::from_dynkin(b2, {0, 1}));
  EXPECT_EQ(std::min(d1, d2), 4);
  EXPECT_EQ(std::max(d1, d2), 5);
  const auto g2 = build_root_system(Family::G2);
  const long e1 = weyl_dimension(g2, HighestWeight::from_dynkin(g2, {1, 0}));
  const long e2 = weyl_dimension(g2, HighestWeight::from_dynkin(g2, {0, 1}));
  EXPECT_EQ(std::min(e1, e2), 7);
  EXPECT_EQ(std::max(e1, e2), 14);
}

TEST(HighestWeight, RejectsNegativeOrFractionalLabels) {
  const auto rs = build_root_system(Family::A2);
  EXPECT_THROW(HighestWeight::from_dynkin(rs, {-1, 0}), Error);
  EXPECT_THROW(HighestWeight::from_dynkin(rs, {0.5, 0}), Error);
}

TEST(JHalf, ZeroAndSu2) {
  const auto rs = build_root_system(Family::A1);
  EXPECT_EQ(j_half(rs, {Vec::Zero(1)}), 1.0);
  for (double theta : {0.1, 0.7, 2.0, 3.0})
    EXPECT_NEAR(j_half(rs, su2_point(theta)), std::sin(theta) / theta, 1e-14);
}

TEST(JFactorMatrix, ZeroAndSu2) {
  const MatrixAlgebra su2(Group::SU2);
  EXPECT_EQ(j_factor_matrix(su2, CMat::Zero(2, 2)), 1.0);
  for (double theta : {0.1, 0.7, 2.0}) {
    CMat x = CMat::Zero(2, 2);
    x(0, 0) = {0, theta};
    x(1, 1) = {0, -theta};
    const double s = std::sin(theta) / theta;
    EXPECT_NEAR(j_factor_matrix(su2, x), s * s, 1e-13);
  }
}

TEST(JFactorMatrix, TwoRoutesAgree) {
  std::mt19937_64 rng(6);
  for (auto g : {Group::SU2, Group::SU3}) {
    const MatrixAlgebra alg(g);
    const auto rs = build_root_system(*family_of(g));
    for (int k = 0; k < 100; ++k) {
      const CMat x = alg.from_coords(random_vec(rng, alg.dim()));
      const double jh = j_half(rs, {alg.conjugate_to_cartan(x)});
      EXPECT_NEAR(jh * jh, j_factor_matrix(alg, x), 1e-10);
    }
  }
  const MatrixAlgebra u1(Group::U1);
  EXPECT_EQ(j_factor_matrix(u1, CMat::Constant(1, 1, cplx(0, 0.4))), 1.0);
}

TEST(KirillovLhs, Su2TrivialAndFundamental) {
  const auto rs = build_root_system(Family::A1);
  for (double theta : {0.4, 1.3})
    EXPECT_NEAR(std::abs(kirillov_lhs(rs, HighestWeight::from_dynkin(rs, {0}), su2_point(theta)) -
                         std::sin(theta) / theta),
                0.0, 1e-14);
  const auto hw = HighestWeight::from_dynkin(rs, {1});
  const auto x = su2_point(kPi / 2);
  EXPECT_NEAR(std::abs(kirillov_lhs(rs, hw, x) - harish_chandra_ft(rs, {hw.shifted}, x).value), 0.0, 1e-9);
}

TEST(KirillovLhs, Su3MatchesOrbitTransform) {
  const auto rs = build_root_system(Family::A2);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> lab(0, 2);
  for (int k = 0; k < 50; ++k) {
    const auto hw = HighestWeight::from_dynkin(rs, {double(lab(rng)), double(lab(rng))});
    const Vec x = random_regular(rs, rng);
    EXPECT_NEAR(std::abs(kirillov_lhs(rs, hw, {x}) - harish_chandra_ft(rs, {hw.shifted}, {x}).value), 0.0, 1e-8);
  }
}
