#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "orbital_loc/lie_core.hpp"
#include "test_helpers.hpp"

using namespace orbital_loc;
using orbital_loc::testing::multiset_distance;
using orbital_loc::testing::random_vec;

namespace {

// Oracle for the root count: the Weyl-orbit of the simple roots under the
// reflection group generated by them (independent of the string closure).
std::vector<Vec> roots_by_reflection_orbit(const std::vector<Vec>& simple) {
  std::vector<Vec> roots = simple;
  bool grew = true;
  while (grew) {
    grew = false;
    const auto snapshot = roots;
    for (const auto& a : simple) {
      const Vec ac = 2.0 * a / a.squaredNorm();
      for (const auto& b : snapshot) {
        const Vec r = b - b.dot(ac) * a;
        if (!detail::contains(roots, r)) {
          roots.push_back(r);
          grew = true;
        }
      }
    }
  }
  return roots;
}

const Family kFamilies[] = {Family::A1, Family::A2, Family::B2, Family::G2};

}  // namespace

TEST(RootSystem, A1HasOnePositiveRootAndHalfRho) {
  const auto rs = build_root_system(Family::A1, 1);
  ASSERT_EQ(rs.positive_roots.size(), 1u);
  EXPECT_NEAR((rs.rho - 0.5 * rs.simple_roots[0]).norm(), 0.0, 1e-15);
}

TEST(RootSystem, PositiveRootCountsMatchReflectionOrbit) {
  const std::pair<Family, std::size_t> expected[] = {
      {Family::A1, 1}, {Family::A2, 3}, {Family::B2, 4}, {Family::G2, 6}};
  for (auto [f, n] : expected) {
    const auto rs = build_root_system(f);
    EXPECT_EQ(rs.positive_roots.size(), n) << to_string(f);
    EXPECT_EQ(roots_by_reflection_orbit(rs.simple_roots).size(), 2 * n) << to_string(f);
  }
}

TEST(RootSystem, InvariantsHold) {
  for (auto f : kFamilies) {
    const auto rs = build_root_system(f);
    // Delta = P u -P, disjoint
    for (const auto& a : rs.positive_roots) EXPECT_FALSE(detail::contains(rs.positive_roots, -a));
    EXPECT_EQ(rs.all_roots.size(), 2 * rs.positive_roots.size());
    Vec sum = Vec::Zero(rs.rank);
    for (const auto& a : rs.positive_roots) sum += a;
    EXPECT_NEAR((rs.rho - 0.5 * sum).norm(), 0.0, 1e-15);
    // integer coefficients on simple roots, all of one sign
    Mat S(rs.rank, rs.rank);
    for (int i = 0; i < rs.rank; ++i) S.col(i) = rs.simple_roots[i];
    for (const auto& a : rs.all_roots) {
      const Vec c = S.colPivHouseholderQr().solve(a);
      bool nonneg = true, nonpos = true;
      for (int i = 0; i < rs.rank; ++i) {
        EXPECT_NEAR(c(i), std::round(c(i)), 1e-9);
        nonneg = nonneg && c(i) > -1e-9;
        nonpos = nonpos && c(i) < 1e-9;
      }
      EXPECT_TRUE(nonneg || nonpos);
    }
  }
}

TEST(RootSystem, RejectsBadRankAndFamily) {
  try {
    build_root_system(Family::A2, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnsupportedFamily);
  }
  try {
    parse_family("e8");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnsupportedFamily);
  }
}

TEST(WeylGroup, Sizes) {
  // |W| equals the number of Weyl chambers: count distinct images of a
  // generic vector.
  const std::pair<Family, std::size_t> expected[] = {
      {Family::A1, 2}, {Family::A2, 6}, {Family::B2, 8}, {Family::G2, 12}};
  for (auto [f, n] : expected) {
    const auto rs = build_root_system(f);
    EXPECT_EQ(rs.weyl_elements.size(), n);
    Vec generic = Vec::LinSpaced(rs.rank, 0.3141, 0.2718 + rs.rank);
    std::vector<Vec> images;
    for (const auto& w : rs.weyl_elements)
      if (!detail::contains(images, w.matrix * generic)) images.push_back(w.matrix * generic);
    EXPECT_EQ(images.size(), n);
  }
}

TEST(WeylGroup, ElementsAreOrthogonalClosedAndPermuteRoots) {
  for (auto f : kFamilies) {
    const auto rs = build_root_system(f);
    const auto& W = rs.weyl_elements;
    EXPECT_TRUE(W.front().word.empty());
    EXPECT_EQ(W.front().sign, 1);
    for (const auto& w : W) {
      EXPECT_NEAR((w.matrix.transpose() * w.matrix - Mat::Identity(rs.rank, rs.rank)).norm(), 0.0, 1e-12);
      EXPECT_NEAR(w.matrix.determinant(), w.sign, 1e-12);
      for (const auto& a : rs.all_roots) EXPECT_TRUE(detail::contains(rs.all_roots, w.matrix * a));
      for (const auto& v : W) {
        const Mat m = w.matrix * v.matrix;
        EXPECT_TRUE(std::any_of(W.begin(), W.end(), [&](const WeylElement& u) { return (u.matrix - m).norm() < 1e-9; }));
      }
    }
    // canonical ordering
    for (std::size_t i = 1; i < W.size(); ++i) {
      const auto& p = W[i - 1].word;
      const auto& q = W[i].word;
      EXPECT_TRUE(p.size() < q.size() || (p.size() == q.size() && p < q));
    }
  }
}

TEST(WeylGroup, SignSumVanishes) {
  for (auto f : kFamilies) {
    int s = 0;
    for (const auto& w : build_root_system(f).weyl_elements) s += w.sign;
    EXPECT_EQ(s, 0) << to_string(f);
  }
}

TEST(WeylGroup, PreservesPairing) {
  std::mt19937_64 rng(11);
  for (auto f : kFamilies) {
    const auto rs = build_root_system(f);
    for (int k = 0; k < 20; ++k) {
      const Vec l = random_vec(rng, rs.rank), x = random_vec(rng, rs.rank);
      for (const auto& w : rs.weyl_elements)
        EXPECT_NEAR(pairing({w.matrix * l}, {w.matrix * x}), pairing({l}, {x}), 1e-12);
    }
  }
}

TEST(Pairing, TrivialCasesAndNormalization) {
  const auto rs = build_root_system(Family::A1);
  const Vec x = Vec::Constant(1, 0.7);
  EXPECT_EQ(pairing({Vec::Zero(1)}, {x}), 0.0);
  EXPECT_EQ(pairing({rs.simple_roots[0]}, {Vec::Zero(1)}), 0.0);
  // H_alpha = coroot; <alpha, H_alpha> = 2, and H_alpha is diag(i,-i) in su(2)
  const Vec h = RootSystem::coroot(rs.simple_roots[0]);
  EXPECT_NEAR(pairing({rs.simple_roots[0]}, {h}), 2.0, 1e-15);
  const MatrixAlgebra su2(Group::SU2);
  const CMat hm = su2.from_cartan(h);
  EXPECT_NEAR(std::abs(hm(0, 0) - std::complex<double>(0, 1)), 0.0, 1e-15);
  // eigenvalues of ad(H_alpha) are 0, +-2i
  const Eigen::EigenSolver<Mat> es(su2.ad_matrix(hm));
  std::vector<std::complex<double>> ev(es.eigenvalues().data(), es.eigenvalues().data() + 3);
  EXPECT_LT(multiset_distance(ev, {0.0, {0, 2}, {0, -2}}), 1e-12);
}

TEST(Pairing, RankMismatchThrows) {
  try {
    pairing({Vec::Zero(2)}, {Vec::Zero(1)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::RankMismatch);
  }
}

TEST(Stabilizer, ZeroRegularAndWall) {
  const auto rs = build_root_system(Family::A2);
  EXPECT_EQ(stabilizer_subgroup(rs, {Vec::Zero(2)}).size(), 6u);
  EXPECT_EQ(stabilizer_subgroup(rs, {rs.rho}).size(), 1u);
  // fundamental weight omega_1 lies on the wall fixed by s_2
  const auto fw = rs.fundamental_weights();
  const auto stab = stabilizer_subgroup(rs, {fw[0]});
  ASSERT_EQ(stab.size(), 2u);
  // direct check over all six elements
  int count = 0;
  for (const auto& w : rs.weyl_elements) count += (w.matrix * fw[0] - fw[0]).norm() < 1e-10;
  EXPECT_EQ(count, 2);
  for (const auto& a : stab)
    for (const auto& b : stab) {
      const Mat m = a.matrix * b.matrix;
      EXPECT_TRUE(std::any_of(stab.begin(), stab.end(), [&](const WeylElement& u) { return (u.matrix - m).norm() < 1e-9; }));
    }
}

TEST(MatrixAlgebra, BasesAreOrthonormalAntiHermitian) {
  for (auto g : {Group::U1, Group::SU2, Group::SU3}) {
    const MatrixAlgebra alg(g);
    EXPECT_EQ(alg.dim(), g == Group::U1 ? 1 : (g == Group::SU2 ? 3 : 8));
    for (int a = 0; a < alg.dim(); ++a) {
      const auto& A = alg.basis()[a];
      EXPECT_NEAR((A + A.adjoint()).norm(), 0.0, 1e-15);
      if (g != Group::U1) EXPECT_NEAR(std::abs(A.trace()), 0.0, 1e-15);
      for (int b = 0; b < alg.dim(); ++b)
        EXPECT_NEAR(MatrixAlgebra::inner(A, alg.basis()[b]), a == b ? 1.0 : 0.0, 1e-12);
    }
  }
}

TEST(AdMatrix, ZeroAndSkew) {
  std::mt19937_64 rng(3);
  for (auto g : {Group::U1, Group::SU2, Group::SU3}) {
    const MatrixAlgebra alg(g);
    EXPECT_EQ(alg.ad_matrix(CMat::Zero(alg.matrix_size(), alg.matrix_size())).norm(), 0.0);
    const Mat ad = alg.ad_matrix(alg.from_coords(random_vec(rng, alg.dim())));
    EXPECT_NEAR((ad + ad.transpose()).norm(), 0.0, 1e-12);
  }
}

TEST(AdMatrix, Su2CartanEigenvalues) {
  const MatrixAlgebra su2(Group::SU2);
  const double theta = 0.83;
  CMat x = CMat::Zero(2, 2);
  x(0, 0) = {0, theta};
  x(1, 1) = {0, -theta};
  const Eigen::EigenSolver<Mat> es(su2.ad_matrix(x));
  std::vector<std::complex<double>> ev(es.eigenvalues().data(), es.eigenvalues().data() + 3);
  EXPECT_LT(multiset_distance(ev, {0.0, {0, 2 * theta}, {0, -2 * theta}}), 1e-12);
}

TEST(AdMatrix, NotInAlgebra) {
  const MatrixAlgebra su3(Group::SU3);
  try {
    su3.ad_matrix(CMat::Identity(3, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotInAlgebra);
  }
  CMat traceful = CMat::Zero(3, 3);
  traceful(0, 0) = {0, 1};
  EXPECT_THROW(su3.ad_matrix(traceful), Error);
}

// Eigenvalues of ad X are {0 (rank times)} u {+-i <alpha, X_t>} after
// conjugating X into t.
TEST(AdMatrix, EigenvaluesMatchRootPairings) {
  std::mt19937_64 rng(5);
  for (auto g : {Group::SU2, Group::SU3}) {
    const MatrixAlgebra alg(g);
    const auto rs = build_root_system(*family_of(g));
    for (int k = 0; k < 100; ++k) {
      const CMat x = alg.from_coords(random_vec(rng, alg.dim()));
      const Vec h = alg.conjugate_to_cartan(x);
      std::vector<std::complex<double>> expected(alg.rank(), 0.0);
      for (const auto& a : rs.positive_roots) {
        expected.emplace_back(0, a.dot(h));
        expected.emplace_back(0, -a.dot(h));
      }
      const Eigen::EigenSolver<Mat> es(alg.ad_matrix(x));
      std::vector<std::complex<double>> ev(es.eigenvalues().data(), es.eigenvalues().data() + alg.dim());
      EXPECT_LT(multiset_distance(ev, expected), 1e-8);
    }
  }
}
