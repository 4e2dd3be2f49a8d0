#pragma once

// Root systems, Weyl groups and the matrix Lie algebras u(1), su(2), su(3).
//
// Conventions: the inner product on g is <A,B> = -tr(AB) and g* is
// identified with g through it. Cartan coordinates are taken with respect to
// an orthonormal basis of t, so the Euclidean dot product of coordinate
// vectors is the invariant inner product on both t and t*. Roots are stored
// as real covectors a with <alpha, X> = a . x; the compact-form value
// i a . x only appears inside exponentials.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "orbital_loc/errors.hpp"

namespace orbital_loc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

enum class Family { A1, A2, B2, G2 };

constexpr std::string_view to_string(Family f) {
  switch (f) {
    case Family::A1: return "A1";
    case Family::A2: return "A2";
    case Family::B2: return "B2";
    case Family::G2: return "G2";
  }
  return "?";
}

inline Family parse_family(std::string_view s) {
  std::string l(s);
  std::transform(l.begin(), l.end(), l.begin(), [](unsigned char c) { return std::tolower(c); });
  if (l == "a1") return Family::A1;
  if (l == "a2") return Family::A2;
  if (l == "b2") return Family::B2;
  if (l == "g2") return Family::G2;
  fail(Errc::UnsupportedFamily, "unknown root family '" + std::string(s) + "'");
}

inline int family_rank(Family f) { return f == Family::A1 ? 1 : 2; }

struct WeylElement {
  Mat matrix;
  int sign = 1;           // det(matrix)
  std::vector<int> word;  // simple-reflection indices, matrix = s_{w0} s_{w1} ...
};

/// Point of the real Cartan subalgebra in orthonormal coordinates.
struct CartanElement {
  Vec coords;
};

/// Element of t* (covector) in orthonormal coordinates.
struct Weight {
  Vec coords;
};

struct RootSystem {
  Family family{};
  int rank = 0;
  std::vector<Vec> simple_roots;
  std::vector<Vec> positive_roots;
  std::vector<Vec> all_roots;
  Vec rho;
  std::vector<WeylElement> weyl_elements;

  /// 2 alpha / (alpha, alpha)
  static Vec coroot(const Vec& alpha) { return 2.0 * alpha / alpha.squaredNorm(); }

  /// Fundamental weights: <omega_i, alpha_j^vee> = delta_ij.
  std::vector<Vec> fundamental_weights() const {
    Mat C(rank, rank);
    for (int j = 0; j < rank; ++j) C.row(j) = coroot(simple_roots[j]).transpose();
    const Mat inv = C.inverse();
    std::vector<Vec> out;
    for (int i = 0; i < rank; ++i) out.push_back(inv.col(i));
    return out;
  }

  /// Weight with the given Dynkin labels (coefficients on fundamental weights).
  Vec from_dynkin(const std::vector<double>& labels) const {
    if (static_cast<int>(labels.size()) != rank) fail(Errc::RankMismatch, "Dynkin label count");
    Vec v = Vec::Zero(rank);
    const auto fw = fundamental_weights();
    for (int i = 0; i < rank; ++i) v += labels[i] * fw[i];
    return v;
  }

  /// Dynkin labels <lambda, alpha_i^vee>.
  std::vector<double> dynkin_labels(const Vec& lambda) const {
    std::vector<double> out;
    for (const auto& a : simple_roots) out.push_back(lambda.dot(coroot(a)));
    return out;
  }

  bool in_weight_lattice(const Vec& lambda, double tol = 1e-9) const {
    for (double c : dynkin_labels(lambda))
      if (std::abs(c - std::round(c)) > tol) return false;
    return true;
  }

  bool is_dominant(const Vec& lambda, double tol = 1e-10) const {
    for (double c : dynkin_labels(lambda))
      if (c < -tol) return false;
    return true;
  }

  bool is_regular(const Vec& x, double tol = 1e-8) const {
    for (const auto& a : positive_roots)
      if (std::abs(a.dot(x)) <= tol) return false;
    return true;
  }
};

namespace detail {

inline std::vector<Vec> simple_roots_for(Family f) {
  const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0);
  switch (f) {
    case Family::A1: return {Vec::Constant(1, r2)};
    case Family::A2: return {(Vec(2) << r2, 0.0).finished(), (Vec(2) << -1.0 / r2, std::sqrt(1.5)).finished()};
    case Family::B2: return {(Vec(2) << 1.0, -1.0).finished(), (Vec(2) << 0.0, 1.0).finished()};
    case Family::G2: return {(Vec(2) << 1.0, 0.0).finished(), (Vec(2) << -1.5, r3 / 2.0).finished()};
  }
  fail(Errc::UnsupportedFamily, "unknown family");
}

inline bool contains(const std::vector<Vec>& set, const Vec& v, double tol = 1e-9) {
  return std::any_of(set.begin(), set.end(), [&](const Vec& u) { return (u - v).norm() < tol; });
}

inline Mat reflection(const Vec& alpha) {
  const auto n = alpha.size();
  return Mat::Identity(n, n) - alpha * RootSystem::coroot(alpha).transpose();
}

// Positive roots by alpha-string closure: beta + alpha_i is a root iff
// q >= 1 where q = p - <beta, alpha_i^vee> and p is the length of the
// downward string beta - k alpha_i.
inline std::vector<Vec> positive_roots_by_strings(const std::vector<Vec>& simple) {
  std::vector<Vec> pos = simple;
  std::vector<Vec> frontier = simple;
  while (!frontier.empty()) {
    std::vector<Vec> next;
    for (const auto& beta : frontier) {
      for (const auto& a : simple) {
        if ((beta - a).norm() < 1e-9) continue;
        int p = 0;
        while (contains(pos, beta - (p + 1) * a)) ++p;
        const double q = p - beta.dot(RootSystem::coroot(a));
        if (q >= 1.0 - 1e-9) {
          const Vec cand = beta + a;
          if (!contains(pos, cand)) {
            pos.push_back(cand);
            next.push_back(cand);
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return pos;
}

}  // namespace detail

/// Weyl group by breadth-first closure of the simple reflections; the
/// output is ordered by (word length, lexicographic word).
inline std::vector<WeylElement> weyl_group(const RootSystem& rs) {
  std::vector<Mat> gens;
  for (const auto& a : rs.simple_roots) gens.push_back(detail::reflection(a));
  std::vector<WeylElement> out;
  out.push_back({Mat::Identity(rs.rank, rs.rank), 1, {}});
  std::size_t head = 0;
  auto known = [&](const Mat& m) {
    return std::any_of(out.begin(), out.end(), [&](const WeylElement& w) { return (w.matrix - m).norm() < 1e-9; });
  };
  while (head < out.size()) {
    const WeylElement cur = out[head++];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Mat m = cur.matrix * gens[i];
      if (known(m)) continue;
      WeylElement w;
      w.matrix = m;
      w.sign = m.determinant() > 0 ? 1 : -1;
      w.word = cur.word;
      w.word.push_back(static_cast<int>(i));
      out.push_back(std::move(w));
    }
    if (out.size() > 10000) fail(Errc::UnsupportedFamily, "Weyl group closure did not terminate");
  }
  return out;
}

inline RootSystem build_root_system(Family family, int rank) {
  if (rank != family_rank(family))
    fail(Errc::UnsupportedFamily, std::string(to_string(family)) + " does not have rank " + std::to_string(rank));
  RootSystem rs;
  rs.family = family;
  rs.rank = rank;
  rs.simple_roots = detail::simple_roots_for(family);
  rs.positive_roots = detail::positive_roots_by_strings(rs.simple_roots);
  for (const auto& a : rs.positive_roots) rs.all_roots.push_back(a);
  for (const auto& a : rs.positive_roots) rs.all_roots.push_back(-a);
  rs.rho = Vec::Zero(rank);
  for (const auto& a : rs.positive_roots) rs.rho += a;
  rs.rho *= 0.5;
  rs.weyl_elements = weyl_group(rs);
  return rs;
}

inline RootSystem build_root_system(Family family) { return build_root_system(family, family_rank(family)); }

/// <lambda, X> as the dot product of coordinate vectors.
inline double pairing(const Weight& lambda, const CartanElement& x) {
  if (lambda.coords.size() != x.coords.size())
    fail(Errc::RankMismatch, "weight rank " + std::to_string(lambda.coords.size()) + " vs Cartan rank " +
                                 std::to_string(x.coords.size()));
  return lambda.coords.dot(x.coords);
}

/// W_lambda = { w : w lambda = lambda }.
inline std::vector<WeylElement> stabilizer_subgroup(const RootSystem& rs, const Weight& lambda) {
  std::vector<WeylElement> out;
  for (const auto& w : rs.weyl_elements)
    if ((w.matrix * lambda.coords - lambda.coords).norm() <= 1e-10) out.push_back(w);
  return out;
}

/// Positive roots alpha with (lambda, alpha) != 0.
inline std::vector<Vec> nonorthogonal_positive_roots(const RootSystem& rs, const Vec& lambda, double tol = 1e-10) {
  std::vector<Vec> out;
  for (const auto& a : rs.positive_roots)
    if (std::abs(a.dot(lambda)) > tol) out.push_back(a);
  return out;
}

// ---------------------------------------------------------------------------
// Matrix Lie algebras

enum class Group { U1, SU2, SU3 };

constexpr std::string_view to_string(Group g) {
  switch (g) {
    case Group::U1: return "u1";
    case Group::SU2: return "su2";
    case Group::SU3: return "su3";
  }
  return "?";
}

inline Group parse_group(std::string_view s) {
  std::string l(s);
  std::transform(l.begin(), l.end(), l.begin(), [](unsigned char c) { return std::tolower(c); });
  if (l == "u1" || l == "s1") return Group::U1;
  if (l == "su2") return Group::SU2;
  if (l == "su3") return Group::SU3;
  fail(Errc::UsageError, "unknown group '" + std::string(s) + "'");
}

inline std::optional<Family> family_of(Group g) {
  switch (g) {
    case Group::U1: return std::nullopt;
    case Group::SU2: return Family::A1;
    case Group::SU3: return Family::A2;
  }
  return std::nullopt;
}

class MatrixAlgebra {
 public:
  explicit MatrixAlgebra(Group g) : group_(g) {
    using C = std::complex<double>;
    const C I(0.0, 1.0);
    const double s = 1.0 / std::sqrt(2.0);
    switch (g) {
      case Group::U1:
        n_ = 1;
        basis_.push_back(CMat::Constant(1, 1, I));
        cartan_ = {0};
        break;
      case Group::SU2: {
        n_ = 2;
        CMat s1(2, 2), s2(2, 2), s3(2, 2);
        s1 << 0, 1, 1, 0;
        s2 << 0, -I, I, 0;
        s3 << 1, 0, 0, -1;
        for (const auto* m : {&s1, &s2, &s3}) basis_.push_back(I * s * (*m));
        cartan_ = {2};
        break;
      }
      case Group::SU3: {
        n_ = 3;
        std::vector<CMat> gm(8, CMat::Zero(3, 3));
        gm[0](0, 1) = gm[0](1, 0) = 1;
        gm[1](0, 1) = -I;
        gm[1](1, 0) = I;
        gm[2](0, 0) = 1;
        gm[2](1, 1) = -1;
        gm[3](0, 2) = gm[3](2, 0) = 1;
        gm[4](0, 2) = -I;
        gm[4](2, 0) = I;
        gm[5](1, 2) = gm[5](2, 1) = 1;
        gm[6](1, 2) = -I;
        gm[6](2, 1) = I;
        gm[7](0, 0) = gm[7](1, 1) = 1.0 / std::sqrt(3.0);
        gm[7](2, 2) = -2.0 / std::sqrt(3.0);
        for (const auto& m : gm) basis_.push_back(I * s * m);
        cartan_ = {2, 7};
        break;
      }
    }
  }

  Group group() const { return group_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int rank() const { return static_cast<int>(cartan_.size()); }
  int matrix_size() const { return n_; }
  const std::vector<CMat>& basis() const { return basis_; }
  /// Indices of basis elements spanning t.
  const std::vector<int>& cartan_indices() const { return cartan_; }

  static double inner(const CMat& a, const CMat& b) { return -(a * b).trace().real(); }

  /// Throws NotInAlgebra unless X is anti-Hermitian (and traceless for SU).
  void require_member(const CMat& x, double tol = 1e-10) const {
    if (x.rows() != n_ || x.cols() != n_) fail(Errc::NotInAlgebra, "matrix size mismatch");
    if ((x + x.adjoint()).norm() > tol) fail(Errc::NotInAlgebra, "matrix is not anti-Hermitian");
    if (group_ != Group::U1 && std::abs(x.trace()) > tol) fail(Errc::NotInAlgebra, "matrix is not traceless");
  }

  /// Coordinates in the orthonormal basis.
  Vec coords(const CMat& x) const {
    Vec c(dim());
    for (int a = 0; a < dim(); ++a) c(a) = inner(basis_[a], x);
    return c;
  }

  CMat from_coords(const Vec& c) const {
    CMat x = CMat::Zero(n_, n_);
    for (int a = 0; a < dim(); ++a) x += c(a) * basis_[a];
    return x;
  }

  /// Element of t with the given orthonormal Cartan coordinates.
  CMat from_cartan(const Vec& h) const {
    CMat x = CMat::Zero(n_, n_);
    for (int k = 0; k < rank(); ++k) x += h(k) * basis_[cartan_[k]];
    return x;
  }

  /// Full-algebra coordinates of a Cartan element.
  Vec embed_cartan(const Vec& h) const {
    Vec c = Vec::Zero(dim());
    for (int k = 0; k < rank(); ++k) c(cartan_[k]) = h(k);
    return c;
  }

  /// Cartan coordinates of a conjugate of X lying in t, with the
  /// eigenvalues i x_k sorted in decreasing order (dominant chamber for
  /// the catalog root coordinates).
  Vec conjugate_to_cartan(const CMat& x) const {
    require_member(x);
    const Eigen::SelfAdjointEigenSolver<CMat> es(CMat(-std::complex<double>(0, 1) * x));
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + n_);
    std::sort(ev.begin(), ev.end(), std::greater<>());
    Vec h(rank());
    switch (group_) {
      case Group::U1: h(0) = ev[0]; break;
      case Group::SU2: h(0) = (ev[0] - ev[1]) / std::sqrt(2.0); break;
      case Group::SU3:
        h(0) = (ev[0] - ev[1]) / std::sqrt(2.0);
        h(1) = (ev[0] + ev[1] - 2.0 * ev[2]) / std::sqrt(6.0);
        break;
    }
    return h;
  }

  /// Matrix of [X, .] in the orthonormal basis; skew-symmetric.
  Mat ad_matrix(const CMat& x) const {
    require_member(x);
    Mat ad(dim(), dim());
    for (int b = 0; b < dim(); ++b) {
      const CMat br = x * basis_[b] - basis_[b] * x;
      for (int a = 0; a < dim(); ++a) ad(a, b) = inner(basis_[a], br);
    }
    return ad;
  }

 private:
  Group group_;
  int n_ = 0;
  std::vector<CMat> basis_;
  std::vector<int> cartan_;
};

/// ad-matrix overload matching the free-function form.
inline Mat ad_matrix(const MatrixAlgebra& alg, const CMat& x) { return alg.ad_matrix(x); }

/// Matrix exponential of an anti-Hermitian matrix through its Hermitian
/// eigen-decomposition.
inline CMat expm_anti_hermitian(const CMat& x) {
  const std::complex<double> I(0, 1);
  const Eigen::SelfAdjointEigenSolver<CMat> es(CMat(-I * x));
  const auto& V = es.eigenvectors();
  Eigen::VectorXcd d(x.rows());
  for (Eigen::Index k = 0; k < x.rows(); ++k) d(k) = std::exp(I * es.eigenvalues()(k));
  return V * d.asDiagonal() * V.adjoint();
}

}  // namespace orbital_loc
