#pragma once

// One-dimensional quadrature rules and deterministic summation.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "orbital_loc/errors.hpp"

namespace orbital_loc {

using cplx = std::complex<double>;

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

namespace detail {

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights come
// from the first eigenvector components scaled by the weight's total mass.
inline Rule golub_welsch(const Eigen::VectorXd& offdiag, double mass) {
  const auto n = offdiag.size() + 1;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    J(i, i + 1) = offdiag(i);
    J(i + 1, i) = offdiag(i);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    r.nodes[i] = es.eigenvalues()(i);
    const double v = es.eigenvectors()(0, i);
    r.weights[i] = mass * v * v;
  }
  return r;
}

}  // namespace detail

/// n-point Gauss-Legendre rule on [-1, 1].
inline Rule gauss_legendre(int n) {
  if (n < 1) fail(Errc::QuadratureFailure, "Gauss-Legendre needs n >= 1");
  if (n == 1) return Rule{{0.0}, {2.0}};
  Eigen::VectorXd b(n - 1);
  for (int k = 1; k < n; ++k) b(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
  Rule r = detail::golub_welsch(b, 2.0);
  // symmetrize to remove eigen-solver noise
  for (int i = 0; i < n / 2; ++i) {
    const double x = 0.5 * (r.nodes[n - 1 - i] - r.nodes[i]);
    const double w = 0.5 * (r.weights[n - 1 - i] + r.weights[i]);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

/// n-point Gauss-Hermite rule for the weight exp(-x^2) on the real line.
inline Rule gauss_hermite(int n) {
  if (n < 1) fail(Errc::QuadratureFailure, "Gauss-Hermite needs n >= 1");
  if (n == 1) return Rule{{0.0}, {std::sqrt(std::numbers::pi)}};
  Eigen::VectorXd b(n - 1);
  for (int k = 1; k < n; ++k) b(k - 1) = std::sqrt(k / 2.0);
  return detail::golub_welsch(b, std::sqrt(std::numbers::pi));
}

/// Affine map of a [-1,1] rule onto [a,b].
inline Rule mapped(const Rule& ref, double a, double b) {
  Rule r;
  r.nodes.resize(ref.size());
  r.weights.resize(ref.size());
  const double h = 0.5 * (b - a), m = 0.5 * (a + b);
  for (std::size_t i = 0; i < ref.size(); ++i) {
    r.nodes[i] = m + h * ref.nodes[i];
    r.weights[i] = h * ref.weights[i];
  }
  return r;
}

/// Composite Gauss-Legendre: `panels` equal panels over [a,b], `order` points each.
inline Rule composite_gauss(double a, double b, int panels, int order) {
  const Rule ref = gauss_legendre(order);
  Rule r;
  r.nodes.reserve(static_cast<std::size_t>(panels) * order);
  r.weights.reserve(static_cast<std::size_t>(panels) * order);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const Rule m = mapped(ref, a + p * h, a + (p + 1) * h);
    r.nodes.insert(r.nodes.end(), m.nodes.begin(), m.nodes.end());
    r.weights.insert(r.weights.end(), m.weights.begin(), m.weights.end());
  }
  return r;
}

/// Composite Gauss-Legendre over consecutive breakpoints.
inline Rule composite_gauss(std::span<const double> breaks, int panels_per_gap, int order) {
  Rule r;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const Rule m = composite_gauss(breaks[i], breaks[i + 1], panels_per_gap, order);
    r.nodes.insert(r.nodes.end(), m.nodes.begin(), m.nodes.end());
    r.weights.insert(r.weights.end(), m.weights.begin(), m.weights.end());
  }
  return r;
}

/// Pairwise summation; the result depends only on the order of `v`.
template <class T>
T pairwise_sum(std::span<const T> v) {
  if (v.empty()) return T{};
  if (v.size() <= 16) {
    T s{};
    for (const auto& x : v) s += x;
    return s;
  }
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(std::span<const T>(v));
}

/// Polynomial Richardson extrapolation in h for samples at h, h/q, h/q^2, ...
/// assuming an error expansion in powers h^{p}, h^{2p}, ...
template <class T>
T richardson(std::vector<T> values, double q, double p) {
  if (values.empty()) fail(Errc::ExtrapolationFailure, "no samples");
  for (std::size_t level = 1; level < values.size(); ++level) {
    const double f = std::pow(q, p * static_cast<double>(level));
    for (std::size_t i = values.size() - 1; i >= level; --i) {
      values[i] = (f * values[i] - values[i - 1]) / (f - 1.0);
    }
  }
  return values.back();
}

}  // namespace orbital_loc
