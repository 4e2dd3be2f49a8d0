#pragma once

// Inhomogeneous differential forms in a fixed chart of dimension N.
// Coefficients are indexed by a bitmask I over the coordinate differentials,
// dx^I = dx^{i_1} ^ ... ^ dx^{i_k} with i_1 < ... < i_k.
//
// Exterior derivatives are exact: a form field is a generic callable
// p -> Form<T, N>, and d evaluates it on Jet coordinates.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <type_traits>

#include "orbital_loc/jet.hpp"

namespace orbital_loc {

template <class T, int N>
struct Form {
  static constexpr int kCount = 1 << N;
  static constexpr int kTop = kCount - 1;
  std::array<T, kCount> c{};

  Form() { c.fill(T(0.0)); }
  static Form scalar(const T& f) {
    Form r;
    r.c[0] = f;
    return r;
  }
  static Form monomial(int mask, const T& f) {
    Form r;
    r.c[mask] = f;
    return r;
  }

  T& operator[](int mask) { return c[mask]; }
  const T& operator[](int mask) const { return c[mask]; }
  const T& top() const { return c[kTop]; }

  Form& operator+=(const Form& o) {
    for (int i = 0; i < kCount; ++i) c[i] = c[i] + o.c[i];
    return *this;
  }
  Form& operator-=(const Form& o) {
    for (int i = 0; i < kCount; ++i) c[i] = c[i] - o.c[i];
    return *this;
  }
  template <class U>
  Form& operator*=(const U& s) {
    for (auto& x : c) x = x * s;
    return *this;
  }
};

template <class T, int N>
Form<T, N> operator+(Form<T, N> a, const Form<T, N>& b) { return a += b; }
template <class T, int N>
Form<T, N> operator-(Form<T, N> a, const Form<T, N>& b) { return a -= b; }
template <class T, int N, class U>
Form<T, N> operator*(Form<T, N> a, const U& s) { return a *= s; }
template <class T, int N, class U>
Form<T, N> operator*(const U& s, Form<T, N> a) { return a *= s; }

inline int form_degree(int mask) { return std::popcount(static_cast<unsigned>(mask)); }

/// Sign of dx^I ^ dx^J relative to dx^{I|J}; zero when they overlap.
inline int wedge_sign(int i, int j) {
  if (i & j) return 0;
  int swaps = 0;
  for (unsigned m = static_cast<unsigned>(j); m; m &= m - 1) {
    const int k = std::countr_zero(m);
    swaps += std::popcount(static_cast<unsigned>(i) >> (k + 1));
  }
  return (swaps & 1) ? -1 : 1;
}

/// (-1)^(number of indices in I below k).
inline int pass_sign(int mask, int k) {
  return (std::popcount(static_cast<unsigned>(mask) & ((1u << k) - 1u)) & 1) ? -1 : 1;
}

template <class T, int N>
Form<T, N> wedge(const Form<T, N>& a, const Form<T, N>& b) {
  Form<T, N> r;
  for (int i = 0; i < Form<T, N>::kCount; ++i)
    for (int j = 0; j < Form<T, N>::kCount; ++j) {
      const int s = wedge_sign(i, j);
      if (s) r.c[i | j] = r.c[i | j] + double(s) * (a.c[i] * b.c[j]);
    }
  return r;
}

/// Homogeneous component of degree k.
template <class T, int N>
Form<T, N> degree_part(const Form<T, N>& a, int k) {
  Form<T, N> r;
  for (int i = 0; i < Form<T, N>::kCount; ++i)
    if (form_degree(i) == k) r.c[i] = a.c[i];
  return r;
}

/// Interior product with the vector field v (components in chart coordinates).
template <class T, int N>
Form<T, N> contract(const std::array<T, std::size_t(N)>& v, const Form<T, N>& a) {
  Form<T, N> r;
  for (int i = 0; i < Form<T, N>::kCount; ++i)
    for (int k = 0; k < N; ++k)
      if (i & (1 << k)) r.c[i ^ (1 << k)] = r.c[i ^ (1 << k)] + double(pass_sign(i, k)) * (v[k] * a.c[i]);
  return r;
}

/// Exact exterior derivative of the form field f at p.
template <int N, class F, class T>
Form<T, N> exterior_d(const F& f, const std::array<T, N>& p) {
  using J = Jet<T, N>;
  std::array<J, N> q;
  for (int k = 0; k < N; ++k) q[k] = J::variable(p[k], k);
  const Form<J, N> fj = f(q);
  Form<T, N> r;
  for (int i = 0; i < Form<T, N>::kCount; ++i)
    for (int k = 0; k < N; ++k)
      if (!(i & (1 << k))) r.c[i | (1 << k)] = r.c[i | (1 << k)] + double(pass_sign(i, k)) * fj.c[i].d[k];
  return r;
}

/// Largest coefficient modulus.
template <int N>
double max_abs(const Form<std::complex<double>, N>& a) {
  double m = 0.0;
  for (const auto& x : a.c) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace orbital_loc
