#pragma once

// Forward-mode automatic differentiation. A Jet<S, N> carries a value and
// its N first partials; nesting Jet<Jet<S, N>, N> yields second partials.
// Catalog coefficient functions are written generically over the scalar
// type so exterior derivatives are exact to rounding.

#include <array>
#include <cmath>
#include <complex>
#include <type_traits>

namespace orbital_loc {

template <class S, int N>
struct Jet {
  S v{};
  std::array<S, N> d{};

  Jet() = default;
  Jet(double c) : v(c) {}  // NOLINT(google-explicit-constructor)
  Jet(std::complex<double> c) : v(c) {}  // NOLINT(google-explicit-constructor)
  Jet(const S& value, const std::array<S, N>& grad) : v(value), d(grad) {}

  /// Independent variable number `k` with value x.
  static Jet variable(const S& x, int k) {
    Jet j;
    j.v = x;
    j.d[k] = S(1.0);
    return j;
  }

  Jet& operator+=(const Jet& o) {
    v += o.v;
    for (int i = 0; i < N; ++i) d[i] += o.d[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    v -= o.v;
    for (int i = 0; i < N; ++i) d[i] -= o.d[i];
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    for (int i = 0; i < N; ++i) d[i] = d[i] * o.v + v * o.d[i];
    v *= o.v;
    return *this;
  }
  Jet& operator/=(const Jet& o) {
    const S inv = S(1.0) / o.v;
    for (int i = 0; i < N; ++i) d[i] = (d[i] - v * inv * o.d[i]) * inv;
    v *= inv;
    return *this;
  }
};

template <class T>
struct is_jet : std::false_type {};
template <class S, int N>
struct is_jet<Jet<S, N>> : std::true_type {};
template <class T>
inline constexpr bool is_jet_v = is_jet<T>::value;

template <class S, int N>
Jet<S, N> operator-(Jet<S, N> a) {
  a.v = -a.v;
  for (auto& x : a.d) x = -x;
  return a;
}
template <class S, int N>
Jet<S, N> operator+(Jet<S, N> a, const Jet<S, N>& b) { return a += b; }
template <class S, int N>
Jet<S, N> operator-(Jet<S, N> a, const Jet<S, N>& b) { return a -= b; }
template <class S, int N>
Jet<S, N> operator*(Jet<S, N> a, const Jet<S, N>& b) { return a *= b; }
template <class S, int N>
Jet<S, N> operator/(Jet<S, N> a, const Jet<S, N>& b) { return a /= b; }

#define ORBITAL_LOC_JET_MIXED(OP)                                                   \
  template <class S, int N>                                                         \
  Jet<S, N> operator OP(const Jet<S, N>& a, double b) { return a OP Jet<S, N>(b); } \
  template <class S, int N>                                                         \
  Jet<S, N> operator OP(double a, const Jet<S, N>& b) { return Jet<S, N>(a) OP b; } \
  template <class S, int N>                                                         \
  Jet<S, N> operator OP(const Jet<S, N>& a, std::complex<double> b) {               \
    return a OP Jet<S, N>(b);                                                       \
  }                                                                                 \
  template <class S, int N>                                                         \
  Jet<S, N> operator OP(std::complex<double> a, const Jet<S, N>& b) {               \
    return Jet<S, N>(a) OP b;                                                       \
  }
ORBITAL_LOC_JET_MIXED(+)
ORBITAL_LOC_JET_MIXED(-)
ORBITAL_LOC_JET_MIXED(*)
ORBITAL_LOC_JET_MIXED(/)
#undef ORBITAL_LOC_JET_MIXED

namespace detail {
template <class S, int N, class F, class DF>
Jet<S, N> chain(const Jet<S, N>& a, F f, DF df) {
  Jet<S, N> r;
  r.v = f(a.v);
  const S g = df(a.v);
  for (int i = 0; i < N; ++i) r.d[i] = g * a.d[i];
  return r;
}
}  // namespace detail

template <class S, int N>
Jet<S, N> exp(const Jet<S, N>& a) {
  using std::exp;
  const S e = exp(a.v);
  Jet<S, N> r;
  r.v = e;
  for (int i = 0; i < N; ++i) r.d[i] = e * a.d[i];
  return r;
}
template <class S, int N>
Jet<S, N> sin(const Jet<S, N>& a) {
  using std::cos, std::sin;
  return detail::chain(a, [](const S& x) { return sin(x); }, [](const S& x) { return cos(x); });
}
template <class S, int N>
Jet<S, N> cos(const Jet<S, N>& a) {
  using std::cos, std::sin;
  return detail::chain(a, [](const S& x) { return cos(x); }, [](const S& x) { return -sin(x); });
}
template <class S, int N>
Jet<S, N> sqrt(const Jet<S, N>& a) {
  using std::sqrt;
  const S s = sqrt(a.v);
  Jet<S, N> r;
  r.v = s;
  const S g = S(0.5) / s;
  for (int i = 0; i < N; ++i) r.d[i] = g * a.d[i];
  return r;
}

/// Real part of the innermost value; used for branching on real coordinates.
inline double real_value(double x) { return x; }
inline double real_value(const std::complex<double>& x) { return x.real(); }
template <class S, int N>
double real_value(const Jet<S, N>& x) {
  return real_value(x.v);
}

/// Innermost value with all derivative information dropped.
inline std::complex<double> base_value(double x) { return x; }
inline std::complex<double> base_value(const std::complex<double>& x) { return x; }
template <class S, int N>
std::complex<double> base_value(const Jet<S, N>& x) {
  return base_value(x.v);
}

/// Integer power by repeated multiplication (exact for jets).
template <class T>
T ipow(const T& x, int k) {
  T r(1.0);
  for (int i = 0; i < k; ++i) r = r * x;
  return r;
}

}  // namespace orbital_loc
