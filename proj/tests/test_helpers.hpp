#pragma once

#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include "orbital_loc/lie_core.hpp"

namespace orbital_loc::testing {

inline Vec random_vec(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = nd(rng);
  return v;
}

/// Random regular Cartan element, kept away from root hyperplanes.
inline Vec random_regular(const RootSystem& rs, std::mt19937_64& rng, double scale = 1.0, double margin = 1e-3) {
  for (;;) {
    Vec x = random_vec(rng, rs.rank, scale);
    bool ok = true;
    for (const auto& a : rs.positive_roots)
      if (std::abs(a.dot(x)) < margin) ok = false;
    if (ok) return x;
  }
}

/// Greedy multiset match of two complex lists; returns the worst distance.
inline double multiset_distance(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b) {
  if (a.size() != b.size()) return 1e300;
  double worst = 0.0;
  for (const auto& x : a) {
    auto it = std::min_element(b.begin(), b.end(),
                               [&](const auto& p, const auto& q) { return std::abs(p - x) < std::abs(q - x); });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

}  // namespace orbital_loc::testing
