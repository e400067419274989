#pragma once

#include <bbstep/steplength.hpp>

#include <cmath>
#include <random>
#include <vector>

namespace bbstep::testing_support {

inline Vector gaussian_vector(std::mt19937_64 &rng, std::size_t n) {
  std::normal_distribution<double> d(0.0, 1.0);
  Vector v(n);
  for (auto &x : v)
    x = d(rng);
  return v;
}

inline Vector unit(Vector v) {
  const double n = norm(v);
  for (auto &x : v)
    x /= n;
  return v;
}

/// Random orthogonal matrix (rows) from Gram-Schmidt on Gaussian vectors.
inline std::vector<Vector> random_rotation(std::mt19937_64 &rng, std::size_t n) {
  std::vector<Vector> q;
  while (q.size() < n) {
    Vector v = gaussian_vector(rng, n);
    for (const auto &e : q) {
      const double p = dot(v, e);
      for (std::size_t i = 0; i < n; ++i)
        v[i] -= p * e[i];
    }
    if (norm(v) < 1e-6)
      continue;
    q.push_back(unit(v));
  }
  return q;
}

inline Vector rotate(const std::vector<Vector> &m, const Vector &v) {
  Vector out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    out[i] = dot(m[i], v);
  return out;
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

} // namespace bbstep::testing_support
