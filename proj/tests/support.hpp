#pragma once

#include <random>

#include "markov/domains.hpp"
#include "markov/poly2d.hpp"

namespace testing_support {

inline markov::BivariatePoly random_poly(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  markov::BivariatePoly p(static_cast<std::size_t>(degree), static_cast<std::size_t>(degree));
  for (int i = 0; i <= degree; ++i)
    for (int j = 0; i + j <= degree; ++j) p.at(i, j) = c(rng);
  return p;
}

/// Uniform point of the triangle -1 < u < v < 1.
inline markov::Point random_simplex_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  double a = d(rng), b = d(rng);
  if (a > b) std::swap(a, b);
  return {a, b};
}

/// Point of Omega as the image of a simplex point.
inline markov::Point random_omega_point(std::mt19937_64& rng) {
  const auto s = random_simplex_point(rng);
  return {s.x + s.y, s.x * s.y};
}

}  // namespace testing_support
