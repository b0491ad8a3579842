#pragma once

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "rieffel/cocycles.hpp"
#include "rieffel/groups.hpp"
#include "rieffel/linalg.hpp"

// Random inputs for the property tests and plain re-derivations of a few
// quantities, written without the engine's helpers.

namespace testing_support {

using namespace rieffel;

inline FiniteAbelianGroup random_group(std::mt19937_64& rng, int max_rank = 2) {
  std::uniform_int_distribution<int> rank(1, max_rank), factor(2, 4);
  std::vector<int> f(rank(rng));
  for (int& x : f) x = factor(rng);
  return FiniteAbelianGroup(f);
}

inline long lcm_of(const std::vector<int>& f) {
  long l = 1;
  for (int x : f) l = std::lcm(l, static_cast<long>(x));
  return l;
}

/// Bicharacter with exponents k * N / gcd(n_i, n_j), well defined for any k.
inline TwoCocycle random_bicharacter(std::mt19937_64& rng, const FiniteAbelianGroup& g) {
  const auto& f = g.factors();
  const long n = lcm_of(f);
  std::uniform_int_distribution<long> k(0, 7);
  std::vector<std::vector<long>> b(f.size(), std::vector<long>(f.size()));
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < f.size(); ++j) b[i][j] = k(rng) * n / std::gcd(f[i], f[j]) % n;
  return TwoCocycle::bicharacter(g, b, n);
}

/// f with f(0) = 1 and random eighth-root values elsewhere.
inline std::vector<Phase> random_function(std::mt19937_64& rng, int order, int den = 8) {
  std::uniform_int_distribution<int> k(0, den - 1);
  std::vector<Phase> f(order);
  for (int x = 1; x < order; ++x) f[x] = Phase(k(rng), den);
  return f;
}

/// Bicharacter times a coboundary: a generic cocycle class representative.
inline TwoCocycle random_cocycle(std::mt19937_64& rng, const FiniteAbelianGroup& g) {
  return random_bicharacter(rng, g).multiply(coboundary(g, random_function(rng, g.order())));
}

inline cplx root_of_unity(double num, double den) {
  return std::polar(1.0, 2.0 * std::numbers::pi * num / den);
}

/// exp(2 pi i sum x_i y_i / n_i) straight from mixed-radix digits.
inline cplx pairing_oracle(const std::vector<int>& factors, int x, int y) {
  double s = 0.0;
  for (int i = static_cast<int>(factors.size()) - 1; i >= 0; --i) {
    s += static_cast<double>((x % factors[i]) * (y % factors[i])) / factors[i];
    x /= factors[i];
    y /= factors[i];
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * s);
}

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace testing_support
