#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "dtop/linalg.hpp"
#include "dtop/model.hpp"

namespace dtop::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Vec3 random_vec(std::mt19937_64& rng, double scale = 1.0) {
  return {uniform(rng, -scale, scale), uniform(rng, -scale, scale), uniform(rng, -scale, scale)};
}

inline Vec3 random_unit(std::mt19937_64& rng) {
  for (;;) {
    const Vec3 v = random_vec(rng);
    const double n = norm(v);
    if (n > 0.1 && n <= 1.0) return v / n;
  }
}

inline Mat3 random_rotation(std::mt19937_64& rng) {
  return axis_angle(random_unit(rng), uniform(rng, -3.0, 3.0));
}

inline TopConfig random_top(std::mt19937_64& rng) {
  const Vec3 I{uniform(rng, 1.0, 1.4), uniform(rng, 1.6, 2.0), uniform(rng, 2.2, 2.6)};
  return make_config(I, uniform(rng, 0.5, 4.0), random_vec(rng, 0.8), random_unit(rng), 9.81);
}

inline double max_abs_diff(const Mat3& a, const Mat3& b) {
  double m = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

inline double levi_civita(int i, int j, int k) {
  return static_cast<double>((i - j) * (j - k) * (k - i)) / 2.0;
}

}  // namespace dtop::testing
