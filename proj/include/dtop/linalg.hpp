#pragma once

// Small fixed-size 3-vector and 3x3 matrix types.
//
// Both are templated on the scalar so that the equations of motion can be
// evaluated on plain doubles and on truncated Taylor series (see jet.hpp)
// through the same code path. Mixed operations with a plain `double` are
// provided for every scalar type.

#include <array>
#include <cmath>
#include <cstddef>
#include <type_traits>

namespace dtop {

template <typename T>
struct Vec3T {
  T x{}, y{}, z{};

  constexpr Vec3T() = default;
  constexpr Vec3T(T x_, T y_, T z_) : x(x_), y(y_), z(z_) {}

  constexpr T& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr const T& operator[](std::size_t i) const {
    return i == 0 ? x : (i == 1 ? y : z);
  }

  Vec3T& operator+=(const Vec3T& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  Vec3T& operator-=(const Vec3T& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
};

using Vec3 = Vec3T<double>;

template <typename T>
Vec3T<T> operator+(const Vec3T<T>& a, const Vec3T<T>& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}
template <typename T>
Vec3T<T> operator-(const Vec3T<T>& a, const Vec3T<T>& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}
template <typename T>
Vec3T<T> operator-(const Vec3T<T>& a) {
  return {-a.x, -a.y, -a.z};
}
template <typename T>
Vec3T<T> operator*(const T& s, const Vec3T<T>& a) {
  return {s * a.x, s * a.y, s * a.z};
}
template <typename T>
  requires(!std::is_same_v<T, double>)
Vec3T<T> operator*(double s, const Vec3T<T>& a) {
  return {s * a.x, s * a.y, s * a.z};
}
template <typename T>
Vec3T<T> operator*(const Vec3T<T>& a, double s) {
  return s * a;
}
template <typename T>
Vec3T<T> operator/(const Vec3T<T>& a, double s) {
  return {a.x / s, a.y / s, a.z / s};
}

template <typename T, typename U>
auto dot(const Vec3T<T>& a, const Vec3T<U>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

/// [a, b]_i = eps_ijk a_j b_k
template <typename T>
Vec3T<T> cross(const Vec3T<T>& a, const Vec3T<T>& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Component-wise product; used for diagonal matrices stored as vectors.
template <typename T>
Vec3T<T> hadamard(const Vec3& d, const Vec3T<T>& v) {
  return {d.x * v.x, d.y * v.y, d.z * v.z};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

template <typename T>
Vec3T<T> lift(const Vec3& v) {
  return {T(v.x), T(v.y), T(v.z)};
}

/// Row-major 3x3 matrix, m[i][j] = r_ij.
template <typename T>
struct Mat3T {
  std::array<std::array<T, 3>, 3> m{};

  static Mat3T identity() {
    Mat3T r;
    for (std::size_t i = 0; i < 3; ++i) r.m[i][i] = T(1.0);
    return r;
  }
  static Mat3T diagonal(const Vec3T<T>& d) {
    Mat3T r;
    r.m[0][0] = d.x;
    r.m[1][1] = d.y;
    r.m[2][2] = d.z;
    return r;
  }
  static Mat3T from_rows(const Vec3T<T>& r0, const Vec3T<T>& r1, const Vec3T<T>& r2) {
    Mat3T r;
    for (std::size_t j = 0; j < 3; ++j) {
      r.m[0][j] = r0[j];
      r.m[1][j] = r1[j];
      r.m[2][j] = r2[j];
    }
    return r;
  }
  static Mat3T from_columns(const Vec3T<T>& c0, const Vec3T<T>& c1, const Vec3T<T>& c2) {
    return from_rows(c0, c1, c2).transposed();
  }

  T& operator()(std::size_t i, std::size_t j) { return m[i][j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return m[i][j]; }

  Vec3T<T> row(std::size_t i) const { return {m[i][0], m[i][1], m[i][2]}; }
  Vec3T<T> column(std::size_t j) const { return {m[0][j], m[1][j], m[2][j]}; }

  Mat3T transposed() const {
    Mat3T r;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
    return r;
  }

  T trace() const { return m[0][0] + m[1][1] + m[2][2]; }

  T determinant() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  }
};

using Mat3 = Mat3T<double>;

template <typename T>
Mat3T<T> operator+(const Mat3T<T>& a, const Mat3T<T>& b) {
  Mat3T<T> r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r.m[i][j] = a.m[i][j] + b.m[i][j];
  return r;
}
template <typename T>
Mat3T<T> operator-(const Mat3T<T>& a, const Mat3T<T>& b) {
  Mat3T<T> r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r.m[i][j] = a.m[i][j] - b.m[i][j];
  return r;
}
template <typename T>
Mat3T<T> operator*(double s, const Mat3T<T>& a) {
  Mat3T<T> r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r.m[i][j] = s * a.m[i][j];
  return r;
}
template <typename T>
Mat3T<T> operator*(const Mat3T<T>& a, const Mat3T<T>& b) {
  Mat3T<T> r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      T s = a.m[i][0] * b.m[0][j];
      s += a.m[i][1] * b.m[1][j];
      s += a.m[i][2] * b.m[2][j];
      r.m[i][j] = s;
    }
  return r;
}
template <typename T>
Vec3T<T> operator*(const Mat3T<T>& a, const Vec3T<T>& v) {
  return {a.m[0][0] * v.x + a.m[0][1] * v.y + a.m[0][2] * v.z,
          a.m[1][0] * v.x + a.m[1][1] * v.y + a.m[1][2] * v.z,
          a.m[2][0] * v.x + a.m[2][1] * v.y + a.m[2][2] * v.z};
}

/// R^T v without forming the transpose.
template <typename T>
Vec3T<T> transpose_times(const Mat3T<T>& a, const Vec3T<T>& v) {
  return {a.m[0][0] * v.x + a.m[1][0] * v.y + a.m[2][0] * v.z,
          a.m[0][1] * v.x + a.m[1][1] * v.y + a.m[2][1] * v.z,
          a.m[0][2] * v.x + a.m[1][2] * v.y + a.m[2][2] * v.z};
}

/// hat(w) v = [w, v]
template <typename T>
Mat3T<T> hat(const Vec3T<T>& w) {
  Mat3T<T> r;
  r.m[0][1] = -w.z;
  r.m[0][2] = w.y;
  r.m[1][0] = w.z;
  r.m[1][2] = -w.x;
  r.m[2][0] = -w.y;
  r.m[2][1] = w.x;
  return r;
}

template <typename T>
Mat3T<T> lift(const Mat3& a) {
  Mat3T<T> r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r.m[i][j] = T(a.m[i][j]);
  return r;
}

inline double frobenius_norm(const Mat3& a) {
  double s = 0.0;
  for (const auto& row : a.m)
    for (double v : row) s += v * v;
  return std::sqrt(s);
}

/// ||R^T R - 1||_F
inline double orthogonality_residual(const Mat3& r) {
  return frobenius_norm(r.transposed() * r - Mat3::identity());
}

/// Rodrigues rotation by `angle` about the unit vector `axis`.
inline Mat3 axis_angle(const Vec3& axis, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Mat3 k = hat(axis);
  return Mat3::identity() + s * k + (1.0 - c) * (k * k);
}

/// Inverse through the adjugate; the caller guarantees det != 0.
inline Mat3 inverse(const Mat3& a) {
  Mat3 adj;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const std::size_t i1 = (j + 1) % 3, i2 = (j + 2) % 3;
      const std::size_t j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      adj.m[i][j] = a.m[i1][j1] * a.m[i2][j2] - a.m[i1][j2] * a.m[i2][j1];
    }
  return (1.0 / a.determinant()) * adj;
}

inline bool all_finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}
inline bool all_finite(const Mat3& a) {
  for (const auto& row : a.m)
    for (double v : row)
      if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace dtop
