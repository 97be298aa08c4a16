#pragma once

// Truncated univariate Taylor series ("jets").
//
// A Jet of degree n holds coefficients c[0..n] of a power series in the time
// offset h, c[k] = x^(k)(t0) / k!. Arithmetic is exact up to degree n and
// discards higher terms. Only the operations reached by the equations of
// motion are provided: +, -, * and / (no transcendental functions).

#include <algorithm>
#include <array>
#include <cstddef>
#include <stdexcept>

namespace dtop {

class Jet {
 public:
  static constexpr int kMaxDegree = 32;

  Jet() = default;
  // Implicit: constants promote to degree-0 series.
  Jet(double value) { c_[0] = value; }  // NOLINT(google-explicit-constructor)
  Jet(double value, int degree) : degree_(checked(degree)) { c_[0] = value; }

  static Jet variable(double value, double slope, int degree) {
    Jet j(value, degree);
    if (degree >= 1) j.c_[1] = slope;
    return j;
  }

  int degree() const { return degree_; }
  double operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  double& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  double value() const { return c_[0]; }

  Jet& operator+=(const Jet& o) {
    raise(o.degree_);
    for (int k = 0; k <= o.degree_; ++k) (*this)[k] += o[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    raise(o.degree_);
    for (int k = 0; k <= o.degree_; ++k) (*this)[k] -= o[k];
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) {
    for (int k = 0; k <= a.degree_; ++k) a[k] = -a[k];
    return a;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(0.0, std::max(a.degree_, b.degree_));
    // Lower-degree operands are zero-padded, so sum only the stored terms.
    for (int i = 0; i <= a.degree_; ++i) {
      const double ai = a[i];
      if (ai == 0.0) continue;
      const int jmax = std::min(b.degree_, r.degree_ - i);
      for (int j = 0; j <= jmax; ++j) r[i + j] += ai * b[j];
    }
    return r;
  }
  friend Jet operator*(double s, Jet a) {
    for (int k = 0; k <= a.degree_; ++k) a[k] *= s;
    return a;
  }
  friend Jet operator*(Jet a, double s) { return s * a; }

  friend Jet operator/(const Jet& a, const Jet& b) {
    if (b[0] == 0.0) throw std::domain_error("jet division by a series with zero constant term");
    Jet q(0.0, std::max(a.degree_, b.degree_));
    for (int k = 0; k <= q.degree_; ++k) {
      double s = k <= a.degree_ ? a[k] : 0.0;
      for (int j = 1; j <= std::min(k, b.degree_); ++j) s -= b[j] * q[k - j];
      q[k] = s / b[0];
    }
    return q;
  }
  friend Jet operator/(Jet a, double s) {
    for (int k = 0; k <= a.degree_; ++k) a[k] /= s;
    return a;
  }

  /// Sum of c[k] h^k (Horner).
  double evaluate(double h) const {
    double s = 0.0;
    for (int k = degree_; k >= 0; --k) s = s * h + (*this)[k];
    return s;
  }

 private:
  static int checked(int degree) {
    if (degree < 0 || degree > kMaxDegree) throw std::out_of_range("jet degree out of range");
    return degree;
  }
  void raise(int degree) { degree_ = std::max(degree_, degree); }

  std::array<double, kMaxDegree + 1> c_{};
  int degree_ = 0;
};

}  // namespace dtop
