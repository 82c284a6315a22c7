#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace spinorflow {

/// Labels of the spatial orthonormal coframe (e_u, e_l, e_n).
enum Axis : std::size_t { kU = 0, kL = 1, kN = 2 };

using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;

/// Dense 3x3 matrix, row-major. Rows/columns are indexed by Axis.
struct Mat3 {
  std::array<double, 9> m{};

  constexpr double& operator()(std::size_t r, std::size_t c) { return m[3 * r + c]; }
  constexpr double operator()(std::size_t r, std::size_t c) const { return m[3 * r + c]; }

  static constexpr Mat3 identity() {
    Mat3 id;
    id(0, 0) = id(1, 1) = id(2, 2) = 1.0;
    return id;
  }
  static constexpr Mat3 diagonal(double a, double b, double c) {
    Mat3 d;
    d(0, 0) = a;
    d(1, 1) = b;
    d(2, 2) = c;
    return d;
  }
};

Mat3 operator*(const Mat3& a, const Mat3& b);
Mat3 operator+(const Mat3& a, const Mat3& b);
Mat3 operator-(const Mat3& a, const Mat3& b);
Mat3 operator*(double s, const Mat3& a);
Vec3 operator*(const Mat3& a, const Vec3& v);
Mat3 transpose(const Mat3& a);
double determinant(const Mat3& a);
Mat3 inverse(const Mat3& a);
double max_abs(const Mat3& a);

inline double max_abs(const Vec3& v) {
  return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

/// Symmetric 3x3 tensor in an orthonormal frame. Only the upper triangle is
/// stored: (uu, ul, un, ll, ln, nn).
class Sym3 {
 public:
  constexpr Sym3() = default;
  constexpr Sym3(double uu, double ul, double un, double ll, double ln, double nn)
      : c_{uu, ul, un, ll, ln, nn} {}

  constexpr double operator()(std::size_t a, std::size_t b) const { return c_[slot(a, b)]; }
  constexpr void set(std::size_t a, std::size_t b, double v) { c_[slot(a, b)] = v; }

  constexpr double uu() const { return c_[0]; }
  constexpr double ul() const { return c_[1]; }
  constexpr double un() const { return c_[2]; }
  constexpr double ll() const { return c_[3]; }
  constexpr double ln() const { return c_[4]; }
  constexpr double nn() const { return c_[5]; }

  /// Components in storage order (uu, ul, un, ll, ln, nn).
  constexpr const std::array<double, 6>& components() const { return c_; }

  constexpr double trace() const { return c_[0] + c_[3] + c_[5]; }
  /// Frame norm squared, sum over all nine entries.
  constexpr double norm_squared() const {
    return c_[0] * c_[0] + c_[3] * c_[3] + c_[5] * c_[5] +
           2.0 * (c_[1] * c_[1] + c_[2] * c_[2] + c_[4] * c_[4]);
  }
  double max_abs() const {
    double r = 0.0;
    for (double x : c_) r = std::max(r, std::abs(x));
    return r;
  }

  Mat3 to_matrix() const;
  /// Symmetric part of a general matrix.
  static Sym3 from_matrix(const Mat3& a);

  friend constexpr Sym3 operator+(Sym3 a, const Sym3& b) {
    for (std::size_t i = 0; i < 6; ++i) a.c_[i] += b.c_[i];
    return a;
  }
  friend constexpr Sym3 operator-(Sym3 a, const Sym3& b) {
    for (std::size_t i = 0; i < 6; ++i) a.c_[i] -= b.c_[i];
    return a;
  }
  friend constexpr Sym3 operator*(double s, Sym3 a) {
    for (double& x : a.c_) x *= s;
    return a;
  }

 private:
  static constexpr std::size_t slot(std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    // (0,0)=0 (0,1)=1 (0,2)=2 (1,1)=3 (1,2)=4 (2,2)=5
    return a == 0 ? b : (a == 1 ? b + 2 : 5);
  }

  std::array<double, 6> c_{};
};

/// Symmetric 2x2 block [[xx, xy], [xy, yy]].
struct Sym2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  constexpr double trace() const { return xx + yy; }
  constexpr double determinant() const { return xx * yy - xy * xy; }
};

/// 2x2 matrix [[a00, a01], [a10, a11]].
struct Mat2 {
  double a00 = 1.0, a01 = 0.0, a10 = 0.0, a11 = 1.0;
};

}  // namespace spinorflow
