#include "spinorflow/tensor_algebra.hpp"

#include <cmath>

namespace spinorflow {

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

Mat3 operator+(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (std::size_t i = 0; i < 9; ++i) r.m[i] = a.m[i] + b.m[i];
  return r;
}

Mat3 operator-(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (std::size_t i = 0; i < 9; ++i) r.m[i] = a.m[i] - b.m[i];
  return r;
}

Mat3 operator*(double s, const Mat3& a) {
  Mat3 r;
  for (std::size_t i = 0; i < 9; ++i) r.m[i] = s * a.m[i];
  return r;
}

Vec3 operator*(const Mat3& a, const Vec3& v) {
  Vec3 r{};
  for (std::size_t i = 0; i < 3; ++i) r[i] = a(i, 0) * v[0] + a(i, 1) * v[1] + a(i, 2) * v[2];
  return r;
}

Mat3 transpose(const Mat3& a) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = a(j, i);
  return r;
}

double determinant(const Mat3& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

Mat3 inverse(const Mat3& a) {
  const double det = determinant(a);
  Mat3 r;
  r(0, 0) = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
  r(0, 1) = a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2);
  r(0, 2) = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
  r(1, 0) = a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2);
  r(1, 1) = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
  r(1, 2) = a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2);
  r(2, 0) = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
  r(2, 1) = a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1);
  r(2, 2) = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  return (1.0 / det) * r;
}

double max_abs(const Mat3& a) {
  double r = 0.0;
  for (double x : a.m) r = std::max(r, std::abs(x));
  return r;
}

Mat3 Sym3::to_matrix() const {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = (*this)(i, j);
  return r;
}

Sym3 Sym3::from_matrix(const Mat3& a) {
  Sym3 s;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) s.set(i, j, 0.5 * (a(i, j) + a(j, i)));
  return s;
}

StructureConstants3 structure_constants(const Sym3& theta) {
  StructureConstants3 c;
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b : {kL, kN}) {
      c(a, kU, b) = theta(a, b);
      c(a, b, kU) = -theta(a, b);
    }
  }
  return c;
}

ConnectionCoefficients3 levi_civita(const StructureConstants3& c) {
  return levi_civita<3>(c, euclidean_signature<3>());
}

RicciResult ricci3(const StructureConstants3& c) {
  const auto sig = euclidean_signature<3>();
  const auto ric = ricci_tensor<3>(c, levi_civita<3>(c, sig), sig);
  RicciResult r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) r.ricci.set(i, j, 0.5 * (ric[i][j] + ric[j][i]));
  r.scalar = r.ricci.trace();
  return r;
}

Vec3 divergence_sym(const StructureConstants3& c, const Sym3& s) {
  const auto w = levi_civita(c);
  Vec3 div{};
  for (std::size_t b = 0; b < 3; ++b) {
    double acc = 0.0;
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t k = 0; k < 3; ++k) acc -= w(a, a, k) * s(k, b) + w(a, b, k) * s(a, k);
    div[b] = acc;
  }
  return div;
}

StructureConstants3 pushforward(const StructureConstants3& c, const Mat3& u) {
  const Mat3 v = inverse(u);
  // Contract one index at a time: c'(a,b,k) = U_ad c(d,e,f) V_eb V_fk.
  StructureConstants3 t1;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t e = 0; e < 3; ++e)
      for (std::size_t f = 0; f < 3; ++f) {
        double s = 0.0;
        for (std::size_t d = 0; d < 3; ++d) s += u(a, d) * c(d, e, f);
        t1(a, e, f) = s;
      }
  StructureConstants3 t2;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t f = 0; f < 3; ++f) {
        double s = 0.0;
        for (std::size_t e = 0; e < 3; ++e) s += t1(a, e, f) * v(e, b);
        t2(a, b, f) = s;
      }
  StructureConstants3 out;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t k = 0; k < 3; ++k) {
        double s = 0.0;
        for (std::size_t f = 0; f < 3; ++f) s += t2(a, b, f) * v(f, k);
        out(a, b, k) = s;
      }
  return out;
}

Vec3 exterior_derivative(const StructureConstants3& c, const Vec3& alpha) {
  constexpr std::array<std::array<std::size_t, 2>, 3> pairs{{{kU, kL}, {kU, kN}, {kL, kN}}};
  Vec3 d{};
  for (std::size_t p = 0; p < 3; ++p) {
    double s = 0.0;
    for (std::size_t a = 0; a < 3; ++a) s -= alpha[a] * c(a, pairs[p][0], pairs[p][1]);
    d[p] = s;
  }
  return d;
}

Mat3 covariant_derivative(const ConnectionCoefficients3& w, const Vec3& alpha) {
  Mat3 r;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      double s = 0.0;
      for (std::size_t k = 0; k < 3; ++k) s -= w(a, b, k) * alpha[k];
      r(a, b) = s;
    }
  return r;
}

EigenData2 eigen2x2(const Sym2& theta) {
  const double mean = 0.5 * (theta.xx + theta.yy);
  const double half_gap = 0.5 * (theta.xx - theta.yy);
  // +0.0 keeps atan2 on the (-pi, pi] branch for a diagonal input.
  const double off = theta.xy == 0.0 ? 0.0 : theta.xy;
  const double radius = std::hypot(half_gap, off);

  EigenData2 e;
  e.rho_plus = mean + radius;
  e.rho_minus = mean - radius;
  if (radius == 0.0) return e;  // multiple of the identity

  const double phi = 0.5 * std::atan2(2.0 * off, 2.0 * half_gap);
  double c = std::cos(phi);
  double s = std::sin(phi);
  if (off == 0.0) {
    // Diagonal input: exact Q = Id or the quarter turn.
    c = half_gap > 0.0 ? 1.0 : 0.0;
    s = half_gap > 0.0 ? 0.0 : 1.0;
  }
  e.q = Mat2{c, -s, s, c};
  return e;
}

Sym2 spectral_apply(const EigenData2& e, double f_plus, double f_minus) {
  const double c = e.q.a00;
  const double s = e.q.a10;
  return Sym2{c * c * f_plus + s * s * f_minus, c * s * (f_plus - f_minus),
              s * s * f_plus + c * c * f_minus};
}

}  // namespace spinorflow
