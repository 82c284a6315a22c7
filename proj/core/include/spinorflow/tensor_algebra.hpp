#pragma once

// Frame-indexed tensor algebra on left-invariant orthonormal frames.
//
// Conventions (D = 3 spatial, D = 4 Lorentzian):
//   * StructureConstants c(a, b, c) = c^a_{bc}, with [x_b, x_c] = c^a_{bc} x_a
//     for the frame vector fields x_a dual to the coframe e^a. Equivalently
//     de^a = -1/2 c^a_{bc} e^b ^ e^c.
//   * ConnectionCoefficients w(a, b, c) = g(nabla_{x_a} x_b, x_c). Metric
//     compatibility makes w antisymmetric in (b, c).
//   * The frame metric is diag(signature).

#include <array>
#include <cstddef>

#include "spinorflow/types.hpp"

namespace spinorflow {

template <std::size_t D>
struct FrameTensor3 {
  std::array<double, D * D * D> v{};

  constexpr double& operator()(std::size_t a, std::size_t b, std::size_t c) {
    return v[(a * D + b) * D + c];
  }
  constexpr double operator()(std::size_t a, std::size_t b, std::size_t c) const {
    return v[(a * D + b) * D + c];
  }
  double max_abs() const {
    double r = 0.0;
    for (double x : v) r = std::max(r, std::abs(x));
    return r;
  }
};

template <std::size_t D>
struct StructureConstants : FrameTensor3<D> {};

template <std::size_t D>
struct ConnectionCoefficients : FrameTensor3<D> {};

using StructureConstants3 = StructureConstants<3>;
using ConnectionCoefficients3 = ConnectionCoefficients<3>;

template <std::size_t D>
using SquareMatrix = std::array<std::array<double, D>, D>;

template <std::size_t D>
constexpr std::array<double, D> euclidean_signature() {
  std::array<double, D> s{};
  s.fill(1.0);
  return s;
}

/// max |c^a_{bc} + c^a_{cb}|
template <std::size_t D>
double antisymmetry_defect(const StructureConstants<D>& c) {
  double r = 0.0;
  for (std::size_t a = 0; a < D; ++a)
    for (std::size_t b = 0; b < D; ++b)
      for (std::size_t k = 0; k < D; ++k) r = std::max(r, std::abs(c(a, b, k) + c(a, k, b)));
  return r;
}

/// Max-norm of the cyclic sum [x_a,[x_b,x_c]] + [x_b,[x_c,x_a]] + [x_c,[x_a,x_b]].
template <std::size_t D>
double jacobi_residual(const StructureConstants<D>& c) {
  double r = 0.0;
  for (std::size_t a = 0; a < D; ++a)
    for (std::size_t b = 0; b < D; ++b)
      for (std::size_t k = 0; k < D; ++k)
        for (std::size_t d = 0; d < D; ++d) {
          double s = 0.0;
          for (std::size_t e = 0; e < D; ++e)
            s += c(e, b, k) * c(d, a, e) + c(e, k, a) * c(d, b, e) + c(e, a, b) * c(d, k, e);
          r = std::max(r, std::abs(s));
        }
  return r;
}

/// Koszul formula for a frame with constant metric diag(signature):
/// g(nabla_a x_b, x_c) = 1/2 (g([x_a,x_b],x_c) - g([x_b,x_c],x_a) + g([x_c,x_a],x_b)).
/// Linear in c, so it also maps time derivatives of c to those of w.
template <std::size_t D>
ConnectionCoefficients<D> levi_civita(const StructureConstants<D>& c,
                                      const std::array<double, D>& signature) {
  ConnectionCoefficients<D> w;
  for (std::size_t a = 0; a < D; ++a)
    for (std::size_t b = 0; b < D; ++b)
      for (std::size_t k = 0; k < D; ++k)
        w(a, b, k) = 0.5 * (signature[k] * c(k, a, b) - signature[a] * c(a, b, k) +
                            signature[b] * c(b, k, a));
  return w;
}

/// Brackets recovered from a connection through the torsion-free condition
/// nabla_a x_b - nabla_b x_a = [x_a, x_b].
template <std::size_t D>
StructureConstants<D> torsion_brackets(const ConnectionCoefficients<D>& w,
                                       const std::array<double, D>& signature) {
  StructureConstants<D> c;
  for (std::size_t a = 0; a < D; ++a)
    for (std::size_t b = 0; b < D; ++b)
      for (std::size_t k = 0; k < D; ++k) c(k, a, b) = signature[k] * (w(a, b, k) - w(b, a, k));
  return c;
}

/// max |w(a,b,c) + w(a,c,b)|
template <std::size_t D>
double metric_compatibility_defect(const ConnectionCoefficients<D>& w) {
  double r = 0.0;
  for (std::size_t a = 0; a < D; ++a)
    for (std::size_t b = 0; b < D; ++b)
      for (std::size_t k = 0; k < D; ++k) r = std::max(r, std::abs(w(a, b, k) + w(a, k, b)));
  return r;
}

/// Ricci tensor Ric(x_b, x_c) = tr(X -> R(X, x_b) x_c) with
/// R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y].
///
/// `derivatives[k]` holds the connection coefficients differentiated along
/// x_k (lowered index, same layout as w). Pass nullptr when every coefficient
/// is constant, as on a Lie group.
template <std::size_t D>
SquareMatrix<D> ricci_tensor(const StructureConstants<D>& c, const ConnectionCoefficients<D>& w,
                             const std::array<double, D>& signature,
                             const std::array<ConnectionCoefficients<D>, D>* derivatives = nullptr) {
  // Gamma_ab^c = g^{cc} w(a,b,c)
  ConnectionCoefficients<D> gam;
  for (std::size_t a = 0; a < D; ++a)
    for (std::size_t b = 0; b < D; ++b)
      for (std::size_t k = 0; k < D; ++k) gam(a, b, k) = signature[k] * w(a, b, k);

  SquareMatrix<D> ric{};
  for (std::size_t b = 0; b < D; ++b) {
    for (std::size_t k = 0; k < D; ++k) {
      double s = 0.0;
      for (std::size_t a = 0; a < D; ++a) {
        if (derivatives != nullptr) {
          s += signature[a] * ((*derivatives)[a](b, k, a) - (*derivatives)[b](a, k, a));
        }
        for (std::size_t d = 0; d < D; ++d) {
          s += gam(b, k, d) * gam(a, d, a) - gam(a, k, d) * gam(b, d, a);
        }
        for (std::size_t e = 0; e < D; ++e) s -= c(e, a, b) * gam(e, k, a);
      }
      ric[b][k] = s;
    }
  }
  return ric;
}

// ---------------------------------------------------------------------------
// Three-dimensional Riemannian helpers (orthonormal frame, identity metric).

struct RicciResult {
  Sym3 ricci;
  double scalar = 0.0;
};

/// Brackets induced by d e_a = sum_b theta_ab e_b ^ e_u:
/// [x_u, x_b] = sum_a theta_ab x_a for b in {l, n}, and [x_l, x_n] = 0.
StructureConstants3 structure_constants(const Sym3& theta);

ConnectionCoefficients3 levi_civita(const StructureConstants3& c);

RicciResult ricci3(const StructureConstants3& c);

/// Frame components (div S)(x_b) = sum_a (nabla_a S)(x_a, x_b) for a tensor
/// with constant frame components.
Vec3 divergence_sym(const StructureConstants3& c, const Sym3& s);

/// Constants of the frame x'_b = sum_e (U^-1)_eb x_e dual to e'^a = U_ab e^b.
StructureConstants3 pushforward(const StructureConstants3& c, const Mat3& u);

/// Components (ul, un, ln) of d alpha for alpha = alpha_a e^a, using
/// d alpha(x_b, x_c) = -alpha_a c^a_{bc}.
Vec3 exterior_derivative(const StructureConstants3& c, const Vec3& alpha);

/// Frame components of nabla alpha: (nabla_a alpha)(x_b) = -sum_c w(a,b,c) alpha_c.
Mat3 covariant_derivative(const ConnectionCoefficients3& w, const Vec3& alpha);

struct EigenData2 {
  double rho_plus = 0.0;
  double rho_minus = 0.0;
  Mat2 q;  ///< columns are the eigenvectors for rho_plus, rho_minus; det q = +1
};

/// Orthogonal diagonalization theta = Q diag(rho_plus, rho_minus) Q^T.
/// Q is the rotation whose first column is the rho_plus eigenvector with its
/// first nonzero entry positive; Q = Id for equal eigenvalues or a diagonal
/// input already in descending order.
EigenData2 eigen2x2(const Sym2& theta);

/// Q diag(f(rho_plus), f(rho_minus)) Q^T
Sym2 spectral_apply(const EigenData2& e, double f_plus, double f_minus);

}  // namespace spinorflow
